#pragma once

#include "hamilton/core.hpp"

#include <map>
#include <string>

namespace hamilton {

// F-linear combination of alternating words over {a, b} (the standard
// F-basis of the free product). Keys are alternating, stored coefficients
// nonzero; the empty word is the identity.
class WordExpr {
public:
    explicit WordExpr(ParamsPtr params) : params_(std::move(params)) {}
    // Single word with a coefficient; validates the key.
    static WordExpr word(const ParamsPtr& P, const std::string& w);
    static WordExpr word(const ParamsPtr& P, const std::string& w, const FieldValue& c);
    static WordExpr constant(const ParamsPtr& P, const FieldValue& c);

    const ParamsPtr& params() const { return params_; }
    const std::map<std::string, FieldValue>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    FieldValue coeff(const std::string& w) const;

    WordExpr operator-() const;
    friend WordExpr operator+(const WordExpr& x, const WordExpr& y);
    friend WordExpr operator-(const WordExpr& x, const WordExpr& y);
    WordExpr& operator+=(const WordExpr& y) { return *this = *this + y; }
    WordExpr scaled(const FieldValue& c) const;
    bool operator==(const WordExpr& y) const;
    bool operator!=(const WordExpr& y) const { return !(*this == y); }

    // Adds c * w, rewriting doubled pairs until alternating.
    void add_reduced(const std::string& w, const FieldValue& c);

    // "2.ababab+8.abab", "-ab", "5.()", "0"; terms in descending
    // lexicographic order (a < b).
    std::string to_string() const;

private:
    ParamsPtr params_;
    std::map<std::string, FieldValue> terms_;
};

WordExpr word_mul(const WordExpr& x, const WordExpr& y);

// Coordinates in the C-module basis (1, a, b, ab), by folding each word
// through the core multiplication.
HamiltonElement word_to_omega(const WordExpr& x);

// Inverse conversion; substitutes w = tr(q) a + tr(p) b - ab - ba and
// evaluates coordinate polynomials with word_mul.
WordExpr omega_to_word(const HamiltonElement& x);

} // namespace hamilton
