#pragma once

#include "hamilton/field.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace hamilton {

// Degree of a polynomial, with deg 0 = -inf below every integer.
// Adding an int to -inf keeps -inf.
class Degree {
public:
    static Degree neg_inf() { return Degree(); }
    static Degree finite(long long v) { return Degree(v); }

    bool is_neg_inf() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }
    long long value() const; // DomainError on -inf

    friend bool operator==(const Degree& x, const Degree& y) { return x.value_ == y.value_; }
    friend bool operator<(const Degree& x, const Degree& y) {
        if (x.is_neg_inf()) return y.is_finite();
        if (y.is_neg_inf()) return false;
        return *x.value_ < *y.value_;
    }
    friend bool operator<=(const Degree& x, const Degree& y) { return x < y || x == y; }
    friend bool operator>(const Degree& x, const Degree& y) { return y < x; }
    friend bool operator>=(const Degree& x, const Degree& y) { return y <= x; }
    friend bool operator!=(const Degree& x, const Degree& y) { return !(x == y); }

    Degree operator+(long long k) const {
        return is_neg_inf() ? neg_inf() : finite(*value_ + k);
    }

    std::string to_string() const;

private:
    Degree() = default;
    explicit Degree(long long v) : value_(v) {}
    std::optional<long long> value_;
};

Degree degree_max(const Degree& x, const Degree& y);

// Dense univariate polynomial over an exact field, coefficients stored
// lowest-first with no trailing zeros; the zero polynomial has an empty
// coefficient vector.
class CenterPoly {
public:
    explicit CenterPoly(const FieldDescriptor& f) : field_(f) {}
    CenterPoly(const FieldDescriptor& f, std::vector<FieldValue> coeffs_low_first);

    static CenterPoly zero(const FieldDescriptor& f) { return CenterPoly(f); }
    static CenterPoly constant(FieldValue c);
    static CenterPoly one(const FieldDescriptor& f) { return constant(FieldValue::one(f)); }
    static CenterPoly variable(const FieldDescriptor& f); // t
    static CenterPoly monomial(FieldValue c, long long k); // c t^k

    const FieldDescriptor& field() const { return field_; }
    Degree deg() const;
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
    // Coefficient of t^i; zero beyond the stored range.
    FieldValue coeff(long long i) const;
    FieldValue leading() const; // DomainError on zero
    FieldValue constant_term() const { return coeff(0); }
    // Constant polynomials convert back to a field value.
    FieldValue as_constant() const; // DomainError unless deg <= 0

    FieldValue eval(const FieldValue& x) const;

    CenterPoly operator-() const;
    friend CenterPoly operator+(const CenterPoly& f, const CenterPoly& g);
    friend CenterPoly operator-(const CenterPoly& f, const CenterPoly& g);
    friend CenterPoly operator*(const CenterPoly& f, const CenterPoly& g);
    CenterPoly& operator+=(const CenterPoly& g) { return *this = *this + g; }
    CenterPoly& operator-=(const CenterPoly& g) { return *this = *this - g; }
    CenterPoly& operator*=(const CenterPoly& g) { return *this = *this * g; }
    CenterPoly scaled(const FieldValue& c) const;
    CenterPoly shifted(long long k) const; // * t^k

    bool operator==(const CenterPoly& g) const;
    bool operator!=(const CenterPoly& g) const { return !(*this == g); }

    // Descending powers, no spaces: "t^2-t", "-t^2+4", "(3/2)t", "0".
    std::string to_string(const std::string& var = "t") const;

private:
    void trim();
    FieldDescriptor field_;
    std::vector<FieldValue> coeffs_; // lowest-first, trimmed
};

// Quotient and remainder: f = q*g + r with deg r < deg g. g must be nonzero.
std::pair<CenterPoly, CenterPoly> poly_divmod(const CenterPoly& f, const CenterPoly& g);

// Monic gcd; gcd(0, 0) = 0.
CenterPoly poly_gcd(const CenterPoly& f, const CenterPoly& g);

CenterPoly poly_derivative(const CenterPoly& f);

// f(g): substitute g for the variable of f.
CenterPoly poly_compose(const CenterPoly& f, const CenterPoly& g);

// Over Q only degrees <= 2 are decided (DomainError beyond); over GF(p)
// any degree, via the distinct-degree criterion. deg <= 0 is never
// irreducible.
bool poly_is_irreducible(const CenterPoly& f);

// Exact square root in the field, if one exists.
std::optional<FieldValue> field_sqrt(const FieldValue& x);

// Roots in F of a degree-2 polynomial, with multiplicity, sorted.
// Sizes: 0 (irreducible over F), or 2 (split; a double root repeats).
// DomainError unless deg f == 2.
std::vector<FieldValue> poly_roots_quadratic(const CenterPoly& f);

// Parses the shared polynomial syntax: integer and a/b fraction literals,
// 't', '+', '-', '*', '^', parentheses, implicit adjacency ("3t^2").
CenterPoly parse_poly(const std::string& text, const FieldDescriptor& f);

} // namespace hamilton
