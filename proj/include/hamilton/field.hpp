#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace hamilton {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Operands from different fields never mix silently.
struct FieldMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Violated value-level preconditions: division by zero, non-invertible
// element, out-of-domain arguments.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A computation exceeded its configured step budget.
struct BudgetExhausted : DomainError {
    using DomainError::DomainError;
};

// Exact coefficient field: Q (characteristic 0) or GF(p) for a prime p,
// including p = 2. Identified by its characteristic alone.
class FieldDescriptor {
public:
    static FieldDescriptor rationals();
    static FieldDescriptor prime_field(const Int& p); // DomainError unless p prime

    bool is_rationals() const { return char_ == 0; }
    bool is_prime_field() const { return char_ != 0; }
    const Int& characteristic() const { return char_; }

    bool operator==(const FieldDescriptor&) const = default;
    std::string to_string() const;

private:
    explicit FieldDescriptor(Int c) : char_(std::move(c)) {}
    Int char_; // 0 for Q, p for GF(p)
};

// One exact field element. Rationals are stored as cpp_rational, prime
// field elements as the canonical residue in [0, p).
class FieldValue {
public:
    FieldValue() = delete;

    static FieldValue zero(const FieldDescriptor& f);
    static FieldValue one(const FieldDescriptor& f);
    static FieldValue from_integer(const FieldDescriptor& f, const Int& n);
    static FieldValue from_integer(const FieldDescriptor& f, long n);
    // Over GF(p) the denominator must be invertible mod p.
    static FieldValue from_rational(const FieldDescriptor& f, const Rat& r);

    const FieldDescriptor& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    FieldValue operator-() const;
    FieldValue inverse() const; // DomainError on zero
    friend FieldValue operator+(const FieldValue& x, const FieldValue& y);
    friend FieldValue operator-(const FieldValue& x, const FieldValue& y);
    friend FieldValue operator*(const FieldValue& x, const FieldValue& y);
    friend FieldValue operator/(const FieldValue& x, const FieldValue& y);
    FieldValue& operator+=(const FieldValue& y) { return *this = *this + y; }
    FieldValue& operator-=(const FieldValue& y) { return *this = *this - y; }
    FieldValue& operator*=(const FieldValue& y) { return *this = *this * y; }

    bool operator==(const FieldValue& y) const;
    bool operator!=(const FieldValue& y) const { return !(*this == y); }

    // "3/2", "-1", "4"; prime fields always print the canonical residue.
    std::string to_string() const;

    const Rat& rational_value() const; // rationals only
    const Int& residue_value() const;  // prime fields only

private:
    FieldValue(FieldDescriptor f, Rat r, Int res)
        : field_(std::move(f)), rat_(std::move(r)), res_(std::move(res)) {}
    void check_same_field(const FieldValue& y) const;

    FieldDescriptor field_;
    Rat rat_; // meaningful iff rationals
    Int res_; // meaningful iff prime field; always in [0, p)
};

} // namespace hamilton
