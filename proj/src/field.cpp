#include "hamilton/field.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

namespace hamilton {

namespace {

bool is_prime(const Int& p) {
    if (p < 2) return false;
    if (p == 2 || p == 3) return true;
    if (p % 2 == 0) return false;
    return boost::multiprecision::miller_rabin_test(p, 40);
}

Int mod_floor(const Int& n, const Int& p) {
    Int r = n % p;
    if (r < 0) r += p;
    return r;
}

// Extended Euclid; a assumed in [0, p), gcd(a, p) = 1.
Int mod_inverse(const Int& a, const Int& p) {
    Int old_r = a, r = p;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw DomainError("element not invertible mod p");
    return mod_floor(old_s, p);
}

} // namespace

FieldDescriptor FieldDescriptor::rationals() { return FieldDescriptor(Int(0)); }

FieldDescriptor FieldDescriptor::prime_field(const Int& p) {
    if (!is_prime(p)) throw DomainError("prime_field requires a prime modulus, got " + p.str());
    return FieldDescriptor(p);
}

std::string FieldDescriptor::to_string() const {
    return is_rationals() ? "Q" : "GF(" + char_.str() + ")";
}

FieldValue FieldValue::zero(const FieldDescriptor& f) { return FieldValue(f, Rat(0), Int(0)); }

FieldValue FieldValue::one(const FieldDescriptor& f) { return FieldValue(f, Rat(1), Int(1)); }

FieldValue FieldValue::from_integer(const FieldDescriptor& f, const Int& n) {
    if (f.is_rationals()) return FieldValue(f, Rat(n), Int(0));
    return FieldValue(f, Rat(0), mod_floor(n, f.characteristic()));
}

FieldValue FieldValue::from_integer(const FieldDescriptor& f, long n) {
    return from_integer(f, Int(n));
}

FieldValue FieldValue::from_rational(const FieldDescriptor& f, const Rat& r) {
    if (f.is_rationals()) return FieldValue(f, r, Int(0));
    const Int& p = f.characteristic();
    Int den = mod_floor(boost::multiprecision::denominator(r), p);
    if (den == 0) throw DomainError("denominator not invertible in " + f.to_string());
    Int num = mod_floor(boost::multiprecision::numerator(r), p);
    return FieldValue(f, Rat(0), mod_floor(num * mod_inverse(den, p), p));
}

bool FieldValue::is_zero() const {
    return field_.is_rationals() ? rat_ == 0 : res_ == 0;
}

bool FieldValue::is_one() const {
    return field_.is_rationals() ? rat_ == 1 : res_ == 1;
}

void FieldValue::check_same_field(const FieldValue& y) const {
    if (!(field_ == y.field_))
        throw FieldMismatchError("field mismatch: " + field_.to_string() + " vs " + y.field_.to_string());
}

FieldValue FieldValue::operator-() const {
    if (field_.is_rationals()) return FieldValue(field_, -rat_, Int(0));
    return FieldValue(field_, Rat(0), res_ == 0 ? Int(0) : Int(field_.characteristic() - res_));
}

FieldValue FieldValue::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    if (field_.is_rationals()) return FieldValue(field_, Rat(1) / rat_, Int(0));
    return FieldValue(field_, Rat(0), mod_inverse(res_, field_.characteristic()));
}

FieldValue operator+(const FieldValue& x, const FieldValue& y) {
    x.check_same_field(y);
    if (x.field_.is_rationals()) return FieldValue(x.field_, x.rat_ + y.rat_, Int(0));
    return FieldValue(x.field_, Rat(0), mod_floor(x.res_ + y.res_, x.field_.characteristic()));
}

FieldValue operator-(const FieldValue& x, const FieldValue& y) {
    x.check_same_field(y);
    if (x.field_.is_rationals()) return FieldValue(x.field_, x.rat_ - y.rat_, Int(0));
    return FieldValue(x.field_, Rat(0), mod_floor(x.res_ - y.res_, x.field_.characteristic()));
}

FieldValue operator*(const FieldValue& x, const FieldValue& y) {
    x.check_same_field(y);
    if (x.field_.is_rationals()) return FieldValue(x.field_, x.rat_ * y.rat_, Int(0));
    return FieldValue(x.field_, Rat(0), mod_floor(x.res_ * y.res_, x.field_.characteristic()));
}

FieldValue operator/(const FieldValue& x, const FieldValue& y) {
    x.check_same_field(y);
    return x * y.inverse();
}

bool FieldValue::operator==(const FieldValue& y) const {
    check_same_field(y);
    return field_.is_rationals() ? rat_ == y.rat_ : res_ == y.res_;
}

std::string FieldValue::to_string() const {
    if (field_.is_prime_field()) return res_.str();
    const Int num = boost::multiprecision::numerator(rat_);
    const Int den = boost::multiprecision::denominator(rat_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

const Rat& FieldValue::rational_value() const {
    if (!field_.is_rationals()) throw DomainError("rational_value on prime field element");
    return rat_;
}

const Int& FieldValue::residue_value() const {
    if (!field_.is_prime_field()) throw DomainError("residue_value on rational element");
    return res_;
}

} // namespace hamilton
