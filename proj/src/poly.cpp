#include "hamilton/poly.hpp"

#include <algorithm>
#include <cctype>

namespace hamilton {

long long Degree::value() const {
    if (!value_) throw DomainError("degree is -inf");
    return *value_;
}

std::string Degree::to_string() const {
    return value_ ? std::to_string(*value_) : "-inf";
}

Degree degree_max(const Degree& x, const Degree& y) { return x < y ? y : x; }

CenterPoly::CenterPoly(const FieldDescriptor& f, std::vector<FieldValue> coeffs_low_first)
    : field_(f), coeffs_(std::move(coeffs_low_first)) {
    for (const auto& c : coeffs_)
        if (!(c.field() == field_)) throw FieldMismatchError("coefficient field mismatch");
    trim();
}

void CenterPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

CenterPoly CenterPoly::constant(FieldValue c) {
    CenterPoly r(c.field());
    if (!c.is_zero()) r.coeffs_.push_back(std::move(c));
    return r;
}

CenterPoly CenterPoly::variable(const FieldDescriptor& f) {
    return monomial(FieldValue::one(f), 1);
}

CenterPoly CenterPoly::monomial(FieldValue c, long long k) {
    if (k < 0) throw DomainError("monomial exponent must be nonnegative");
    CenterPoly r(c.field());
    if (!c.is_zero()) {
        r.coeffs_.assign(static_cast<size_t>(k), FieldValue::zero(c.field()));
        r.coeffs_.push_back(std::move(c));
    }
    return r;
}

Degree CenterPoly::deg() const {
    if (coeffs_.empty()) return Degree::neg_inf();
    return Degree::finite(static_cast<long long>(coeffs_.size()) - 1);
}

FieldValue CenterPoly::coeff(long long i) const {
    if (i < 0 || static_cast<size_t>(i) >= coeffs_.size()) return FieldValue::zero(field_);
    return coeffs_[static_cast<size_t>(i)];
}

FieldValue CenterPoly::leading() const {
    if (coeffs_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return coeffs_.back();
}

FieldValue CenterPoly::as_constant() const {
    if (coeffs_.size() > 1) throw DomainError("polynomial is not constant: " + to_string());
    return coeffs_.empty() ? FieldValue::zero(field_) : coeffs_[0];
}

FieldValue CenterPoly::eval(const FieldValue& x) const {
    FieldValue acc = FieldValue::zero(field_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

CenterPoly CenterPoly::operator-() const {
    CenterPoly r(field_);
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) r.coeffs_.push_back(-c);
    return r;
}

CenterPoly operator+(const CenterPoly& f, const CenterPoly& g) {
    if (!(f.field_ == g.field_)) throw FieldMismatchError("polynomial field mismatch");
    CenterPoly r(f.field_);
    size_t n = std::max(f.coeffs_.size(), g.coeffs_.size());
    r.coeffs_.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        FieldValue c = FieldValue::zero(f.field_);
        if (i < f.coeffs_.size()) c += f.coeffs_[i];
        if (i < g.coeffs_.size()) c += g.coeffs_[i];
        r.coeffs_.push_back(std::move(c));
    }
    r.trim();
    return r;
}

CenterPoly operator-(const CenterPoly& f, const CenterPoly& g) { return f + (-g); }

CenterPoly operator*(const CenterPoly& f, const CenterPoly& g) {
    if (!(f.field_ == g.field_)) throw FieldMismatchError("polynomial field mismatch");
    CenterPoly r(f.field_);
    if (f.coeffs_.empty() || g.coeffs_.empty()) return r;
    r.coeffs_.assign(f.coeffs_.size() + g.coeffs_.size() - 1, FieldValue::zero(f.field_));
    for (size_t i = 0; i < f.coeffs_.size(); ++i)
        for (size_t j = 0; j < g.coeffs_.size(); ++j)
            r.coeffs_[i + j] += f.coeffs_[i] * g.coeffs_[j];
    r.trim();
    return r;
}

CenterPoly CenterPoly::scaled(const FieldValue& c) const {
    CenterPoly r(field_);
    if (c.is_zero()) return r;
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& x : coeffs_) r.coeffs_.push_back(x * c);
    return r;
}

CenterPoly CenterPoly::shifted(long long k) const {
    if (k < 0) throw DomainError("shift exponent must be nonnegative");
    if (coeffs_.empty()) return *this;
    CenterPoly r(field_);
    r.coeffs_.assign(static_cast<size_t>(k), FieldValue::zero(field_));
    r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return r;
}

bool CenterPoly::operator==(const CenterPoly& g) const {
    if (!(field_ == g.field_)) throw FieldMismatchError("polynomial field mismatch");
    if (coeffs_.size() != g.coeffs_.size()) return false;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (!(coeffs_[i] == g.coeffs_[i])) return false;
    return true;
}

std::string CenterPoly::to_string(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (long long i = static_cast<long long>(coeffs_.size()) - 1; i >= 0; --i) {
        FieldValue c = coeff(i);
        if (c.is_zero()) continue;
        bool neg = false;
        FieldValue mag = c;
        if (field_.is_rationals() && c.rational_value() < 0) {
            neg = true;
            mag = -c;
        }
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        std::string ms = mag.to_string();
        bool is_fraction = field_.is_rationals() &&
                           boost::multiprecision::denominator(mag.rational_value()) != 1;
        if (i == 0) {
            out += ms;
        } else {
            if (!mag.is_one()) out += is_fraction ? "(" + ms + ")" : ms;
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

std::pair<CenterPoly, CenterPoly> poly_divmod(const CenterPoly& f, const CenterPoly& g) {
    if (!(f.field() == g.field())) throw FieldMismatchError("polynomial field mismatch");
    if (g.is_zero()) throw DomainError("polynomial division by zero");
    CenterPoly q = CenterPoly::zero(f.field());
    CenterPoly r = f;
    const FieldValue lg_inv = g.leading().inverse();
    const long long dg = g.deg().value();
    while (!r.is_zero() && r.deg().value() >= dg) {
        long long k = r.deg().value() - dg;
        FieldValue c = r.leading() * lg_inv;
        CenterPoly t = CenterPoly::monomial(c, k);
        q += t;
        r -= t * g;
    }
    return {q, r};
}

CenterPoly poly_gcd(const CenterPoly& f, const CenterPoly& g) {
    CenterPoly x = f, y = g;
    while (!y.is_zero()) {
        CenterPoly r = poly_divmod(x, y).second;
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return x.scaled(x.leading().inverse());
}

CenterPoly poly_derivative(const CenterPoly& f) {
    const FieldDescriptor& k = f.field();
    if (f.deg() < Degree::finite(1)) return CenterPoly::zero(k);
    std::vector<FieldValue> c;
    for (long long i = 1; i <= f.deg().value(); ++i)
        c.push_back(f.coeff(i) * FieldValue::from_integer(k, i));
    return CenterPoly(k, std::move(c));
}

CenterPoly poly_compose(const CenterPoly& f, const CenterPoly& g) {
    const FieldDescriptor& k = f.field();
    if (f.is_zero()) return CenterPoly::zero(k);
    CenterPoly acc = CenterPoly::constant(f.leading());
    for (long long i = f.deg().value() - 1; i >= 0; --i)
        acc = acc * g + CenterPoly::constant(f.coeff(i));
    return acc;
}

namespace {

// x^e mod m over GF(p), square-and-multiply on the big exponent.
CenterPoly poly_powmod(CenterPoly x, Int e, const CenterPoly& m) {
    CenterPoly acc = CenterPoly::one(x.field());
    x = poly_divmod(x, m).second;
    while (e > 0) {
        if ((e & 1) != 0) acc = poly_divmod(acc * x, m).second;
        x = poly_divmod(x * x, m).second;
        e >>= 1;
    }
    return acc;
}

std::vector<long long> prime_divisors(long long d) {
    std::vector<long long> ps;
    for (long long e = 2; e * e <= d; ++e)
        if (d % e == 0) {
            ps.push_back(e);
            while (d % e == 0) d /= e;
        }
    if (d > 1) ps.push_back(d);
    return ps;
}

Int int_pow(const Int& b, long long e) {
    Int r = 1;
    for (long long i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

bool poly_is_irreducible(const CenterPoly& f) {
    Degree d = f.deg();
    if (d <= Degree::finite(0)) return false;
    if (d == Degree::finite(1)) return true;
    const FieldDescriptor& k = f.field();
    if (k.is_rationals()) {
        if (d != Degree::finite(2))
            throw DomainError("irreducibility over Q is only decided for degree <= 2, got degree " +
                              d.to_string());
        FieldValue a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
        FieldValue four = FieldValue::from_integer(k, 4);
        FieldValue disc = b * b - four * a * c;
        return !field_sqrt(disc).has_value();
    }
    // Rabin test: f of degree n is irreducible over GF(p) iff
    // t^(p^n) = t mod f and gcd(t^(p^(n/e)) - t, f) = 1 for primes e | n.
    const Int& p = k.characteristic();
    long long n = d.value();
    CenterPoly fm = f.scaled(f.leading().inverse());
    CenterPoly t = CenterPoly::variable(k);
    for (long long e : prime_divisors(n)) {
        CenterPoly h = poly_powmod(t, int_pow(p, n / e), fm) - t;
        CenterPoly g = poly_gcd(h, fm);
        if (!g.is_one()) return false;
    }
    CenterPoly h = poly_powmod(t, int_pow(p, n), fm) - t;
    return poly_divmod(h, fm).second.is_zero();
}

namespace {

std::optional<Int> int_sqrt_exact(const Int& n) {
    if (n < 0) return std::nullopt;
    Int r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// Tonelli-Shanks over GF(p), p odd prime, a a quadratic residue.
Int tonelli_shanks(const Int& a, const Int& p) {
    using boost::multiprecision::powm;
    if (a == 0) return Int(0);
    if (p % 4 == 3) return powm(a, (p + 1) / 4, p);
    Int q = p - 1;
    long long s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (powm(z, (p - 1) / 2, p) != p - 1) ++z;
    Int m = s, c = powm(z, q, p), t = powm(a, q, p), r = powm(a, (q + 1) / 2, p);
    while (t != 1) {
        Int tt = t;
        long long i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (Int j = 0; j < m - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

} // namespace

std::optional<FieldValue> field_sqrt(const FieldValue& x) {
    const FieldDescriptor& k = x.field();
    if (k.is_rationals()) {
        const Rat& r = x.rational_value();
        if (r < 0) return std::nullopt;
        auto n = int_sqrt_exact(boost::multiprecision::numerator(r));
        auto d = int_sqrt_exact(boost::multiprecision::denominator(r));
        if (!n || !d) return std::nullopt;
        return FieldValue::from_rational(k, Rat(*n, *d));
    }
    const Int& p = k.characteristic();
    const Int& a = x.residue_value();
    if (p == 2) return x; // Frobenius is the identity on GF(2)
    if (a == 0) return FieldValue::zero(k);
    if (boost::multiprecision::powm(a, (p - 1) / 2, p) != 1) return std::nullopt;
    return FieldValue::from_integer(k, tonelli_shanks(a, p));
}

namespace {

bool field_value_less(const FieldValue& x, const FieldValue& y) {
    if (x.field().is_rationals()) return x.rational_value() < y.rational_value();
    return x.residue_value() < y.residue_value();
}

} // namespace

std::vector<FieldValue> poly_roots_quadratic(const CenterPoly& f) {
    if (f.deg() != Degree::finite(2))
        throw DomainError("poly_roots_quadratic requires degree exactly 2, got degree " +
                          f.deg().to_string());
    const FieldDescriptor& k = f.field();
    FieldValue a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
    std::vector<FieldValue> roots;
    if (k.is_prime_field() && k.characteristic() == 2) {
        // Monic form t^2 + Bt + C over GF(2).
        FieldValue B = b / a, C = c / a;
        if (B.is_zero()) {
            // t^2 + C = (t + C)^2 since squaring fixes GF(2).
            roots = {C, C};
        } else if (C.is_zero()) {
            roots = {FieldValue::zero(k), FieldValue::one(k)};
        }
        // t^2 + t + 1 has no roots in GF(2).
    } else {
        FieldValue four = FieldValue::from_integer(k, 4);
        FieldValue two = FieldValue::from_integer(k, 2);
        FieldValue disc = b * b - four * a * c;
        if (auto s = field_sqrt(disc)) {
            FieldValue denom = two * a;
            roots.push_back((-b - *s) / denom);
            roots.push_back((-b + *s) / denom);
        }
    }
    std::sort(roots.begin(), roots.end(), field_value_less);
    return roots;
}

namespace {

struct PolyParser {
    const std::string& s;
    const FieldDescriptor& field;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw DomainError("polynomial parse error at position " + std::to_string(pos) + ": " + msg +
                          " in \"" + s + "\"");
    }

    Int read_int_literal() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return Int(s.substr(start, pos - start));
    }

    CenterPoly parse_primary() {
        char c = peek();
        if (c == '(') {
            ++pos;
            CenterPoly e = parse_expr();
            if (peek() != ')') fail("expected ')'");
            ++pos;
            return e;
        }
        if (c == 't') {
            ++pos;
            return CenterPoly::variable(field);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int num = read_int_literal();
            if (peek() == '/') {
                ++pos;
                Int den = read_int_literal();
                if (den == 0) fail("zero denominator");
                return CenterPoly::constant(FieldValue::from_rational(field, Rat(num, den)));
            }
            return CenterPoly::constant(FieldValue::from_integer(field, num));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    CenterPoly parse_factor() {
        CenterPoly base = parse_primary();
        if (peek() == '^') {
            ++pos;
            Int e = read_int_literal();
            if (e > 4096) fail("exponent too large");
            CenterPoly acc = CenterPoly::one(field);
            for (Int i = 0; i < e; ++i) acc *= base;
            return acc;
        }
        return base;
    }

    bool starts_primary(char c) {
        return c == '(' || c == 't' || std::isdigit(static_cast<unsigned char>(c));
    }

    CenterPoly parse_term() {
        CenterPoly acc = parse_factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos;
                acc *= parse_factor();
            } else if (starts_primary(c)) {
                acc *= parse_factor(); // implicit adjacency: "3t^2"
            } else {
                return acc;
            }
        }
    }

    CenterPoly parse_expr() {
        CenterPoly acc = CenterPoly::zero(field);
        bool neg = false;
        char c = peek();
        if (c == '-') {
            neg = true;
            ++pos;
        } else if (c == '+') {
            ++pos;
        }
        CenterPoly t = parse_term();
        acc = neg ? acc - t : acc + t;
        while (true) {
            c = peek();
            if (c == '+' || c == '-') {
                ++pos;
                CenterPoly u = parse_term();
                acc = (c == '-') ? acc - u : acc + u;
            } else {
                return acc;
            }
        }
    }
};

} // namespace

CenterPoly parse_poly(const std::string& text, const FieldDescriptor& f) {
    PolyParser p{text, f};
    CenterPoly r = p.parse_expr();
    if (!p.eof()) p.fail("trailing input");
    return r;
}

} // namespace hamilton
