#include "hamilton/structure.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace hamilton {

namespace {

FieldValue side_tau(const ParamsPtr& P, Side s) {
    return s == Side::A ? P->tau_p() : P->tau_q();
}

FieldValue side_nu(const ParamsPtr& P, Side s) {
    return s == Side::A ? P->nu_p() : P->nu_q();
}

CenterPoly side_poly(const ParamsPtr& P, Side s) {
    return s == Side::A ? P->p_poly() : P->q_poly();
}

HamiltonElement side_gen(const ParamsPtr& P, Side s) {
    return s == Side::A ? HamiltonElement::gen_a(P) : HamiltonElement::gen_b(P);
}

CenterPoly divide_exact(const CenterPoly& f, const CenterPoly& g) {
    auto [q, r] = poly_divmod(f, g);
    if (!r.is_zero()) throw std::logic_error("exact polynomial division left a remainder");
    return q;
}

// x must be basic and nonscalar.
BasicVector as_basic_vector(const HamiltonElement& x) {
    if (!is_basic(x) || x.is_scalar())
        throw std::logic_error("expected a nonscalar basic vector");
    Side s = x.cb().is_zero() ? Side::A : Side::B;
    const CenterPoly& cg = s == Side::A ? x.ca() : x.cb();
    return BasicVector(s, cg.as_constant(), x.c1().as_constant());
}

std::string json_poly(const CenterPoly& f) {
    std::string out = "[";
    if (!f.is_zero())
        for (long long i = 0; i <= f.deg().value(); ++i) {
            if (i) out += ",";
            out += "\"" + f.coeff(i).to_string() + "\"";
        }
    return out + "]";
}

} // namespace

Side opposite(Side s) { return s == Side::A ? Side::B : Side::A; }

std::string side_name(Side s) { return s == Side::A ? "a" : "b"; }

BasicVector::BasicVector(Side s, FieldValue l, FieldValue m)
    : side(s), lambda(std::move(l)), mu(std::move(m)) {
    if (lambda.field() != mu.field())
        throw FieldMismatchError("basic vector coefficients from different fields");
    if (lambda.is_zero())
        throw DomainError("basic vector requires a nonzero generator coefficient");
}

HamiltonElement BasicVector::element(const ParamsPtr& P) const {
    return side_gen(P, side).scaled(lambda) + HamiltonElement::scalar(P, mu);
}

bool BasicVector::proportional_to(const BasicVector& y) const {
    return side == y.side && lambda * y.mu == mu * y.lambda;
}

bool BasicVector::operator==(const BasicVector& y) const {
    return side == y.side && lambda == y.lambda && mu == y.mu;
}

std::string BasicVector::to_string() const {
    return CenterPoly(lambda.field(), {mu, lambda}).to_string(side_name(side));
}

UnitFactor UnitFactor::basic(const BasicVector& v) {
    return UnitFactor{Kind::Basic, v.side, v, CenterPoly::zero(v.lambda.field())};
}

UnitFactor UnitFactor::semi_basic(const BasicVector& zd, const CenterPoly& r) {
    if (zd.lambda.field() != r.field())
        throw FieldMismatchError("semi-basic parameter from a different field");
    return UnitFactor{Kind::SemiBasic, zd.side, zd, r};
}

HamiltonElement UnitFactor::element(const ParamsPtr& P) const {
    if (kind == Kind::Basic) return vec.element(P);
    return semi_basic_unit(P, vec, parameter);
}

bool UnitFactor::operator==(const UnitFactor& y) const {
    return kind == y.kind && side == y.side && vec == y.vec && parameter == y.parameter;
}

std::string UnitFactor::to_string() const {
    if (kind == Kind::Basic) return "(" + vec.to_string() + ")";
    return "sb(" + vec.to_string() + "; " + parameter.to_string("w") + ")";
}

std::string UnitFactor::to_json() const {
    std::string out = "{\"kind\":\"";
    out += kind == Kind::Basic ? "basic" : "semibasic";
    out += "\",\"side\":\"" + side_name(side) + "\"";
    out += ",\"lambda\":\"" + vec.lambda.to_string() + "\"";
    out += ",\"mu\":\"" + vec.mu.to_string() + "\"";
    if (kind == Kind::SemiBasic) out += ",\"parameter\":" + json_poly(parameter);
    return out + "}";
}

HamiltonElement ReducedDecomposition::product(const ParamsPtr& P) const {
    HamiltonElement out = HamiltonElement::scalar(P, scalar);
    for (const UnitFactor& f : factors) out = out * f.element(P);
    return out;
}

std::string ReducedDecomposition::to_string() const {
    std::string out = scalar.to_string();
    for (const UnitFactor& f : factors) out += " * " + f.to_string();
    return out;
}

std::string ReducedDecomposition::to_json() const {
    std::string out = "{\"scalar\":\"" + scalar.to_string() + "\",\"factors\":[";
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out += ",";
        out += factors[i].to_json();
    }
    return out + "]}";
}

Degree distance(const HamiltonElement& x, Side side) {
    HamiltonElement g = side_gen(x.params(), side);
    return degree_max(inner(g, x).deg(), trace(x).deg());
}

Degree delta(const HamiltonElement& x) {
    return degree_max(distance(x, Side::A), distance(x, Side::B));
}

bool is_basic(const HamiltonElement& x) {
    const Coords& c = x.coords();
    if (!c[3].is_zero() || !c[0].is_constant()) return false;
    return (c[2].is_zero() && c[1].is_constant()) || (c[1].is_zero() && c[2].is_constant());
}

BasicVector leading_vector(const HamiltonElement& x) {
    if (!is_quadratic(x) || x.is_scalar())
        throw DomainError("leading vector requires a quadratic nonscalar vector");
    const ParamsPtr& P = x.params();
    Degree dA = distance(x, Side::A), dB = distance(x, Side::B);
    if (dA == dB) throw std::logic_error("side distances of a quadratic nonscalar must differ");
    Side s = dA < dB ? Side::A : Side::B;
    HamiltonElement h = side_gen(P, opposite(s));
    Coords c = s == Side::A ? x.coords() : deploy_coords(x, side_gen(P, s), h);
    if (c[1].is_zero() || c[1].deg() < c[0].deg() || c[1].deg() <= c[2].deg() ||
        c[1].deg() <= c[3].deg())
        throw std::logic_error("leading side coordinate does not dominate");
    long long n = c[1].deg().value();
    FieldValue lam = c[1].coeff(n), mu = c[0].coeff(n);
    BasicVector cand(s, FieldValue::one(P->field()), mu / lam);
    Coords adapted = deploy_coords(x, cand.element(P), h);
    if (!(adapted[0].deg() < adapted[1].deg()))
        throw std::logic_error("leading vector candidate failed its defining property");
    return cand;
}

BasicVector canonical_zero_divisor(const BasicVector& x, const ParamsPtr& P) {
    HamiltonElement el = x.element(P);
    if (!is_zero_divisor(el))
        throw DomainError("canonical form is defined for basic zero divisors only");
    FieldValue tr = trace(el).as_constant();
    if (!tr.is_zero()) return BasicVector(x.side, x.lambda / tr, x.mu / tr);
    return BasicVector(x.side, FieldValue::one(P->field()), x.mu / x.lambda);
}

RetraceOutcome retrace(const HamiltonElement& x, int budget) {
    if (!is_quadratic(x) || x.is_scalar())
        throw DomainError("retrace requires a quadratic nonscalar vector");
    const ParamsPtr& P = x.params();
    HamiltonElement y = x;
    std::vector<BasicVector> conj;
    for (int step = 0;; ++step) {
        if (is_basic(y)) return RetraceOutcome{true, y, std::move(conj), std::nullopt};
        if (step >= budget) throw BudgetExhausted("retrace exceeded its step budget");
        BasicVector lead = leading_vector(y);
        HamiltonElement el = lead.element(P);
        if (norm(el).is_zero())
            return RetraceOutcome{false, y, std::move(conj), canonical_zero_divisor(lead, P)};
        y = invert(el) * y * el;
        conj.push_back(lead);
    }
}

HamiltonElement semi_basic_unit(const ParamsPtr& P, const BasicVector& alpha,
                                const CenterPoly& r) {
    HamiltonElement el = alpha.element(P);
    if (!is_zero_divisor(el))
        throw DomainError("semi-basic units attach to basic zero divisors only");
    FieldValue tr = trace(el).as_constant();
    if (!(tr.is_one() || (tr.is_zero() && alpha.lambda.is_one())))
        throw DomainError("semi-basic attachment must be a canonical zero divisor");
    HamiltonElement unit = HamiltonElement::one(P);
    if (tr.is_one()) {
        HamiltonElement h = side_gen(P, opposite(alpha.side));
        HamiltonElement y = (HamiltonElement::from_center(P, inner(el, h)) - h).scaled(r);
        unit = unit + el * star(y);
    } else {
        unit = unit + el.scaled(r);
    }
    if (!norm(unit).is_one()) throw std::logic_error("semi-basic unit must have norm 1");
    return unit;
}

namespace {

// Split-side reduction parameter for the canonical idempotent leading
// vector alpha of y, or empty when y lies in the special degenerate set
// F + C alpha^sharp. Coordinates are deployed in (1, alpha, h^*, alpha h^*).
std::optional<CenterPoly> split_step_param(const HamiltonElement& y, const BasicVector& alpha) {
    const ParamsPtr& P = y.params();
    HamiltonElement ael = alpha.element(P);
    HamiltonElement h = side_gen(P, opposite(alpha.side));
    Coords c = deploy_coords(y, ael, star(h));
    CenterPoly wp = inner(ael, h);
    if (wp.deg() != Degree::finite(1))
        throw std::logic_error("idempotent pairing must have degree 1");
    FieldValue c1 = wp.coeff(1);
    Degree d = c[0].deg(), n = c[1].deg();
    if (d > Degree::finite(0)) {
        if (!(d < n)) throw std::logic_error("scalar coordinate must trail the leading one");
        if (c[2].deg() != Degree::finite(2 * d.value() - n.value() - 1))
            throw std::logic_error("conjugate coordinate violates the reduction pattern");
        FieldValue rho = c[0].leading() / (c1 * c1 * c[2].leading());
        return CenterPoly::monomial(rho, n.value() - d.value() - 1);
    }
    if (!c[2].is_zero())
        throw std::logic_error("constant scalar part forces the conjugate coordinate to vanish");
    CenterPoly trz = c[1] + wp * c[3];
    if (!trz.is_constant())
        throw std::logic_error("traceless part of a quadratic vector must have constant trace");
    if (trz.is_zero()) return std::nullopt;
    return c[3].scaled(-trz.as_constant().inverse());
}

// Degenerate-side counterpart in the basis (1, alpha, h, alpha h); alpha
// is the canonical square-zero leading vector. Empty means y is in F + C alpha.
std::optional<CenterPoly> degen_step_param(const HamiltonElement& y, const BasicVector& alpha) {
    const ParamsPtr& P = y.params();
    HamiltonElement ael = alpha.element(P);
    HamiltonElement h = side_gen(P, opposite(alpha.side));
    Coords c = deploy_coords(y, ael, h);
    CenterPoly wp = inner(ael, h);
    if (wp.deg() != Degree::finite(1))
        throw std::logic_error("square-zero pairing must have degree 1");
    FieldValue c1 = wp.coeff(1);
    Degree s = c[0].deg(), n = c[1].deg();
    if (s > Degree::finite(0)) {
        if (!(s < n)) throw std::logic_error("scalar coordinate must trail the leading one");
        if (c[2].deg() != Degree::finite(2 * s.value() - n.value() - 1))
            throw std::logic_error("opposite coordinate violates the reduction pattern");
        FieldValue rho = -(c[0].leading() / (c1 * c[2].leading()));
        return CenterPoly::monomial(rho, n.value() - s.value());
    }
    if (!c[2].is_zero() || !c[3].is_zero())
        throw std::logic_error("constant scalar part forces the opposite coordinates to vanish");
    return std::nullopt;
}

} // namespace

RefinedOutcome refined_retrace(const HamiltonElement& x, int budget) {
    if (!is_quadratic(x) || x.is_scalar())
        throw DomainError("refined retrace requires a quadratic nonscalar vector");
    const ParamsPtr& P = x.params();
    HamiltonElement y = x;
    std::vector<UnitFactor> factors;
    for (int step = 0;; ++step) {
        if (is_basic(y)) return RefinedOutcome{true, y, std::move(factors), std::nullopt};
        if (step >= budget) throw BudgetExhausted("refined retrace exceeded its step budget");
        Degree before = delta(y);
        BasicVector lead = leading_vector(y);
        HamiltonElement el = lead.element(P);
        if (!norm(el).is_zero()) {
            y = invert(el) * y * el;
            factors.push_back(UnitFactor::basic(lead));
        } else {
            BasicVector zd = canonical_zero_divisor(lead, P);
            FieldValue tr = trace(zd.element(P)).as_constant();
            std::optional<CenterPoly> r =
                tr.is_one() ? split_step_param(y, zd) : degen_step_param(y, zd);
            if (!r) return RefinedOutcome{false, y, std::move(factors), zd};
            HamiltonElement u = semi_basic_unit(P, zd, *r);
            // Stored factor is u^-1: parameter negation inverts in SB(zd).
            y = u * y * invert(u);
            factors.push_back(UnitFactor::semi_basic(zd, -*r));
        }
        if (!(delta(y) < before))
            throw std::logic_error("reduction step failed to lower delta");
    }
}

HamiltonElement sharp_generator(const ParamsPtr& P, const BasicVector& alpha) {
    HamiltonElement ael = alpha.element(P);
    if (ael * ael != ael || ael.is_central())
        throw DomainError("sharp space is attached to a nontrivial basic idempotent");
    const FieldDescriptor& F = P->field();
    HamiltonElement a = HamiltonElement::gen_a(P), b = HamiltonElement::gen_b(P);
    std::array<HamiltonElement, 4> basis = {HamiltonElement::one(P), a, b, a * b};
    HamiltonElement as = star(ael);
    // Rows 0..3: alpha^* x = 0; rows 4..7: x alpha = 0, in the (1,a,b,ab)
    // coordinates of x.
    std::vector<std::vector<CenterPoly>> m(8, std::vector<CenterPoly>(4, CenterPoly::zero(F)));
    for (size_t j = 0; j < 4; ++j) {
        Coords left = (as * basis[j]).coords();
        Coords right = (basis[j] * ael).coords();
        for (size_t i = 0; i < 4; ++i) {
            m[i][j] = left[i];
            m[i + 4][j] = right[i];
        }
    }
    // Fraction-free elimination to locate three independent rows.
    std::vector<std::vector<CenterPoly>> e = m;
    std::vector<size_t> orig(8);
    for (size_t i = 0; i < 8; ++i) orig[i] = i;
    std::vector<size_t> pivots;
    CenterPoly prev = CenterPoly::one(F);
    size_t row = 0;
    for (size_t col = 0; col < 4 && row < 8; ++col) {
        size_t piv = row;
        while (piv < 8 && e[piv][col].is_zero()) ++piv;
        if (piv == 8) continue;
        std::swap(e[piv], e[row]);
        std::swap(orig[piv], orig[row]);
        for (size_t i = row + 1; i < 8; ++i) {
            for (size_t j = col + 1; j < 4; ++j)
                e[i][j] = divide_exact(e[i][j] * e[row][col] - e[row][j] * e[i][col], prev);
            e[i][col] = CenterPoly::zero(F);
        }
        prev = e[row][col];
        pivots.push_back(orig[row]);
        ++row;
    }
    if (pivots.size() != 3) throw std::logic_error("sharp system must have rank 3");
    // Kernel vector by signed 3x3 minors of the pivot rows.
    auto minor3 = [&](size_t skip) {
        std::array<const CenterPoly*, 9> v{};
        size_t t = 0;
        for (size_t i : pivots)
            for (size_t j = 0; j < 4; ++j)
                if (j != skip) v[t++] = &m[i][j];
        return (*v[0]) * ((*v[4]) * (*v[8]) - (*v[5]) * (*v[7])) -
               (*v[1]) * ((*v[3]) * (*v[8]) - (*v[5]) * (*v[6])) +
               (*v[2]) * ((*v[3]) * (*v[7]) - (*v[4]) * (*v[6]));
    };
    std::vector<CenterPoly> k;
    for (size_t j = 0; j < 4; ++j) {
        CenterPoly mj = minor3(j);
        k.push_back(j % 2 == 0 ? mj : -mj);
    }
    for (size_t i = 0; i < 8; ++i) {
        CenterPoly acc = CenterPoly::zero(F);
        for (size_t j = 0; j < 4; ++j) acc += m[i][j] * k[j];
        if (!acc.is_zero()) throw std::logic_error("sharp kernel fails the defining equations");
    }
    CenterPoly content = CenterPoly::zero(F);
    for (const CenterPoly& f : k) content = poly_gcd(content, f);
    if (content.is_zero()) throw std::logic_error("sharp kernel vector is zero");
    for (CenterPoly& f : k) f = divide_exact(f, content);
    if (!k[3].is_constant() || k[3].is_zero())
        throw std::logic_error("primitive sharp generator needs a constant nonzero ab-coordinate");
    FieldValue scale = k[3].as_constant().inverse();
    HamiltonElement z(P, k[0].scaled(scale), k[1].scaled(scale), k[2].scaled(scale),
                      CenterPoly::one(F));
    if (!(z * z).is_zero() || !trace(z).is_zero() || !(as * z).is_zero() || !(z * ael).is_zero())
        throw std::logic_error("sharp generator fails its defining identities");
    return z;
}

std::optional<BasicVector> is_special_degenerate(const HamiltonElement& x) {
    if (is_basic(x)) return std::nullopt;
    const ParamsPtr& P = x.params();
    const FieldDescriptor& F = P->field();
    for (Side s : {Side::A, Side::B}) {
        std::vector<FieldValue> roots = poly_roots_quadratic(side_poly(P, s));
        if (roots.empty()) continue;
        const CenterPoly& cg = s == Side::A ? x.ca() : x.cb();
        const CenterPoly& ch = s == Side::A ? x.cb() : x.ca();
        if (roots[0] == roots[1]) {
            // x = lambda + c (g - x0) with c nonconstant.
            if (!ch.is_zero() || !x.cab().is_zero()) continue;
            if (!(x.c1() + cg.scaled(roots[0])).is_constant()) continue;
            return BasicVector(s, FieldValue::one(F), -roots[0]);
        }
        if (x.cab().is_zero()) continue;
        FieldValue span = roots[1] - roots[0];
        for (int which = 0; which < 2; ++which) {
            FieldValue den = which == 0 ? span : -span;
            FieldValue r0 = which == 0 ? roots[0] : roots[1];
            BasicVector e(s, den.inverse(), -(r0 / den));
            HamiltonElement sg = sharp_generator(P, e);
            if (x.ca() != x.cab() * sg.ca() || x.cb() != x.cab() * sg.cb()) continue;
            if (!(x.c1() - x.cab() * sg.c1()).is_constant()) continue;
            return e;
        }
    }
    return std::nullopt;
}

namespace {

// Rewrites scalar * factors to canonical shape, preserving the product:
// zero-parameter semi-basics dropped, same-side basics merged, semi-basics
// with the same attachment merged, basics moved to the front of their run.
ReducedDecomposition canonicalize(const ParamsPtr& P, FieldValue scalar,
                                  std::vector<UnitFactor> f, const HamiltonElement& expect) {
    const FieldDescriptor& F = P->field();
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < f.size();) {
            if (f[i].kind == UnitFactor::Kind::SemiBasic && f[i].parameter.is_zero()) {
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
            } else {
                ++i;
            }
        }
        for (size_t i = 0; i + 1 < f.size(); ++i) {
            UnitFactor &L = f[i], &R = f[i + 1];
            if (L.side != R.side) continue;
            if (L.kind == UnitFactor::Kind::Basic && R.kind == UnitFactor::Kind::Basic) {
                FieldValue tau = side_tau(P, L.side), nu = side_nu(P, L.side);
                FieldValue l3 = L.vec.lambda * R.vec.lambda * tau + L.vec.lambda * R.vec.mu +
                                L.vec.mu * R.vec.lambda;
                FieldValue m3 = L.vec.mu * R.vec.mu - L.vec.lambda * R.vec.lambda * nu;
                auto at = f.begin() + static_cast<std::ptrdiff_t>(i);
                if (l3.is_zero()) {
                    scalar *= m3;
                    f.erase(at, at + 2);
                } else {
                    scalar *= l3;
                    f[i] = UnitFactor::basic(BasicVector(L.side, FieldValue::one(F), m3 / l3));
                    f.erase(at + 1);
                }
                changed = true;
                break;
            }
            if (L.kind == UnitFactor::Kind::SemiBasic && R.kind == UnitFactor::Kind::SemiBasic &&
                L.vec == R.vec) {
                f[i] = UnitFactor::semi_basic(L.vec, L.parameter + R.parameter);
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                changed = true;
                break;
            }
            if (L.kind == UnitFactor::Kind::SemiBasic && R.kind == UnitFactor::Kind::Basic) {
                // sb(alpha, r) gamma = gamma sb(alpha, r') with r' scaled by
                // the ratio of the two eigenvalues of gamma on alpha.
                CenterPoly rp = L.parameter;
                if (trace(L.vec.element(P)).as_constant().is_one()) {
                    FieldValue r1 = -(L.vec.mu / L.vec.lambda);
                    FieldValue r2 = r1 + L.vec.lambda.inverse();
                    FieldValue dl = R.vec.lambda * r2 + R.vec.mu;
                    FieldValue dlp = R.vec.lambda * r1 + R.vec.mu;
                    rp = rp.scaled(dlp / dl);
                }
                UnitFactor nl = R, nr = UnitFactor::semi_basic(L.vec, rp);
                if (L.element(P) * R.element(P) != nl.element(P) * nr.element(P))
                    throw std::logic_error("semi-basic commutation identity failed");
                f[i] = nl;
                f[i + 1] = nr;
                changed = true;
                break;
            }
        }
    }
    for (size_t i = 0; i + 1 < f.size(); ++i) {
        const UnitFactor &L = f[i], &R = f[i + 1];
        if (L.side != R.side) continue;
        bool ok = R.kind == UnitFactor::Kind::SemiBasic &&
                  (L.kind == UnitFactor::Kind::Basic || L.vec != R.vec);
        if (!ok) throw std::logic_error("decomposition failed canonical shape validation");
    }
    ReducedDecomposition out{std::move(scalar), std::move(f)};
    if (out.product(P) != expect)
        throw std::logic_error("reduced decomposition failed to reconstruct its unit");
    return out;
}

} // namespace

ReducedDecomposition factor_unit(const HamiltonElement& g, int budget) {
    const ParamsPtr& P = g.params();
    if (!is_unit(g)) throw DomainError("factorization is defined for units only");
    const FieldDescriptor& F = P->field();
    if (g.is_scalar()) return ReducedDecomposition{g.c1().as_constant(), {}};
    HamiltonElement a = HamiltonElement::gen_a(P);
    RefinedOutcome rr = refined_retrace(conjugate(a, g), budget);
    if (!rr.success || rr.result != a)
        throw std::logic_error("conjugating a generator by a unit must retrace to it");
    HamiltonElement big = HamiltonElement::one(P);
    for (const UnitFactor& uf : rr.conjugators) big = big * uf.element(P);
    HamiltonElement u = invert(big) * g;
    if (!u.cb().is_zero() || !u.cab().is_zero())
        throw std::logic_error("residual factor must centralize the first generator");
    CenterPoly fpart = u.c1(), gpart = u.ca();
    std::vector<UnitFactor> factors = rr.conjugators;
    FieldValue scalar = FieldValue::one(F);
    if (gpart.is_zero()) {
        if (!fpart.is_constant()) throw std::logic_error("central residual factor must be scalar");
        scalar = fpart.as_constant();
    } else if (fpart.is_constant() && gpart.is_constant()) {
        scalar = gpart.as_constant();
        factors.push_back(UnitFactor::basic(
            BasicVector(Side::A, FieldValue::one(F), fpart.as_constant() / scalar)));
    } else {
        std::vector<FieldValue> roots = poly_roots_quadratic(P->p_poly());
        if (roots.size() != 2 || roots[0] != roots[1])
            throw std::logic_error("nonconstant residual factor requires a double-rooted side");
        CenterPoly fp = fpart + gpart.scaled(roots[0]);
        if (!fp.is_constant() || fp.is_zero())
            throw std::logic_error("residual factor must split as scalar times semi-basic");
        scalar = fp.as_constant();
        factors.push_back(UnitFactor::semi_basic(
            BasicVector(Side::A, FieldValue::one(F), -roots[0]), gpart.scaled(scalar.inverse())));
    }
    return canonicalize(P, scalar, std::move(factors), g);
}

bool BasicAut::operator==(const BasicAut& y) const {
    return image_of_a == y.image_of_a && image_of_b == y.image_of_b;
}

std::string BasicAut::to_string() const {
    return "a -> " + image_of_a.to_string() + ", b -> " + image_of_b.to_string();
}

HamiltonElement apply_basic_aut(const ParamsPtr& P, const BasicAut& aut,
                                const HamiltonElement& x) {
    HamiltonElement ia = aut.image_of_a.element(P), ib = aut.image_of_b.element(P);
    HamiltonElement ra = ia * ia - ia.scaled(P->tau_p()) + HamiltonElement::scalar(P, P->nu_p());
    HamiltonElement rb = ib * ib - ib.scaled(P->tau_q()) + HamiltonElement::scalar(P, P->nu_q());
    if (!ra.is_zero() || !rb.is_zero())
        throw DomainError("images must satisfy the generator relations");
    CenterPoly w1 = inner(ia, ib);
    if (w1.deg() != Degree::finite(1)) throw DomainError("image pairing must have degree 1");
    HamiltonElement out = HamiltonElement::from_center(P, poly_compose(x.c1(), w1));
    out = out + ia.scaled(poly_compose(x.ca(), w1));
    out = out + ib.scaled(poly_compose(x.cb(), w1));
    out = out + (ia * ib).scaled(poly_compose(x.cab(), w1));
    return out;
}

namespace {

// Nonscalar roots v g + u of a monic quadratic r inside F + F g, either as
// an explicit list or as the one-parameter family v -> v g + (u0 - v w0)
// present exactly when both r and the side polynomial are double-rooted.
struct RootSet {
    Side side;
    bool family;
    std::vector<BasicVector> roots;
    FieldValue u0, w0;

    BasicVector member(const FieldValue& v) const { return BasicVector(side, v, u0 - v * w0); }
};

RootSet root_in_side(const ParamsPtr& P, const CenterPoly& r, Side side) {
    const FieldDescriptor& F = P->field();
    FieldValue ts = side_tau(P, side), ns = side_nu(P, side);
    FieldValue sg = -r.coeff(1), pi = r.coeff(0);
    FieldValue zero = FieldValue::zero(F), one = FieldValue::one(F);
    RootSet out{side, false, {}, zero, zero};
    FieldValue two = one + one;
    if (!two.is_zero()) {
        FieldValue four = two * two;
        FieldValue disc_s = ts * ts - four * ns, disc_r = sg * sg - four * pi;
        if (!disc_s.is_zero()) {
            if (disc_r.is_zero()) return out;
            std::optional<FieldValue> v = field_sqrt(disc_r / disc_s);
            if (!v) return out;
            for (const FieldValue& vv : {*v, -*v})
                out.roots.push_back(BasicVector(side, vv, (sg - vv * ts) / two));
        } else if (disc_r.is_zero()) {
            out.family = true;
            out.u0 = sg / two;
            out.w0 = ts / two;
        }
    } else {
        // GF(2): the generator coefficient is forced to 1.
        if (ts != sg) return out;
        if (ts.is_one()) {
            if (ns == pi) {
                out.roots.push_back(BasicVector(side, one, zero));
                out.roots.push_back(BasicVector(side, one, one));
            }
        } else {
            out.family = true;
            out.u0 = pi + ns;
            out.w0 = zero;
        }
    }
    return out;
}

bool is_gen_vector(const BasicVector& v) { return v.lambda.is_one() && v.mu.is_zero(); }

} // namespace

std::string BasicAutCatalog::summary() const {
    std::string out = finite() ? "finite basic automorphism group\n"
                               : "basic automorphism group with one-parameter families\n";
    for (const BasicAutEntry& e : entries)
        out += e.name + ": " + e.aut.to_string() + (e.fixes_omega ? " [fixes w]" : "") + "\n";
    for (const BasicAutFamily& f : families)
        out += f.name + "[t]: " + f.description + (f.negative ? " (negative)" : "") + "\n";
    return out;
}

BasicAutCatalog basic_aut_catalog(const ParamsPtr& P) {
    const FieldDescriptor& F = P->field();
    FieldValue one = FieldValue::one(F), zero = FieldValue::zero(F);
    RootSet ra = root_in_side(P, P->p_poly(), Side::A);
    RootSet rb = root_in_side(P, P->q_poly(), Side::B);
    RootSet rab = root_in_side(P, P->p_poly(), Side::B);
    RootSet rba = root_in_side(P, P->q_poly(), Side::A);
    CenterPoly w = CenterPoly::variable(F);
    auto fixes = [&](const BasicAut& g) {
        return inner(g.image_of_a.element(P), g.image_of_b.element(P)) == w;
    };
    BasicAutCatalog cat;
    if (!ra.family && !rb.family) {
        for (const BasicVector& va : ra.roots)
            for (const BasicVector& vb : rb.roots) {
                std::string name;
                if (is_gen_vector(va) && is_gen_vector(vb)) name = "id";
                else if (is_gen_vector(va)) name = "half-star-b";
                else if (is_gen_vector(vb)) name = "half-star-a";
                else name = "pseudo-adjunction";
                BasicAut g{va, vb};
                cat.entries.push_back(BasicAutEntry{name, g, fixes(g)});
            }
        int k = 0;
        for (const BasicVector& va : rab.roots)
            for (const BasicVector& vb : rba.roots) {
                BasicAut g{va, vb};
                cat.entries.push_back(
                    BasicAutEntry{"swap-" + std::to_string(++k), g, fixes(g)});
            }
        return cat;
    }
    BasicAut id{BasicVector(Side::A, one, zero), BasicVector(Side::B, one, zero)};
    cat.entries.push_back(BasicAutEntry{"id", id, true});
    if (ra.family && rb.family) {
        cat.families.push_back(BasicAutFamily{
            "h-scaling", "a -> t-scaled root of p, b -> (1/t)-scaled root of q", false,
            [P, ra, rb](const FieldValue& t) {
                return BasicAut{ra.member(t), rb.member(t.inverse())};
            }});
        cat.families.push_back(
            BasicAutFamily{"a-scaling", "a -> t-scaled root of p, b fixed", false,
                           [ra, rb, one](const FieldValue& t) {
                               return BasicAut{ra.member(t), rb.member(one)};
                           }});
        cat.families.push_back(
            BasicAutFamily{"b-scaling", "b -> t-scaled root of q, a fixed", false,
                           [ra, rb, one](const FieldValue& t) {
                               return BasicAut{ra.member(one), rb.member(t)};
                           }});
        if (rab.family && rba.family) {
            cat.families.push_back(
                BasicAutFamily{"swap-scaling-a", "a -> t-scaled root of p in F[b]", true,
                               [rab, rba, one](const FieldValue& t) {
                                   return BasicAut{rab.member(t), rba.member(one)};
                               }});
            cat.families.push_back(
                BasicAutFamily{"swap-scaling-b", "b -> t-scaled root of q in F[a]", true,
                               [rab, rba, one](const FieldValue& t) {
                                   return BasicAut{rab.member(one), rba.member(t)};
                               }});
        }
        return cat;
    }
    if (ra.family) {
        for (const BasicVector& vb : rb.roots) {
            std::string name = is_gen_vector(vb) ? "a-scaling" : "a-scaling-star";
            cat.families.push_back(
                BasicAutFamily{name, "a -> t-scaled root of p, b -> fixed root of q", false,
                               [ra, vb](const FieldValue& t) {
                                   return BasicAut{ra.member(t), vb};
                               }});
        }
        return cat;
    }
    for (const BasicVector& va : ra.roots) {
        std::string name = is_gen_vector(va) ? "b-scaling" : "b-scaling-star";
        cat.families.push_back(
            BasicAutFamily{name, "b -> t-scaled root of q, a -> fixed root of p", false,
                           [rb, va](const FieldValue& t) {
                               return BasicAut{va, rb.member(t)};
                           }});
    }
    return cat;
}

std::pair<BasicAut, HamiltonElement> decompose_automorphism(const HamiltonElement& image_a,
                                                            const HamiltonElement& image_b,
                                                            int budget) {
    const ParamsPtr& P = image_a.params();
    const char* reject = "images do not define a basic-times-inner automorphism";
    if (image_a.is_scalar() || image_b.is_scalar() || !is_quadratic(image_a) ||
        !is_quadratic(image_b))
        throw DomainError(reject);
    if (minimal_quadratic(image_a) != P->p_poly() || minimal_quadratic(image_b) != P->q_poly())
        throw DomainError(reject);
    if (inner(image_a, image_b).deg() != Degree::finite(1)) throw DomainError(reject);
    std::vector<FieldValue> rp = poly_roots_quadratic(P->p_poly());
    std::vector<FieldValue> rq = poly_roots_quadratic(P->q_poly());
    bool p_double = rp.size() == 2 && rp[0] == rp[1];
    bool q_double = rq.size() == 2 && rq[0] == rq[1];
    // Retrace an image whose minimal polynomial has no double root when one
    // exists; then the plain leading-vector step suffices for the other.
    bool target_a = !p_double || q_double;
    const HamiltonElement& t_img = target_a ? image_a : image_b;
    const HamiltonElement& o_img = target_a ? image_b : image_a;
    RefinedOutcome rr = refined_retrace(t_img, budget);
    if (!rr.success) throw DomainError(reject);
    BasicVector vt = as_basic_vector(rr.result);
    HamiltonElement gamma = HamiltonElement::one(P);
    for (const UnitFactor& uf : rr.conjugators) gamma = gamma * uf.element(P);
    HamiltonElement x = invert(gamma) * o_img * gamma;
    std::optional<BasicVector> vo;
    if (is_basic(x)) {
        vo = as_basic_vector(x);
    } else {
        BasicVector lead = leading_vector(x);
        if (!norm(lead.element(P)).is_zero()) {
            if (lead.side != vt.side) throw DomainError(reject);
            HamiltonElement lel = lead.element(P);
            HamiltonElement xp = invert(lel) * x * lel;
            if (!is_basic(xp)) throw DomainError(reject);
            vo = as_basic_vector(xp);
            gamma = gamma * lel;
        } else {
            if (!p_double || !q_double) throw DomainError(reject);
            // Unit conjugators can only reach x when det(1, t, x, tx) is a
            // nonzero constant, t the retraced image.
            HamiltonElement tel = vt.element(P);
            Coords c = deploy_coords(x, tel, side_gen(P, opposite(vt.side)));
            FieldValue trt = trace(tel).as_constant();
            CenterPoly det = c[2] * (c[2] + c[3].scaled(trt));
            if (!det.is_constant() || det.is_zero()) throw DomainError(reject);
            RefinedOutcome rr2 = refined_retrace(x, budget);
            if (!rr2.success) throw DomainError(reject);
            for (const UnitFactor& uf : rr2.conjugators) {
                if (uf.side != vt.side) throw DomainError(reject);
                gamma = gamma * uf.element(P);
            }
            vo = as_basic_vector(rr2.result);
        }
    }
    if (vo->side == vt.side) throw DomainError(reject);
    BasicAut bas{target_a ? vt : *vo, target_a ? *vo : vt};
    if (conjugate(bas.image_of_a.element(P), gamma) != image_a ||
        conjugate(bas.image_of_b.element(P), gamma) != image_b)
        throw DomainError(reject);
    return {bas, gamma};
}

bool ConjClassInvariant::operator==(const ConjClassInvariant& y) const {
    return minimal_poly == y.minimal_poly && kind == y.kind && attached == y.attached &&
           shift == y.shift && modular_norm == y.modular_norm;
}

std::string ConjClassInvariant::to_string() const {
    std::string out = kind == Kind::Basic ? "basic[" : "sharp[";
    out += attached.to_string();
    if (shift) out += "; shift=" + shift->to_string();
    if (modular_norm) out += "; s=" + modular_norm->to_string("w");
    return out + "]";
}

ConjClassInvariant conjugacy_invariant(const HamiltonElement& x, int budget) {
    if (!is_quadratic(x) || x.is_scalar())
        throw DomainError("conjugacy invariant requires a quadratic nonscalar vector");
    const ParamsPtr& P = x.params();
    CenterPoly m = minimal_quadratic(x);
    std::vector<FieldValue> roots = poly_roots_quadratic(m);
    if (roots.size() == 2 && roots[0] == roots[1]) {
        FieldValue l0 = roots[0];
        auto [s, zn] = normalize(x - HamiltonElement::scalar(P, l0));
        RefinedOutcome rr = refined_retrace(zn, budget);
        if (!rr.success)
            return ConjClassInvariant{m, ConjClassInvariant::Kind::Sharp, *rr.witness, l0, s};
        BasicVector v = as_basic_vector(rr.result);
        if (!s.is_constant())
            return ConjClassInvariant{m, ConjClassInvariant::Kind::Sharp, v, l0, s};
        if (!s.is_one()) throw std::logic_error("normalization must return a monic content");
        return ConjClassInvariant{m, ConjClassInvariant::Kind::Basic,
                                  BasicVector(v.side, v.lambda, v.mu + l0), std::nullopt,
                                  std::nullopt};
    }
    RefinedOutcome rr = refined_retrace(x, budget);
    if (!rr.success)
        throw std::logic_error("retrace must succeed when the minimal polynomial is separable");
    return ConjClassInvariant{m, ConjClassInvariant::Kind::Basic, as_basic_vector(rr.result),
                              std::nullopt, std::nullopt};
}

} // namespace hamilton
