#include "hamilton/core.hpp"

namespace hamilton {

namespace {

void check_same(const ParamsPtr& x, const ParamsPtr& y) {
    if (x.get() == y.get()) return;
    if (!x || !y || !x->same_algebra(*y))
        throw FieldMismatchError("elements of different algebras");
}

Coords zero_coords(const FieldDescriptor& f) {
    return {CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)};
}

} // namespace

HamiltonElement::HamiltonElement(ParamsPtr params, CenterPoly x1, CenterPoly xa, CenterPoly xb,
                                 CenterPoly xab)
    : params_(std::move(params)), x_{std::move(x1), std::move(xa), std::move(xb), std::move(xab)} {
    if (!params_) throw DomainError("null algebra parameters");
    for (const auto& c : x_)
        if (!(c.field() == params_->field()))
            throw FieldMismatchError("coordinate field differs from the algebra's");
}

HamiltonElement HamiltonElement::zero(const ParamsPtr& P) {
    const auto& f = P->field();
    return HamiltonElement(P, CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f));
}

HamiltonElement HamiltonElement::one(const ParamsPtr& P) {
    const auto& f = P->field();
    return HamiltonElement(P, CenterPoly::one(f), CenterPoly(f), CenterPoly(f), CenterPoly(f));
}

HamiltonElement HamiltonElement::gen_a(const ParamsPtr& P) {
    const auto& f = P->field();
    return HamiltonElement(P, CenterPoly(f), CenterPoly::one(f), CenterPoly(f), CenterPoly(f));
}

HamiltonElement HamiltonElement::gen_b(const ParamsPtr& P) {
    const auto& f = P->field();
    return HamiltonElement(P, CenterPoly(f), CenterPoly(f), CenterPoly::one(f), CenterPoly(f));
}

HamiltonElement HamiltonElement::omega(const ParamsPtr& P) {
    const auto& f = P->field();
    return HamiltonElement(P, CenterPoly::variable(f), CenterPoly(f), CenterPoly(f), CenterPoly(f));
}

HamiltonElement HamiltonElement::scalar(const ParamsPtr& P, const FieldValue& c) {
    return from_center(P, CenterPoly::constant(c));
}

HamiltonElement HamiltonElement::from_center(const ParamsPtr& P, const CenterPoly& c) {
    const auto& f = P->field();
    return HamiltonElement(P, c, CenterPoly(f), CenterPoly(f), CenterPoly(f));
}

bool HamiltonElement::is_zero() const {
    return x_[0].is_zero() && is_central();
}

bool HamiltonElement::is_central() const {
    return x_[1].is_zero() && x_[2].is_zero() && x_[3].is_zero();
}

bool HamiltonElement::is_scalar() const {
    return is_central() && x_[0].is_constant();
}

CenterPoly HamiltonElement::central_part() const {
    if (!is_central()) throw DomainError("element is not central: " + to_string());
    return x_[0];
}

HamiltonElement HamiltonElement::operator-() const {
    return HamiltonElement(params_, -x_[0], -x_[1], -x_[2], -x_[3]);
}

HamiltonElement operator+(const HamiltonElement& x, const HamiltonElement& y) {
    check_same(x.params_, y.params_);
    return HamiltonElement(x.params_, x.x_[0] + y.x_[0], x.x_[1] + y.x_[1], x.x_[2] + y.x_[2],
                           x.x_[3] + y.x_[3]);
}

HamiltonElement operator-(const HamiltonElement& x, const HamiltonElement& y) {
    check_same(x.params_, y.params_);
    return HamiltonElement(x.params_, x.x_[0] - y.x_[0], x.x_[1] - y.x_[1], x.x_[2] - y.x_[2],
                           x.x_[3] - y.x_[3]);
}

HamiltonElement operator*(const HamiltonElement& x, const HamiltonElement& y) {
    check_same(x.params_, y.params_);
    const AlgebraParams& P = *x.params_;
    Coords z = zero_coords(P.field());
    for (int i = 0; i < 4; ++i) {
        if (x.x_[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < 4; ++j) {
            if (y.x_[static_cast<size_t>(j)].is_zero()) continue;
            CenterPoly c = x.x_[static_cast<size_t>(i)] * y.x_[static_cast<size_t>(j)];
            const Coords& t = P.table(i, j);
            for (int k = 0; k < 4; ++k)
                if (!t[static_cast<size_t>(k)].is_zero())
                    z[static_cast<size_t>(k)] += c * t[static_cast<size_t>(k)];
        }
    }
    return HamiltonElement(x.params_, std::move(z[0]), std::move(z[1]), std::move(z[2]),
                           std::move(z[3]));
}

HamiltonElement HamiltonElement::scaled(const CenterPoly& c) const {
    return HamiltonElement(params_, x_[0] * c, x_[1] * c, x_[2] * c, x_[3] * c);
}

HamiltonElement HamiltonElement::scaled(const FieldValue& c) const {
    return HamiltonElement(params_, x_[0].scaled(c), x_[1].scaled(c), x_[2].scaled(c),
                           x_[3].scaled(c));
}

bool HamiltonElement::operator==(const HamiltonElement& y) const {
    check_same(params_, y.params_);
    return x_[0] == y.x_[0] && x_[1] == y.x_[1] && x_[2] == y.x_[2] && x_[3] == y.x_[3];
}

std::string HamiltonElement::to_string() const {
    static const char* suffix[4] = {"", "a", "b", "ab"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
        const CenterPoly& c = x_[static_cast<size_t>(k)];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string("w") + ")" + suffix[k];
    }
    return out.empty() ? "0" : out;
}

std::string HamiltonElement::to_json() const {
    static const char* key[4] = {"c1", "ca", "cb", "cab"};
    std::string out = "{";
    for (int k = 0; k < 4; ++k) {
        if (k) out += ",";
        out += std::string("\"") + key[k] + "\":[";
        const CenterPoly& c = x_[static_cast<size_t>(k)];
        if (!c.is_zero())
            for (long long i = 0; i <= c.deg().value(); ++i) {
                if (i) out += ",";
                out += "\"" + c.coeff(i).to_string() + "\"";
            }
        out += "]";
    }
    return out + "}";
}

HamiltonElement star(const HamiltonElement& x) {
    const AlgebraParams& P = *x.params();
    const FieldDescriptor& f = P.field();
    // a* = tau_p - a, b* = tau_q - b, (ab)* = (tau_p tau_q - w) - ab.
    CenterPoly tptq_w =
        CenterPoly::constant(P.tau_p() * P.tau_q()) - CenterPoly::variable(f);
    CenterPoly c1 = x.c1() + x.ca().scaled(P.tau_p()) + x.cb().scaled(P.tau_q()) + x.cab() * tptq_w;
    return HamiltonElement(x.params(), std::move(c1), -x.ca(), -x.cb(), -x.cab());
}

CenterPoly trace(const HamiltonElement& x) {
    return (x + star(x)).central_part();
}

CenterPoly norm(const HamiltonElement& x) {
    HamiltonElement n = x * star(x);
    if (!n.is_central()) throw std::logic_error("norm landed outside the center");
    return n.central_part();
}

CenterPoly inner(const HamiltonElement& x, const HamiltonElement& y) {
    HamiltonElement s = x * star(y) + y * star(x);
    if (!s.is_central()) throw std::logic_error("inner product landed outside the center");
    return s.central_part();
}

HamiltonElement commutator(const HamiltonElement& x, const HamiltonElement& y) {
    return x * y - y * x;
}

namespace {

// Exact determinant of a 4x4 matrix over C by cofactor expansion.
CenterPoly det3(const std::array<std::array<CenterPoly, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

CenterPoly det4(const std::array<std::array<CenterPoly, 4>, 4>& m, const FieldDescriptor& f) {
    CenterPoly acc(f);
    for (int j = 0; j < 4; ++j) {
        std::array<std::array<CenterPoly, 3>, 3> minor{
            {{CenterPoly(f), CenterPoly(f), CenterPoly(f)},
             {CenterPoly(f), CenterPoly(f), CenterPoly(f)},
             {CenterPoly(f), CenterPoly(f), CenterPoly(f)}}};
        for (int r = 1; r < 4; ++r) {
            int cc = 0;
            for (int c = 0; c < 4; ++c) {
                if (c == j) continue;
                minor[static_cast<size_t>(r - 1)][static_cast<size_t>(cc++)] =
                    m[static_cast<size_t>(r)][static_cast<size_t>(c)];
            }
        }
        CenterPoly term = m[0][static_cast<size_t>(j)] * det3(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

CenterPoly gram_det(const std::array<HamiltonElement, 4>& xs) {
    const FieldDescriptor& f = xs[0].params()->field();
    std::array<std::array<CenterPoly, 4>, 4> g{
        {{CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)},
         {CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)},
         {CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)},
         {CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)}}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                inner(xs[static_cast<size_t>(i)], xs[static_cast<size_t>(j)]);
    return det4(g, f);
}

bool is_unit(const HamiltonElement& x) {
    CenterPoly n = norm(x);
    return n.deg() == Degree::finite(0);
}

HamiltonElement invert(const HamiltonElement& x) {
    CenterPoly n = norm(x);
    if (n.deg() != Degree::finite(0))
        throw DomainError("not a unit: norm is " + n.to_string("w"));
    return star(x).scaled(n.as_constant().inverse());
}

bool is_zero_divisor(const HamiltonElement& x) {
    return !x.is_zero() && norm(x).is_zero();
}

HamiltonElement annihilator(const HamiltonElement& x) {
    if (!is_zero_divisor(x)) throw DomainError("annihilator requires a nonzero zero divisor");
    return star(x);
}

bool is_quadratic(const HamiltonElement& x) {
    return trace(x).is_constant() && norm(x).is_constant();
}

CenterPoly minimal_quadratic(const HamiltonElement& x) {
    if (!is_quadratic(x))
        throw DomainError("element is not quadratic over the base field: " + x.to_string());
    const FieldDescriptor& f = x.params()->field();
    return CenterPoly(f, {norm(x).as_constant(), -trace(x).as_constant(), FieldValue::one(f)});
}

std::pair<CenterPoly, HamiltonElement> normalize(const HamiltonElement& x) {
    if (x.is_zero()) throw DomainError("normalize requires a nonzero element");
    CenterPoly s = poly_gcd(poly_gcd(x.c1(), x.ca()), poly_gcd(x.cb(), x.cab()));
    auto div = [&](const CenterPoly& c) {
        auto [q, r] = poly_divmod(c, s);
        if (!r.is_zero()) throw std::logic_error("gcd does not divide a coordinate");
        return q;
    };
    HamiltonElement xn(x.params(), div(x.c1()), div(x.ca()), div(x.cb()), div(x.cab()));
    return {std::move(s), std::move(xn)};
}

HamiltonElement conjugate(const HamiltonElement& x, const HamiltonElement& u) {
    return u * x * invert(u);
}

Coords deploy_coords(const HamiltonElement& x, const HamiltonElement& xh,
                     const HamiltonElement& yh) {
    const FieldDescriptor& f = x.params()->field();
    HamiltonElement prod = xh * yh;
    const std::array<const HamiltonElement*, 4> cols = {nullptr, &xh, &yh, &prod};
    std::array<std::array<CenterPoly, 4>, 4> M{
        {{CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)},
         {CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)},
         {CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)},
         {CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)}}};
    M[0][0] = CenterPoly::one(f);
    for (int j = 1; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            M[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                cols[static_cast<size_t>(j)]->coords()[static_cast<size_t>(i)];

    CenterPoly det = det4(M, f);
    if (det.deg() != Degree::finite(0))
        throw DomainError("(1, x, y, xy) is not a basis: determinant " + det.to_string("w"));
    FieldValue det_inv = det.as_constant().inverse();

    // Cramer: coordinate j of x is det(M with column j replaced by x) / det.
    Coords out = zero_coords(f);
    for (int j = 0; j < 4; ++j) {
        std::array<std::array<CenterPoly, 4>, 4> Mj = M;
        for (int i = 0; i < 4; ++i)
            Mj[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                x.coords()[static_cast<size_t>(i)];
        out[static_cast<size_t>(j)] = det4(Mj, f).scaled(det_inv);
    }

    // The solution must reproduce x exactly.
    HamiltonElement rebuilt = HamiltonElement::from_center(x.params(), out[0]) +
                              xh.scaled(out[1]) + yh.scaled(out[2]) + prod.scaled(out[3]);
    if (!(rebuilt == x)) throw std::logic_error("deployed coordinates failed to rebuild x");
    return out;
}

PolyMat4 model_matrix_a(const AlgebraParams& P) {
    const FieldDescriptor& f = P.field();
    auto c = [&](const FieldValue& v) { return CenterPoly::constant(v); };
    PolyMat4 A(f);
    A.at(0, 1) = c(-P.nu_p());
    A.at(1, 0) = CenterPoly::one(f);
    A.at(1, 1) = c(P.tau_p());
    A.at(2, 3) = c(-P.nu_p());
    A.at(3, 2) = CenterPoly::one(f);
    A.at(3, 3) = c(P.tau_p());
    return A;
}

PolyMat4 model_matrix_b(const AlgebraParams& P) {
    const FieldDescriptor& f = P.field();
    CenterPoly t = CenterPoly::variable(f);
    auto c = [&](const FieldValue& v) { return CenterPoly::constant(v); };
    PolyMat4 B(f);
    B.at(0, 1) = -t;
    B.at(0, 2) = c(-P.nu_q());
    B.at(0, 3) = c(-(P.tau_p() * P.nu_q()));
    B.at(1, 1) = c(P.tau_q());
    B.at(1, 3) = c(P.nu_q());
    B.at(2, 0) = CenterPoly::one(f);
    B.at(2, 1) = c(P.tau_p());
    B.at(2, 2) = c(P.tau_q());
    B.at(2, 3) = c(P.tau_p() * P.tau_q()) - t;
    B.at(3, 1) = -CenterPoly::one(f);
    return B;
}

PolyMat4 mat4_embedding(const HamiltonElement& x) {
    const AlgebraParams& P = *x.params();
    const FieldDescriptor& f = P.field();
    PolyMat4 A = model_matrix_a(P), B = model_matrix_b(P);
    const std::array<PolyMat4, 4> img = {PolyMat4::identity(f), A, B, A * B};
    PolyMat4 out(f);
    for (int k = 0; k < 4; ++k)
        out = out + PolyMat4::scalar(x.coords()[static_cast<size_t>(k)]) *
                        img[static_cast<size_t>(k)];
    return out;
}

} // namespace hamilton
