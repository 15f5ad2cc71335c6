#pragma once

#include "hamilton/poly.hpp"

#include <array>
#include <memory>

namespace hamilton {

class AlgebraParams;
using ParamsPtr = std::shared_ptr<const AlgebraParams>;

// 4x4 matrix over F[t]; carrier of the matrix-model embedding.
class PolyMat4 {
public:
    explicit PolyMat4(const FieldDescriptor& f);
    static PolyMat4 identity(const FieldDescriptor& f);
    static PolyMat4 scalar(const CenterPoly& c);

    CenterPoly& at(int r, int c) { return m_[r][c]; }
    const CenterPoly& at(int r, int c) const { return m_[r][c]; }
    const FieldDescriptor& field() const { return field_; }

    friend PolyMat4 operator+(const PolyMat4& x, const PolyMat4& y);
    friend PolyMat4 operator-(const PolyMat4& x, const PolyMat4& y);
    friend PolyMat4 operator*(const PolyMat4& x, const PolyMat4& y);
    bool operator==(const PolyMat4& y) const;
    bool is_zero() const;
    std::string to_string() const;

private:
    FieldDescriptor field_;
    std::array<std::array<CenterPoly, 4>, 4> m_;
};

// Coordinates in the module basis (1, a, b, ab) over C = F[w].
using Coords = std::array<CenterPoly, 4>;

// W_{p,q} = F<a,b> / (p(a), q(b)) for monic quadratics
// p = t^2 - tau_p t + nu_p and q = t^2 - tau_q t + nu_q.
// Instances are immutable and shared; the multiplication table is derived
// once by noncommutative word rewriting and checked against the
// matrix-model embedding before the instance becomes visible.
class AlgebraParams {
public:
    static ParamsPtr make(const FieldDescriptor& f, const FieldValue& tau_p,
                          const FieldValue& nu_p, const FieldValue& tau_q,
                          const FieldValue& nu_q);
    // p, q monic of degree 2 in t.
    static ParamsPtr make(const CenterPoly& p, const CenterPoly& q);

    const FieldDescriptor& field() const { return field_; }
    const FieldValue& tau_p() const { return tau_p_; }
    const FieldValue& nu_p() const { return nu_p_; }
    const FieldValue& tau_q() const { return tau_q_; }
    const FieldValue& nu_q() const { return nu_q_; }
    CenterPoly p_poly() const;
    CenterPoly q_poly() const;
    // Fundamental polynomial: t^2 - tau_p tau_q t - 4 nu_p nu_q
    //                          + tau_p^2 nu_q + tau_q^2 nu_p.
    const CenterPoly& lambda_poly() const { return lambda_; }

    // Coordinates of e_i * e_j in the basis (1, a, b, ab); every entry has
    // degree <= 1 in w.
    const Coords& table(int i, int j) const { return table_[i][j]; }

    bool same_algebra(const AlgebraParams& y) const;
    std::string to_string() const;

private:
    AlgebraParams(FieldDescriptor f, FieldValue tp, FieldValue np, FieldValue tq, FieldValue nq);
    void derive_table();
    void validate_table_against_matrix_model() const;

    FieldDescriptor field_;
    FieldValue tau_p_, nu_p_, tau_q_, nu_q_;
    CenterPoly lambda_;
    std::array<std::array<Coords, 4>, 4> table_;
};

// One element of W_{p,q}, a C-linear combination of (1, a, b, ab).
class HamiltonElement {
public:
    HamiltonElement(ParamsPtr params, CenterPoly x1, CenterPoly xa, CenterPoly xb, CenterPoly xab);

    static HamiltonElement zero(const ParamsPtr& P);
    static HamiltonElement one(const ParamsPtr& P);
    static HamiltonElement gen_a(const ParamsPtr& P);
    static HamiltonElement gen_b(const ParamsPtr& P);
    static HamiltonElement omega(const ParamsPtr& P);
    static HamiltonElement scalar(const ParamsPtr& P, const FieldValue& c);
    static HamiltonElement from_center(const ParamsPtr& P, const CenterPoly& c);

    const ParamsPtr& params() const { return params_; }
    const CenterPoly& c1() const { return x_[0]; }
    const CenterPoly& ca() const { return x_[1]; }
    const CenterPoly& cb() const { return x_[2]; }
    const CenterPoly& cab() const { return x_[3]; }
    const Coords& coords() const { return x_; }

    bool is_zero() const;
    bool is_central() const;  // in C = F[w]
    bool is_scalar() const;   // in F
    CenterPoly central_part() const; // DomainError unless central

    HamiltonElement operator-() const;
    friend HamiltonElement operator+(const HamiltonElement& x, const HamiltonElement& y);
    friend HamiltonElement operator-(const HamiltonElement& x, const HamiltonElement& y);
    friend HamiltonElement operator*(const HamiltonElement& x, const HamiltonElement& y);
    HamiltonElement& operator+=(const HamiltonElement& y) { return *this = *this + y; }
    HamiltonElement& operator-=(const HamiltonElement& y) { return *this = *this - y; }
    HamiltonElement& operator*=(const HamiltonElement& y) { return *this = *this * y; }
    HamiltonElement scaled(const CenterPoly& c) const;
    HamiltonElement scaled(const FieldValue& c) const;

    bool operator==(const HamiltonElement& y) const;
    bool operator!=(const HamiltonElement& y) const { return !(*this == y); }

    // "(w) + (2)a + (-1)ab"; coordinate polynomials use variable w.
    std::string to_string() const;
    // JSON object {"c1": [...], "ca": [...], "cb": [...], "cab": [...]},
    // coefficients lowest-first as strings.
    std::string to_json() const;

private:
    ParamsPtr params_;
    Coords x_;
};

HamiltonElement star(const HamiltonElement& x);
CenterPoly trace(const HamiltonElement& x);
CenterPoly norm(const HamiltonElement& x);
CenterPoly inner(const HamiltonElement& x, const HamiltonElement& y);
HamiltonElement commutator(const HamiltonElement& x, const HamiltonElement& y);

// det of the Gram matrix (inner(x_i, x_j)) of four elements.
CenterPoly gram_det(const std::array<HamiltonElement, 4>& xs);

bool is_unit(const HamiltonElement& x);
HamiltonElement invert(const HamiltonElement& x); // DomainError unless unit
bool is_zero_divisor(const HamiltonElement& x);   // nonzero with norm 0
// For a nonzero zero divisor x, a nonzero y with x y = y x* ... = 0; y = star(x).
HamiltonElement annihilator(const HamiltonElement& x);

// Quadratic over F: trace and norm both constant.
bool is_quadratic(const HamiltonElement& x);
// t^2 - tr(x) t + N(x) for quadratic x; the minimal polynomial of any
// nonscalar quadratic element (scalars give the square of theirs).
CenterPoly minimal_quadratic(const HamiltonElement& x);

// x = s * xn with s the monic gcd of the coordinates; x must be nonzero.
std::pair<CenterPoly, HamiltonElement> normalize(const HamiltonElement& x);

// u x u^-1 for a unit u.
HamiltonElement conjugate(const HamiltonElement& x, const HamiltonElement& u);

// Coordinates of x in the deployed basis (1, xh, yh, xh*yh); DomainError
// unless that quadruple is a C-basis (change-of-basis det in F^x).
Coords deploy_coords(const HamiltonElement& x, const HamiltonElement& xh,
                     const HamiltonElement& yh);

// The embedding into Mat4(F[t]) sending w to t*I.
PolyMat4 mat4_embedding(const HamiltonElement& x);
// Images of the generators under that embedding.
PolyMat4 model_matrix_a(const AlgebraParams& P);
PolyMat4 model_matrix_b(const AlgebraParams& P);

} // namespace hamilton
