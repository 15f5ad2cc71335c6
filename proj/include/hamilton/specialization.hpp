#pragma once

#include "hamilton/core.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace hamilton {

// L = F[t]/(modulus) for a monic irreducible modulus; elements are their
// reduced representatives of degree < deg(modulus).
class ResidueField {
public:
    explicit ResidueField(CenterPoly modulus); // DomainError unless monic irreducible

    const CenterPoly& modulus() const { return modulus_; }
    const FieldDescriptor& base_field() const { return modulus_.field(); }
    long long degree() const { return modulus_.deg().value(); }
    // p^degree for prime fields, empty over the rationals.
    std::optional<Int> size() const;

    CenterPoly reduce(const CenterPoly& f) const;
    CenterPoly zero() const { return CenterPoly::zero(base_field()); }
    CenterPoly one() const { return CenterPoly::one(base_field()); }
    CenterPoly omega() const; // class of the variable
    bool is_zero(const CenterPoly& f) const { return reduce(f).is_zero(); }

    CenterPoly add(const CenterPoly& f, const CenterPoly& g) const;
    CenterPoly sub(const CenterPoly& f, const CenterPoly& g) const;
    CenterPoly neg(const CenterPoly& f) const;
    CenterPoly mul(const CenterPoly& f, const CenterPoly& g) const;
    CenterPoly inverse(const CenterPoly& f) const; // DomainError on zero

    // Every element, reduced; prime fields only (DomainError over the
    // rationals), BudgetExhausted when the field has more than cap elements.
    std::vector<CenterPoly> enumerate(long long cap) const;

    std::string to_string(const CenterPoly& f) const;

private:
    CenterPoly modulus_;
};

// Element of a specialized algebra: coordinates in (1, a, b, ab) over the
// residue field, stored reduced.
struct SpecElement {
    std::array<CenterPoly, 4> c;

    bool operator==(const SpecElement& y) const { return c == y.c; }
    bool operator!=(const SpecElement& y) const { return !(*this == y); }
};

// W_{p,q}/(r(w)): free of rank 4 over L = F[t]/(r) with the induced
// multiplication, star, trace, norm and pairing. The ideal (r(w)) is
// star-invariant, so all of those descend.
class SpecializedAlgebra {
public:
    SpecializedAlgebra(ParamsPtr params, const CenterPoly& r);

    const ParamsPtr& params() const { return params_; }
    const ResidueField& residue() const { return residue_; }
    // Whether r divides the fundamental polynomial Lambda_{p,q}; if not, the
    // quotient is a quaternion algebra over L.
    bool r_divides_lambda() const { return divides_lambda_; }

    SpecElement zero() const;
    SpecElement one() const;
    SpecElement gen_a() const;
    SpecElement gen_b() const;
    SpecElement scalar(const CenterPoly& c) const;
    SpecElement from_coords(const std::array<CenterPoly, 4>& coords) const;
    SpecElement reduce(const HamiltonElement& x) const; // same params required

    bool is_zero(const SpecElement& x) const;
    SpecElement add(const SpecElement& x, const SpecElement& y) const;
    SpecElement sub(const SpecElement& x, const SpecElement& y) const;
    SpecElement neg(const SpecElement& x) const;
    SpecElement scale(const CenterPoly& c, const SpecElement& x) const;
    SpecElement mul(const SpecElement& x, const SpecElement& y) const;
    SpecElement star(const SpecElement& x) const;
    CenterPoly trace(const SpecElement& x) const;
    CenterPoly norm(const SpecElement& x) const;
    CenterPoly inner(const SpecElement& x, const SpecElement& y) const;

    // det of the Gram matrix of (1, a, b, ab) over L; equals
    // Lambda(omega-bar)^2, nonzero exactly when gcd(r, Lambda) = 1.
    CenterPoly gram_det() const;

    std::string to_string(const SpecElement& x) const;
    std::string to_json(const SpecElement& x) const;

private:
    ParamsPtr params_;
    ResidueField residue_;
    bool divides_lambda_;
    std::vector<Coords> table_; // reduced product e_i e_j at index 4i + j
};

SpecializedAlgebra specialize(const ParamsPtr& params, const CenterPoly& r);

// Radical structure for r | Lambda: dimension and basis of the radical R_r
// of the induced pairing (kernel of the Gram matrix) and the dimension of
// the norm radical {x in R_r : N_r(x) = 0}. The two dimensions agree away
// from characteristic 2.
struct RadicalReport {
    int dim_radical;
    int dim_norm_radical;
    std::vector<SpecElement> basis; // of the radical, reduced echelon form

    std::string to_json(const SpecializedAlgebra& spec) const;
};

RadicalReport radical_report(const SpecializedAlgebra& spec); // DomainError if gcd(r, Lambda) = 1

// Maximal ideals of W_{p,q} containing r(w), for r | Lambda: one or two.
// Two happen exactly when p or q splits with simple roots over L; the two
// ideals are then returned as explicit hyperplane bases, exchanged by star.
struct MaximalIdealReport {
    int count;
    std::vector<std::vector<SpecElement>> ideals; // two bases when count == 2

    std::string to_json(const SpecializedAlgebra& spec) const;
};

MaximalIdealReport maximal_ideals_above(const ParamsPtr& params, const CenterPoly& r);

// Bounded search for a nonzero isotropic vector of a quaternion
// specialization (gcd(r, Lambda) = 1). Prime fields: exhaustive projective
// search, decisive while |L| <= bound. Rationals: integer coordinate
// vectors with entries of absolute value <= bound; exhaustion proves
// nothing, so the result is flagged unknown.
struct SplitSearchResult {
    std::optional<SpecElement> witness; // nonzero with norm zero
    bool unknown;
};

SplitSearchResult split_witness(const SpecializedAlgebra& spec, long long bound);

// 2x2 matrix over F; carrier of the two-idempotent generation demo.
class FieldMat2 {
public:
    explicit FieldMat2(const FieldDescriptor& f); // zero matrix
    static FieldMat2 identity(const FieldDescriptor& f);

    FieldValue& at(int r, int c) { return m_[static_cast<size_t>(r)][static_cast<size_t>(c)]; }
    const FieldValue& at(int r, int c) const {
        return m_[static_cast<size_t>(r)][static_cast<size_t>(c)];
    }
    const FieldDescriptor& field() const { return field_; }

    friend FieldMat2 operator+(const FieldMat2& x, const FieldMat2& y);
    friend FieldMat2 operator*(const FieldMat2& x, const FieldMat2& y);
    bool operator==(const FieldMat2& y) const;
    bool operator!=(const FieldMat2& y) const { return !(*this == y); }
    std::string to_string() const;

private:
    FieldDescriptor field_;
    std::array<std::array<FieldValue, 2>, 2> m_;
};

// Two idempotent 2x2 matrices generating Mat2(F) as an algebra, built from
// the specialization of W_{t^2-t, t^2-t} at w = 2 and verified; empty over
// GF(2), where no such pair exists.
std::optional<std::pair<FieldMat2, FieldMat2>> laffey_idempotents(const FieldDescriptor& f);

// 2x2 matrix over F[w]; carrier of the p = q = t^2 matrix demo.
class PolyMat2 {
public:
    explicit PolyMat2(const FieldDescriptor& f); // zero matrix
    static PolyMat2 identity(const FieldDescriptor& f);

    CenterPoly& at(int r, int c) { return m_[static_cast<size_t>(r)][static_cast<size_t>(c)]; }
    const CenterPoly& at(int r, int c) const {
        return m_[static_cast<size_t>(r)][static_cast<size_t>(c)];
    }
    const FieldDescriptor& field() const { return field_; }

    friend PolyMat2 operator+(const PolyMat2& x, const PolyMat2& y);
    friend PolyMat2 operator*(const PolyMat2& x, const PolyMat2& y);
    bool operator==(const PolyMat2& y) const;
    bool operator!=(const PolyMat2& y) const { return !(*this == y); }
    bool is_zero() const;
    std::string to_string() const;

private:
    FieldDescriptor field_;
    std::array<std::array<CenterPoly, 2>, 2> m_;
};

// The embedding of W_{t^2, t^2} into Mat2(F[w]) with a -> E21 and
// b -> -w E12; DomainError for any other parameters.
PolyMat2 mat2_demo_embedding(const HamiltonElement& x);

} // namespace hamilton
