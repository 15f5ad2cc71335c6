#pragma once

#include "hamilton/core.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hamilton {

enum class Side { A, B };

Side opposite(Side s);
std::string side_name(Side s); // "a" or "b"

// Nonscalar element lambda*g + mu of a basic subalgebra, g the side's
// generator. lambda != 0 always.
struct BasicVector {
    Side side;
    FieldValue lambda, mu;

    BasicVector(Side s, FieldValue l, FieldValue m);

    HamiltonElement element(const ParamsPtr& P) const;
    bool proportional_to(const BasicVector& y) const;
    bool operator==(const BasicVector& y) const;
    bool operator!=(const BasicVector& y) const { return !(*this == y); }
    std::string to_string() const;
};

// One factor of a reduced decomposition. Basic factors are units of their
// subalgebra, stored monic (lambda = 1). Semi-basic factors are
//   split (tr zd = 1):      1 + zd * (parameter * (<zd,h> - h))^*,
//   degenerate (tr zd = 0): 1 + parameter * zd,
// with h the opposite generator and zd in canonical zero-divisor form;
// their norm is exactly 1.
struct UnitFactor {
    enum class Kind { Basic, SemiBasic };

    Kind kind;
    Side side;
    BasicVector vec;      // Basic: the unit; SemiBasic: the zero divisor
    CenterPoly parameter; // SemiBasic only; zero for Basic

    static UnitFactor basic(const BasicVector& v);
    static UnitFactor semi_basic(const BasicVector& zd, const CenterPoly& r);

    HamiltonElement element(const ParamsPtr& P) const;
    bool operator==(const UnitFactor& y) const;
    bool operator!=(const UnitFactor& y) const { return !(*this == y); }
    std::string to_string() const;
    std::string to_json() const;
};

// scalar * factors[0] * ... * factors[n-1], with maximal same-side runs
// alternating sides and each run shaped as one optional basic factor
// followed by a semi-basic chain (alternating attached idempotents on a
// split side, a single merged factor on a degenerate side).
struct ReducedDecomposition {
    FieldValue scalar;
    std::vector<UnitFactor> factors;

    HamiltonElement product(const ParamsPtr& P) const;
    std::string to_string() const;
    std::string to_json() const;
};

// Outcome of the plain retracing loop. On success result is basic and
// equals (g_1...g_k)^-1 x (g_1...g_k) for the conjugators g_i; on failure
// result is the vector the loop stopped at, conjugators the prefix applied
// so far, and zero_divisor_leading its leading vector in canonical
// zero-divisor form.
struct RetraceOutcome {
    bool success;
    HamiltonElement result;
    std::vector<BasicVector> conjugators;
    std::optional<BasicVector> zero_divisor_leading;
};

// Same contract with mixed basic / semi-basic conjugator factors; failure
// happens exactly on special degenerate vectors and witness is the
// attached zero divisor.
struct RefinedOutcome {
    bool success;
    HamiltonElement result;
    std::vector<UnitFactor> conjugators;
    std::optional<BasicVector> witness;
};

// Automorphism determined by basic-vector images of the generators;
// positive means image_of_a lies on the A side. Images satisfy
// p(image_of_a) = 0 and q(image_of_b) = 0.
struct BasicAut {
    BasicVector image_of_a;
    BasicVector image_of_b;

    bool negative() const { return image_of_a.side == Side::B; }
    bool operator==(const BasicAut& y) const;
    bool operator!=(const BasicAut& y) const { return !(*this == y); }
    std::string to_string() const;
};

struct BasicAutEntry {
    std::string name;
    BasicAut aut;
    bool fixes_omega;
};

// One-parameter family lambda in F^x -> member(lambda).
struct BasicAutFamily {
    std::string name;
    std::string description;
    bool negative;
    std::function<BasicAut(const FieldValue&)> member;
};

struct BasicAutCatalog {
    std::vector<BasicAutEntry> entries;
    std::vector<BasicAutFamily> families;

    bool finite() const { return families.empty(); }
    std::string summary() const;
};

// Conjugacy class of a quadratic nonscalar element.
//   Basic: the class contains the unique basic vector `attached`.
//   Sharp: minimal polynomial (t - shift)^2 and the class is pinned by
//     `attached`, `shift` and `modular_norm`, where `attached` is either
//     the attached nontrivial basic idempotent (tr = 1) or, when the
//     normalization of x - shift retraces to a degenerate-side basic
//     vector, that exact square-zero vector (tr = 0).
struct ConjClassInvariant {
    enum class Kind { Basic, Sharp };

    CenterPoly minimal_poly;
    Kind kind;
    BasicVector attached;
    std::optional<FieldValue> shift;       // Sharp only
    std::optional<CenterPoly> modular_norm; // Sharp only

    bool operator==(const ConjClassInvariant& y) const;
    bool operator!=(const ConjClassInvariant& y) const { return !(*this == y); }
    std::string to_string() const;
};

// d_side(x) = max(deg <g, x>, deg tr(x)) for the side generator g: the
// maximum of deg <v, x> over nonscalar v in the side's subalgebra.
Degree distance(const HamiltonElement& x, Side side);
// max of the two distances; quadratic nonscalar x has delta(x) >= 1 with
// equality iff x is basic.
Degree delta(const HamiltonElement& x);

// Membership in F + F a or F + F b; scalars count as basic.
bool is_basic(const HamiltonElement& x);

// Leading vector of a quadratic nonscalar x, monic in the generator.
// Satisfies deg(x_1) < deg(x_g) in the basis (1, v, h, vh) deployed from
// the returned v; validated, hard error on violation.
BasicVector leading_vector(const HamiltonElement& x);

// tr != 0 scales to the idempotent, tr = 0 to monic. x must be a basic
// zero divisor.
BasicVector canonical_zero_divisor(const BasicVector& x, const ParamsPtr& P);

// Plain retracing: conjugate by the leading vector while it is a unit.
RetraceOutcome retrace(const HamiltonElement& x, int budget = 10000);

// Norm-1 unit 1 + alpha y^* (split, y = r(<alpha,h> - h)) or 1 + r alpha
// (degenerate). alpha must be a canonical zero divisor.
HamiltonElement semi_basic_unit(const ParamsPtr& P, const BasicVector& alpha,
                                const CenterPoly& r);

// Retracing with semi-basic steps on zero-divisor leading vectors; fails
// exactly on special degenerate vectors.
RefinedOutcome refined_retrace(const HamiltonElement& x, int budget = 10000);

// Reduced decomposition of a unit: g = scalar * product(factors).
ReducedDecomposition factor_unit(const HamiltonElement& g, int budget = 10000);

// Generator of the rank-1 C-module alpha^sharp = { x : alpha^* x = 0 and
// x alpha = 0 }, computed by fraction-free elimination on the 8 coordinate
// equations and scaled so the ab coordinate is 1. alpha must be a
// nontrivial basic idempotent.
HamiltonElement sharp_generator(const ParamsPtr& P, const BasicVector& alpha);

// The attached canonical zero divisor when x is special degenerate
// (x - lambda in C alpha resp. alpha^sharp, x nonbasic), else empty.
std::optional<BasicVector> is_special_degenerate(const HamiltonElement& x);

// Splits the automorphism a -> image_a, b -> image_b as inner-after-basic:
// image_a = g B(a) g^-1 and image_b = g B(b) g^-1, both re-verified by
// exact multiplication. DomainError when the images fail the screens or do
// not define an automorphism.
std::pair<BasicAut, HamiltonElement> decompose_automorphism(
    const HamiltonElement& image_a, const HamiltonElement& image_b, int budget = 10000);

// The image of x under the basic automorphism: coordinates are composed
// with <image_a, image_b> and attached to the image basis.
HamiltonElement apply_basic_aut(const ParamsPtr& P, const BasicAut& aut,
                                const HamiltonElement& x);

// All basic automorphisms: a finite entry list when neither p nor q has a
// double root, otherwise one-parameter families (plus the identity entry).
BasicAutCatalog basic_aut_catalog(const ParamsPtr& P);

// Conjugacy class of a quadratic nonscalar element.
ConjClassInvariant conjugacy_invariant(const HamiltonElement& x, int budget = 10000);

} // namespace hamilton
