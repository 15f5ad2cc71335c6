#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hamilton/specialization.hpp"

#include <random>

using namespace hamilton;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();
const FieldDescriptor F2 = FieldDescriptor::prime_field(2);
const FieldDescriptor F3 = FieldDescriptor::prime_field(3);
const FieldDescriptor F5 = FieldDescriptor::prime_field(5);

ParamsPtr params(const FieldDescriptor& f, const std::string& p, const std::string& q) {
    return AlgebraParams::make(parse_poly(p, f), parse_poly(q, f));
}

CenterPoly poly(const FieldDescriptor& f, const std::string& s) { return parse_poly(s, f); }

FieldValue rv(std::mt19937& rng, const FieldDescriptor& f) {
    if (f.is_rationals()) {
        std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
        return FieldValue::from_rational(f, Rat(num(rng), den(rng)));
    }
    std::uniform_int_distribution<long> r(0, static_cast<long>(f.characteristic()) - 1);
    return FieldValue::from_integer(f, r(rng));
}

CenterPoly rpoly(std::mt19937& rng, const FieldDescriptor& f, int max_deg = 2) {
    std::uniform_int_distribution<int> dd(-1, max_deg);
    int d = dd(rng);
    std::vector<FieldValue> c;
    for (int i = 0; i <= d; ++i) c.push_back(rv(rng, f));
    return CenterPoly(f, std::move(c));
}

HamiltonElement relem(std::mt19937& rng, const ParamsPtr& P, int max_deg = 2) {
    const FieldDescriptor& f = P->field();
    return HamiltonElement(P, rpoly(rng, f, max_deg), rpoly(rng, f, max_deg),
                           rpoly(rng, f, max_deg), rpoly(rng, f, max_deg));
}

SpecElement rspec(std::mt19937& rng, const SpecializedAlgebra& spec) {
    const FieldDescriptor& f = spec.params()->field();
    int cap = std::max<int>(0, static_cast<int>(spec.residue().degree()) - 1);
    return spec.from_coords({rpoly(rng, f, cap), rpoly(rng, f, cap), rpoly(rng, f, cap),
                             rpoly(rng, f, cap)});
}

struct SpecCase {
    ParamsPtr P;
    CenterPoly r;
};

// Residues of both kinds (quaternion and degenerate) over every supported
// base field, including degree-2 residue fields.
std::vector<SpecCase> spec_sweep() {
    std::vector<SpecCase> out;
    auto add = [&](const FieldDescriptor& f, const std::string& p, const std::string& q,
                   const std::string& r) {
        ParamsPtr P = params(f, p, q);
        out.push_back({P, poly(f, r)});
    };
    add(Q, "t^2+1", "t^2+1", "t");       // quaternion, nonsplit
    add(Q, "t^2+1", "t^2+1", "t-2");     // r | Lambda
    add(Q, "t^2-t", "t^2-t", "t");       // r | Lambda
    add(Q, "t^2+1", "t^2+1", "t^2-2");   // quaternion over Q(sqrt 2)
    add(Q, "t^2+2", "t^2-t", "t^2+2");   // r = Lambda, degree 2
    add(F5, "t^2-t", "t^2-t", "t-2");    // split quaternion
    add(F5, "t^2-t", "t^2-t", "t");      // r | Lambda
    add(F5, "t^2", "t^2", "t");          // r | Lambda, double roots
    add(F5, "t^2-t", "t^2-t", "t^2+2");  // quaternion over GF(25)
    add(F3, "t^2+1", "t^2+1", "t");      // split quaternion
    add(F2, "t^2+t", "t^2+t", "t");      // r | Lambda, characteristic 2
    add(F2, "t^2", "t^2", "t");          // r | Lambda, characteristic 2
    add(F2, "t^2+t+1", "t^2+t+1", "t+1"); // r | Lambda, irreducible sides
    add(F2, "t^2+t+1", "t^2+1", "t");    // quaternion over GF(2), Lambda = t^2+1
    return out;
}

} // namespace

TEST_CASE("residue fields: arithmetic and reduction") {
    for (auto [f, rs] : std::vector<std::pair<FieldDescriptor, std::string>>{
             {Q, "t-2"}, {Q, "t^2-2"}, {F5, "t-2"}, {F5, "t^2+2"}, {F2, "t^2+t+1"}}) {
        ResidueField L(poly(f, rs));
        std::mt19937 rng(11);
        CHECK(L.is_zero(L.reduce(L.modulus())));
        CHECK(L.reduce(L.one()) == CenterPoly::one(f));
        for (int i = 0; i < 50; ++i) {
            CenterPoly x = L.reduce(rpoly(rng, f, 3));
            CenterPoly y = L.reduce(rpoly(rng, f, 3));
            CHECK(L.add(x, y) == L.reduce(x + y));
            CHECK(L.mul(x, y) == L.mul(y, x));
            CHECK(L.is_zero(L.add(x, L.neg(x))));
            if (!L.is_zero(x)) CHECK(L.mul(x, L.inverse(x)) == L.one());
        }
    }

    ResidueField L(poly(F5, "t-2"));
    CHECK(L.degree() == 1);
    CHECK(L.size().value() == 5);
    CHECK(L.omega() == CenterPoly::constant(FieldValue::from_integer(F5, 2)));
    CHECK_THROWS_AS(L.inverse(CenterPoly::zero(F5)), DomainError);

    ResidueField L2(poly(Q, "t^2-2"));
    CHECK(L2.degree() == 2);
    CHECK(!L2.size().has_value());
    CHECK(L2.omega() == CenterPoly::variable(Q));
    // (1 + w)(w - 1) = w^2 - 1 = 1 in Q[w]/(w^2 - 2)
    CHECK(L2.inverse(poly(Q, "t+1")) == poly(Q, "t-1"));

    CHECK_THROWS_AS(ResidueField(poly(Q, "t^2-4")), DomainError);
    CHECK_THROWS_AS(ResidueField(poly(Q, "3")), DomainError);
    CHECK_THROWS_AS(ResidueField(poly(F5, "2t-1")), DomainError);
}

TEST_CASE("residue fields: enumeration") {
    ResidueField L9(poly(F3, "t^2+1"));
    std::vector<CenterPoly> all = L9.enumerate(100);
    CHECK(all.size() == 9);
    for (size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i] == L9.reduce(all[i]));
        for (size_t j = i + 1; j < all.size(); ++j) CHECK(!(all[i] == all[j]));
    }
    CHECK_THROWS_AS(ResidueField(poly(F5, "t^2+2")).enumerate(10), BudgetExhausted);
    CHECK_THROWS_AS(ResidueField(poly(Q, "t-1")).enumerate(10), DomainError);
}

TEST_CASE("specialization: construction and lambda detection") {
    ParamsPtr P = params(F5, "t^2-t", "t^2-t");
    SpecializedAlgebra s1 = specialize(P, poly(F5, "t-2"));
    CHECK(!s1.r_divides_lambda()); // Lambda = t^2 - t, Lambda(2) = 2
    SpecializedAlgebra s2 = specialize(P, poly(F5, "t"));
    CHECK(s2.r_divides_lambda());

    ParamsPtr PQ = params(Q, "t^2+1", "t^2+1");
    CHECK(specialize(PQ, poly(Q, "t-2")).r_divides_lambda()); // Lambda = t^2 - 4
    CHECK(!specialize(PQ, poly(Q, "t")).r_divides_lambda());
    CHECK_THROWS_AS(specialize(PQ, poly(Q, "t^2-4")), DomainError); // reducible
    CHECK_THROWS_AS(specialize(PQ, poly(F5, "t")), FieldMismatchError);

    HamiltonElement foreign = HamiltonElement::gen_a(params(Q, "t^2-2", "t^2+1"));
    CHECK_THROWS_AS(s1.reduce(foreign), DomainError);
}

TEST_CASE("specialization: reduction is a star ring map") {
    std::mt19937 rng(23);
    for (const SpecCase& sc : spec_sweep()) {
        SpecializedAlgebra spec(sc.P, sc.r);
        const ResidueField& L = spec.residue();
        CHECK(spec.reduce(HamiltonElement::one(sc.P)) == spec.one());
        CHECK(spec.reduce(HamiltonElement::gen_a(sc.P)) == spec.gen_a());
        CHECK(spec.reduce(HamiltonElement::omega(sc.P)) == spec.scalar(L.omega()));
        for (int i = 0; i < 12; ++i) {
            HamiltonElement x = relem(rng, sc.P), y = relem(rng, sc.P);
            CHECK(spec.reduce(x + y) == spec.add(spec.reduce(x), spec.reduce(y)));
            CHECK(spec.reduce(x * y) == spec.mul(spec.reduce(x), spec.reduce(y)));
            CHECK(spec.reduce(star(x)) == spec.star(spec.reduce(x)));
            CHECK(spec.trace(spec.reduce(x)) == L.reduce(trace(x)));
            CHECK(spec.norm(spec.reduce(x)) == L.reduce(norm(x)));
            CHECK(spec.inner(spec.reduce(x), spec.reduce(y)) == L.reduce(inner(x, y)));
        }
    }
}

TEST_CASE("specialization: norm stays multiplicative") {
    std::mt19937 rng(31);
    for (const SpecCase& sc : spec_sweep()) {
        SpecializedAlgebra spec(sc.P, sc.r);
        const ResidueField& L = spec.residue();
        for (int i = 0; i < 200; ++i) {
            SpecElement x = rspec(rng, spec), y = rspec(rng, spec);
            CHECK(spec.norm(spec.mul(x, y)) == L.mul(spec.norm(x), spec.norm(y)));
        }
    }
}

TEST_CASE("specialization: Gram determinant is the reduced Lambda squared") {
    for (const SpecCase& sc : spec_sweep()) {
        SpecializedAlgebra spec(sc.P, sc.r);
        const ResidueField& L = spec.residue();
        CenterPoly lam = L.reduce(sc.P->lambda_poly());
        CHECK(spec.gram_det() == L.mul(lam, lam));
        CHECK(spec.r_divides_lambda() == L.is_zero(lam));
        if (!spec.r_divides_lambda()) CHECK(!L.is_zero(spec.gram_det()));
    }
}

TEST_CASE("radical report: frozen dimensions") {
    // dim 2 with both side polynomials split at omega = 0
    for (const FieldDescriptor& f : {Q, F5, F2}) {
        ParamsPtr P = params(f, "t^2-t", "t^2-t");
        RadicalReport rep = radical_report(specialize(P, poly(f, "t")));
        CHECK(rep.dim_radical == 2);
        CHECK(rep.dim_norm_radical == 2);
        CHECK(rep.basis.size() == 2);
    }
    // dim 3 with double roots away from characteristic 2
    {
        ParamsPtr P = params(F5, "t^2", "t^2");
        RadicalReport rep = radical_report(specialize(P, poly(F5, "t")));
        CHECK(rep.dim_radical == 3);
        CHECK(rep.dim_norm_radical == 3);
    }
    // characteristic 2 separates the two radicals
    {
        ParamsPtr P = params(F2, "t^2", "t^2");
        RadicalReport rep = radical_report(specialize(P, poly(F2, "t")));
        CHECK(rep.dim_radical == 4);
        CHECK(rep.dim_norm_radical == 3);
    }
    CHECK_THROWS_AS(radical_report(specialize(params(F5, "t^2-t", "t^2-t"), poly(F5, "t-2"))),
                    DomainError);
}

TEST_CASE("radical report: golden JSON") {
    ParamsPtr P = params(F5, "t^2-t", "t^2-t");
    SpecializedAlgebra spec = specialize(P, poly(F5, "t"));
    RadicalReport rep = radical_report(spec);
    CHECK(rep.to_json(spec) ==
          "{\"dim_radical\":2,\"dim_norm_radical\":2,\"basis\":["
          "{\"c1\":[],\"ca\":[\"4\"],\"cb\":[\"1\"],\"cab\":[]},"
          "{\"c1\":[],\"ca\":[\"4\"],\"cb\":[],\"cab\":[\"1\"]}]}");
}

TEST_CASE("radical report: the radical is a null two-sided ideal") {
    std::mt19937 rng(43);
    for (const SpecCase& sc : spec_sweep()) {
        SpecializedAlgebra spec(sc.P, sc.r);
        if (!spec.r_divides_lambda()) continue;
        const ResidueField& L = spec.residue();
        RadicalReport rep = radical_report(spec);
        CHECK(rep.dim_radical >= 2);
        CHECK(rep.dim_radical <= 4);
        CHECK(rep.dim_norm_radical >= rep.dim_radical - 1);
        bool char2 = !sc.P->field().is_rationals() && sc.P->field().characteristic() == 2;
        if (!char2) CHECK(rep.dim_norm_radical == rep.dim_radical);
        for (const SpecElement& u : rep.basis) {
            for (int i = 0; i < 6; ++i) {
                SpecElement x = rspec(rng, spec), y = rspec(rng, spec);
                CHECK(L.is_zero(spec.inner(u, x)));
                // left and right products land back in the radical
                CHECK(L.is_zero(spec.inner(spec.mul(x, u), y)));
                CHECK(L.is_zero(spec.inner(spec.mul(u, x), y)));
            }
            if (!char2) CHECK(L.is_zero(spec.norm(u)));
        }
    }
}

TEST_CASE("maximal ideals: frozen counts") {
    CHECK(maximal_ideals_above(params(Q, "t^2-t", "t^2-t"), poly(Q, "t")).count == 2);
    CHECK(maximal_ideals_above(params(F5, "t^2-t", "t^2-t"), poly(F5, "t")).count == 2);
    CHECK(maximal_ideals_above(params(F2, "t^2+t", "t^2+t"), poly(F2, "t")).count == 2);
    // p irreducible over the residue field, q with a double root
    CHECK(maximal_ideals_above(params(Q, "t^2+1", "t^2"), poly(Q, "t")).count == 1);
    // both sides with double roots
    CHECK(maximal_ideals_above(params(Q, "t^2", "t^2"), poly(Q, "t")).count == 1);
    CHECK(maximal_ideals_above(params(F5, "t^2", "t^2"), poly(F5, "t")).count == 1);
    // split over GF(5) at omega = 2
    CHECK(maximal_ideals_above(params(F5, "t^2+1", "t^2+1"), poly(F5, "t-2")).count == 2);
    // the same parameters stay irreducible over Q
    CHECK(maximal_ideals_above(params(Q, "t^2+1", "t^2+1"), poly(Q, "t-2")).count == 1);
    CHECK_THROWS_AS(maximal_ideals_above(params(Q, "t^2+1", "t^2+1"), poly(Q, "t")),
                    DomainError);
}

TEST_CASE("maximal ideals: degree-2 residue fields") {
    // q splits over GF(25) but not over GF(5)
    CHECK(maximal_ideals_above(params(F5, "t^2+1", "t^2+2"), poly(F5, "t^2+2")).count == 2);
    // p = t^2+2 splits over Q[w]/(w^2+2), detected through a quadratic square root
    CHECK(maximal_ideals_above(params(Q, "t^2+2", "t^2-t"), poly(Q, "t^2+2")).count == 2);
    // both sides irreducible over Q[w]/(w^2+8)
    CHECK(maximal_ideals_above(params(Q, "t^2+1", "t^2-2"), poly(Q, "t^2+8")).count == 1);
}

TEST_CASE("maximal ideals: witness hyperplanes") {
    for (auto [f, p, q, r] : std::vector<std::array<std::string, 4>>{
             {"Q", "t^2-t", "t^2-t", "t"},
             {"F5", "t^2+1", "t^2+1", "t-2"},
             {"F2", "t^2+t", "t^2+t", "t"}}) {
        const FieldDescriptor& fd = f == "Q" ? Q : (f == "F5" ? F5 : F2);
        ParamsPtr P = params(fd, p, q);
        SpecializedAlgebra spec(P, poly(fd, r));
        const ResidueField& L = spec.residue();
        MaximalIdealReport rep = maximal_ideals_above(P, poly(fd, r));
        REQUIRE(rep.count == 2);
        REQUIRE(rep.ideals.size() == 2);
        RadicalReport rad = radical_report(spec);
        for (const auto& ideal : rep.ideals) {
            REQUIRE(ideal.size() == 3);
            for (const SpecElement& v : ideal) CHECK(L.is_zero(spec.norm(v)));
        }
        // the ideals contain the radical and are swapped by the involution
        CHECK(rep.ideals[0][0] == rad.basis[0]);
        CHECK(rep.ideals[0][1] == rad.basis[1]);
        for (size_t k = 0; k < 3; ++k)
            CHECK(rep.ideals[1][k] == spec.star(rep.ideals[0][k]));
        const SpecElement& x = rep.ideals[0][2];
        CHECK(!L.is_zero(spec.trace(x))); // outside the radical
        std::string js = rep.to_json(spec);
        CHECK(js.find("\"count\":2") != std::string::npos);
    }
}

TEST_CASE("split witness: split specializations produce isotropic vectors") {
    // nu_p = 0 makes the reduced a isotropic
    {
        SpecializedAlgebra spec(params(F5, "t^2-t", "t^2-t"), poly(F5, "t-2"));
        CHECK(spec.residue().is_zero(spec.norm(spec.gen_a())));
        SplitSearchResult res = split_witness(spec, 100);
        REQUIRE(res.witness.has_value());
        CHECK(!res.unknown);
        CHECK(!spec.is_zero(*res.witness));
        CHECK(spec.residue().is_zero(spec.norm(*res.witness)));
    }
    // quaternions over finite fields always split
    {
        SpecializedAlgebra spec(params(F3, "t^2+1", "t^2+1"), poly(F3, "t"));
        SplitSearchResult res = split_witness(spec, 100);
        REQUIRE(res.witness.has_value());
        CHECK(spec.residue().is_zero(spec.norm(*res.witness)));
    }
    {
        SpecializedAlgebra spec(params(F2, "t^2+t+1", "t^2+1"), poly(F2, "t"));
        SplitSearchResult res = split_witness(spec, 100);
        REQUIRE(res.witness.has_value());
        CHECK(spec.residue().is_zero(spec.norm(*res.witness)));
    }
    // rational witness over a degree-2 residue field
    {
        SpecializedAlgebra spec(params(Q, "t^2-t", "t^2-t"), poly(Q, "t^2+1"));
        SplitSearchResult res = split_witness(spec, 1);
        REQUIRE(res.witness.has_value());
        CHECK(!res.unknown);
        CHECK(spec.residue().is_zero(spec.norm(*res.witness)));
    }
}

TEST_CASE("split witness: bounded searches report unknown") {
    // the rational Hamilton quaternions have no isotropic vectors at all
    {
        SpecializedAlgebra spec(params(Q, "t^2+1", "t^2+1"), poly(Q, "t"));
        SplitSearchResult res = split_witness(spec, 2);
        CHECK(!res.witness.has_value());
        CHECK(res.unknown);
    }
    // definite over Q(sqrt 2) as well
    {
        SpecializedAlgebra spec(params(Q, "t^2+1", "t^2+1"), poly(Q, "t^2-2"));
        SplitSearchResult res = split_witness(spec, 1);
        CHECK(!res.witness.has_value());
        CHECK(res.unknown);
    }
    // residue field larger than the enumeration bound
    {
        SpecializedAlgebra spec(params(F5, "t^2-t", "t^2-t"), poly(F5, "t^2+2"));
        SplitSearchResult res = split_witness(spec, 10);
        CHECK(!res.witness.has_value());
        CHECK(res.unknown);
    }
    CHECK_THROWS_AS(split_witness(SpecializedAlgebra(params(F5, "t^2-t", "t^2-t"),
                                                     poly(F5, "t")),
                                  100),
                    DomainError);
}

TEST_CASE("matrix idempotents from the omega = 2 specialization") {
    for (const FieldDescriptor& f : {Q, F3, F5}) {
        auto pq = laffey_idempotents(f);
        REQUIRE(pq.has_value());
        const FieldMat2& P = pq->first;
        const FieldMat2& Qm = pq->second;
        CHECK(P * P == P);
        CHECK(Qm * Qm == Qm);
        CHECK(!(P == Qm));
        FieldValue one = FieldValue::one(f), zero = FieldValue::zero(f);
        FieldMat2 expP(f), expQ(f);
        expP.at(0, 0) = one;
        expP.at(0, 1) = one - FieldValue::from_integer(f, 2);
        expQ.at(1, 0) = one;
        expQ.at(1, 1) = one;
        CHECK(P == expP);
        CHECK(Qm == expQ);
        (void)zero;
    }
    CHECK(laffey_idempotents(Q)->first.to_string() == "[[1, -1], [0, 0]]");
    CHECK(!laffey_idempotents(F2).has_value());
}

TEST_CASE("matrix demo embedding at p = q = t^2") {
    std::mt19937 rng(59);
    for (const FieldDescriptor& f : {Q, F5}) {
        ParamsPtr P = params(f, "t^2", "t^2");
        CenterPoly w = CenterPoly::variable(f);
        PolyMat2 ea(f), eb(f), eo(f);
        ea.at(1, 0) = CenterPoly::one(f);
        eb.at(0, 1) = -w;
        eo.at(0, 0) = w;
        eo.at(1, 1) = w;
        CHECK(mat2_demo_embedding(HamiltonElement::gen_a(P)) == ea);
        CHECK(mat2_demo_embedding(HamiltonElement::gen_b(P)) == eb);
        CHECK(mat2_demo_embedding(HamiltonElement::omega(P)) == eo);
        CHECK(mat2_demo_embedding(HamiltonElement::one(P)) == PolyMat2::identity(f));
        for (int i = 0; i < 50; ++i) {
            HamiltonElement x = relem(rng, P), y = relem(rng, P);
            CHECK(mat2_demo_embedding(x * y) ==
                  mat2_demo_embedding(x) * mat2_demo_embedding(y));
            CHECK(mat2_demo_embedding(x + y) ==
                  mat2_demo_embedding(x) + mat2_demo_embedding(y));
            if (!x.is_zero()) CHECK(!mat2_demo_embedding(x).is_zero());
        }
    }
    CHECK_THROWS_AS(mat2_demo_embedding(HamiltonElement::gen_a(params(Q, "t^2+1", "t^2"))),
                    DomainError);
}

TEST_CASE("specialized elements: rendering") {
    ParamsPtr P = params(F5, "t^2-t", "t^2-t");
    SpecializedAlgebra spec(P, poly(F5, "t-2"));
    CHECK(spec.to_string(spec.zero()) == "0");
    CHECK(spec.to_json(spec.gen_a()) == "{\"c1\":[],\"ca\":[\"1\"],\"cb\":[],\"cab\":[]}");
    SpecElement x = spec.add(spec.one(), spec.scale(spec.residue().reduce(poly(F5, "2")),
                                                    spec.gen_a()));
    CHECK(spec.to_string(x) == "(1) + (2)a");
    // omega reduces to its residue before printing
    CHECK(spec.to_string(spec.scalar(poly(F5, "t"))) == "(2)");
}
