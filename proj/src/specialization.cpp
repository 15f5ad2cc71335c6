#include "hamilton/specialization.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hamilton {

namespace {

std::string json_poly(const CenterPoly& f) {
    std::string out = "[";
    if (!f.is_zero())
        for (long long i = 0; i <= f.deg().value(); ++i) {
            if (i) out += ",";
            out += "\"" + f.coeff(i).to_string() + "\"";
        }
    return out + "]";
}

// Horner evaluation of f (coefficients in F) at a residue element.
CenterPoly residue_eval(const ResidueField& L, const CenterPoly& f, const CenterPoly& x) {
    CenterPoly acc = L.zero();
    if (f.is_zero()) return acc;
    for (long long i = f.deg().value(); i >= 0; --i)
        acc = L.add(L.mul(acc, x), CenterPoly::constant(f.coeff(i)));
    return acc;
}

// Reduced row echelon form over L in place; returns the pivot columns.
std::vector<size_t> rref_rows(const ResidueField& L, std::vector<std::vector<CenterPoly>>& rows) {
    std::vector<size_t> pivots;
    size_t width = rows.empty() ? 0 : rows[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < width && rank < rows.size(); ++col) {
        size_t hit = rank;
        while (hit < rows.size() && L.is_zero(rows[hit][col])) ++hit;
        if (hit == rows.size()) continue;
        std::swap(rows[rank], rows[hit]);
        CenterPoly inv = L.inverse(rows[rank][col]);
        for (size_t c = 0; c < width; ++c) rows[rank][c] = L.mul(rows[rank][c], inv);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || L.is_zero(rows[r][col])) continue;
            CenterPoly factor = rows[r][col];
            for (size_t c = 0; c < width; ++c)
                rows[r][c] = L.sub(rows[r][c], L.mul(factor, rows[rank][c]));
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

std::vector<std::vector<CenterPoly>> elem_rows(const std::vector<SpecElement>& xs) {
    std::vector<std::vector<CenterPoly>> rows;
    rows.reserve(xs.size());
    for (const SpecElement& x : xs) rows.emplace_back(x.c.begin(), x.c.end());
    return rows;
}

size_t residue_rank(const ResidueField& L, const std::vector<SpecElement>& xs) {
    auto rows = elem_rows(xs);
    return rref_rows(L, rows).size();
}

bool in_span(const ResidueField& L, const std::vector<SpecElement>& xs, const SpecElement& y) {
    auto with = xs;
    with.push_back(y);
    return residue_rank(L, with) == residue_rank(L, xs);
}

// Laplace expansion along the first row.
CenterPoly residue_det(const ResidueField& L, const std::vector<std::vector<CenterPoly>>& m) {
    size_t n = m.size();
    if (n == 1) return L.reduce(m[0][0]);
    CenterPoly out = L.zero();
    for (size_t j = 0; j < n; ++j) {
        if (L.is_zero(m[0][j])) continue;
        std::vector<std::vector<CenterPoly>> minor;
        minor.reserve(n - 1);
        for (size_t r = 1; r < n; ++r) {
            std::vector<CenterPoly> row;
            row.reserve(n - 1);
            for (size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        CenterPoly term = L.mul(m[0][j], residue_det(L, minor));
        out = j % 2 ? L.sub(out, term) : L.add(out, term);
    }
    return out;
}

} // namespace

ResidueField::ResidueField(CenterPoly modulus) : modulus_(std::move(modulus)) {
    if (!modulus_.deg().is_finite() || modulus_.deg().value() < 1 ||
        !modulus_.leading().is_one())
        throw DomainError("residue modulus must be monic of degree >= 1");
    if (!poly_is_irreducible(modulus_))
        throw DomainError("residue modulus must be irreducible: " + modulus_.to_string("t"));
}

std::optional<Int> ResidueField::size() const {
    const FieldDescriptor& F = base_field();
    if (F.is_rationals()) return std::nullopt;
    Int out = 1;
    for (long long i = 0; i < degree(); ++i) out *= F.characteristic();
    return out;
}

CenterPoly ResidueField::reduce(const CenterPoly& f) const {
    return poly_divmod(f, modulus_).second;
}

CenterPoly ResidueField::omega() const {
    return reduce(CenterPoly::variable(base_field()));
}

CenterPoly ResidueField::add(const CenterPoly& f, const CenterPoly& g) const {
    return reduce(f + g);
}

CenterPoly ResidueField::sub(const CenterPoly& f, const CenterPoly& g) const {
    return reduce(f - g);
}

CenterPoly ResidueField::neg(const CenterPoly& f) const { return reduce(-f); }

CenterPoly ResidueField::mul(const CenterPoly& f, const CenterPoly& g) const {
    return reduce(f * g);
}

CenterPoly ResidueField::inverse(const CenterPoly& f) const {
    CenterPoly fr = reduce(f);
    if (fr.is_zero()) throw DomainError("residue inverse of zero");
    const FieldDescriptor& F = base_field();
    CenterPoly r0 = modulus_, r1 = fr;
    CenterPoly t0 = CenterPoly::zero(F), t1 = CenterPoly::one(F);
    while (!r1.is_zero()) {
        auto [q, rem] = poly_divmod(r0, r1);
        r0 = r1;
        r1 = rem;
        CenterPoly tn = t0 - q * t1;
        t0 = t1;
        t1 = tn;
    }
    if (!r0.is_constant())
        throw std::logic_error("nonconstant gcd with an irreducible modulus");
    return reduce(t0.scaled(r0.as_constant().inverse()));
}

std::vector<CenterPoly> ResidueField::enumerate(long long cap) const {
    const FieldDescriptor& F = base_field();
    if (F.is_rationals()) throw DomainError("cannot enumerate an infinite residue field");
    long long p = static_cast<long long>(F.characteristic());
    long long count = 1;
    for (long long i = 0; i < degree(); ++i) {
        count *= p;
        if (count > cap) throw BudgetExhausted("residue field larger than the enumeration cap");
    }
    std::vector<CenterPoly> out;
    out.reserve(static_cast<size_t>(count));
    std::vector<long long> digits(static_cast<size_t>(degree()), 0);
    for (long long n = 0; n < count; ++n) {
        std::vector<FieldValue> coeffs;
        coeffs.reserve(digits.size());
        for (long long d : digits) coeffs.push_back(FieldValue::from_integer(F, d));
        out.push_back(CenterPoly(F, std::move(coeffs)));
        for (size_t i = 0; i < digits.size(); ++i) {
            if (++digits[i] < p) break;
            digits[i] = 0;
        }
    }
    return out;
}

std::string ResidueField::to_string(const CenterPoly& f) const {
    return reduce(f).to_string("w");
}

SpecializedAlgebra::SpecializedAlgebra(ParamsPtr params, const CenterPoly& r)
    : params_(std::move(params)), residue_(r), divides_lambda_(false) {
    if (!(r.field() == params_->field()))
        throw FieldMismatchError("specialization modulus over a different field");
    divides_lambda_ = poly_divmod(params_->lambda_poly(), r).second.is_zero();
    table_.reserve(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Coords& t = params_->table(i, j);
            table_.push_back(Coords{residue_.reduce(t[0]), residue_.reduce(t[1]),
                                    residue_.reduce(t[2]), residue_.reduce(t[3])});
        }
}

SpecElement SpecializedAlgebra::zero() const {
    const FieldDescriptor& F = params_->field();
    return SpecElement{{CenterPoly::zero(F), CenterPoly::zero(F), CenterPoly::zero(F),
                        CenterPoly::zero(F)}};
}

SpecElement SpecializedAlgebra::one() const { return scalar(residue_.one()); }

SpecElement SpecializedAlgebra::gen_a() const {
    SpecElement out = zero();
    out.c[1] = residue_.one();
    return out;
}

SpecElement SpecializedAlgebra::gen_b() const {
    SpecElement out = zero();
    out.c[2] = residue_.one();
    return out;
}

SpecElement SpecializedAlgebra::scalar(const CenterPoly& c) const {
    SpecElement out = zero();
    out.c[0] = residue_.reduce(c);
    return out;
}

SpecElement SpecializedAlgebra::from_coords(const std::array<CenterPoly, 4>& coords) const {
    return SpecElement{{residue_.reduce(coords[0]), residue_.reduce(coords[1]),
                        residue_.reduce(coords[2]), residue_.reduce(coords[3])}};
}

SpecElement SpecializedAlgebra::reduce(const HamiltonElement& x) const {
    if (!x.params()->same_algebra(*params_))
        throw DomainError("element of a different algebra");
    return from_coords(x.coords());
}

bool SpecializedAlgebra::is_zero(const SpecElement& x) const {
    return x.c[0].is_zero() && x.c[1].is_zero() && x.c[2].is_zero() && x.c[3].is_zero();
}

SpecElement SpecializedAlgebra::add(const SpecElement& x, const SpecElement& y) const {
    return SpecElement{{residue_.add(x.c[0], y.c[0]), residue_.add(x.c[1], y.c[1]),
                        residue_.add(x.c[2], y.c[2]), residue_.add(x.c[3], y.c[3])}};
}

SpecElement SpecializedAlgebra::sub(const SpecElement& x, const SpecElement& y) const {
    return SpecElement{{residue_.sub(x.c[0], y.c[0]), residue_.sub(x.c[1], y.c[1]),
                        residue_.sub(x.c[2], y.c[2]), residue_.sub(x.c[3], y.c[3])}};
}

SpecElement SpecializedAlgebra::neg(const SpecElement& x) const { return sub(zero(), x); }

SpecElement SpecializedAlgebra::scale(const CenterPoly& c, const SpecElement& x) const {
    return SpecElement{{residue_.mul(c, x.c[0]), residue_.mul(c, x.c[1]),
                        residue_.mul(c, x.c[2]), residue_.mul(c, x.c[3])}};
}

SpecElement SpecializedAlgebra::mul(const SpecElement& x, const SpecElement& y) const {
    SpecElement out = zero();
    for (size_t i = 0; i < 4; ++i) {
        if (x.c[i].is_zero()) continue;
        for (size_t j = 0; j < 4; ++j) {
            if (y.c[j].is_zero()) continue;
            CenterPoly cij = residue_.mul(x.c[i], y.c[j]);
            const Coords& t = table_[4 * i + j];
            for (size_t k = 0; k < 4; ++k) {
                if (t[k].is_zero()) continue;
                out.c[k] = residue_.add(out.c[k], residue_.mul(cij, t[k]));
            }
        }
    }
    return out;
}

SpecElement SpecializedAlgebra::star(const SpecElement& x) const {
    CenterPoly tp = CenterPoly::constant(params_->tau_p());
    CenterPoly tq = CenterPoly::constant(params_->tau_q());
    CenterPoly tt = residue_.sub(tp * tq, residue_.omega());
    CenterPoly head = residue_.add(x.c[0], residue_.add(residue_.mul(tp, x.c[1]),
                                                        residue_.mul(tq, x.c[2])));
    head = residue_.add(head, residue_.mul(tt, x.c[3]));
    return SpecElement{{head, residue_.neg(x.c[1]), residue_.neg(x.c[2]),
                        residue_.neg(x.c[3])}};
}

CenterPoly SpecializedAlgebra::trace(const SpecElement& x) const {
    SpecElement s = add(x, star(x));
    if (!s.c[1].is_zero() || !s.c[2].is_zero() || !s.c[3].is_zero())
        throw std::logic_error("trace did not land in the residue field");
    return s.c[0];
}

CenterPoly SpecializedAlgebra::norm(const SpecElement& x) const {
    SpecElement n = mul(x, star(x));
    if (!n.c[1].is_zero() || !n.c[2].is_zero() || !n.c[3].is_zero())
        throw std::logic_error("norm did not land in the residue field");
    return n.c[0];
}

CenterPoly SpecializedAlgebra::inner(const SpecElement& x, const SpecElement& y) const {
    return trace(mul(x, star(y)));
}

CenterPoly SpecializedAlgebra::gram_det() const {
    std::array<SpecElement, 4> e = {one(), gen_a(), gen_b(),
                                    mul(gen_a(), gen_b())};
    std::vector<std::vector<CenterPoly>> g;
    g.reserve(4);
    for (const SpecElement& x : e) {
        std::vector<CenterPoly> row;
        row.reserve(4);
        for (const SpecElement& y : e) row.push_back(inner(x, y));
        g.push_back(std::move(row));
    }
    return residue_det(residue_, g);
}

std::string SpecializedAlgebra::to_string(const SpecElement& x) const {
    static const char* suffix[4] = {"", "a", "b", "ab"};
    std::string out;
    for (size_t k = 0; k < 4; ++k) {
        if (x.c[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + x.c[k].to_string("w") + ")" + suffix[k];
    }
    return out.empty() ? "0" : out;
}

std::string SpecializedAlgebra::to_json(const SpecElement& x) const {
    return "{\"c1\":" + json_poly(x.c[0]) + ",\"ca\":" + json_poly(x.c[1]) +
           ",\"cb\":" + json_poly(x.c[2]) + ",\"cab\":" + json_poly(x.c[3]) + "}";
}

SpecializedAlgebra specialize(const ParamsPtr& params, const CenterPoly& r) {
    return SpecializedAlgebra(params, r);
}

RadicalReport radical_report(const SpecializedAlgebra& spec) {
    if (!spec.r_divides_lambda())
        throw DomainError("the pairing is nondegenerate unless r divides Lambda");
    const ResidueField& L = spec.residue();
    std::array<SpecElement, 4> e = {spec.one(), spec.gen_a(), spec.gen_b(),
                                    spec.mul(spec.gen_a(), spec.gen_b())};
    std::vector<std::vector<CenterPoly>> g;
    for (const SpecElement& x : e) {
        std::vector<CenterPoly> row;
        for (const SpecElement& y : e) row.push_back(spec.inner(x, y));
        g.push_back(std::move(row));
    }
    auto gram = g; // rref consumes its argument
    std::vector<size_t> pivots = rref_rows(L, g);

    RadicalReport rep;
    rep.dim_radical = static_cast<int>(4 - pivots.size());
    for (size_t free = 0; free < 4; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        std::array<CenterPoly, 4> v = {L.zero(), L.zero(), L.zero(), L.zero()};
        v[free] = L.one();
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = L.neg(g[k][free]);
        SpecElement kx = spec.from_coords(v);
        for (size_t r = 0; r < 4; ++r) {
            CenterPoly dot = L.zero();
            for (size_t c = 0; c < 4; ++c) dot = L.add(dot, L.mul(gram[r][c], kx.c[c]));
            if (!dot.is_zero()) throw std::logic_error("radical basis fails the Gram kernel");
        }
        rep.basis.push_back(kx);
    }
    if (rep.dim_radical < 2 || rep.dim_radical > 4)
        throw std::logic_error("radical dimension out of the admissible range");

    // Away from characteristic 2 the pairing radical is already null for the
    // norm. In characteristic 2 the norm is additive and Frobenius-semilinear
    // on the radical, so its zero set there is a hyperplane or everything.
    bool char2 = !spec.params()->field().is_rationals() &&
                 spec.params()->field().characteristic() == 2;
    rep.dim_norm_radical = rep.dim_radical;
    if (char2) {
        bool all_null = true;
        for (const SpecElement& u : rep.basis)
            if (!spec.norm(u).is_zero()) all_null = false;
        if (!all_null) rep.dim_norm_radical = rep.dim_radical - 1;
    } else {
        for (const SpecElement& u : rep.basis)
            if (!spec.norm(u).is_zero())
                throw std::logic_error("pairing radical not null away from characteristic 2");
    }
    return rep;
}

std::string RadicalReport::to_json(const SpecializedAlgebra& spec) const {
    std::string out = "{\"dim_radical\":" + std::to_string(dim_radical) +
                      ",\"dim_norm_radical\":" + std::to_string(dim_norm_radical) +
                      ",\"basis\":[";
    for (size_t i = 0; i < basis.size(); ++i) {
        if (i) out += ",";
        out += spec.to_json(basis[i]);
    }
    return out + "]}";
}

namespace {

enum class SideFit { Irreducible, SplitSimple, DoubleRoot };

struct SideRoots {
    SideFit fit;
    std::vector<CenterPoly> roots; // in L, reduced
};

// Root behaviour of a monic quadratic with coefficients in F over L.
SideRoots side_type_over(const SpecializedAlgebra& spec, const CenterPoly& s) {
    const ResidueField& L = spec.residue();
    const FieldDescriptor& F = L.base_field();
    std::vector<FieldValue> fr = poly_roots_quadratic(s);
    if (!fr.empty()) {
        if (fr[0] == fr[1]) return {SideFit::DoubleRoot, {CenterPoly::constant(fr[0])}};
        return {SideFit::SplitSimple,
                {CenterPoly::constant(fr[0]), CenterPoly::constant(fr[1])}};
    }
    if (F.is_rationals()) {
        long long k = L.degree();
        if (k == 1 || k % 2 == 1) return {SideFit::Irreducible, {}};
        if (k != 2)
            throw DomainError(
                "root detection is not supported over rational residue fields of even "
                "degree above 2");
        // L = Q(theta), theta^2 = -k1 theta - k0. sqrt(d) = u + v theta needs
        // 2uv = k1 v^2 and u^2 - k0 v^2 = d, so either v = 0 and d is a
        // rational square, or v^2 = 4d / disc(modulus).
        FieldValue tau = s.coeff(1), nu = s.coeff(0);
        FieldValue d = tau * tau - FieldValue::from_integer(F, 4) * nu;
        FieldValue k1 = L.modulus().coeff(1), k0 = L.modulus().coeff(0);
        FieldValue two = FieldValue::from_integer(F, 2);
        std::optional<CenterPoly> sq;
        if (auto u = field_sqrt(d)) sq = CenterPoly::constant(*u);
        if (!sq) {
            FieldValue disc = k1 * k1 - FieldValue::from_integer(F, 4) * k0;
            if (auto v = field_sqrt(FieldValue::from_integer(F, 4) * d / disc))
                if (!v->is_zero()) sq = CenterPoly(F, {k1 * *v / two, *v});
        }
        if (!sq) return {SideFit::Irreducible, {}};
        CenterPoly half = CenterPoly::constant(two.inverse());
        CenterPoly taup = CenterPoly::constant(-tau);
        CenterPoly r1 = L.mul(half, L.add(taup, *sq));
        CenterPoly r2 = L.mul(half, L.sub(taup, *sq));
        return {SideFit::SplitSimple, {r1, r2}};
    }
    std::vector<CenterPoly> roots;
    for (const CenterPoly& x : L.enumerate(4096))
        if (L.is_zero(residue_eval(L, s, x))) roots.push_back(x);
    if (roots.empty()) return {SideFit::Irreducible, {}};
    if (roots.size() != 2)
        throw std::logic_error("separable quadratic with an unexpected root count");
    return {SideFit::SplitSimple, std::move(roots)};
}

} // namespace

MaximalIdealReport maximal_ideals_above(const ParamsPtr& params, const CenterPoly& r) {
    SpecializedAlgebra spec(params, r);
    if (!spec.r_divides_lambda())
        throw DomainError("maximal-ideal analysis needs r dividing Lambda");
    const ResidueField& L = spec.residue();
    SideRoots ta = side_type_over(spec, params->p_poly());
    SideRoots tb = side_type_over(spec, params->q_poly());
    bool asplit = ta.fit == SideFit::SplitSimple;
    bool bsplit = tb.fit == SideFit::SplitSimple;
    if (!asplit && !bsplit) return MaximalIdealReport{1, {}};

    RadicalReport rad = radical_report(spec);
    if (rad.dim_radical != 2 || rad.dim_norm_radical != 2)
        throw std::logic_error("split specialization with unexpected radical dimensions");

    // g - r0 is isotropic and lies outside the radical; together they span a
    // totally isotropic hyperplane, the preimage of one isotropic line of
    // the rank-2 quotient form. Star exchanges the two lines.
    SpecElement g = asplit ? spec.gen_a() : spec.gen_b();
    const CenterPoly& r0 = (asplit ? ta : tb).roots[0];
    SpecElement x = spec.sub(g, spec.scalar(r0));
    if (!spec.norm(x).is_zero()) throw std::logic_error("root witness is not isotropic");

    std::vector<SpecElement> i1 = {rad.basis[0], rad.basis[1], x};
    std::vector<SpecElement> i2;
    for (const SpecElement& v : i1) i2.push_back(spec.star(v));

    for (const auto& ideal : {i1, i2}) {
        if (residue_rank(L, ideal) != 3)
            throw std::logic_error("maximal-ideal witness basis is not a hyperplane");
        for (const SpecElement& v : ideal)
            for (const SpecElement& m : {spec.gen_a(), spec.gen_b()}) {
                if (!in_span(L, ideal, spec.mul(m, v)) ||
                    !in_span(L, ideal, spec.mul(v, m)))
                    throw std::logic_error("maximal-ideal witness is not an ideal");
            }
    }
    for (const SpecElement& v : i1)
        if (!in_span(L, i2, spec.star(v)))
            throw std::logic_error("maximal ideals are not star-swapped");
    std::vector<SpecElement> both = i1;
    both.insert(both.end(), i2.begin(), i2.end());
    if (residue_rank(L, both) != 4)
        throw std::logic_error("the two maximal ideals coincide");

    MaximalIdealReport rep;
    rep.count = 2;
    rep.ideals = {std::move(i1), std::move(i2)};
    return rep;
}

std::string MaximalIdealReport::to_json(const SpecializedAlgebra& spec) const {
    std::string out = "{\"count\":" + std::to_string(count) + ",\"ideals\":[";
    for (size_t i = 0; i < ideals.size(); ++i) {
        if (i) out += ",";
        out += "[";
        for (size_t j = 0; j < ideals[i].size(); ++j) {
            if (j) out += ",";
            out += spec.to_json(ideals[i][j]);
        }
        out += "]";
    }
    return out + "]}";
}

SplitSearchResult split_witness(const SpecializedAlgebra& spec, long long bound) {
    if (spec.r_divides_lambda())
        throw DomainError("split search needs a quaternion specialization");
    const ResidueField& L = spec.residue();
    const FieldDescriptor& F = L.base_field();

    if (!F.is_rationals()) {
        std::optional<Int> sz = L.size();
        if (*sz > Int(bound)) return {std::nullopt, true};
        std::vector<CenterPoly> elems = L.enumerate(bound);
        // Projective points: leading coordinate 1, earlier coordinates 0.
        for (size_t lead = 0; lead < 4; ++lead) {
            size_t tail = 3 - lead;
            std::vector<size_t> idx(tail, 0);
            for (;;) {
                SpecElement x = spec.zero();
                x.c[lead] = L.one();
                for (size_t i = 0; i < tail; ++i) x.c[lead + 1 + i] = elems[idx[i]];
                if (spec.norm(x).is_zero()) return {x, false};
                size_t i = 0;
                while (i < tail && ++idx[i] == elems.size()) idx[i++] = 0;
                if (i == tail) break;
            }
        }
        throw std::logic_error("a quaternion algebra over a finite field must split");
    }

    // Integer coordinate boxes; a rational isotropic vector clears to one.
    size_t k = static_cast<size_t>(L.degree());
    size_t slots = 4 * k;
    std::vector<long long> v(slots, -bound);
    for (;;) {
        size_t first = 0;
        while (first < slots && v[first] == 0) ++first;
        if (first < slots && v[first] > 0) {
            std::array<CenterPoly, 4> c = {L.zero(), L.zero(), L.zero(), L.zero()};
            for (size_t i = 0; i < 4; ++i) {
                std::vector<FieldValue> coeffs;
                for (size_t d = 0; d < k; ++d)
                    coeffs.push_back(FieldValue::from_integer(F, v[i * k + d]));
                c[i] = CenterPoly(F, std::move(coeffs));
            }
            SpecElement x = spec.from_coords(c);
            if (!spec.is_zero(x) && spec.norm(x).is_zero()) return {x, false};
        }
        size_t i = 0;
        while (i < slots && ++v[i] > bound) v[i++] = -bound;
        if (i == slots) break;
    }
    return {std::nullopt, true};
}

FieldMat2::FieldMat2(const FieldDescriptor& f)
    : field_(f), m_{{{FieldValue::zero(f), FieldValue::zero(f)},
                     {FieldValue::zero(f), FieldValue::zero(f)}}} {}

FieldMat2 FieldMat2::identity(const FieldDescriptor& f) {
    FieldMat2 out(f);
    out.at(0, 0) = FieldValue::one(f);
    out.at(1, 1) = FieldValue::one(f);
    return out;
}

FieldMat2 operator+(const FieldMat2& x, const FieldMat2& y) {
    FieldMat2 out(x.field_);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.at(r, c) = x.at(r, c) + y.at(r, c);
    return out;
}

FieldMat2 operator*(const FieldMat2& x, const FieldMat2& y) {
    FieldMat2 out(x.field_);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out.at(r, c) = x.at(r, 0) * y.at(0, c) + x.at(r, 1) * y.at(1, c);
    return out;
}

bool FieldMat2::operator==(const FieldMat2& y) const {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!(at(r, c) == y.at(r, c))) return false;
    return true;
}

std::string FieldMat2::to_string() const {
    return "[[" + at(0, 0).to_string() + ", " + at(0, 1).to_string() + "], [" +
           at(1, 0).to_string() + ", " + at(1, 1).to_string() + "]]";
}

namespace {

size_t field_rank(const FieldDescriptor& f, std::vector<std::vector<FieldValue>> rows) {
    size_t width = rows.empty() ? 0 : rows[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < width && rank < rows.size(); ++col) {
        size_t hit = rank;
        while (hit < rows.size() && rows[hit][col].is_zero()) ++hit;
        if (hit == rows.size()) continue;
        std::swap(rows[rank], rows[hit]);
        FieldValue inv = rows[rank][col].inverse();
        for (size_t c = 0; c < width; ++c) rows[rank][c] = rows[rank][c] * inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            FieldValue factor = rows[r][col];
            for (size_t c = 0; c < width; ++c)
                rows[r][c] = rows[r][c] - factor * rows[rank][c];
        }
        ++rank;
    }
    (void)f;
    return rank;
}

std::vector<FieldValue> flatten2(const FieldMat2& m) {
    return {m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)};
}

} // namespace

std::optional<std::pair<FieldMat2, FieldMat2>> laffey_idempotents(const FieldDescriptor& f) {
    if (f.is_prime_field() && f.characteristic() == 2) return std::nullopt;
    FieldValue one = FieldValue::one(f), zero = FieldValue::zero(f);
    FieldValue delta = FieldValue::from_integer(f, 2); // outside {0, 1} since |F| > 2
    ParamsPtr P = AlgebraParams::make(f, one, zero, one, zero); // p = q = t^2 - t
    SpecializedAlgebra spec(P, CenterPoly(f, {-delta, one}));

    // W/(w - delta) is a split quaternion algebra; a-bar is a rank-one
    // idempotent, and (a-bar, b-bar a-bar) is a basis of its column module.
    SpecElement m1 = spec.gen_a();
    SpecElement m2 = spec.mul(spec.gen_b(), spec.gen_a());
    auto solve = [&](const SpecElement& v) -> std::pair<FieldValue, FieldValue> {
        FieldValue beta = v.c[2].is_zero() ? zero : v.c[2].as_constant();
        beta = beta / m2.c[2].as_constant();
        FieldValue alpha = (v.c[1].is_zero() ? zero : v.c[1].as_constant()) -
                           beta * m2.c[1].as_constant();
        SpecElement back = spec.add(spec.scale(CenterPoly::constant(alpha), m1),
                                    spec.scale(CenterPoly::constant(beta), m2));
        if (!(back == v)) throw std::logic_error("module action left the column module");
        return {alpha, beta};
    };

    FieldMat2 Pm(f), Qm(f);
    for (int j = 0; j < 2; ++j) {
        const SpecElement& mj = j == 0 ? m1 : m2;
        auto [pa, pb] = solve(spec.mul(spec.gen_a(), mj));
        Pm.at(0, j) = pa;
        Pm.at(1, j) = pb;
        auto [qa, qb] = solve(spec.mul(spec.gen_b(), mj));
        Qm.at(0, j) = qa;
        Qm.at(1, j) = qb;
    }
    if (!(Pm * Pm == Pm) || !(Qm * Qm == Qm))
        throw std::logic_error("module action of an idempotent is not idempotent");
    std::vector<std::vector<FieldValue>> span = {flatten2(FieldMat2::identity(f)),
                                                 flatten2(Pm), flatten2(Qm),
                                                 flatten2(Pm * Qm)};
    if (field_rank(f, std::move(span)) != 4)
        throw std::logic_error("idempotent pair failed to generate Mat2");
    return std::make_pair(Pm, Qm);
}

PolyMat2::PolyMat2(const FieldDescriptor& f)
    : field_(f), m_{{{CenterPoly::zero(f), CenterPoly::zero(f)},
                     {CenterPoly::zero(f), CenterPoly::zero(f)}}} {}

PolyMat2 PolyMat2::identity(const FieldDescriptor& f) {
    PolyMat2 out(f);
    out.at(0, 0) = CenterPoly::one(f);
    out.at(1, 1) = CenterPoly::one(f);
    return out;
}

PolyMat2 operator+(const PolyMat2& x, const PolyMat2& y) {
    PolyMat2 out(x.field_);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.at(r, c) = x.at(r, c) + y.at(r, c);
    return out;
}

PolyMat2 operator*(const PolyMat2& x, const PolyMat2& y) {
    PolyMat2 out(x.field_);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out.at(r, c) = x.at(r, 0) * y.at(0, c) + x.at(r, 1) * y.at(1, c);
    return out;
}

bool PolyMat2::operator==(const PolyMat2& y) const {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!(at(r, c) == y.at(r, c))) return false;
    return true;
}

bool PolyMat2::is_zero() const {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!at(r, c).is_zero()) return false;
    return true;
}

std::string PolyMat2::to_string() const {
    return "[[" + at(0, 0).to_string("w") + ", " + at(0, 1).to_string("w") + "], [" +
           at(1, 0).to_string("w") + ", " + at(1, 1).to_string("w") + "]]";
}

PolyMat2 mat2_demo_embedding(const HamiltonElement& x) {
    const ParamsPtr& P = x.params();
    if (!P->tau_p().is_zero() || !P->nu_p().is_zero() || !P->tau_q().is_zero() ||
        !P->nu_q().is_zero())
        throw DomainError("the matrix demo embedding needs p = q = t^2");
    const FieldDescriptor& F = P->field();
    CenterPoly w = CenterPoly::variable(F);
    PolyMat2 out(F);
    out.at(0, 0) = x.c1();
    out.at(0, 1) = -(w * x.cb());
    out.at(1, 0) = x.ca();
    out.at(1, 1) = x.c1() - w * x.cab();
    return out;
}

} // namespace hamilton
