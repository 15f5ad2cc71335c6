#include "hamilton/core.hpp"

#include <map>

namespace hamilton {

PolyMat4::PolyMat4(const FieldDescriptor& f)
    : field_(f),
      m_{{{CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)},
          {CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)},
          {CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)},
          {CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)}}} {}

PolyMat4 PolyMat4::identity(const FieldDescriptor& f) {
    PolyMat4 r(f);
    for (int i = 0; i < 4; ++i) r.m_[i][i] = CenterPoly::one(f);
    return r;
}

PolyMat4 PolyMat4::scalar(const CenterPoly& c) {
    PolyMat4 r(c.field());
    for (int i = 0; i < 4; ++i) r.m_[i][i] = c;
    return r;
}

PolyMat4 operator+(const PolyMat4& x, const PolyMat4& y) {
    PolyMat4 r(x.field_);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m_[i][j] = x.m_[i][j] + y.m_[i][j];
    return r;
}

PolyMat4 operator-(const PolyMat4& x, const PolyMat4& y) {
    PolyMat4 r(x.field_);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m_[i][j] = x.m_[i][j] - y.m_[i][j];
    return r;
}

PolyMat4 operator*(const PolyMat4& x, const PolyMat4& y) {
    PolyMat4 r(x.field_);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CenterPoly s(x.field_);
            for (int k = 0; k < 4; ++k) s += x.m_[i][k] * y.m_[k][j];
            r.m_[i][j] = s;
        }
    return r;
}

bool PolyMat4::operator==(const PolyMat4& y) const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (m_[i][j] != y.m_[i][j]) return false;
    return true;
}

bool PolyMat4::is_zero() const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!m_[i][j].is_zero()) return false;
    return true;
}

std::string PolyMat4::to_string() const {
    std::string out = "[";
    for (int i = 0; i < 4; ++i) {
        if (i) out += "; ";
        for (int j = 0; j < 4; ++j) {
            if (j) out += ", ";
            out += m_[i][j].to_string();
        }
    }
    return out + "]";
}

namespace {

// Free words over {a, b} with coefficients in C = F[w]; the rewriting
// system sends every word to the module basis (1, a, b, ab):
//   aa -> tau_p a - nu_p        bb -> tau_q b - nu_q
//   ba -> -ab + tau_q a + tau_p b - w
// Doubled pairs are eliminated first (leftmost), then the leftmost ba.
using WordSum = std::map<std::string, CenterPoly>;

void add_to(WordSum& s, const std::string& w, const CenterPoly& c) {
    if (c.is_zero()) return;
    auto it = s.find(w);
    if (it == s.end()) {
        s.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) s.erase(it);
}

bool is_basis_word(const std::string& w) {
    return w.empty() || w == "a" || w == "b" || w == "ab";
}

} // namespace

namespace {

std::array<std::array<Coords, 4>, 4> empty_table(const FieldDescriptor& f) {
    Coords c{CenterPoly(f), CenterPoly(f), CenterPoly(f), CenterPoly(f)};
    return {{{c, c, c, c}, {c, c, c, c}, {c, c, c, c}, {c, c, c, c}}};
}

} // namespace

AlgebraParams::AlgebraParams(FieldDescriptor f, FieldValue tp, FieldValue np, FieldValue tq,
                             FieldValue nq)
    : field_(std::move(f)), tau_p_(std::move(tp)), nu_p_(std::move(np)), tau_q_(std::move(tq)),
      nu_q_(std::move(nq)), lambda_(field_), table_(empty_table(field_)) {
    // Lambda = t^2 - tau_p tau_q t - 4 nu_p nu_q + tau_p^2 nu_q + tau_q^2 nu_p
    FieldValue four = FieldValue::from_integer(field_, 4);
    FieldValue c0 = tau_p_ * tau_p_ * nu_q_ + tau_q_ * tau_q_ * nu_p_ - four * nu_p_ * nu_q_;
    lambda_ = CenterPoly(field_, {c0, -(tau_p_ * tau_q_), FieldValue::one(field_)});
}

ParamsPtr AlgebraParams::make(const FieldDescriptor& f, const FieldValue& tau_p,
                              const FieldValue& nu_p, const FieldValue& tau_q,
                              const FieldValue& nu_q) {
    for (const FieldValue* v : {&tau_p, &nu_p, &tau_q, &nu_q})
        if (!(v->field() == f)) throw FieldMismatchError("algebra parameter field mismatch");
    auto P = std::shared_ptr<AlgebraParams>(new AlgebraParams(f, tau_p, nu_p, tau_q, nu_q));
    P->derive_table();
    P->validate_table_against_matrix_model();
    return P;
}

ParamsPtr AlgebraParams::make(const CenterPoly& p, const CenterPoly& q) {
    if (!(p.field() == q.field())) throw FieldMismatchError("p and q over different fields");
    for (const CenterPoly* f : {&p, &q}) {
        if (f->deg() != Degree::finite(2) || !f->leading().is_one())
            throw DomainError("defining polynomial must be monic of degree 2, got " +
                              f->to_string());
    }
    return make(p.field(), -p.coeff(1), p.coeff(0), -q.coeff(1), q.coeff(0));
}

CenterPoly AlgebraParams::p_poly() const {
    return CenterPoly(field_, {nu_p_, -tau_p_, FieldValue::one(field_)});
}

CenterPoly AlgebraParams::q_poly() const {
    return CenterPoly(field_, {nu_q_, -tau_q_, FieldValue::one(field_)});
}

bool AlgebraParams::same_algebra(const AlgebraParams& y) const {
    return field_ == y.field_ && tau_p_ == y.tau_p_ && nu_p_ == y.nu_p_ && tau_q_ == y.tau_q_ &&
           nu_q_ == y.nu_q_;
}

std::string AlgebraParams::to_string() const {
    return "W[p=" + p_poly().to_string() + ", q=" + q_poly().to_string() + " over " +
           field_.to_string() + "]";
}

void AlgebraParams::derive_table() {
    const CenterPoly cp_one = CenterPoly::one(field_);
    const CenterPoly w = CenterPoly::variable(field_);
    const std::array<std::string, 4> basis = {"", "a", "b", "ab"};

    auto rewrite = [&](WordSum s) {
        for (int guard = 0; guard < 10000; ++guard) {
            // Leftmost doubled pair in the first offending word, else the
            // leftmost ba in the first word that has one.
            std::string word;
            size_t pos = 0;
            char kind = 0;
            for (const auto& [ww, cc] : s) {
                (void)cc;
                if (is_basis_word(ww)) continue;
                size_t dp = std::string::npos;
                for (size_t i = 0; i + 1 < ww.size(); ++i)
                    if (ww[i] == ww[i + 1]) {
                        dp = i;
                        break;
                    }
                if (dp != std::string::npos) {
                    word = ww;
                    pos = dp;
                    kind = 'd';
                    break;
                }
                size_t ba = ww.find("ba");
                if (ba != std::string::npos) {
                    word = ww;
                    pos = ba;
                    kind = 'x';
                    break;
                }
                throw std::logic_error("unreducible non-basis word: " + ww);
            }
            if (kind == 0) return s;

            CenterPoly c = s.at(word);
            s.erase(word);
            std::string u = word.substr(0, pos);
            std::string v = word.substr(pos + 2);
            if (kind == 'd') {
                const bool is_a = word[pos] == 'a';
                const FieldValue& tau = is_a ? tau_p_ : tau_q_;
                const FieldValue& nu = is_a ? nu_p_ : nu_q_;
                add_to(s, u + word[pos] + v, c.scaled(tau));
                add_to(s, u + v, c.scaled(-nu));
            } else {
                add_to(s, u + "ab" + v, -c);
                add_to(s, u + "a" + v, c.scaled(tau_q_));
                add_to(s, u + "b" + v, c.scaled(tau_p_));
                add_to(s, u + v, -(c * w));
            }
        }
        throw std::logic_error("word rewriting did not terminate");
    };

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            WordSum s;
            add_to(s, basis[i] + basis[j], cp_one);
            WordSum r = rewrite(std::move(s));
            for (const auto& [ww, cc] : r) {
                if (!is_basis_word(ww)) throw std::logic_error("rewrite left non-basis word " + ww);
                int k = ww.empty() ? 0 : (ww == "a" ? 1 : (ww == "b" ? 2 : 3));
                table_[i][j][static_cast<size_t>(k)] = cc;
                if (cc.deg() > Degree::finite(1))
                    throw std::logic_error("table entry of degree > 1 in w");
            }
        }
}

void AlgebraParams::validate_table_against_matrix_model() const {
    const FieldDescriptor& f = field_;
    CenterPoly t = CenterPoly::variable(f);
    auto c = [&](const FieldValue& v) { return CenterPoly::constant(v); };

    PolyMat4 A = model_matrix_a(*this);
    PolyMat4 B = model_matrix_b(*this);
    const PolyMat4 I = PolyMat4::identity(f);
    auto S = [&](const CenterPoly& x) { return PolyMat4::scalar(x); };

    // p(A) = 0, q(B) = 0 and the cross relation realizing w = t.
    if (!(A * A - S(c(tau_p_)) * A + S(c(nu_p_))).is_zero())
        throw std::logic_error("matrix model: p(A) != 0");
    if (!(B * B - S(c(tau_q_)) * B + S(c(nu_q_))).is_zero())
        throw std::logic_error("matrix model: q(B) != 0");
    if (!(A * (S(c(tau_q_)) - B) + B * (S(c(tau_p_)) - A) == S(t)))
        throw std::logic_error("matrix model: cross relation failed");

    const std::array<PolyMat4, 4> img = {I, A, B, A * B};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            PolyMat4 lhs = img[static_cast<size_t>(i)] * img[static_cast<size_t>(j)];
            PolyMat4 rhs(f);
            for (int k = 0; k < 4; ++k)
                rhs = rhs + S(table_[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                    [static_cast<size_t>(k)]) *
                                img[static_cast<size_t>(k)];
            if (!(lhs == rhs))
                throw std::logic_error("structure table disagrees with the matrix model at (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
        }
}

} // namespace hamilton
