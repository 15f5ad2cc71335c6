#include "hamilton/word.hpp"

#include <vector>

namespace hamilton {

namespace {

bool is_alternating(const std::string& w) {
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] != 'a' && w[i] != 'b') return false;
        if (i + 1 < w.size() && w[i] == w[i + 1]) return false;
    }
    return true;
}

void check_same(const ParamsPtr& x, const ParamsPtr& y) {
    if (x.get() == y.get()) return;
    if (!x || !y || !x->same_algebra(*y))
        throw FieldMismatchError("word expressions over different algebras");
}

} // namespace

WordExpr WordExpr::word(const ParamsPtr& P, const std::string& w) {
    return word(P, w, FieldValue::one(P->field()));
}

WordExpr WordExpr::word(const ParamsPtr& P, const std::string& w, const FieldValue& c) {
    if (!is_alternating(w)) throw DomainError("not an alternating word: \"" + w + "\"");
    WordExpr r(P);
    if (!c.is_zero()) r.terms_.emplace(w, c);
    return r;
}

WordExpr WordExpr::constant(const ParamsPtr& P, const FieldValue& c) { return word(P, "", c); }

FieldValue WordExpr::coeff(const std::string& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? FieldValue::zero(params_->field()) : it->second;
}

WordExpr WordExpr::operator-() const {
    WordExpr r(params_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

WordExpr operator+(const WordExpr& x, const WordExpr& y) {
    check_same(x.params_, y.params_);
    WordExpr r = x;
    for (const auto& [w, c] : y.terms_) {
        auto it = r.terms_.find(w);
        if (it == r.terms_.end()) {
            r.terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

WordExpr operator-(const WordExpr& x, const WordExpr& y) { return x + (-y); }

WordExpr WordExpr::scaled(const FieldValue& c) const {
    WordExpr r(params_);
    if (c.is_zero()) return r;
    for (const auto& [w, cc] : terms_) r.terms_.emplace(w, cc * c);
    return r;
}

bool WordExpr::operator==(const WordExpr& y) const {
    check_same(params_, y.params_);
    return terms_ == y.terms_;
}

void WordExpr::add_reduced(const std::string& w, const FieldValue& c) {
    // Worklist of pending (word, coefficient); leftmost doubled pair first.
    std::vector<std::pair<std::string, FieldValue>> todo{{w, c}};
    int guard = 0;
    while (!todo.empty()) {
        if (++guard > 100000) throw std::logic_error("word reduction did not terminate");
        auto [ww, cc] = std::move(todo.back());
        todo.pop_back();
        if (cc.is_zero()) continue;
        size_t dp = std::string::npos;
        for (size_t i = 0; i + 1 < ww.size(); ++i)
            if (ww[i] == ww[i + 1]) {
                dp = i;
                break;
            }
        if (dp == std::string::npos) {
            if (!is_alternating(ww)) throw DomainError("not a word over {a,b}: \"" + ww + "\"");
            auto it = terms_.find(ww);
            if (it == terms_.end()) {
                terms_.emplace(std::move(ww), std::move(cc));
            } else {
                it->second += cc;
                if (it->second.is_zero()) terms_.erase(it);
            }
            continue;
        }
        const bool is_a = ww[dp] == 'a';
        const AlgebraParams& P = *params_;
        const FieldValue& tau = is_a ? P.tau_p() : P.tau_q();
        const FieldValue& nu = is_a ? P.nu_p() : P.nu_q();
        std::string u = ww.substr(0, dp), v = ww.substr(dp + 2);
        todo.emplace_back(u + ww[dp] + v, cc * tau);
        todo.emplace_back(u + v, -(cc * nu));
    }
}

std::string WordExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const std::string& w = it->first;
        const FieldValue& c = it->second;
        bool neg = c.field().is_rationals() && c.rational_value() < 0;
        FieldValue mag = neg ? -c : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        std::string ws = w.empty() ? "()" : w;
        if (mag.is_one()) {
            out += ws;
        } else {
            std::string ms = mag.to_string();
            if (ms.find('/') != std::string::npos) ms = "(" + ms + ")";
            out += ms + "." + ws;
        }
    }
    return out;
}

WordExpr word_mul(const WordExpr& x, const WordExpr& y) {
    check_same(x.params(), y.params());
    WordExpr r(x.params());
    for (const auto& [u, cu] : x.terms())
        for (const auto& [v, cv] : y.terms()) r.add_reduced(u + v, cu * cv);
    return r;
}

HamiltonElement word_to_omega(const WordExpr& x) {
    const ParamsPtr& P = x.params();
    HamiltonElement acc = HamiltonElement::zero(P);
    const HamiltonElement gen[2] = {HamiltonElement::gen_a(P), HamiltonElement::gen_b(P)};
    for (const auto& [w, c] : x.terms()) {
        HamiltonElement e = HamiltonElement::one(P);
        for (char ch : w) e *= gen[ch == 'b'];
        acc += e.scaled(c);
    }
    return acc;
}

WordExpr omega_to_word(const HamiltonElement& x) {
    const ParamsPtr& P = x.params();
    const FieldDescriptor& f = P->field();
    const FieldValue one = FieldValue::one(f);

    // w = tr(q) a + tr(p) b - ab - ba.
    WordExpr omega_chain(P);
    omega_chain += WordExpr::word(P, "a", P->tau_q());
    omega_chain += WordExpr::word(P, "b", P->tau_p());
    omega_chain += WordExpr::word(P, "ab", -one);
    omega_chain += WordExpr::word(P, "ba", -one);

    auto chain_of = [&](const CenterPoly& c) {
        WordExpr acc(P);
        if (c.is_zero()) return acc;
        for (long long i = c.deg().value(); i >= 0; --i) {
            acc = word_mul(acc, omega_chain);
            acc += WordExpr::constant(P, c.coeff(i));
        }
        return acc;
    };

    WordExpr r = chain_of(x.c1());
    r += word_mul(chain_of(x.ca()), WordExpr::word(P, "a"));
    r += word_mul(chain_of(x.cb()), WordExpr::word(P, "b"));
    r += word_mul(chain_of(x.cab()), WordExpr::word(P, "ab"));
    return r;
}

} // namespace hamilton
