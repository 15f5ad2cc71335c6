#include "hamilton/parser.hpp"

#include <cctype>
#include <vector>

namespace hamilton {

ExprPtr Expr::make_scalar(FieldValue v) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Scalar));
    e->scalar_ = std::move(v);
    return e;
}

ExprPtr Expr::make_gen(char g) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Gen));
    e->gen_ = g;
    return e;
}

ExprPtr Expr::make_star(ExprPtr x) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Star));
    e->lhs_ = std::move(x);
    return e;
}

ExprPtr Expr::make_neg(ExprPtr x) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Neg));
    e->lhs_ = std::move(x);
    return e;
}

ExprPtr Expr::make_add(ExprPtr l, ExprPtr r) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Add));
    e->lhs_ = std::move(l);
    e->rhs_ = std::move(r);
    return e;
}

ExprPtr Expr::make_mul(ExprPtr l, ExprPtr r) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Mul));
    e->lhs_ = std::move(l);
    e->rhs_ = std::move(r);
    return e;
}

ExprPtr Expr::make_pow(ExprPtr x, long long n) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Pow));
    e->lhs_ = std::move(x);
    e->exponent_ = n;
    return e;
}

const FieldValue& Expr::scalar_value() const {
    if (kind_ != Kind::Scalar) throw std::logic_error("not a scalar node");
    return *scalar_;
}

char Expr::gen() const {
    if (kind_ != Kind::Gen) throw std::logic_error("not a generator node");
    return gen_;
}

const ExprPtr& Expr::child() const {
    if (kind_ != Kind::Star && kind_ != Kind::Neg && kind_ != Kind::Pow)
        throw std::logic_error("node has no single child");
    return lhs_;
}

const ExprPtr& Expr::lhs() const {
    if (kind_ != Kind::Add && kind_ != Kind::Mul) throw std::logic_error("not a binary node");
    return lhs_;
}

const ExprPtr& Expr::rhs() const {
    if (kind_ != Kind::Add && kind_ != Kind::Mul) throw std::logic_error("not a binary node");
    return rhs_;
}

long long Expr::exponent() const {
    if (kind_ != Kind::Pow) throw std::logic_error("not a power node");
    return exponent_;
}

namespace {

enum class Tok { Int, Gen, Plus, Minus, Mul, Dot, Caret, Apos, Slash, LParen, RParen, End };

struct Token {
    Tok kind;
    size_t column; // 1-based
    std::string text;
};

std::vector<Token> lex(const std::string& in) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < in.size()) {
        char c = in[i];
        size_t col = i + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < in.size() && std::isdigit(static_cast<unsigned char>(in[j]))) ++j;
            out.push_back({Tok::Int, col, in.substr(i, j - i)});
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
        case 'a':
        case 'b':
        case 'w': k = Tok::Gen; break;
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Mul; break;
        case '.': k = Tok::Dot; break;
        case '^': k = Tok::Caret; break;
        case '\'': k = Tok::Apos; break;
        case '/': k = Tok::Slash; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", col);
        }
        out.push_back({k, col, std::string(1, c)});
        ++i;
    }
    out.push_back({Tok::End, in.size() + 1, ""});
    return out;
}

class Parser {
public:
    Parser(const std::string& input, const FieldDescriptor& field)
        : field_(field), toks_(lex(input)) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        if (peek().kind != Tok::End)
            throw ParseError("unexpected trailing input '" + peek().text + "'",
                             peek().column);
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = take().kind == Tok::Minus;
            ExprPtr r = parse_term();
            e = Expr::make_add(std::move(e), minus ? Expr::make_neg(std::move(r))
                                                   : std::move(r));
        }
        return e;
    }

    static bool starts_factor(Tok k) {
        return k == Tok::Int || k == Tok::Gen || k == Tok::LParen;
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        for (;;) {
            Tok k = peek().kind;
            if (k == Tok::Mul) {
                take();
            } else if (k == Tok::Dot) {
                Token dot = take();
                Tok nxt = peek().kind;
                if (nxt != Tok::Gen && nxt != Tok::LParen)
                    throw ParseError("expected a word after '.'", dot.column);
            } else if (!starts_factor(k)) {
                break;
            }
            e = Expr::make_mul(std::move(e), parse_unary());
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (peek().kind == Tok::Minus) {
            take();
            return Expr::make_neg(parse_unary());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr e = parse_postfix();
        if (peek().kind == Tok::Caret) {
            Token caret = take();
            if (peek().kind == Tok::Minus)
                throw ParseError("exponent must be nonnegative", peek().column);
            if (peek().kind != Tok::Int)
                throw ParseError("expected an integer exponent", caret.column);
            Token n = take();
            if (n.text.size() > 6) throw ParseError("exponent too large", n.column);
            e = Expr::make_pow(std::move(e), std::stoll(n.text));
        }
        return e;
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (peek().kind == Tok::Apos) {
            take();
            e = Expr::make_star(std::move(e));
        }
        return e;
    }

    ExprPtr parse_primary() {
        Token t = take();
        switch (t.kind) {
        case Tok::Int: {
            Int num(t.text);
            Int den = 1;
            if (peek().kind == Tok::Slash) {
                Token slash = take();
                if (peek().kind != Tok::Int)
                    throw ParseError("malformed scalar: expected a denominator",
                                     slash.column);
                den = Int(take().text);
                if (den == 0) throw ParseError("malformed scalar: zero denominator",
                                               slash.column);
            }
            return Expr::make_scalar(FieldValue::from_rational(field_, Rat(num, den)));
        }
        case Tok::Gen:
            return Expr::make_gen(t.text[0]);
        case Tok::LParen: {
            if (peek().kind == Tok::RParen) { // '()', the empty word
                take();
                return Expr::make_scalar(FieldValue::one(field_));
            }
            ExprPtr e = parse_expr();
            if (peek().kind != Tok::RParen)
                throw ParseError("unbalanced parentheses", t.column);
            take();
            return e;
        }
        case Tok::RParen:
            throw ParseError("unbalanced parentheses", t.column);
        case Tok::End:
            throw ParseError("unexpected end of input", t.column);
        default:
            throw ParseError("unexpected token '" + t.text + "'", t.column);
        }
    }

    FieldDescriptor field_;
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

template <typename T, typename MulFn>
T generic_pow(T base, long long n, T acc, MulFn mul) {
    while (n > 0) {
        if (n & 1) acc = mul(acc, base);
        n >>= 1;
        if (n) base = mul(base, base);
    }
    return acc;
}

} // namespace

ExprPtr parse(const std::string& input, const FieldDescriptor& field) {
    return Parser(input, field).run();
}

HamiltonElement evaluate(const ExprPtr& e, const ParamsPtr& params) {
    switch (e->kind()) {
    case Expr::Kind::Scalar: {
        const FieldValue& v = e->scalar_value();
        if (!(v.field() == params->field()))
            throw FieldMismatchError("expression parsed over a different field");
        return HamiltonElement::scalar(params, v);
    }
    case Expr::Kind::Gen:
        switch (e->gen()) {
        case 'a': return HamiltonElement::gen_a(params);
        case 'b': return HamiltonElement::gen_b(params);
        default: return HamiltonElement::omega(params);
        }
    case Expr::Kind::Star: return star(evaluate(e->child(), params));
    case Expr::Kind::Neg: return -evaluate(e->child(), params);
    case Expr::Kind::Add: return evaluate(e->lhs(), params) + evaluate(e->rhs(), params);
    case Expr::Kind::Mul: return evaluate(e->lhs(), params) * evaluate(e->rhs(), params);
    case Expr::Kind::Pow:
        return generic_pow(
            evaluate(e->child(), params), e->exponent(), HamiltonElement::one(params),
            [](const HamiltonElement& x, const HamiltonElement& y) { return x * y; });
    }
    throw std::logic_error("unreachable expression kind");
}

WordExpr evaluate_word(const ExprPtr& e, const ParamsPtr& params) {
    switch (e->kind()) {
    case Expr::Kind::Scalar: {
        const FieldValue& v = e->scalar_value();
        if (!(v.field() == params->field()))
            throw FieldMismatchError("expression parsed over a different field");
        return WordExpr::constant(params, v);
    }
    case Expr::Kind::Gen:
        switch (e->gen()) {
        case 'a': return WordExpr::word(params, "a");
        case 'b': return WordExpr::word(params, "b");
        default: return omega_to_word(HamiltonElement::omega(params));
        }
    case Expr::Kind::Star:
        // the adjunction computed through the coordinate form
        return omega_to_word(star(word_to_omega(evaluate_word(e->child(), params))));
    case Expr::Kind::Neg: return -evaluate_word(e->child(), params);
    case Expr::Kind::Add:
        return evaluate_word(e->lhs(), params) + evaluate_word(e->rhs(), params);
    case Expr::Kind::Mul:
        return word_mul(evaluate_word(e->lhs(), params), evaluate_word(e->rhs(), params));
    case Expr::Kind::Pow:
        return generic_pow(
            evaluate_word(e->child(), params), e->exponent(),
            WordExpr::constant(params, FieldValue::one(params->field())),
            [](const WordExpr& x, const WordExpr& y) { return word_mul(x, y); });
    }
    throw std::logic_error("unreachable expression kind");
}

} // namespace hamilton
