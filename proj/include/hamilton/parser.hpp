#pragma once

#include "hamilton/word.hpp"

#include <memory>

namespace hamilton {

// Parse failure carrying the 1-based column of the offending input.
class ParseError : public DomainError {
public:
    ParseError(const std::string& what, size_t column)
        : DomainError(what + " at column " + std::to_string(column)), column_(column) {}
    size_t column() const { return column_; }

private:
    size_t column_;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Syntax tree of the expression language. Grammar, loosest to tightest:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '.')? unary)*      adjacency multiplies
//   unary   := '-' unary | power
//   power   := postfix ('^' integer)?
//   postfix := primary ("'")*                   postfix adjoint
//   primary := scalar | 'a' | 'b' | 'w' | '(' expr ')' | '()'
//   scalar  := integer ('/' integer)?
//
// '()' is the empty word, read as 1. '^' binds tighter than unary '-'
// so that rendered forms like "-w^2+4" read back as -(w^2)+4.
class Expr {
public:
    enum class Kind { Scalar, Gen, Star, Neg, Add, Mul, Pow };

    static ExprPtr make_scalar(FieldValue v);
    static ExprPtr make_gen(char g); // 'a', 'b', 'w'
    static ExprPtr make_star(ExprPtr e);
    static ExprPtr make_neg(ExprPtr e);
    static ExprPtr make_add(ExprPtr l, ExprPtr r);
    static ExprPtr make_mul(ExprPtr l, ExprPtr r);
    static ExprPtr make_pow(ExprPtr e, long long n);

    Kind kind() const { return kind_; }
    const FieldValue& scalar_value() const;
    char gen() const;
    const ExprPtr& child() const; // Star, Neg, Pow
    const ExprPtr& lhs() const;
    const ExprPtr& rhs() const;
    long long exponent() const;

private:
    explicit Expr(Kind k) : kind_(k) {}
    Kind kind_;
    std::optional<FieldValue> scalar_;
    char gen_ = 0;
    ExprPtr lhs_, rhs_;
    long long exponent_ = 0;
};

ExprPtr parse(const std::string& input, const FieldDescriptor& field);

HamiltonElement evaluate(const ExprPtr& e, const ParamsPtr& params);
WordExpr evaluate_word(const ExprPtr& e, const ParamsPtr& params);

} // namespace hamilton
