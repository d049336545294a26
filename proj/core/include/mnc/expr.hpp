#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "mnc/errors.hpp"

namespace mnc {

// Expression language shared by family formulas, integral kernels, forcing
// terms, and scalar nonlinearities.  Grammar (whitespace insignificant):
//
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := atom ("^" atom)?
//   atom   := number | variable | func "(" expr ")" | "(" expr ")"
//   func   := "sin" | "cos" | "exp" | "log" | "abs"
//
// The variable set depends on context: families use {t, n}, kernels {t, s},
// time functions {t}, scalar maps {x}.

enum class Var { T, N, S, X };
enum class Builtin { Sin, Cos, Exp, Log, Abs };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Constant, Variable, Binary, Call };

    Kind kind = Kind::Constant;
    double number = 0.0;          // Constant
    Var var = Var::T;             // Variable
    char op = 0;                  // Binary: one of + - * / ^
    Builtin fn = Builtin::Sin;    // Call
    ExprPtr lhs, rhs;             // Binary children; Call argument in lhs

    static ExprPtr constant(double v);
    static ExprPtr variable(Var v);
    static ExprPtr binary(char op, ExprPtr l, ExprPtr r);
    static ExprPtr call(Builtin fn, ExprPtr arg);
};

bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

struct FamilyExpr {
    ExprPtr root;

    // True if evaluation can leave the finite range on ordinary inputs
    // (contains log or a division).
    bool may_diverge() const;

    friend bool operator==(const FamilyExpr& a, const FamilyExpr& b) {
        return *a.root == *b.root;
    }
};

// Parsers for the four variable contexts.  All throw ParseError with a
// 1-based column on malformed input, including trailing characters.
FamilyExpr parse_family(std::string_view text);         // t, n
FamilyExpr parse_kernel(std::string_view text);         // t, s
FamilyExpr parse_time_function(std::string_view text);  // t
FamilyExpr parse_scalar_map(std::string_view text);     // x

struct EvalPoint {
    double t = 0.0;
    double n = 0.0;
    double s = 0.0;
    double x = 0.0;
};

// Raw evaluation.  May return inf or NaN (division by zero, log outside its
// domain, negative base with fractional exponent); callers that need finite
// values check and report.  Powers a^b follow the log-space rule: for a > 0
// the value is exp(b * log a) so enormous exponents underflow smoothly to 0,
// a = 0 maps to 0 for b > 0 and 1 for b = 0, and a < 0 is defined only for
// integer b.
double evaluate(const Expr& e, const EvalPoint& p);
inline double evaluate(const FamilyExpr& e, const EvalPoint& p) { return evaluate(*e.root, p); }

double pow_eval(double base, double exponent);

// Grammar-faithful rendering: parse(to_string(parse(text))) reproduces the
// identical tree.
std::string to_string(const Expr& e);
inline std::string to_string(const FamilyExpr& e) { return to_string(*e.root); }

}
