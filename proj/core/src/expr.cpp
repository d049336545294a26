#include "mnc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <utility>
#include <vector>

namespace mnc {

ExprPtr Expr::constant(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Constant;
    e->number = v;
    return e;
}

ExprPtr Expr::variable(Var v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Variable;
    e->var = v;
    return e;
}

ExprPtr Expr::binary(char op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr Expr::call(Builtin fn, ExprPtr arg) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Call;
    e->fn = fn;
    e->lhs = std::move(arg);
    return e;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Constant: return a.number == b.number;
        case Expr::Kind::Variable: return a.var == b.var;
        case Expr::Kind::Binary:
            return a.op == b.op && *a.lhs == *b.lhs && *a.rhs == *b.rhs;
        case Expr::Kind::Call:
            return a.fn == b.fn && *a.lhs == *b.lhs;
    }
    return false;
}

namespace {

bool contains_divergent(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable:
            return false;
        case Expr::Kind::Binary:
            if (e.op == '/') return true;
            return contains_divergent(*e.lhs) || contains_divergent(*e.rhs);
        case Expr::Kind::Call:
            if (e.fn == Builtin::Log) return true;
            return contains_divergent(*e.lhs);
    }
    return false;
}

struct VarBinding {
    const char* name;
    Var var;
};

class Parser {
public:
    Parser(std::string_view text, const std::vector<VarBinding>& vars)
        : text_(text), vars_(vars) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ < text_.size())
            fail("unexpected input after expression");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at column " + std::to_string(pos_ + 1), pos_ + 1);
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool consume(char c) {
        if (peek_is(c)) { ++pos_; return true; }
        return false;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            if (consume('+')) lhs = Expr::binary('+', lhs, term());
            else if (consume('-')) lhs = Expr::binary('-', lhs, term());
            else return lhs;
        }
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        for (;;) {
            if (consume('*')) lhs = Expr::binary('*', lhs, factor());
            else if (consume('/')) lhs = Expr::binary('/', lhs, factor());
            else return lhs;
        }
    }

    ExprPtr factor() {
        ExprPtr base = atom();
        if (consume('^')) return Expr::binary('^', base, atom());
        return base;
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected expression");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return name();
        if (c == '(') {
            ++pos_;
            ExprPtr inner = expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        fail("expected expression");
    }

    ExprPtr number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else {
                pos_ = mark;  // "e" belongs to something else; not an exponent
            }
        }
        const std::string s(text_.substr(start, pos_ - start));
        if (s == ".") { pos_ = start; fail("expected number"); }
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size()) { pos_ = start; fail("malformed number"); }
        return Expr::constant(v);
    }

    ExprPtr name() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view id = text_.substr(start, pos_ - start);
        if (id == "sin" || id == "cos" || id == "exp" || id == "log" || id == "abs") {
            Builtin fn = id == "sin"   ? Builtin::Sin
                         : id == "cos" ? Builtin::Cos
                         : id == "exp" ? Builtin::Exp
                         : id == "log" ? Builtin::Log
                                       : Builtin::Abs;
            if (!consume('(')) fail("expected '(' after function name");
            ExprPtr arg = expr();
            if (!consume(')')) fail("expected ')'");
            return Expr::call(fn, arg);
        }
        for (const auto& b : vars_)
            if (id == b.name) return Expr::variable(b.var);
        pos_ = start;
        fail("unknown identifier '" + std::string(id) + "'");
    }

    std::string_view text_;
    const std::vector<VarBinding>& vars_;
    std::size_t pos_ = 0;
};

FamilyExpr parse_with(std::string_view text, const std::vector<VarBinding>& vars) {
    Parser p(text, vars);
    return FamilyExpr{p.run()};
}

}  // namespace

bool FamilyExpr::may_diverge() const { return contains_divergent(*root); }

FamilyExpr parse_family(std::string_view text) {
    static const std::vector<VarBinding> vars{{"t", Var::T}, {"n", Var::N}};
    return parse_with(text, vars);
}

FamilyExpr parse_kernel(std::string_view text) {
    static const std::vector<VarBinding> vars{{"t", Var::T}, {"s", Var::S}};
    return parse_with(text, vars);
}

FamilyExpr parse_time_function(std::string_view text) {
    static const std::vector<VarBinding> vars{{"t", Var::T}};
    return parse_with(text, vars);
}

FamilyExpr parse_scalar_map(std::string_view text) {
    static const std::vector<VarBinding> vars{{"x", Var::X}};
    return parse_with(text, vars);
}

double pow_eval(double base, double exponent) {
    if (base > 0.0) return std::exp(exponent * std::log(base));
    if (base == 0.0) {
        if (exponent > 0.0) return 0.0;
        if (exponent == 0.0) return 1.0;
        return std::numeric_limits<double>::infinity();
    }
    // Negative base: integer exponents only.
    if (exponent == std::floor(exponent) && std::fabs(exponent) < 0x1p53) {
        const double mag = std::exp(exponent * std::log(-base));
        const bool odd = std::fmod(std::fabs(exponent), 2.0) == 1.0;
        return odd ? -mag : mag;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double evaluate(const Expr& e, const EvalPoint& p) {
    switch (e.kind) {
        case Expr::Kind::Constant:
            return e.number;
        case Expr::Kind::Variable:
            switch (e.var) {
                case Var::T: return p.t;
                case Var::N: return p.n;
                case Var::S: return p.s;
                case Var::X: return p.x;
            }
            return 0.0;
        case Expr::Kind::Binary: {
            const double a = evaluate(*e.lhs, p);
            if (e.op == '^') return pow_eval(a, evaluate(*e.rhs, p));
            const double b = evaluate(*e.rhs, p);
            switch (e.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
            }
            return std::numeric_limits<double>::quiet_NaN();
        }
        case Expr::Kind::Call: {
            const double a = evaluate(*e.lhs, p);
            switch (e.fn) {
                case Builtin::Sin: return std::sin(a);
                case Builtin::Cos: return std::cos(a);
                case Builtin::Exp: return std::exp(a);
                case Builtin::Log: return std::log(a);
                case Builtin::Abs: return std::fabs(a);
            }
            return std::numeric_limits<double>::quiet_NaN();
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

namespace {

int precedence(const Expr& e) {
    if (e.kind != Expr::Kind::Binary) return 4;
    if (e.op == '^') return 3;
    if (e.op == '*' || e.op == '/') return 2;
    return 1;
}

void print_rec(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, int min_prec, std::string& out) {
    if (precedence(e) < min_prec) {
        out += '(';
        print_rec(e, out);
        out += ')';
    } else {
        print_rec(e, out);
    }
}

void print_rec(const Expr& e, std::string& out) {
    switch (e.kind) {
        case Expr::Kind::Constant: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e.number);
            out += buf;
            return;
        }
        case Expr::Kind::Variable:
            switch (e.var) {
                case Var::T: out += 't'; return;
                case Var::N: out += 'n'; return;
                case Var::S: out += 's'; return;
                case Var::X: out += 'x'; return;
            }
            return;
        case Expr::Kind::Binary: {
            const int prec = precedence(e);
            if (e.op == '^') {
                // Both sides of ^ must be atoms per the grammar.
                print_wrapped(*e.lhs, 4, out);
                out += '^';
                print_wrapped(*e.rhs, 4, out);
                return;
            }
            // Left association: the right child needs parens at equal
            // precedence, the left child does not.
            print_wrapped(*e.lhs, prec, out);
            out += ' ';
            out += e.op;
            out += ' ';
            print_wrapped(*e.rhs, prec + 1, out);
            return;
        }
        case Expr::Kind::Call:
            switch (e.fn) {
                case Builtin::Sin: out += "sin("; break;
                case Builtin::Cos: out += "cos("; break;
                case Builtin::Exp: out += "exp("; break;
                case Builtin::Log: out += "log("; break;
                case Builtin::Abs: out += "abs("; break;
            }
            print_rec(*e.lhs, out);
            out += ')';
            return;
    }
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print_rec(e, out);
    return out;
}

}
