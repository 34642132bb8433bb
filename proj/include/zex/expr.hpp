#pragma once

#include "zex/numeric.hpp"
#include "zex/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace zex {

class DivisionByZero : public std::domain_error {
public:
    explicit DivisionByZero(const std::string& what) : std::domain_error("division by zero in " + what) {}
};

class UnboundVariable : public std::invalid_argument {
public:
    explicit UnboundVariable(const std::string& name) : std::invalid_argument("unbound variable '" + name + "'") {}
};

// Expression over named parameters with field operations, root(e,k) and pow(e,p/q).
class RadicalExpr {
public:
    enum class Op { Lit, Var, Neg, Add, Sub, Mul, Div, Root, Pow };
    struct Node {
        Op op;
        Rational value;  // Lit: the literal; Root: k; Pow: exponent
        std::string name;
        std::shared_ptr<const Node> a, b;
    };

    RadicalExpr() : RadicalExpr(Rational(0)) {}
    explicit RadicalExpr(const Rational& q);
    static RadicalExpr var(const std::string& name);
    static RadicalExpr parse(const std::string& text);

    std::string print() const;
    bool has_radicals() const;
    std::set<std::string> variables() const;

    // Exact value if no radicals are involved.
    std::optional<Rational> eval_exact(const std::map<std::string, Rational>& env) const;

    // Principal-branch evaluation. |denominator| <= zero_tol raises DivisionByZero.
    template <typename R>
    Complex<R> eval(const std::map<std::string, Complex<R>>& env, const R& zero_tol) const {
        return eval_node<R>(*root_, env, zero_tol);
    }

    friend bool operator==(const RadicalExpr& x, const RadicalExpr& y) { return same(*x.root_, *y.root_); }
    friend RadicalExpr operator+(const RadicalExpr& x, const RadicalExpr& y) { return binary(Op::Add, x, y); }
    friend RadicalExpr operator-(const RadicalExpr& x, const RadicalExpr& y) { return binary(Op::Sub, x, y); }
    friend RadicalExpr operator*(const RadicalExpr& x, const RadicalExpr& y) { return binary(Op::Mul, x, y); }
    friend RadicalExpr operator/(const RadicalExpr& x, const RadicalExpr& y) { return binary(Op::Div, x, y); }

    const Node& node() const { return *root_; }

private:
    explicit RadicalExpr(std::shared_ptr<const Node> n) : root_(std::move(n)) {}
    static RadicalExpr binary(Op op, const RadicalExpr& x, const RadicalExpr& y);
    static bool same(const Node& x, const Node& y);

    template <typename R>
    static Complex<R> eval_node(const Node& n, const std::map<std::string, Complex<R>>& env, const R& zero_tol) {
        switch (n.op) {
            case Op::Lit:
                return Complex<R>::from_rational(n.value);
            case Op::Var: {
                auto it = env.find(n.name);
                if (it == env.end()) throw UnboundVariable(n.name);
                return it->second;
            }
            case Op::Neg:
                return -eval_node<R>(*n.a, env, zero_tol);
            case Op::Add:
                return eval_node<R>(*n.a, env, zero_tol) + eval_node<R>(*n.b, env, zero_tol);
            case Op::Sub:
                return eval_node<R>(*n.a, env, zero_tol) - eval_node<R>(*n.b, env, zero_tol);
            case Op::Mul:
                return eval_node<R>(*n.a, env, zero_tol) * eval_node<R>(*n.b, env, zero_tol);
            case Op::Div: {
                Complex<R> d = eval_node<R>(*n.b, env, zero_tol);
                if (abs(d) <= zero_tol) throw DivisionByZero(print_node(*n.b, 0));
                return eval_node<R>(*n.a, env, zero_tol) / d;
            }
            case Op::Root:
                return principal_pow(eval_node<R>(*n.a, env, zero_tol), Rational(1) / n.value);
            case Op::Pow: {
                Complex<R> base = eval_node<R>(*n.a, env, zero_tol);
                if (sgn(n.value) <= 0 && abs(base) <= zero_tol) throw DivisionByZero(print_node(*n.a, 0));
                return principal_pow(base, n.value);
            }
        }
        throw std::logic_error("bad expression node");
    }

    static std::string print_node(const Node& n, int parent_prec);

    std::shared_ptr<const Node> root_;
};

class ExprParseError : public std::invalid_argument {
public:
    ExprParseError(const std::string& text, std::size_t pos, const std::string& msg)
        : std::invalid_argument("expression '" + text + "' at " + std::to_string(pos) + ": " + msg) {}
};

}  // namespace zex
