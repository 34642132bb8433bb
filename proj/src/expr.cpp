#include "zex/expr.hpp"

#include <cctype>

namespace zex {

namespace {

using Node = RadicalExpr::Node;
using Op = RadicalExpr::Op;

std::shared_ptr<const Node> make(Op op, std::shared_ptr<const Node> a = nullptr, std::shared_ptr<const Node> b = nullptr,
                                 Rational v = 0, std::string name = {}) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    n->value = std::move(v);
    n->name = std::move(name);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    std::shared_ptr<const Node> parse_all() {
        auto e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ExprParseError(s_, pos_, msg); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::shared_ptr<const Node> expr() {
        auto l = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                l = make(Op::Add, l, term());
            } else if (peek('-')) {
                ++pos_;
                l = make(Op::Sub, l, term());
            } else {
                return l;
            }
        }
    }

    std::shared_ptr<const Node> term() {
        auto l = unary();
        while (true) {
            if (peek('*')) {
                ++pos_;
                l = make(Op::Mul, l, unary());
            } else if (peek('/')) {
                ++pos_;
                l = make(Op::Div, l, unary());
            } else {
                return l;
            }
        }
    }

    std::shared_ptr<const Node> unary() {
        if (peek('-')) {
            ++pos_;
            return make(Op::Neg, unary());
        }
        return primary();
    }

    mpz_class digits() {
        skip();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected digits");
        return mpz_class(s_.substr(b, pos_ - b), 10);
    }

    // p or p/q with both parts plain digits and no spaces around '/'.
    Rational literal() {
        mpz_class p = digits();
        if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            mpz_class q = digits();
            if (q == 0) fail("zero denominator in literal");
            Rational r(p, q);
            r.canonicalize();
            return r;
        }
        return Rational(p);
    }

    Rational signed_literal() {
        bool neg = false;
        if (peek('-')) {
            ++pos_;
            neg = true;
        }
        skip();
        Rational r = literal();
        return neg ? Rational(-r) : r;
    }

    std::shared_ptr<const Node> primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return make(Op::Lit, nullptr, nullptr, literal());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t b = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string id = s_.substr(b, pos_ - b);
            if ((id == "root" || id == "pow") && peek('(')) {
                ++pos_;
                auto arg = expr();
                expect(',');
                Rational v = signed_literal();
                expect(')');
                if (id == "root") {
                    if (v.get_den() != 1 || sgn(v) <= 0) fail("root index must be a positive integer");
                    return make(Op::Root, arg, nullptr, v);
                }
                return make(Op::Pow, arg, nullptr, v);
            }
            return make(Op::Var, nullptr, nullptr, 0, id);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

int prec(const Node& n) {
    switch (n.op) {
        case Op::Add:
        case Op::Sub:
            return 1;
        case Op::Mul:
        case Op::Div:
            return 2;
        case Op::Neg:
            return 3;
        case Op::Lit:
            return n.value.get_den() != 1 ? 2 : (sgn(n.value) < 0 ? 3 : 4);
        default:
            return 4;
    }
}

}  // namespace

RadicalExpr::RadicalExpr(const Rational& q) {
    if (sgn(q) < 0)
        root_ = make(Op::Neg, make(Op::Lit, nullptr, nullptr, -q));
    else
        root_ = make(Op::Lit, nullptr, nullptr, q);
}

RadicalExpr RadicalExpr::var(const std::string& name) { return RadicalExpr(make(Op::Var, nullptr, nullptr, 0, name)); }

RadicalExpr RadicalExpr::parse(const std::string& text) { return RadicalExpr(Parser(text).parse_all()); }

RadicalExpr RadicalExpr::binary(Op op, const RadicalExpr& x, const RadicalExpr& y) {
    return RadicalExpr(make(op, x.root_, y.root_));
}

bool RadicalExpr::same(const Node& x, const Node& y) {
    if (x.op != y.op || x.value != y.value || x.name != y.name) return false;
    if (static_cast<bool>(x.a) != static_cast<bool>(y.a) || static_cast<bool>(x.b) != static_cast<bool>(y.b))
        return false;
    if (x.a && !same(*x.a, *y.a)) return false;
    if (x.b && !same(*x.b, *y.b)) return false;
    return true;
}

std::string RadicalExpr::print_node(const Node& n, int parent_prec) {
    std::string s;
    int p = prec(n);
    switch (n.op) {
        case Op::Lit:
            s = to_string(n.value);
            break;
        case Op::Var:
            s = n.name;
            break;
        case Op::Neg:
            s = "-" + print_node(*n.a, 3);
            break;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            const char* sym = n.op == Op::Add ? "+" : n.op == Op::Sub ? "-" : n.op == Op::Mul ? "*" : "/";
            // left-associative: the right operand needs parentheses at equal precedence
            s = print_node(*n.a, p) + sym + print_node(*n.b, p + 1);
            break;
        }
        case Op::Root:
            s = "root(" + print_node(*n.a, 0) + "," + to_string(n.value) + ")";
            break;
        case Op::Pow:
            s = "pow(" + print_node(*n.a, 0) + "," + to_string(n.value) + ")";
            break;
    }
    if (p < parent_prec) return "(" + s + ")";
    return s;
}

std::string RadicalExpr::print() const { return print_node(*root_, 0); }

namespace {

bool radicals(const Node& n) {
    if (n.op == Op::Root || (n.op == Op::Pow && n.value.get_den() != 1)) return true;
    return (n.a && radicals(*n.a)) || (n.b && radicals(*n.b));
}

void collect(const Node& n, std::set<std::string>& out) {
    if (n.op == Op::Var) out.insert(n.name);
    if (n.a) collect(*n.a, out);
    if (n.b) collect(*n.b, out);
}

std::optional<Rational> exact(const Node& n, const std::map<std::string, Rational>& env) {
    switch (n.op) {
        case Op::Lit:
            return n.value;
        case Op::Var: {
            auto it = env.find(n.name);
            if (it == env.end()) throw UnboundVariable(n.name);
            return it->second;
        }
        case Op::Neg: {
            auto v = exact(*n.a, env);
            if (!v) return std::nullopt;
            return Rational(-*v);
        }
        case Op::Root:
            return std::nullopt;
        case Op::Pow: {
            if (n.value.get_den() != 1) return std::nullopt;
            auto v = exact(*n.a, env);
            if (!v) return std::nullopt;
            long k = n.value.get_num().get_si();
            if (k < 0 && sgn(*v) == 0) throw DivisionByZero("pow base");
            Rational r = 1;
            for (long i = 0; i < (k < 0 ? -k : k); ++i) r *= *v;
            return k < 0 ? Rational(1 / r) : r;
        }
        default:
            break;
    }
    auto l = exact(*n.a, env);
    auto r = exact(*n.b, env);
    if (!l || !r) return std::nullopt;
    switch (n.op) {
        case Op::Add:
            return Rational(*l + *r);
        case Op::Sub:
            return Rational(*l - *r);
        case Op::Mul:
            return Rational(*l * *r);
        case Op::Div:
            if (sgn(*r) == 0) throw DivisionByZero("exact evaluation");
            return Rational(*l / *r);
        default:
            break;
    }
    return std::nullopt;
}

}  // namespace

bool RadicalExpr::has_radicals() const { return radicals(*root_); }

std::set<std::string> RadicalExpr::variables() const {
    std::set<std::string> s;
    collect(*root_, s);
    return s;
}

std::optional<Rational> RadicalExpr::eval_exact(const std::map<std::string, Rational>& env) const {
    return exact(*root_, env);
}

}  // namespace zex
