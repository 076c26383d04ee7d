#include "sofft/expr.hpp"

#include "sofft/error.hpp"

#include <cmath>
#include <mutex>
#include <random>

namespace sofft {

struct Expr::Node {
    Op op = Op::Const;
    Rational value;
    std::optional<Symbol> sym;
    std::vector<Expr> args;
    int exponent = 0;
    Func fn = Func::Sin;
    mutable std::once_flag once;
    mutable std::shared_ptr<const Poly> nf;
};

namespace {

Fn to_fn(Func f) {
    switch (f) {
    case Func::Sin: return Fn::Sin;
    case Func::Cos: return Fn::Cos;
    case Func::Exp: return Fn::Exp;
    case Func::Ln: return Fn::Ln;
    case Func::Sqrt: return Fn::Sqrt;
    case Func::Tanh: return Fn::Tanh;
    case Func::Sech: return Fn::Sech;
    }
    return Fn::Sin;
}

Func to_func(Fn f) {
    switch (f) {
    case Fn::Sin: return Func::Sin;
    case Fn::Cos: return Func::Cos;
    case Fn::Exp: return Func::Exp;
    case Fn::Ln: return Func::Ln;
    case Fn::Sqrt: return Func::Sqrt;
    case Fn::Tanh: return Func::Tanh;
    case Fn::Sech: return Func::Sech;
    default: break;
    }
    throw std::logic_error("no public function for reciprocal atom");
}

} // namespace

Expr::Expr() : Expr(0L) {}

Expr::Expr(long c) : Expr(Rational(c)) {}

Expr::Expr(const Rational& c) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = c;
    n->value.canonicalize();
    n_ = std::move(n);
}

Expr::Expr(const Symbol& s) {
    auto n = std::make_shared<Node>();
    n->op = Op::Sym;
    n->sym = s;
    n_ = std::move(n);
}

Expr Expr::sum(std::vector<Expr> terms) {
    if (terms.empty()) return Expr();
    if (terms.size() == 1) return terms.front();
    auto n = std::make_shared<Node>();
    n->op = Op::Add;
    n->args = std::move(terms);
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
    if (factors.empty()) return Expr(1);
    if (factors.size() == 1) return factors.front();
    auto n = std::make_shared<Node>();
    n->op = Op::Mul;
    n->args = std::move(factors);
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::power(const Expr& base, int exponent) {
    if (exponent == 1) return base;
    auto n = std::make_shared<Node>();
    n->op = Op::Pow;
    n->args = {base};
    n->exponent = exponent;
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::quotient(const Expr& num, const Expr& den) {
    auto n = std::make_shared<Node>();
    n->op = Op::Div;
    n->args = {num, den};
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::func(Func f, const Expr& arg) {
    auto n = std::make_shared<Node>();
    n->op = Op::Func;
    n->fn = f;
    n->args = {arg};
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

namespace {

Expr atom_expr(const Atom& a, int e) {
    if (a.is_symbol()) return Expr::power(Expr(a.symbol()), e);
    if (a.fn() == Fn::Recip) return Expr::power(Expr::from_poly(a.arg()), -e);
    return Expr::power(Expr::func(to_func(a.fn()), Expr::from_poly(a.arg())), e);
}

Expr term_expr(const Monomial& m, const Rational& c) {
    std::vector<Expr> factors;
    if (c != 1 || m.empty()) factors.emplace_back(c);
    for (auto it = m.rbegin(); it != m.rend(); ++it) factors.push_back(atom_expr(it->first, it->second));
    return Expr::product(std::move(factors));
}

} // namespace

Expr Expr::from_poly(const Poly& p) {
    std::vector<Expr> terms;
    std::optional<Rational> constant;
    for (const auto& [m, c] : p.terms()) {
        if (m.empty())
            constant = c;
        else
            terms.push_back(term_expr(m, c));
    }
    if (constant) terms.emplace_back(*constant);
    Expr e = sum(std::move(terms));
    std::call_once(e.n_->once, [&] { e.n_->nf = std::make_shared<const Poly>(p); });
    return e;
}

Expr::Op Expr::op() const { return n_->op; }
const Rational& Expr::value() const { return n_->value; }
const Symbol& Expr::symbol() const { return *n_->sym; }
const std::vector<Expr>& Expr::args() const { return n_->args; }
int Expr::exponent() const { return n_->exponent; }
Func Expr::func_kind() const { return n_->fn; }

const Poly& Expr::poly() const {
    std::call_once(n_->once, [this] {
        const Node& n = *n_;
        Poly p;
        switch (n.op) {
        case Op::Const: p = Poly(n.value); break;
        case Op::Sym: p = Poly(*n.sym); break;
        case Op::Add:
            for (const auto& a : n.args) p += a.poly();
            break;
        case Op::Mul:
            p = Poly(1);
            for (const auto& a : n.args) p *= a.poly();
            break;
        case Op::Pow: p = n.args[0].poly().pow(n.exponent); break;
        case Op::Div: p = Poly::divide(n.args[0].poly(), n.args[1].poly()); break;
        case Op::Func: p = Poly::apply(to_fn(n.fn), n.args[0].poly()); break;
        }
        n.nf = std::make_shared<const Poly>(std::move(p));
    });
    return *n_->nf;
}

bool Expr::identical(const Expr& other) const {
    if (n_ == other.n_) return true;
    const Node& a = *n_;
    const Node& b = *other.n_;
    if (a.op != b.op || a.args.size() != b.args.size()) return false;
    switch (a.op) {
    case Op::Const: return a.value == b.value;
    case Op::Sym: return *a.sym == *b.sym;
    case Op::Pow:
        if (a.exponent != b.exponent) return false;
        break;
    case Op::Func:
        if (a.fn != b.fn) return false;
        break;
    default: break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!a.args[i].identical(b.args[i])) return false;
    return true;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::quotient(a, b); }

Expr operator-(const Expr& a) {
    if (a.op() == Expr::Op::Const) return Expr(Rational(-a.value()));
    return Expr::product({Expr(-1), a});
}

// Printing

namespace {

std::string rational_str(const Rational& r) { return r.get_str(); }

bool starts_negative(const std::string& s) { return !s.empty() && s[0] == '-'; }

std::string print(const Expr& e);

bool simple_base(const Expr& e) {
    switch (e.op()) {
    case Expr::Op::Sym:
    case Expr::Op::Func: return true;
    case Expr::Op::Const: return e.value() >= 0 && e.value().get_den() == 1;
    default: return false;
    }
}

std::string print_factor(const Expr& f, bool first) {
    std::string s = print(f);
    const bool wrap = f.op() == Expr::Op::Add || f.op() == Expr::Op::Div ||
                      (!first && (starts_negative(s) || (f.op() == Expr::Op::Const && f.value().get_den() != 1)));
    return wrap ? "(" + s + ")" : s;
}

std::string print(const Expr& e) {
    switch (e.op()) {
    case Expr::Op::Const: return rational_str(e.value());
    case Expr::Op::Sym: return e.symbol().label();
    case Expr::Op::Add: {
        std::string out;
        bool first = true;
        for (const auto& t : e.args()) {
            std::string s = print(t);
            if (first)
                out = s;
            else if (starts_negative(s))
                out += " - " + s.substr(1);
            else
                out += " + " + s;
            first = false;
        }
        return out;
    }
    case Expr::Op::Mul: {
        const auto& fs = e.args();
        std::string out;
        std::size_t i = 0;
        if (fs.size() > 1 && fs[0].op() == Expr::Op::Const) {
            if (fs[0].value() == -1) {
                out = "-";
                i = 1;
            } else if (fs[0].value() == 1) {
                i = 1;
            }
        }
        for (; i < fs.size(); ++i) {
            const bool lead = out.empty() || out == "-";
            std::string s = print_factor(fs[i], lead);
            if (out == "-" && starts_negative(s)) s = "(" + s + ")";
            if (!lead) out += "*";
            out += s;
        }
        return out;
    }
    case Expr::Op::Pow: {
        const Expr& b = e.args()[0];
        std::string s = print(b);
        if (!simple_base(b)) s = "(" + s + ")";
        return s + "^" + std::to_string(e.exponent());
    }
    case Expr::Op::Div: {
        const Expr& a = e.args()[0];
        const Expr& b = e.args()[1];
        std::string sa = print(a);
        std::string sb = print(b);
        if (a.op() == Expr::Op::Add) sa = "(" + sa + ")";
        if (b.op() == Expr::Op::Add || b.op() == Expr::Op::Mul || b.op() == Expr::Op::Div ||
            starts_negative(sb) || (b.op() == Expr::Op::Const && b.value().get_den() != 1))
            sb = "(" + sb + ")";
        return sa + "/" + sb;
    }
    case Expr::Op::Func: return std::string(fn_name(to_fn(e.func_kind()))) + "(" + print(e.args()[0]) + ")";
    }
    return "?";
}

} // namespace

std::string Expr::str() const { return print(*this); }

std::string Poly::str() const { return Expr::from_poly(*this).str(); }

// Free functions

Expr pow(const Expr& base, int exponent) { return Expr::power(base, exponent); }
Expr sin(const Expr& a) { return Expr::func(Func::Sin, a); }
Expr cos(const Expr& a) { return Expr::func(Func::Cos, a); }
Expr exp(const Expr& a) { return Expr::func(Func::Exp, a); }
Expr ln(const Expr& a) { return Expr::func(Func::Ln, a); }
Expr sqrt(const Expr& a) { return Expr::func(Func::Sqrt, a); }
Expr tanh(const Expr& a) { return Expr::func(Func::Tanh, a); }
Expr sech(const Expr& a) { return Expr::func(Func::Sech, a); }

Expr normal_form(const Expr& e) { return Expr::from_poly(e.poly()); }

Expr diff(const Expr& e, const Symbol& s) { return Expr::from_poly(e.poly().diff(s)); }

double eval(const Expr& e, const Bindings& b) {
    switch (e.op()) {
    case Expr::Op::Const: return e.value().get_d();
    case Expr::Op::Sym: {
        auto it = b.find(e.symbol());
        if (it == b.end()) throw EvalError("unbound symbol " + e.symbol().label());
        return it->second;
    }
    case Expr::Op::Add: {
        double s = 0;
        for (const auto& a : e.args()) s += eval(a, b);
        return s;
    }
    case Expr::Op::Mul: {
        double s = 1;
        for (const auto& a : e.args()) s *= eval(a, b);
        return s;
    }
    case Expr::Op::Pow: {
        const double v = eval(e.args()[0], b);
        if (e.exponent() < 0 && v == 0) throw EvalError("division by zero");
        return std::pow(v, e.exponent());
    }
    case Expr::Op::Div: {
        const double num = eval(e.args()[0], b);
        const double den = eval(e.args()[1], b);
        if (den == 0) throw EvalError("division by zero");
        return num / den;
    }
    case Expr::Op::Func: {
        const double x = eval(e.args()[0], b);
        switch (e.func_kind()) {
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Exp: return std::exp(x);
        case Func::Ln:
            if (x <= 0) throw EvalError("ln of nonpositive value");
            return std::log(x);
        case Func::Sqrt:
            if (x < 0) throw EvalError("sqrt of negative value");
            return std::sqrt(x);
        case Func::Tanh: return std::tanh(x);
        case Func::Sech: return 1.0 / std::cosh(x);
        }
    }
    }
    return 0;
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::ProvenEqual: return "proven-equal";
    case Verdict::ProvenUnequal: return "proven-unequal";
    case Verdict::ProbablyEqual: return "probably-equal";
    }
    return "?";
}

Verdict equal(const Expr& a, const Expr& b, const EqualOptions& opt) {
    const Poly diffp = a.poly() - b.poly();
    if (diffp.is_zero()) return Verdict::ProvenEqual;
    if (diffp.is_constant()) return Verdict::ProvenUnequal;

    std::set<Symbol> syms = a.poly().symbols();
    b.poly().collect_symbols(syms);
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> draw(-2000, 2000);

    int target = std::max(opt.points, 20);
    int accepted = 0;
    int attempts = 0;
    double worst = 0;
    while (accepted < target) {
        if (++attempts > 50 * target) break;
        Bindings bind;
        for (const auto& s : syms) bind[s] = draw(rng) / 1000.0;
        double va, vb;
        try {
            va = a.poly().eval(bind);
            vb = b.poly().eval(bind);
        } catch (const EvalError&) {
            continue;
        }
        if (!std::isfinite(va) || !std::isfinite(vb)) continue;
        const double r = std::abs(va - vb) / std::max({1.0, std::abs(va), std::abs(vb)});
        ++accepted;
        worst = std::max(worst, r);
        if (worst >= opt.reject) return Verdict::ProvenUnequal;
        if (accepted == target && worst >= opt.accept) {
            if (target >= opt.max_points) return Verdict::ProvenUnequal;
            target = std::min(target * 2, opt.max_points);
        }
    }
    if (accepted == 0) return Verdict::ProvenUnequal;
    return worst < opt.accept ? Verdict::ProbablyEqual : Verdict::ProvenUnequal;
}

bool equivalent(const Expr& a, const Expr& b, const EqualOptions& opt) {
    return equal(a, b, opt) != Verdict::ProvenUnequal;
}

Expr substitute(const Expr& e, const Substitution& s) {
    std::map<Symbol, Poly> images;
    for (const auto& [k, v] : s) images.emplace(k, v.poly());
    return Expr::from_poly(e.poly().substitute(images));
}

std::set<Symbol> symbols(const Expr& e) { return e.poly().symbols(); }

} // namespace sofft
