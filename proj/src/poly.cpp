#include "sofft/poly.hpp"

#include "sofft/error.hpp"

#include <algorithm>
#include <cmath>

namespace sofft {

const char* fn_name(Fn f) {
    switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Exp: return "exp";
    case Fn::Ln: return "ln";
    case Fn::Sqrt: return "sqrt";
    case Fn::Tanh: return "tanh";
    case Fn::Sech: return "sech";
    case Fn::Recip: return "recip";
    }
    return "?";
}

struct Atom::Data {
    std::optional<Symbol> sym;
    Fn fn = Fn::Sin;
    Poly arg;
    std::string key;
};

Atom::Atom(const Symbol& s) {
    auto d = std::make_shared<Data>();
    d->sym = s;
    d_ = std::move(d);
}

Atom::Atom(Fn f, const Poly& arg) {
    auto d = std::make_shared<Data>();
    d->fn = f;
    d->arg = arg;
    d->key = arg.str();
    d_ = std::move(d);
}

bool Atom::is_symbol() const { return d_->sym.has_value(); }
const Symbol& Atom::symbol() const { return *d_->sym; }
Fn Atom::fn() const { return d_->fn; }
const Poly& Atom::arg() const { return d_->arg; }

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (a.d_ == b.d_) return std::strong_ordering::equal;
    const bool sa = a.is_symbol();
    const bool sb = b.is_symbol();
    if (sa && sb) return a.symbol() <=> b.symbol();
    if (sa != sb) return sa ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = a.d_->fn <=> b.d_->fn; c != 0) return c;
    const int c = a.d_->key.compare(b.d_->key);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (auto c = a[k].first <=> b[k].first; c != 0) return c < 0;
        if (a[k].second != b[k].second) return a[k].second < b[k].second;
    }
    return a.size() < b.size();
}

namespace {

bool perfect_square(const mpz_class& z) { return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0; }

std::optional<Rational> exact_sqrt(const Rational& c) {
    if (c < 0) return std::nullopt;
    if (!perfect_square(c.get_num()) || !perfect_square(c.get_den())) return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), c.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), c.get_den_mpz_t());
    Rational r(n, d);
    r.canonicalize();
    return r;
}

int floor_div2(int e) { return e >= 0 ? e / 2 : -((-e + 1) / 2); }

/// Merge two descending-sorted monomials, summing exponents.
Monomial merge(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first > a[i].first) {
            out.push_back(b[j++]);
        } else {
            const int e = a[i].second + b[j].second;
            if (e != 0) out.emplace_back(a[i].first, e);
            ++i;
            ++j;
        }
    }
    return out;
}

bool needs_fixup(const Atom& a, int e) {
    if (a.is_symbol()) return false;
    if (a.fn() == Fn::Sqrt) return e >= 2 || e <= -2;
    if (a.fn() == Fn::Recip) return e < 0;
    return false;
}

} // namespace

Poly::Poly(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly::Poly(const Symbol& s) { terms_.emplace(Monomial{{Atom(s), 1}}, Rational(1)); }

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly monomial_product(const Monomial& a, const Monomial& b, const Rational& c) {
    Monomial m = merge(a, b);
    Monomial plain;
    std::vector<std::pair<Atom, int>> fix;
    for (auto& f : m) {
        if (needs_fixup(f.first, f.second))
            fix.push_back(f);
        else
            plain.push_back(f);
    }
    Poly out;
    out.add_term(plain, c);
    for (const auto& [atom, e] : fix) out *= Poly::atom_power(atom, e);
    return out;
}

Poly Poly::atom_power(const Atom& a, int e) {
    if (e == 0) return Poly(1);
    if (!a.is_symbol()) {
        if (a.fn() == Fn::Sqrt && (e >= 2 || e <= -2)) {
            const int q = floor_div2(e);
            Poly out = a.arg().pow(q);
            if (e - 2 * q == 1) out *= atom_power(a, 1);
            return out;
        }
        if (a.fn() == Fn::Recip && e < 0) return a.arg().pow(-e);
    }
    Poly out;
    out.terms_.emplace(Monomial{{a, e}}, Rational(1));
    return out;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

std::optional<Rational> Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (is_constant()) return terms_.begin()->second;
    return std::nullopt;
}

Rational Poly::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    if (a.is_zero() || b.is_zero()) return out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Rational c = ca * cb;
            bool simple = true;
            Monomial m = merge(ma, mb);
            for (const auto& f : m) {
                if (needs_fixup(f.first, f.second)) {
                    simple = false;
                    break;
                }
            }
            if (simple)
                out.add_term(m, c);
            else
                out += monomial_product(ma, mb, c);
        }
    }
    return out;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly Poly::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (is_monomial()) {
        const auto& [m, c] = *terms_.begin();
        Poly out(Rational(1) / c);
        for (const auto& [atom, e] : m) out *= atom_power(atom, -e);
        return out;
    }
    const Rational lead = terms_.rbegin()->second;
    Poly q = *this;
    for (auto& [m, c] : q.terms_) c /= lead;
    Poly out;
    out.terms_.emplace(Monomial{{Atom(Fn::Recip, q), 1}}, Rational(1) / lead);
    return out;
}

Poly Poly::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Poly result(1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

Poly Poly::divide(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw std::domain_error("division by zero");
    if (num.is_zero()) return Poly();
    if (!den.is_monomial() && num.terms_.size() == den.terms_.size()) {
        const Rational ratio = num.terms_.begin()->second / den.terms_.begin()->second;
        bool proportional = true;
        auto it = num.terms_.begin();
        for (auto jt = den.terms_.begin(); jt != den.terms_.end(); ++it, ++jt) {
            if (!(it->first.size() == jt->first.size() && !MonomialLess{}(it->first, jt->first) &&
                  !MonomialLess{}(jt->first, it->first)) ||
                it->second != ratio * jt->second) {
                proportional = false;
                break;
            }
        }
        if (proportional) return Poly(ratio);
    }
    return num * den.inverse();
}

namespace {

bool odd_fn(Fn f) { return f == Fn::Sin || f == Fn::Tanh; }
bool even_fn(Fn f) { return f == Fn::Cos || f == Fn::Sech; }

} // namespace

Poly Poly::apply(Fn f, const Poly& arg) {
    if (f == Fn::Recip) return arg.inverse();
    if (auto c = arg.constant_value()) {
        if (*c == 0) {
            switch (f) {
            case Fn::Sin:
            case Fn::Tanh:
            case Fn::Sqrt: return Poly();
            case Fn::Cos:
            case Fn::Exp:
            case Fn::Sech: return Poly(1);
            case Fn::Ln: throw std::domain_error("ln(0)");
            default: break;
            }
        }
        if (f == Fn::Ln && *c == 1) return Poly();
        if (f == Fn::Sqrt) {
            if (auto r = exact_sqrt(*c)) return Poly(*r);
        }
    }
    if ((odd_fn(f) || even_fn(f)) && !arg.is_zero() && arg.terms_.rbegin()->second < 0) {
        Poly a = Poly::atom_power(Atom(f, -arg), 1);
        return odd_fn(f) ? -a : a;
    }
    return atom_power(Atom(f, arg), 1);
}

namespace {

Poly atom_diff(const Atom& a, const Symbol& s) {
    if (a.is_symbol()) return a.symbol() == s ? Poly(1) : Poly();
    const Poly darg = a.arg().diff(s);
    if (darg.is_zero()) return Poly();
    const Poly& u = a.arg();
    switch (a.fn()) {
    case Fn::Sin: return darg * Poly::apply(Fn::Cos, u);
    case Fn::Cos: return -(darg * Poly::apply(Fn::Sin, u));
    case Fn::Exp: return darg * Poly::atom_power(a, 1);
    case Fn::Ln: return darg * u.inverse();
    case Fn::Sqrt: return darg * Poly(Rational(1, 2)) * Poly::atom_power(a, -1);
    case Fn::Tanh: return darg * (Poly(1) - Poly::atom_power(a, 2));
    case Fn::Sech: return -(darg * Poly::atom_power(a, 1) * Poly::apply(Fn::Tanh, u));
    case Fn::Recip: return -(darg * Poly::atom_power(a, 2));
    }
    return Poly();
}

bool atom_depends(const Atom& a, const Symbol& s) {
    if (a.is_symbol()) return a.symbol() == s;
    return a.arg().depends_on(s);
}

} // namespace

Poly Poly::diff(const Symbol& s) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
        for (std::size_t k = 0; k < m.size(); ++k) {
            const auto& [atom, e] = m[k];
            if (!atom_depends(atom, s)) continue;
            Poly da = atom_diff(atom, s);
            if (da.is_zero()) continue;
            Monomial rest;
            rest.reserve(m.size());
            for (std::size_t l = 0; l < m.size(); ++l) {
                if (l != k) rest.push_back(m[l]);
            }
            Poly r = monomial_product(rest, Monomial{}, c * e);
            if (e - 1 != 0) r *= atom_power(atom, e - 1);
            out += r * da;
        }
    }
    return out;
}

namespace {

double atom_eval(const Atom& a, const Bindings& b) {
    if (a.is_symbol()) {
        auto it = b.find(a.symbol());
        if (it == b.end()) throw EvalError("unbound symbol " + a.symbol().label());
        return it->second;
    }
    const double x = a.arg().eval(b);
    switch (a.fn()) {
    case Fn::Sin: return std::sin(x);
    case Fn::Cos: return std::cos(x);
    case Fn::Exp: return std::exp(x);
    case Fn::Ln:
        if (x <= 0) throw EvalError("ln of nonpositive value");
        return std::log(x);
    case Fn::Sqrt:
        if (x < 0) throw EvalError("sqrt of negative value");
        return std::sqrt(x);
    case Fn::Tanh: return std::tanh(x);
    case Fn::Sech: return 1.0 / std::cosh(x);
    case Fn::Recip:
        if (x == 0) throw EvalError("division by zero");
        return 1.0 / x;
    }
    return 0;
}

} // namespace

double Poly::eval(const Bindings& b) const {
    double sum = 0;
    for (const auto& [m, c] : terms_) {
        double t = c.get_d();
        for (const auto& [atom, e] : m) {
            const double v = atom_eval(atom, b);
            if (e < 0 && v == 0) throw EvalError("division by zero");
            t *= std::pow(v, e);
        }
        sum += t;
    }
    return sum;
}

Poly Poly::substitute(const std::map<Symbol, Poly>& images) const {
    if (images.empty()) return *this;
    Poly out;
    for (const auto& [m, c] : terms_) {
        Monomial kept;
        Poly factor(c);
        for (const auto& [atom, e] : m) {
            if (atom.is_symbol()) {
                auto it = images.find(atom.symbol());
                if (it == images.end())
                    kept.emplace_back(atom, e);
                else
                    factor *= it->second.pow(e);
            } else {
                Poly arg = atom.arg().substitute(images);
                if (arg == atom.arg())
                    kept.emplace_back(atom, e);
                else
                    factor *= Poly::apply(atom.fn(), arg).pow(e);
            }
        }
        out += monomial_product(kept, Monomial{}, Rational(1)) * factor;
    }
    return out;
}

void Poly::collect_symbols(std::set<Symbol>& out) const {
    for (const auto& [m, c] : terms_) {
        for (const auto& [atom, e] : m) {
            if (atom.is_symbol())
                out.insert(atom.symbol());
            else
                atom.arg().collect_symbols(out);
        }
    }
}

std::set<Symbol> Poly::symbols() const {
    std::set<Symbol> out;
    collect_symbols(out);
    return out;
}

bool Poly::depends_on(const Symbol& s) const {
    for (const auto& [m, c] : terms_) {
        for (const auto& [atom, e] : m) {
            if (atom_depends(atom, s)) return true;
        }
    }
    return false;
}

std::optional<int> Poly::degree_in(const Symbol& s) const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        for (const auto& [atom, e] : m) {
            if (atom.is_symbol()) {
                if (atom.symbol() == s) {
                    if (e < 0) return std::nullopt;
                    d = std::max(d, e);
                }
            } else if (atom.arg().depends_on(s)) {
                return std::nullopt;
            }
        }
    }
    return d;
}

Poly Poly::coefficient(const Symbol& s, int d) const {
    Poly out;
    const Atom target(s);
    for (const auto& [m, c] : terms_) {
        int e = 0;
        Monomial rest;
        for (const auto& f : m) {
            if (f.first.is_symbol() && f.first.symbol() == s)
                e = f.second;
            else
                rest.push_back(f);
        }
        if (e == d) out.add_term(rest, c);
    }
    return out;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    MonomialLess less;
    for (auto it = a.terms_.begin(), jt = b.terms_.begin(); it != a.terms_.end(); ++it, ++jt) {
        if (less(it->first, jt->first) || less(jt->first, it->first)) return false;
        if (it->second != jt->second) return false;
    }
    return true;
}

} // namespace sofft
