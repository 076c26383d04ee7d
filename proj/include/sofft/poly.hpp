#pragma once

#include "sofft/symbol.hpp"

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sofft {

using Rational = mpq_class;
using Bindings = std::map<Symbol, double>;

/// Unary functions of the expression language. Recip only occurs inside normal forms.
enum class Fn { Sin, Cos, Exp, Ln, Sqrt, Tanh, Sech, Recip };

[[nodiscard]] const char* fn_name(Fn f);

class Poly;

/// A factor of a monomial: a symbol or a function of a normalized argument.
class Atom {
public:
    explicit Atom(const Symbol& s);
    Atom(Fn f, const Poly& arg);

    [[nodiscard]] bool is_symbol() const;
    [[nodiscard]] const Symbol& symbol() const;
    [[nodiscard]] Fn fn() const;
    [[nodiscard]] const Poly& arg() const;

    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
    friend bool operator==(const Atom& a, const Atom& b) { return (a <=> b) == 0; }

private:
    struct Data;
    std::shared_ptr<const Data> d_;
};

/// (atom, exponent) pairs sorted by decreasing atom, exponents nonzero.
using Monomial = std::vector<std::pair<Atom, int>>;

/// Monomials compare lexicographically from their largest atom down.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Expanded sum of monomials with exact rational coefficients; the canonical normal form.
class Poly {
public:
    using Terms = std::map<Monomial, Rational, MonomialLess>;

    Poly() = default;
    Poly(const Rational& c);
    Poly(long c) : Poly(Rational(c)) {}
    Poly(const Symbol& s);

    /// a^e with the normalization rules for sqrt and reciprocal atoms applied.
    static Poly atom_power(const Atom& a, int e);
    /// f(arg) with exact special values and parity normalization.
    static Poly apply(Fn f, const Poly& arg);
    static Poly divide(const Poly& num, const Poly& den);

    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] bool is_monomial() const { return terms_.size() == 1; }
    [[nodiscard]] std::optional<Rational> constant_value() const;
    /// Coefficient of the empty monomial.
    [[nodiscard]] Rational constant_term() const;

    [[nodiscard]] Poly operator-() const;
    [[nodiscard]] Poly inverse() const;
    [[nodiscard]] Poly pow(int e) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);

    [[nodiscard]] Poly diff(const Symbol& s) const;
    [[nodiscard]] double eval(const Bindings& b) const;
    [[nodiscard]] Poly substitute(const std::map<Symbol, Poly>& images) const;

    /// Every symbol occurring, including inside function arguments.
    void collect_symbols(std::set<Symbol>& out) const;
    [[nodiscard]] std::set<Symbol> symbols() const;
    [[nodiscard]] bool depends_on(const Symbol& s) const;

    /// Highest power of s when the polynomial is polynomial in s, otherwise nullopt
    /// (s inside a function argument or with a negative exponent).
    [[nodiscard]] std::optional<int> degree_in(const Symbol& s) const;
    /// Coefficient of s^d; requires degree_in(s) to be defined.
    [[nodiscard]] Poly coefficient(const Symbol& s, int d) const;

    [[nodiscard]] std::string str() const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);

    /// Adds c*m; m must already be normalized.
    void add_term(const Monomial& m, const Rational& c);

private:
    Terms terms_;
};

/// Product of two monomials with coefficient, normalized.
[[nodiscard]] Poly monomial_product(const Monomial& a, const Monomial& b, const Rational& c);

} // namespace sofft
