#pragma once

#include "sofft/poly.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sofft {

class JetChart;

enum class Func { Sin, Cos, Exp, Ln, Sqrt, Tanh, Sech };

/// Immutable expression tree with exact rational constants.
/// The normal form of every node is computed on first use and cached.
class Expr {
public:
    enum class Op { Const, Sym, Add, Mul, Pow, Div, Func };

    Expr();
    Expr(long c);
    Expr(int c) : Expr(static_cast<long>(c)) {}
    Expr(const Rational& c);
    Expr(const Symbol& s);

    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr power(const Expr& base, int exponent);
    static Expr quotient(const Expr& num, const Expr& den);
    static Expr func(Func f, const Expr& arg);
    /// Canonical tree for a polynomial normal form.
    static Expr from_poly(const Poly& p);

    [[nodiscard]] Op op() const;
    [[nodiscard]] const Rational& value() const;
    [[nodiscard]] const Symbol& symbol() const;
    [[nodiscard]] const std::vector<Expr>& args() const;
    [[nodiscard]] int exponent() const;
    [[nodiscard]] Func func_kind() const;

    /// Normal form as a polynomial over atoms.
    [[nodiscard]] const Poly& poly() const;
    [[nodiscard]] bool is_zero() const { return poly().is_zero(); }
    [[nodiscard]] std::optional<Rational> constant_value() const { return poly().constant_value(); }

    [[nodiscard]] std::string str() const;

    /// Structural identity of trees.
    [[nodiscard]] bool identical(const Expr& other) const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    Expr& operator+=(const Expr& b) { return *this = *this + b; }
    Expr& operator-=(const Expr& b) { return *this = *this - b; }
    Expr& operator*=(const Expr& b) { return *this = *this * b; }

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

using Substitution = std::map<Symbol, Expr>;

enum class Verdict { ProvenEqual, ProvenUnequal, ProbablyEqual };

[[nodiscard]] const char* verdict_name(Verdict v);

struct EqualOptions {
    int points = 20;
    std::uint64_t seed = 0x50f7c0deULL;
    double accept = 1e-9;
    double reject = 1e-6;
    int max_points = 640;
};

[[nodiscard]] Expr pow(const Expr& base, int exponent);
[[nodiscard]] Expr sin(const Expr& a);
[[nodiscard]] Expr cos(const Expr& a);
[[nodiscard]] Expr exp(const Expr& a);
[[nodiscard]] Expr ln(const Expr& a);
[[nodiscard]] Expr sqrt(const Expr& a);
[[nodiscard]] Expr tanh(const Expr& a);
[[nodiscard]] Expr sech(const Expr& a);

[[nodiscard]] Expr normal_form(const Expr& e);
/// Partial derivative, all other symbols independent; result in normal form.
[[nodiscard]] Expr diff(const Expr& e, const Symbol& s);
/// Evaluates the tree as written (not its normal form).
[[nodiscard]] double eval(const Expr& e, const Bindings& b);
[[nodiscard]] Verdict equal(const Expr& a, const Expr& b, const EqualOptions& opt = {});
/// True for proven-equal or probably-equal.
[[nodiscard]] bool equivalent(const Expr& a, const Expr& b, const EqualOptions& opt = {});
/// Simultaneous substitution; result in normal form.
[[nodiscard]] Expr substitute(const Expr& e, const Substitution& s);
[[nodiscard]] std::set<Symbol> symbols(const Expr& e);

/// Parses the expression grammar. Identifiers resolve against the chart names and params.
[[nodiscard]] Expr parse(std::string_view text, const JetChart& chart, const std::vector<std::string>& params);

} // namespace sofft
