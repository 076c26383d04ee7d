#pragma once

#include "sofft/chart.hpp"
#include "sofft/expr.hpp"
#include "sofft/jetspace.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sofft {

/// Ordered coordinate list; the first `base_count` entries are the base coordinates.
class CoordSystem {
public:
    CoordSystem(std::vector<Symbol> coords, std::size_t base_count);

    [[nodiscard]] std::size_t size() const { return coords_.size(); }
    [[nodiscard]] std::size_t base_count() const { return base_count_; }
    [[nodiscard]] const Symbol& operator[](std::size_t i) const { return coords_[i]; }
    [[nodiscard]] const std::vector<Symbol>& coords() const { return coords_; }
    [[nodiscard]] std::optional<std::size_t> index_of(const Symbol& s) const;
    /// Throws PreconditionError for foreign symbols.
    [[nodiscard]] std::size_t require(const Symbol& s) const;

private:
    std::vector<Symbol> coords_;
    std::map<Symbol, std::size_t> index_;
    std::size_t base_count_;
};

using Coords = std::shared_ptr<const CoordSystem>;

[[nodiscard]] Coords make_coords(std::vector<Symbol> coords, std::size_t base_count);

/// Coordinates of J^k pi: x, then u^a_I for |I| <= k.
[[nodiscard]] Coords jet_coords(const JetChart& chart, int k);
/// J^2 pi^dagger (with_p) or J^2 pi^ddagger: x, u, u_i, [p], p^i, p^I.
[[nodiscard]] Coords multimomentum_coords(const JetChart& chart, bool with_p);
/// W (with_p) or W_r: J^3 pi coordinates followed by [p], p^i, p^I.
[[nodiscard]] Coords unified_coords(const JetChart& chart, bool with_p);

struct VectorField {
    std::map<Symbol, Expr> components;

    static VectorField coordinate(const Symbol& s) { return VectorField{{{s, Expr(1)}}}; }
};

/// Sparse exterior form. Keys are strictly increasing coordinate-index tuples.
class Form {
public:
    using Key = std::vector<std::size_t>;

    Form(Coords coords, int degree);

    static Form function(Coords coords, const Expr& f);
    static Form differential(Coords coords, const Symbol& s);
    /// dx^1 ^ ... ^ dx^m over the base coordinates.
    static Form volume(Coords coords);
    /// d^{m-1}x_i = i(d/dx^i) d^m x
    static Form volume_minus(Coords coords, std::size_t i);

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] const Coords& coords() const { return coords_; }
    [[nodiscard]] const std::map<Key, Expr>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    /// Coefficient on the increasing key built from these symbols (0 when absent).
    [[nodiscard]] Expr coefficient(const std::vector<Symbol>& differentials) const;

    /// Adds c * dz_{k1} ^ ... ^ dz_{kd}; the key may be unsorted.
    void add(Key key, const Expr& c);

    [[nodiscard]] Form operator+(const Form& o) const;
    [[nodiscard]] Form operator-(const Form& o) const;
    [[nodiscard]] Form operator-() const;
    [[nodiscard]] Form scaled(const Expr& f) const;

    /// `coeff · dz ∧ dz ...` terms in key order.
    [[nodiscard]] std::string str() const;

private:
    Coords coords_;
    int degree_;
    std::map<Key, Expr> terms_;
};

[[nodiscard]] Form wedge(const Form& a, const Form& b);
[[nodiscard]] Form exterior_d(const Form& a);
/// Contraction in the first slot.
[[nodiscard]] Form interior(const VectorField& X, const Form& a);

/// Pullback by a map into `target`: every source coordinate is sent to its image
/// (a coordinate without an image must also be a target coordinate and maps to itself).
[[nodiscard]] Form pullback(const Form& a, const Coords& target, const Substitution& images);

/// Pullback along a section to the base. Coordinates bound by `s` are replaced by their
/// expressions. With `opaque` set, unbound coordinates stay as functions of x whose
/// derivatives are the opaque symbols D.x(z); otherwise they are an error.
[[nodiscard]] Form pullback_by_section(const Form& a, const SectionExpr& s, const JetChart& chart,
                                       bool opaque = false);

/// Coefficient matrix of X -> i(X)a over coordinate vector fields: one column per
/// coordinate, one row per (degree-1) key that occurs.
[[nodiscard]] std::vector<std::vector<Expr>> contraction_matrix(const Form& a);

/// True when every coefficient pair is equal (proven or probable).
[[nodiscard]] bool forms_equal(const Form& a, const Form& b);

} // namespace sofft
