#pragma once

#include "sofft/multiindex.hpp"
#include "sofft/symbol.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sofft {

/// Coordinate model of J^k pi together with the momentum inventories of the
/// multimomentum bundles. Field and base indices are 0-based.
class JetChart {
public:
    JetChart(std::vector<std::string> base_names, std::vector<std::string> field_names, int order);

    [[nodiscard]] std::size_t m() const { return base_names_.size(); }
    [[nodiscard]] std::size_t n() const { return field_names_.size(); }
    [[nodiscard]] int k() const { return order_; }
    [[nodiscard]] const std::vector<std::string>& base_names() const { return base_names_; }
    [[nodiscard]] const std::vector<std::string>& field_names() const { return field_names_; }

    /// Same names, different jet order.
    [[nodiscard]] JetChart with_order(int k) const;

    [[nodiscard]] Symbol base(std::size_t i) const;
    /// u^a_I; throws PreconditionError when |I| exceeds the chart order.
    [[nodiscard]] Symbol jet(std::size_t a, const MultiIndex& I) const;
    [[nodiscard]] Symbol field(std::size_t a) const { return jet(a, MultiIndex(m())); }
    /// u^a_{1_i}
    [[nodiscard]] Symbol jet1(std::size_t a, std::size_t i) const { return jet(a, MultiIndex::unit(m(), i)); }
    /// p^I_a with |I| in {1, 2}.
    [[nodiscard]] Symbol momentum(std::size_t a, const MultiIndex& I) const;
    [[nodiscard]] Symbol momentum1(std::size_t a, std::size_t i) const { return momentum(a, MultiIndex::unit(m(), i)); }
    [[nodiscard]] Symbol ext_momentum() const { return Symbol::ext_momentum(); }
    [[nodiscard]] Symbol mv_f(std::size_t a, const MultiIndex& I, std::size_t j) const;
    [[nodiscard]] Symbol mv_g(std::size_t a, const MultiIndex& I, std::size_t j) const;
    /// Opaque d(inner)/dx^j.
    [[nodiscard]] Symbol deriv(const Symbol& inner, std::size_t j) const;

    [[nodiscard]] std::vector<Symbol> base_symbols() const;
    /// u^a_I for all a and 0 <= |I| <= max_order, field-major.
    [[nodiscard]] std::vector<Symbol> jet_symbols(int max_order) const;
    [[nodiscard]] std::vector<Symbol> jet_symbols() const { return jet_symbols(order_); }
    /// u^a_I with |I| exactly r.
    [[nodiscard]] std::vector<Symbol> jet_symbols_of_order(int r) const;
    /// p^I_a for 1 <= |I| <= 2, field-major.
    [[nodiscard]] std::vector<Symbol> momentum_symbols() const;

    [[nodiscard]] std::optional<std::size_t> base_index(const std::string& name) const;
    [[nodiscard]] std::optional<std::size_t> field_index(const std::string& name) const;

private:
    std::vector<std::string> base_names_;
    std::vector<std::string> field_names_;
    int order_;
};

} // namespace sofft
