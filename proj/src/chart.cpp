#include "sofft/chart.hpp"

#include "sofft/error.hpp"

#include <algorithm>
#include <set>

namespace sofft {

JetChart::JetChart(std::vector<std::string> base_names, std::vector<std::string> field_names, int order)
    : base_names_(std::move(base_names)), field_names_(std::move(field_names)), order_(order) {
    if (base_names_.empty()) throw PreconditionError("chart needs at least one base coordinate");
    if (field_names_.empty()) throw PreconditionError("chart needs at least one field");
    if (order_ < 1) throw PreconditionError("jet order must be at least 1");
    std::set<std::string> seen;
    for (const auto& s : base_names_)
        if (!seen.insert(s).second) throw PreconditionError("duplicate coordinate name " + s);
    for (const auto& s : field_names_)
        if (!seen.insert(s).second) throw PreconditionError("duplicate coordinate name " + s);
}

JetChart JetChart::with_order(int k) const { return JetChart(base_names_, field_names_, k); }

Symbol JetChart::base(std::size_t i) const {
    if (i >= m()) throw std::out_of_range("base index out of range");
    return Symbol::base(i, base_names_[i]);
}

Symbol JetChart::jet(std::size_t a, const MultiIndex& I) const {
    if (a >= n()) throw std::out_of_range("field index out of range");
    if (I.dim() != m()) throw PreconditionError("multi-index arity does not match base dimension");
    if (I.length() > order_)
        throw PreconditionError("jet order " + std::to_string(I.length()) + " above chart order " +
                                std::to_string(order_));
    return Symbol::jet(a, I, field_names_[a]);
}

Symbol JetChart::momentum(std::size_t a, const MultiIndex& I) const {
    if (a >= n()) throw std::out_of_range("field index out of range");
    if (I.dim() != m()) throw PreconditionError("multi-index arity does not match base dimension");
    if (I.length() < 1 || I.length() > 2) throw PreconditionError("momentum multi-index must have length 1 or 2");
    return Symbol::momentum(a, I, field_names_[a]);
}

Symbol JetChart::mv_f(std::size_t a, const MultiIndex& I, std::size_t j) const {
    if (a >= n() || j >= m()) throw std::out_of_range("index out of range");
    return Symbol::mv_f(a, I, j, field_names_[a]);
}

Symbol JetChart::mv_g(std::size_t a, const MultiIndex& I, std::size_t j) const {
    if (a >= n() || j >= m()) throw std::out_of_range("index out of range");
    return Symbol::mv_g(a, I, j, field_names_[a]);
}

Symbol JetChart::deriv(const Symbol& inner, std::size_t j) const {
    if (j >= m()) throw std::out_of_range("base index out of range");
    return Symbol::deriv(inner, j, base_names_[j]);
}

std::vector<Symbol> JetChart::base_symbols() const {
    std::vector<Symbol> out;
    for (std::size_t i = 0; i < m(); ++i) out.push_back(base(i));
    return out;
}

std::vector<Symbol> JetChart::jet_symbols(int max_order) const {
    std::vector<Symbol> out;
    for (std::size_t a = 0; a < n(); ++a)
        for (const auto& I : enumerate_up_to(m(), max_order)) out.push_back(Symbol::jet(a, I, field_names_[a]));
    return out;
}

std::vector<Symbol> JetChart::jet_symbols_of_order(int r) const {
    std::vector<Symbol> out;
    for (std::size_t a = 0; a < n(); ++a)
        for (const auto& I : enumerate(m(), r)) out.push_back(Symbol::jet(a, I, field_names_[a]));
    return out;
}

std::vector<Symbol> JetChart::momentum_symbols() const {
    std::vector<Symbol> out;
    for (std::size_t a = 0; a < n(); ++a)
        for (int r = 1; r <= 2; ++r)
            for (const auto& I : enumerate(m(), r)) out.push_back(momentum(a, I));
    return out;
}

std::optional<std::size_t> JetChart::base_index(const std::string& name) const {
    auto it = std::find(base_names_.begin(), base_names_.end(), name);
    if (it == base_names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - base_names_.begin());
}

std::optional<std::size_t> JetChart::field_index(const std::string& name) const {
    auto it = std::find(field_names_.begin(), field_names_.end(), name);
    if (it == field_names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - field_names_.begin());
}

} // namespace sofft
