#pragma once

#include "sofft/multiindex.hpp"

#include <compare>
#include <memory>
#include <string>

namespace sofft {

/// Coordinate kinds, listed in their canonical order.
/// MvF/MvG are the multivector coefficients F^a_{I,j} and G^I_{a,j};
/// Deriv is an opaque partial derivative of a section component.
enum class SymbolKind { Base, Jet, Momentum, ExtMomentum, Param, MvF, MvG, Deriv };

class Symbol {
public:
    Symbol();

    static Symbol base(std::size_t i, const std::string& name);
    static Symbol jet(std::size_t field, const MultiIndex& I, const std::string& field_name);
    static Symbol momentum(std::size_t field, const MultiIndex& I, const std::string& field_name);
    static Symbol ext_momentum();
    static Symbol param(const std::string& name);
    static Symbol mv_f(std::size_t field, const MultiIndex& I, std::size_t dir, const std::string& field_name);
    static Symbol mv_g(std::size_t field, const MultiIndex& I, std::size_t dir, const std::string& field_name);
    /// d(inner)/dx^dir as an opaque symbol.
    static Symbol deriv(const Symbol& inner, std::size_t dir, const std::string& base_name);

    [[nodiscard]] SymbolKind kind() const;
    [[nodiscard]] std::size_t field() const;
    [[nodiscard]] const MultiIndex& index() const;
    /// Base index for Base, direction j for MvF/MvG/Deriv.
    [[nodiscard]] std::size_t dir() const;
    /// Declared name (base, field or parameter name).
    [[nodiscard]] const std::string& name() const;
    /// Textual form accepted by the parser.
    [[nodiscard]] const std::string& label() const;
    /// Wrapped coordinate of a Deriv symbol.
    [[nodiscard]] const Symbol& inner() const;

    [[nodiscard]] bool is_jet() const { return kind() == SymbolKind::Jet; }
    [[nodiscard]] bool is_momentum() const {
        return kind() == SymbolKind::Momentum || kind() == SymbolKind::ExtMomentum;
    }
    [[nodiscard]] int order() const { return index().length(); }

    friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b);
    friend bool operator==(const Symbol& a, const Symbol& b) { return (a <=> b) == 0; }

    struct Data;

private:
    explicit Symbol(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

struct SymbolHash {
    std::size_t operator()(const Symbol& s) const noexcept;
};

} // namespace sofft
