#include "sofft/symbol.hpp"

#include <functional>
#include <optional>

namespace sofft {

struct Symbol::Data {
    SymbolKind kind = SymbolKind::Param;
    std::size_t field = 0;
    MultiIndex index;
    std::size_t dir = 0;
    std::string name;
    std::string label;
    std::optional<Symbol> inner;
    std::size_t hash = 0;
};

namespace {

std::shared_ptr<Symbol::Data> finish(std::shared_ptr<Symbol::Data> d) {
    d->hash = std::hash<std::string>{}(d->label) ^ (static_cast<std::size_t>(d->kind) << 3);
    return d;
}

std::string jet_label(const std::string& field, const MultiIndex& I) {
    return I.is_zero() ? field : field + I.str();
}

} // namespace

Symbol::Symbol() : Symbol(param("_")) {}

Symbol Symbol::base(std::size_t i, const std::string& name) {
    auto d = std::make_shared<Data>();
    d->kind = SymbolKind::Base;
    d->dir = i;
    d->name = name;
    d->label = name;
    return Symbol(finish(d));
}

Symbol Symbol::jet(std::size_t field, const MultiIndex& I, const std::string& field_name) {
    auto d = std::make_shared<Data>();
    d->kind = SymbolKind::Jet;
    d->field = field;
    d->index = I;
    d->name = field_name;
    d->label = jet_label(field_name, I);
    return Symbol(finish(d));
}

Symbol Symbol::momentum(std::size_t field, const MultiIndex& I, const std::string& field_name) {
    auto d = std::make_shared<Data>();
    d->kind = SymbolKind::Momentum;
    d->field = field;
    d->index = I;
    d->name = field_name;
    d->label = "p." + field_name + I.str();
    return Symbol(finish(d));
}

Symbol Symbol::ext_momentum() {
    static const Symbol p0 = [] {
        auto d = std::make_shared<Data>();
        d->kind = SymbolKind::ExtMomentum;
        d->name = "p0";
        d->label = "p0";
        return Symbol(finish(d));
    }();
    return p0;
}

Symbol Symbol::param(const std::string& name) {
    auto d = std::make_shared<Data>();
    d->kind = SymbolKind::Param;
    d->name = name;
    d->label = name;
    return Symbol(finish(d));
}

Symbol Symbol::mv_f(std::size_t field, const MultiIndex& I, std::size_t dir, const std::string& field_name) {
    auto d = std::make_shared<Data>();
    d->kind = SymbolKind::MvF;
    d->field = field;
    d->index = I;
    d->dir = dir;
    d->name = field_name;
    d->label = "F." + field_name + I.str() + "@" + std::to_string(dir + 1);
    return Symbol(finish(d));
}

Symbol Symbol::mv_g(std::size_t field, const MultiIndex& I, std::size_t dir, const std::string& field_name) {
    auto d = std::make_shared<Data>();
    d->kind = SymbolKind::MvG;
    d->field = field;
    d->index = I;
    d->dir = dir;
    d->name = field_name;
    d->label = "G." + field_name + I.str() + "@" + std::to_string(dir + 1);
    return Symbol(finish(d));
}

Symbol Symbol::deriv(const Symbol& inner, std::size_t dir, const std::string& base_name) {
    auto d = std::make_shared<Data>();
    d->kind = SymbolKind::Deriv;
    d->field = inner.field();
    d->index = inner.index();
    d->dir = dir;
    d->name = base_name;
    d->label = "D." + base_name + "(" + inner.label() + ")";
    d->inner = inner;
    return Symbol(finish(d));
}

SymbolKind Symbol::kind() const { return d_->kind; }
std::size_t Symbol::field() const { return d_->field; }
const MultiIndex& Symbol::index() const { return d_->index; }
std::size_t Symbol::dir() const { return d_->dir; }
const std::string& Symbol::name() const { return d_->name; }
const std::string& Symbol::label() const { return d_->label; }

const Symbol& Symbol::inner() const {
    if (!d_->inner) throw std::logic_error("symbol has no inner coordinate");
    return *d_->inner;
}

std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
    if (a.d_ == b.d_) return std::strong_ordering::equal;
    const auto& x = *a.d_;
    const auto& y = *b.d_;
    if (auto c = x.kind <=> y.kind; c != 0) return c;
    switch (x.kind) {
    case SymbolKind::Base:
        if (auto c = x.dir <=> y.dir; c != 0) return c;
        break;
    case SymbolKind::Deriv:
        if (auto c = *x.inner <=> *y.inner; c != 0) return c;
        if (auto c = x.dir <=> y.dir; c != 0) return c;
        break;
    case SymbolKind::Jet:
    case SymbolKind::Momentum:
    case SymbolKind::MvF:
    case SymbolKind::MvG:
        if (auto c = x.field <=> y.field; c != 0) return c;
        if (auto c = x.index.length() <=> y.index.length(); c != 0) return c;
        if (auto c = x.index <=> y.index; c != 0) return c;
        if (auto c = x.dir <=> y.dir; c != 0) return c;
        break;
    default:
        break;
    }
    if (auto c = x.label.compare(y.label); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::size_t SymbolHash::operator()(const Symbol& s) const noexcept { return std::hash<std::string>{}(s.label()); }

} // namespace sofft
