#include "sofft/forms.hpp"

#include "sofft/error.hpp"

#include <algorithm>
#include <functional>

namespace sofft {

CoordSystem::CoordSystem(std::vector<Symbol> coords, std::size_t base_count)
    : coords_(std::move(coords)), base_count_(base_count) {
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!index_.emplace(coords_[i], i).second)
            throw PreconditionError("duplicate coordinate " + coords_[i].label());
    }
    if (base_count_ > coords_.size()) throw PreconditionError("base count exceeds coordinate count");
}

std::optional<std::size_t> CoordSystem::index_of(const Symbol& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t CoordSystem::require(const Symbol& s) const {
    auto i = index_of(s);
    if (!i) throw PreconditionError("coordinate " + s.label() + " not in this coordinate system");
    return *i;
}

Coords make_coords(std::vector<Symbol> coords, std::size_t base_count) {
    return std::make_shared<const CoordSystem>(std::move(coords), base_count);
}

Coords jet_coords(const JetChart& chart, int k) {
    const JetChart c = chart.with_order(std::max(k, 1));
    std::vector<Symbol> v = c.base_symbols();
    for (int r = 0; r <= k; ++r) {
        auto level = c.jet_symbols_of_order(r);
        v.insert(v.end(), level.begin(), level.end());
    }
    return make_coords(std::move(v), chart.m());
}

Coords multimomentum_coords(const JetChart& chart, bool with_p) {
    const JetChart c = chart.with_order(std::max(chart.k(), 1));
    std::vector<Symbol> v = c.base_symbols();
    for (int r = 0; r <= 1; ++r) {
        auto level = c.jet_symbols_of_order(r);
        v.insert(v.end(), level.begin(), level.end());
    }
    if (with_p) v.push_back(Symbol::ext_momentum());
    auto mom = c.momentum_symbols();
    v.insert(v.end(), mom.begin(), mom.end());
    return make_coords(std::move(v), chart.m());
}

Coords unified_coords(const JetChart& chart, bool with_p) {
    const JetChart c = chart.with_order(3);
    std::vector<Symbol> v = c.base_symbols();
    for (int r = 0; r <= 3; ++r) {
        auto level = c.jet_symbols_of_order(r);
        v.insert(v.end(), level.begin(), level.end());
    }
    if (with_p) v.push_back(Symbol::ext_momentum());
    auto mom = c.momentum_symbols();
    v.insert(v.end(), mom.begin(), mom.end());
    return make_coords(std::move(v), chart.m());
}

namespace {

void same_coords(const Form& a, const Form& b) {
    if (a.coords() == b.coords()) return;
    if (a.coords()->coords() != b.coords()->coords())
        throw PreconditionError("forms live on different coordinate systems");
}

} // namespace

Form::Form(Coords coords, int degree) : coords_(std::move(coords)), degree_(degree) {
    if (degree_ < 0) throw PreconditionError("negative form degree");
}

Form Form::function(Coords coords, const Expr& f) {
    Form out(std::move(coords), 0);
    out.add({}, f);
    return out;
}

Form Form::differential(Coords coords, const Symbol& s) {
    const std::size_t i = coords->require(s);
    Form out(std::move(coords), 1);
    out.add({i}, Expr(1));
    return out;
}

Form Form::volume(Coords coords) {
    Key k;
    for (std::size_t i = 0; i < coords->base_count(); ++i) k.push_back(i);
    Form out(coords, static_cast<int>(k.size()));
    out.add(k, Expr(1));
    return out;
}

Form Form::volume_minus(Coords coords, std::size_t i) {
    if (i >= coords->base_count()) throw std::out_of_range("base index out of range");
    const Form vol = volume(coords);
    return interior(VectorField::coordinate((*coords)[i]), vol);
}

Expr Form::coefficient(const std::vector<Symbol>& differentials) const {
    Key k;
    for (const auto& s : differentials) k.push_back(coords_->require(s));
    bool odd = false;
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = i + 1; j < k.size(); ++j) {
            if (k[i] == k[j]) return Expr(0);
            if (k[i] > k[j]) odd = !odd;
        }
    std::sort(k.begin(), k.end());
    auto it = terms_.find(k);
    if (it == terms_.end()) return Expr(0);
    return odd ? normal_form(-it->second) : it->second;
}

void Form::add(Key key, const Expr& c) {
    if (static_cast<int>(key.size()) != degree_) throw PreconditionError("key length does not match form degree");
    if (c.is_zero()) return;
    bool odd = false;
    for (std::size_t i = 1; i < key.size(); ++i) {
        for (std::size_t j = i; j > 0 && key[j - 1] >= key[j]; --j) {
            if (key[j - 1] == key[j]) return;
            std::swap(key[j - 1], key[j]);
            odd = !odd;
        }
    }
    for (std::size_t k : key)
        if (k >= coords_->size()) throw std::out_of_range("coordinate index out of range");
    Poly p = odd ? -c.poly() : c.poly();
    auto it = terms_.find(key);
    if (it != terms_.end()) {
        p += it->second.poly();
        if (p.is_zero())
            terms_.erase(it);
        else
            it->second = Expr::from_poly(p);
    } else {
        terms_.emplace(std::move(key), Expr::from_poly(p));
    }
}

Form Form::operator+(const Form& o) const {
    same_coords(*this, o);
    if (o.degree_ != degree_) throw PreconditionError("sum of forms of different degree");
    Form out = *this;
    for (const auto& [k, c] : o.terms_) out.add(k, c);
    return out;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form Form::operator-() const {
    Form out(coords_, degree_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, Expr::from_poly(-c.poly()));
    return out;
}

Form Form::scaled(const Expr& f) const {
    Form out(coords_, degree_);
    for (const auto& [k, c] : terms_) out.add(k, c * f);
    return out;
}

std::string Form::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        std::string coef = c.str();
        bool neg = false;
        if (k.empty()) {
            // 0-form: the coefficient is the whole term
        } else if (c.poly().is_monomial()) {
            if (coef == "1") coef.clear();
            else if (coef == "-1") { coef.clear(); neg = true; }
            else if (coef[0] == '-') { coef = coef.substr(1); neg = true; }
        } else {
            coef = "(" + coef + ")";
        }
        std::string term = coef;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i == 0)
                term += coef.empty() ? "" : " · ";
            else
                term += " ∧ ";
            term += "d" + (*coords_)[k[i]].label();
        }
        if (first)
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? " - " : " + ") + term;
        first = false;
    }
    return out;
}

Form wedge(const Form& a, const Form& b) {
    same_coords(a, b);
    Form out(a.coords(), a.degree() + b.degree());
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            Form::Key k = ka;
            k.insert(k.end(), kb.begin(), kb.end());
            out.add(std::move(k), Expr::from_poly(ca.poly() * cb.poly()));
        }
    }
    return out;
}

Form exterior_d(const Form& a) {
    Form out(a.coords(), a.degree() + 1);
    const CoordSystem& cs = *a.coords();
    for (const auto& [k, c] : a.terms()) {
        for (const Symbol& s : c.poly().symbols()) {
            auto z = cs.index_of(s);
            if (!z) continue;
            Poly dc = c.poly().diff(s);
            if (dc.is_zero()) continue;
            Form::Key key{*z};
            key.insert(key.end(), k.begin(), k.end());
            out.add(std::move(key), Expr::from_poly(dc));
        }
    }
    return out;
}

Form interior(const VectorField& X, const Form& a) {
    if (a.degree() < 1) throw PreconditionError("interior product of a 0-form");
    const CoordSystem& cs = *a.coords();
    std::map<std::size_t, Poly> comp;
    for (const auto& [s, e] : X.components) {
        if (!e.is_zero()) comp.emplace(cs.require(s), e.poly());
    }
    Form out(a.coords(), a.degree() - 1);
    for (const auto& [k, c] : a.terms()) {
        for (std::size_t r = 0; r < k.size(); ++r) {
            auto it = comp.find(k[r]);
            if (it == comp.end()) continue;
            Form::Key rest;
            for (std::size_t l = 0; l < k.size(); ++l)
                if (l != r) rest.push_back(k[l]);
            Poly v = it->second * c.poly();
            if (r % 2) v = -v;
            out.add(std::move(rest), Expr::from_poly(v));
        }
    }
    return out;
}

namespace {

/// Pull back a form given the images of the used coordinates as 1-forms on the target.
Form pull(const Form& a, const Coords& target, const std::map<Symbol, Poly>& coef_images,
          const std::function<Form(const Symbol&)>& one_form) {
    std::map<std::size_t, Form> cache;
    auto dz = [&](std::size_t z) -> const Form& {
        auto it = cache.find(z);
        if (it == cache.end()) it = cache.emplace(z, one_form((*a.coords())[z])).first;
        return it->second;
    };
    Form out(target, a.degree());
    for (const auto& [k, c] : a.terms()) {
        Poly cc = c.poly().substitute(coef_images);
        if (cc.is_zero()) continue;
        Form piece = Form::function(target, Expr::from_poly(cc));
        for (std::size_t z : k) {
            piece = wedge(piece, dz(z));
            if (piece.is_zero()) break;
        }
        out = out + piece;
    }
    return out;
}

} // namespace

Form pullback(const Form& a, const Coords& target, const Substitution& images) {
    std::map<Symbol, Poly> img;
    for (const auto& [s, e] : images) img.emplace(s, e.poly());
    auto one_form = [&](const Symbol& z) {
        Poly image;
        auto it = img.find(z);
        if (it != img.end())
            image = it->second;
        else if (target->index_of(z))
            image = Poly(z);
        else
            throw PreconditionError("pullback: no image for coordinate " + z.label());
        Form f(target, 1);
        for (const Symbol& s : image.symbols()) {
            auto w = target->index_of(s);
            if (!w) continue;
            f.add({*w}, Expr::from_poly(image.diff(s)));
        }
        return f;
    };
    for (const auto& [k, c] : a.terms()) {
        for (const Symbol& s : c.poly().symbols()) {
            if (a.coords()->index_of(s) && !img.count(s) && !target->index_of(s))
                throw PreconditionError("pullback: no image for coordinate " + s.label());
        }
    }
    return pull(a, target, img, one_form);
}

Form pullback_by_section(const Form& a, const SectionExpr& s, const JetChart& chart, bool opaque) {
    const std::size_t m = chart.m();
    Coords base = make_coords(chart.base_symbols(), m);
    std::map<Symbol, Poly> img;
    for (const auto& [z, e] : s.components) img.emplace(z, e.poly());
    auto one_form = [&](const Symbol& z) {
        Form f(base, 1);
        if (z.kind() == SymbolKind::Base) {
            f.add({z.dir()}, Expr(1));
            return f;
        }
        auto it = img.find(z);
        if (it != img.end()) {
            for (std::size_t i = 0; i < m; ++i) f.add({i}, Expr::from_poly(it->second.diff((*base)[i])));
            return f;
        }
        if (!opaque) throw PreconditionError("section does not bind coordinate " + z.label());
        for (std::size_t i = 0; i < m; ++i) f.add({i}, Expr(chart.deriv(z, i)));
        return f;
    };
    if (!opaque) {
        for (const auto& [k, c] : a.terms())
            for (const Symbol& z : c.poly().symbols())
                if (a.coords()->index_of(z) && z.kind() != SymbolKind::Base && !img.count(z))
                    throw PreconditionError("section does not bind coordinate " + z.label());
    }
    return pull(a, base, img, one_form);
}

std::vector<std::vector<Expr>> contraction_matrix(const Form& a) {
    const CoordSystem& cs = *a.coords();
    std::vector<Form> cols;
    std::map<Form::Key, std::size_t> rows;
    for (std::size_t z = 0; z < cs.size(); ++z) {
        cols.push_back(interior(VectorField::coordinate(cs[z]), a));
        for (const auto& [k, c] : cols.back().terms()) rows.emplace(k, 0);
    }
    std::size_t r = 0;
    for (auto& [k, idx] : rows) idx = r++;
    std::vector<std::vector<Expr>> mat(rows.size(), std::vector<Expr>(cs.size(), Expr(0)));
    for (std::size_t z = 0; z < cols.size(); ++z)
        for (const auto& [k, c] : cols[z].terms()) mat[rows.at(k)][z] = c;
    return mat;
}

bool forms_equal(const Form& a, const Form& b) {
    if (a.degree() != b.degree()) return false;
    const Form d = a - b;
    for (const auto& [k, c] : d.terms()) {
        const auto ka = a.terms().find(k);
        const auto kb = b.terms().find(k);
        const Expr ca = ka == a.terms().end() ? Expr(0) : ka->second;
        const Expr cb = kb == b.terms().end() ? Expr(0) : kb->second;
        if (!equivalent(ca, cb)) return false;
    }
    return true;
}

} // namespace sofft
