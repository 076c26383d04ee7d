#include "sofft/chart.hpp"
#include "sofft/error.hpp"
#include "sofft/expr.hpp"

#include <algorithm>
#include <cctype>

namespace sofft {

namespace {

class Parser {
public:
    Parser(std::string_view text, const JetChart& chart, const std::vector<std::string>& params)
        : s_(text), chart_(chart), params_(params) {}

    Expr run() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Expr expr() {
        std::vector<Expr> terms{term()};
        for (;;) {
            if (accept('+'))
                terms.push_back(term());
            else if (accept('-'))
                terms.push_back(-term());
            else
                break;
        }
        return Expr::sum(std::move(terms));
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            if (accept('*')) {
                e = e * unary();
            } else if (accept('/')) {
                Expr d = unary();
                if (e.op() == Expr::Op::Const && d.op() == Expr::Op::Const && d.value() != 0)
                    e = Expr(Rational(e.value() / d.value()));
                else
                    e = e / d;
            } else {
                break;
            }
        }
        return e;
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return factor();
    }

    Expr factor() {
        Expr b = base();
        if (accept('^')) {
            bool paren = accept('(');
            int sign = 1;
            if (accept('-'))
                sign = -1;
            else
                accept('+');
            skip();
            const std::size_t at = pos_;
            long v = integer();
            if (v > 1000) fail_at("exponent too large", at);
            if (paren) expect(')');
            return Expr::power(b, static_cast<int>(sign * v));
        }
        return b;
    }

    long integer() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(std::string(s_.substr(start, pos_ - start)));
    }

    Expr number() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string digits(s_.substr(start, pos_ - start));
        std::string frac;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            const std::size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            frac = std::string(s_.substr(fs, pos_ - fs));
        }
        if (digits.empty() && frac.empty()) fail_at("malformed number", start);
        mpz_class num((digits.empty() ? std::string("0") : digits) + frac, 10);
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        Rational r(num, den);
        r.canonicalize();
        return Expr(r);
    }

    std::string ident() {
        skip();
        const std::size_t start = pos_;
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            ++pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
        }
        if (start == pos_) fail("expected identifier");
        return std::string(s_.substr(start, pos_ - start));
    }

    MultiIndex bracket_index(std::size_t at) {
        std::vector<int> entries;
        if (peek() == '[') {
            expect('[');
            entries.push_back(static_cast<int>(integer()));
            while (accept(',')) entries.push_back(static_cast<int>(integer()));
            expect(']');
            if (entries.size() != chart_.m()) fail_at("multi-index arity does not match base dimension", at);
            return MultiIndex(entries);
        }
        return MultiIndex(chart_.m());
    }

    std::size_t field_ref(std::size_t at) {
        const std::string f = ident();
        auto a = chart_.field_index(f);
        if (!a) fail_at("unknown field '" + f + "'", at);
        return *a;
    }

    Symbol qualified(const std::string& head, std::size_t at) {
        if (head == "p") {
            const std::size_t a = field_ref(at);
            MultiIndex I = bracket_index(at);
            if (I.length() < 1 || I.length() > 2) fail_at("momentum multi-index must have length 1 or 2", at);
            return chart_.momentum(a, I);
        }
        if (head == "F" || head == "G") {
            const std::size_t a = field_ref(at);
            MultiIndex I = bracket_index(at);
            expect('@');
            const long j = integer();
            if (j < 1 || static_cast<std::size_t>(j) > chart_.m()) fail_at("direction out of range", at);
            return head == "F" ? chart_.mv_f(a, I, j - 1) : chart_.mv_g(a, I, j - 1);
        }
        if (head == "D") {
            const std::string b = ident();
            auto i = chart_.base_index(b);
            if (!i) fail_at("unknown base coordinate '" + b + "'", at);
            expect('(');
            const std::size_t inner_at = pos_;
            Expr inner = base();
            if (inner.op() != Expr::Op::Sym) fail_at("derivative of a non-symbol", inner_at);
            expect(')');
            return chart_.deriv(inner.symbol(), *i);
        }
        fail_at("unknown qualified name '" + head + ".'", at);
    }

    Expr base() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (accept('(')) {
            Expr e = expr();
            expect(')');
            return e;
        }
        const std::size_t at = pos_;
        const std::string id = ident();
        static const std::vector<std::pair<std::string, Func>> funcs = {
            {"sin", Func::Sin},   {"cos", Func::Cos},   {"exp", Func::Exp},  {"ln", Func::Ln},
            {"sqrt", Func::Sqrt}, {"tanh", Func::Tanh}, {"sech", Func::Sech}};
        if (peek() == '(') {
            for (const auto& [name, f] : funcs) {
                if (name == id) {
                    expect('(');
                    Expr arg = expr();
                    expect(')');
                    return Expr::func(f, arg);
                }
            }
        }
        if (peek() == '.' && (id == "p" || id == "F" || id == "G" || id == "D")) {
            expect('.');
            return Expr(qualified(id, at));
        }
        if (id == "p0") return Expr(chart_.ext_momentum());
        if (auto i = chart_.base_index(id)) return Expr(chart_.base(*i));
        if (auto a = chart_.field_index(id)) {
            MultiIndex I = bracket_index(at);
            if (I.length() > chart_.k())
                fail_at("jet order " + std::to_string(I.length()) + " above chart order " +
                            std::to_string(chart_.k()),
                        at);
            return Expr(chart_.jet(*a, I));
        }
        if (std::find(params_.begin(), params_.end(), id) != params_.end()) return Expr(Symbol::param(id));
        fail_at("unknown identifier '" + id + "'", at);
    }

    std::string_view s_;
    const JetChart& chart_;
    const std::vector<std::string>& params_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse(std::string_view text, const JetChart& chart, const std::vector<std::string>& params) {
    return Parser(text, chart, params).run();
}

} // namespace sofft
