#include "sofft/multiindex.hpp"

#include <numeric>
#include <stdexcept>

namespace sofft {

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_) {
        if (e < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
    }
}

MultiIndex MultiIndex::unit(std::size_t m, std::size_t i) { return MultiIndex(m).add_unit(i); }

int MultiIndex::length() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

long MultiIndex::factorial() const {
    long f = 1;
    for (int e : entries_)
        for (int k = 2; k <= e; ++k) f *= k;
    return f;
}

MultiIndex MultiIndex::add_unit(std::size_t i) const {
    if (i >= entries_.size()) throw std::out_of_range("base index out of range");
    MultiIndex r = *this;
    ++r.entries_[i];
    return r;
}

MultiIndex MultiIndex::sub_unit(std::size_t i) const {
    if (i >= entries_.size()) throw std::out_of_range("base index out of range");
    if (entries_[i] == 0) throw std::domain_error("multi-index entry already zero");
    MultiIndex r = *this;
    --r.entries_[i];
    return r;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("multi-index dimension mismatch");
    MultiIndex r = *this;
    for (std::size_t i = 0; i < dim(); ++i) r.entries_[i] += other.entries_[i];
    return r;
}

bool MultiIndex::divides(const MultiIndex& other) const {
    if (other.dim() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (entries_[i] > other.entries_[i]) return false;
    return true;
}

std::string MultiIndex::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(entries_[i]);
    }
    return s + "]";
}

namespace {

void fill(std::vector<int>& cur, std::size_t pos, int remaining, std::vector<MultiIndex>& out) {
    if (pos + 1 == cur.size()) {
        cur[pos] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[pos] = e;
        fill(cur, pos + 1, remaining - e, out);
    }
}

} // namespace

std::vector<MultiIndex> enumerate(std::size_t m, int k) {
    if (m == 0) throw std::invalid_argument("base dimension must be positive");
    if (k < 0) throw std::invalid_argument("order must be nonnegative");
    std::vector<MultiIndex> out;
    std::vector<int> cur(m, 0);
    fill(cur, 0, k, out);
    return out;
}

std::vector<MultiIndex> enumerate_up_to(std::size_t m, int k) {
    std::vector<MultiIndex> out;
    for (int r = 0; r <= k; ++r) {
        auto level = enumerate(m, r);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

int sym_factor(std::size_t i, std::size_t j) { return i == j ? 1 : 2; }

std::vector<std::pair<std::size_t, std::size_t>> unit_pairs(const MultiIndex& I) {
    if (I.length() != 2) throw std::invalid_argument("unit_pairs needs |I| = 2");
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < I.dim(); ++i)
        for (std::size_t j = 0; j < I.dim(); ++j)
            if (MultiIndex::unit(I.dim(), i).add_unit(j) == I) out.emplace_back(i, j);
    return out;
}

long binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& I) const noexcept {
    std::size_t h = I.dim();
    for (int e : I.entries()) h = h * 31 + static_cast<std::size_t>(e);
    return h;
}

} // namespace sofft
