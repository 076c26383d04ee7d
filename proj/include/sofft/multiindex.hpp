#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace sofft {

/// Exponent vector over the m base coordinates. Base indices are 0-based.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t m) : entries_(m, 0) {}
    MultiIndex(std::initializer_list<int> entries);
    explicit MultiIndex(std::vector<int> entries);

    /// The unit multi-index 1_i in dimension m.
    static MultiIndex unit(std::size_t m, std::size_t i);

    [[nodiscard]] std::size_t dim() const { return entries_.size(); }
    [[nodiscard]] int operator[](std::size_t i) const { return entries_[i]; }
    [[nodiscard]] const std::vector<int>& entries() const { return entries_; }

    /// |I|
    [[nodiscard]] int length() const;
    [[nodiscard]] long factorial() const;
    [[nodiscard]] bool is_zero() const { return length() == 0; }

    /// I + 1_i; throws std::out_of_range for i >= m.
    [[nodiscard]] MultiIndex add_unit(std::size_t i) const;
    /// I - 1_i; throws std::domain_error when the entry is already zero.
    [[nodiscard]] MultiIndex sub_unit(std::size_t i) const;
    [[nodiscard]] MultiIndex operator+(const MultiIndex& other) const;
    /// True when every entry of *this is <= the matching entry of other.
    [[nodiscard]] bool divides(const MultiIndex& other) const;

    /// Rendering as `[2,0]`.
    [[nodiscard]] std::string str() const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<int> entries_;
};

[[nodiscard]] inline int length(const MultiIndex& I) { return I.length(); }
[[nodiscard]] inline MultiIndex add_unit(const MultiIndex& I, std::size_t i) { return I.add_unit(i); }

/// All multi-indices of length exactly k in dimension m, lexicographically decreasing.
[[nodiscard]] std::vector<MultiIndex> enumerate(std::size_t m, int k);

/// All multi-indices with 0 <= |I| <= k, grouped by length, each group as in enumerate.
[[nodiscard]] std::vector<MultiIndex> enumerate_up_to(std::size_t m, int k);

/// n(ij): 1 if i == j, else 2.
[[nodiscard]] int sym_factor(std::size_t i, std::size_t j);

/// Ordered pairs (i, j) with 1_i + 1_j = I; requires |I| = 2.
[[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> unit_pairs(const MultiIndex& I);

[[nodiscard]] long binomial(long n, long k);

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& I) const noexcept;
};

} // namespace sofft
