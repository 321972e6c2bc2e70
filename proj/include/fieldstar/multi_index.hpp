#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>

namespace fieldstar {

inline constexpr int kMaxDim = 6;

/// Spatial multi-index alpha in N^n.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int dim);
    MultiIndex(std::initializer_list<int> entries);

    /// Unit index e_dir, dir in 1..dim.
    static MultiIndex unit(int dim, int dir);

    int dim() const { return dim_; }
    int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    int order() const;
    bool is_zero() const { return order() == 0; }

    void set(int i, int value);
    MultiIndex operator+(const MultiIndex& o) const;
    MultiIndex& operator+=(const MultiIndex& o);

    std::string to_string() const;  // "[1,0,0]"

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;
    /// Graded-lexicographic: total order first, then entries lexicographically.
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

private:
    std::array<std::uint16_t, kMaxDim> e_{};
    std::uint8_t dim_ = 0;
};

inline int parity_sign(const MultiIndex& a) { return (a.order() % 2 == 0) ? 1 : -1; }

}  // namespace fieldstar
