#include "fieldstar/multi_index.hpp"

#include "fieldstar/error.hpp"

namespace fieldstar {

MultiIndex::MultiIndex(int dim) {
    if (dim < 0 || dim > kMaxDim) throw DimensionMismatch("unsupported dimension " + std::to_string(dim));
    dim_ = static_cast<std::uint8_t>(dim);
}

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(static_cast<int>(entries.size())) {
    int i = 0;
    for (int v : entries) set(i++, v);
}

MultiIndex MultiIndex::unit(int dim, int dir) {
    if (dir < 1 || dir > dim) throw DimensionMismatch("direction " + std::to_string(dir) + " out of range");
    MultiIndex m(dim);
    m.e_[static_cast<std::size_t>(dir - 1)] = 1;
    return m;
}

int MultiIndex::order() const {
    int s = 0;
    for (int i = 0; i < dim_; ++i) s += e_[static_cast<std::size_t>(i)];
    return s;
}

void MultiIndex::set(int i, int value) {
    if (i < 0 || i >= dim_) throw DimensionMismatch("index slot out of range");
    if (value < 0 || value > 60000) throw Error("multi-index entry out of range");
    e_[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(value);
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    MultiIndex r = *this;
    r += o;
    return r;
}

MultiIndex& MultiIndex::operator+=(const MultiIndex& o) {
    if (o.dim_ != dim_) throw DimensionMismatch("multi-index dimensions differ");
    for (int i = 0; i < dim_; ++i) e_[static_cast<std::size_t>(i)] += o.e_[static_cast<std::size_t>(i)];
    return *this;
}

std::string MultiIndex::to_string() const {
    std::string s = "[";
    for (int i = 0; i < dim_; ++i) {
        if (i) s += ",";
        s += std::to_string(e_[static_cast<std::size_t>(i)]);
    }
    return s + "]";
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    if (auto c = a.order() <=> b.order(); c != 0) return c;
    for (int i = 0; i < a.dim_; ++i) {
        auto k = static_cast<std::size_t>(i);
        if (a.e_[k] != b.e_[k]) return b.e_[k] <=> a.e_[k];
    }
    return std::strong_ordering::equal;
}

}  // namespace fieldstar
