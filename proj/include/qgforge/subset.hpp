#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "qgforge/errors.hpp"

namespace qgforge {

// Subset of the elements {0, ..., parent_order-1} of a fixed magma, stored as
// a bit set. Set-algebra operations require equal parent orders.
class ElementSubset {
public:
    ElementSubset() = default;

    explicit ElementSubset(int parent_order) : parent_order_(parent_order) {
        if (parent_order < 0) throw invalid_input("ElementSubset: negative parent order");
        words_.assign((static_cast<std::size_t>(parent_order) + 63) / 64, 0);
    }

    ElementSubset(int parent_order, std::initializer_list<int> elems) : ElementSubset(parent_order) {
        for (int e : elems) insert(e);
    }

    static ElementSubset full(int parent_order) {
        ElementSubset s(parent_order);
        for (int i = 0; i < parent_order; ++i) s.insert(i);
        return s;
    }

    int parent_order() const { return parent_order_; }

    bool contains(int e) const {
        check_range(e);
        return (words_[static_cast<std::size_t>(e) >> 6] >> (e & 63)) & 1u;
    }

    void insert(int e) {
        check_range(e);
        words_[static_cast<std::size_t>(e) >> 6] |= std::uint64_t{1} << (e & 63);
    }

    void erase(int e) {
        check_range(e);
        words_[static_cast<std::size_t>(e) >> 6] &= ~(std::uint64_t{1} << (e & 63));
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool empty() const { return count() == 0; }

    // Elements in ascending order.
    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for (int i = 0; i < parent_order_; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    ElementSubset& operator&=(const ElementSubset& o) {
        check_parent(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    ElementSubset& operator|=(const ElementSubset& o) {
        check_parent(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    friend ElementSubset operator&(ElementSubset a, const ElementSubset& b) { return a &= b; }
    friend ElementSubset operator|(ElementSubset a, const ElementSubset& b) { return a |= b; }

    bool is_subset_of(const ElementSubset& o) const {
        check_parent(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool operator==(const ElementSubset& o) const {
        return parent_order_ == o.parent_order_ && words_ == o.words_;
    }
    bool operator!=(const ElementSubset& o) const { return !(*this == o); }

private:
    void check_range(int e) const {
        if (e < 0 || e >= parent_order_)
            throw invalid_input("ElementSubset: element " + std::to_string(e) +
                                " out of range for parent order " + std::to_string(parent_order_));
    }
    void check_parent(const ElementSubset& o) const {
        if (parent_order_ != o.parent_order_)
            throw invalid_input("ElementSubset: parent order mismatch");
    }

    int parent_order_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace qgforge
