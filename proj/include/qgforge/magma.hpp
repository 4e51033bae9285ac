#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgforge/errors.hpp"

namespace qgforge {

// A finite magma on elements {0, ..., n-1} given by its Cayley table.
//
// The table is stored row-major: entry (a, b) is the product a*b. Division
// tables are precomputed at construction whenever they exist:
//   ldiv(a, b) = the unique x with a*x = b   (exists iff rows are permutations)
//   rdiv(a, b) = the unique y with y*a = b   (exists iff columns are permutations)
// A magma whose rows are permutations is a left quasigroup, one whose columns
// are permutations is a right quasigroup, and one with both is a quasigroup
// (its table is a Latin square). The two-sided unit, when present, is unique.
class FiniteMagma {
public:
    FiniteMagma() = default;

    // Builds from a flat row-major table of order*order entries.
    static FiniteMagma from_flat(int order, std::vector<int> table) {
        if (order <= 0) throw invalid_input("magma: order must be positive");
        if (table.size() != static_cast<std::size_t>(order) * static_cast<std::size_t>(order))
            throw invalid_input("magma: table has " + std::to_string(table.size()) +
                                " entries, expected " + std::to_string(order * order));
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b) {
                int v = table[static_cast<std::size_t>(a) * order + b];
                if (v < 0 || v >= order)
                    throw invalid_input("magma: entry (" + std::to_string(a) + "," +
                                        std::to_string(b) + ") = " + std::to_string(v) +
                                        " out of range for order " + std::to_string(order));
            }
        FiniteMagma m;
        m.order_ = order;
        m.table_ = std::move(table);
        m.index_divisions();
        m.find_unit();
        return m;
    }

    static FiniteMagma from_rows(const std::vector<std::vector<int>>& rows) {
        int n = static_cast<int>(rows.size());
        std::vector<int> flat;
        flat.reserve(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a) {
            if (static_cast<int>(rows[a].size()) != n)
                throw invalid_input("magma: row " + std::to_string(a) + " has " +
                                    std::to_string(rows[a].size()) + " entries, expected " +
                                    std::to_string(n));
            flat.insert(flat.end(), rows[a].begin(), rows[a].end());
        }
        return from_flat(n, std::move(flat));
    }

    int order() const { return order_; }

    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }

    bool left_quasigroup() const { return !ldiv_.empty(); }
    bool right_quasigroup() const { return !rdiv_.empty(); }
    bool latin_square() const { return left_quasigroup() && right_quasigroup(); }

    // a \ b: the unique x with a*x = b.
    int div_l(int a, int b) const {
        if (ldiv_.empty())
            throw axiom_error("div_l: rows are not permutations, left division undefined");
        return ldiv_[static_cast<std::size_t>(a) * order_ + b];
    }

    // b / a: the unique y with y*a = b.
    int div_r(int a, int b) const {
        if (rdiv_.empty())
            throw axiom_error("div_r: columns are not permutations, right division undefined");
        return rdiv_[static_cast<std::size_t>(a) * order_ + b];
    }

    // The two-sided unit, absent if none exists.
    std::optional<int> unit() const { return unit_; }

    bool associative() const {
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b)
                for (int c = 0; c < order_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
        return true;
    }

    bool commutative() const {
        for (int a = 0; a < order_; ++a)
            for (int b = a + 1; b < order_; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    const std::vector<int>& flat() const { return table_; }

    std::vector<std::vector<int>> rows() const {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(order_));
        for (int a = 0; a < order_; ++a)
            out[a].assign(table_.begin() + static_cast<std::size_t>(a) * order_,
                          table_.begin() + static_cast<std::size_t>(a + 1) * order_);
        return out;
    }

    bool operator==(const FiniteMagma& o) const {
        return order_ == o.order_ && table_ == o.table_;
    }
    bool operator!=(const FiniteMagma& o) const { return !(*this == o); }

private:
    // Inverts rows and columns where they are permutations.
    void index_divisions() {
        const int n = order_;
        std::vector<int> seen(static_cast<std::size_t>(n));

        bool rows_ok = true;
        for (int a = 0; a < n && rows_ok; ++a) {
            std::fill(seen.begin(), seen.end(), 0);
            for (int x = 0; x < n; ++x)
                if (++seen[mul(a, x)] > 1) { rows_ok = false; break; }
        }
        if (rows_ok) {
            ldiv_.assign(table_.size(), 0);
            for (int a = 0; a < n; ++a)
                for (int x = 0; x < n; ++x)
                    ldiv_[static_cast<std::size_t>(a) * n + mul(a, x)] = x;
        }

        bool cols_ok = true;
        for (int a = 0; a < n && cols_ok; ++a) {
            std::fill(seen.begin(), seen.end(), 0);
            for (int y = 0; y < n; ++y)
                if (++seen[mul(y, a)] > 1) { cols_ok = false; break; }
        }
        if (cols_ok) {
            rdiv_.assign(table_.size(), 0);
            for (int a = 0; a < n; ++a)
                for (int y = 0; y < n; ++y)
                    rdiv_[static_cast<std::size_t>(a) * n + mul(y, a)] = y;
        }
    }

    // A two-sided unit is unique when it exists: e1 = e1*e2 = e2.
    void find_unit() {
        for (int e = 0; e < order_; ++e) {
            bool ok = true;
            for (int g = 0; g < order_ && ok; ++g)
                ok = mul(e, g) == g && mul(g, e) == g;
            if (ok) { unit_ = e; return; }
        }
    }

    int order_ = 0;
    std::vector<int> table_;
    std::vector<int> ldiv_, rdiv_;
    std::optional<int> unit_;
};

} // namespace qgforge
