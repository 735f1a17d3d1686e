#pragma once

#include <vector>

#include "axiomlab/types.hpp"

namespace axiomlab {

/// n x n exact-rational bistochastic matrix; cell (i,h) is the probability
/// that agent i receives house h.
struct Assignment {
    int n = 0;
    std::vector<Rat> cells; // row-major

    Assignment() = default;
    explicit Assignment(int n_) : n(n_), cells(n_ * n_, Rat(0)) {}

    Rat& at(int i, int h) { return cells[i * n + h]; }
    const Rat& at(int i, int h) const { return cells[i * n + h]; }

    bool operator==(const Assignment& o) const { return n == o.n && cells == o.cells; }

    /// Rational equality, no tolerance: rejects any row or column sum != 1.
    void validate() const {
        for (const Rat& v : cells)
            if (v < 0) throw std::invalid_argument("negative assignment cell");
        for (int i = 0; i < n; ++i) {
            Rat s(0);
            for (int h = 0; h < n; ++h) s += at(i, h);
            if (s != 1) throw std::invalid_argument("row sum != 1");
        }
        for (int h = 0; h < n; ++h) {
            Rat s(0);
            for (int i = 0; i < n; ++i) s += at(i, h);
            if (s != 1) throw std::invalid_argument("column sum != 1");
        }
    }

    bool rows_equal(int i, int j) const {
        for (int h = 0; h < n; ++h)
            if (at(i, h) != at(j, h)) return false;
        return true;
    }
};

inline bool is_deterministic(const Assignment& m) {
    for (const Rat& v : m.cells)
        if (v != 0 && v != 1) return false;
    return true;
}

/// Cell (i,h) moves to (pi(i), tau(h)).
inline Assignment apply_perm(const Assignment& m, const Perm& pi, const Perm& tau) {
    Assignment out(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int h = 0; h < m.n; ++h) out.at(pi(i), tau(h)) = m.at(i, h);
    return out;
}

/// Deterministic assignment from the matching agent -> house.
inline Assignment from_matching(const std::vector<int>& house_of) {
    Assignment m((int)house_of.size());
    for (int i = 0; i < m.n; ++i) m.at(i, house_of[i]) = 1;
    return m;
}

/// Inverse of from_matching; requires a deterministic assignment.
inline std::vector<int> to_matching(const Assignment& m) {
    std::vector<int> out(m.n, -1);
    for (int i = 0; i < m.n; ++i)
        for (int h = 0; h < m.n; ++h)
            if (m.at(i, h) == 1) out[i] = h;
    for (int v : out)
        if (v < 0) throw std::invalid_argument("not deterministic");
    return out;
}

} // namespace axiomlab
