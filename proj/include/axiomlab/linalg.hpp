#pragma once

#include <array>
#include <map>
#include <optional>
#include <sstream>

#include "axiomlab/rational.hpp"

namespace axiomlab {

enum class Relation { Eq, Geq };

/// Sparse exact row: strictly increasing columns, no stored zeros.
struct SparseRow {
    std::vector<std::pair<int, Rat>> entries;
    Relation rel = Relation::Eq;
    Rat rhs = Rat(0);

    void push(int col, Rat v) {
        if (v == 0) return;
        if (!entries.empty() && entries.back().first >= col)
            throw std::invalid_argument("columns must be strictly increasing");
        entries.emplace_back(col, std::move(v));
    }
    static SparseRow of(std::initializer_list<std::pair<int, Rat>> es, Relation rel, Rat rhs) {
        SparseRow r;
        r.rel = rel;
        r.rhs = std::move(rhs);
        for (auto& [c, v] : es) r.push(c, v);
        return r;
    }
    Rat dot(const std::vector<Rat>& x) const {
        Rat s(0);
        for (const auto& [c, v] : entries) s += v * x[c];
        return s;
    }
};

struct ConstraintSystem {
    int ncols = 0;
    std::vector<SparseRow> rows;
    /// Optional column labels (profile id, agent, house).
    std::vector<std::array<int, 3>> labels;
};

using RuleVector = std::vector<Rat>;

inline std::string serialize_system(const ConstraintSystem& sys) {
    std::ostringstream os;
    for (const SparseRow& r : sys.rows) {
        os << (r.rel == Relation::Eq ? "Eq" : "Geq") << ' ' << format_rat(r.rhs);
        for (const auto& [c, v] : r.entries) os << ' ' << c << ':' << format_rat(v);
        os << '\n';
    }
    return os.str();
}

inline ConstraintSystem parse_system(const std::string& text, int ncols) {
    ConstraintSystem sys;
    sys.ncols = ncols;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string rel, rhs;
        ls >> rel >> rhs;
        SparseRow r;
        r.rel = rel == "Eq" ? Relation::Eq : Relation::Geq;
        r.rhs = parse_rat(rhs);
        std::string tok;
        while (ls >> tok) {
            auto colon = tok.find(':');
            r.push(std::stoi(tok.substr(0, colon)), parse_rat(tok.substr(colon + 1)));
        }
        sys.rows.push_back(std::move(r));
    }
    return sys;
}

namespace detail {

using SRow = std::map<int, Rat>; // working row, column -> coefficient

/// Eliminates r against the basis until its minimum column is not a pivot.
/// Basis rows keep their pivot at their minimum column, so the minimum column
/// of r strictly increases and the loop terminates.
inline void reduce_row(SRow& r, Rat& rhs, const std::map<int, std::pair<SRow, Rat>>& basis) {
    while (!r.empty()) {
        int p = r.begin()->first;
        auto it = basis.find(p);
        if (it == basis.end()) return;
        const auto& [b, brhs] = it->second;
        Rat factor = r.begin()->second / b.begin()->second;
        for (const auto& [c, v] : b) {
            auto rc = r.find(c);
            Rat nv = (rc == r.end() ? Rat(0) : rc->second) - factor * v;
            if (nv == 0) {
                if (rc != r.end()) r.erase(rc);
            } else if (rc == r.end()) {
                r.emplace(c, std::move(nv));
            } else {
                rc->second = std::move(nv);
            }
        }
        rhs -= factor * brhs;
    }
}

} // namespace detail

/// Streaming rank accumulator: feed rows one at a time, never materializing
/// the whole matrix.
class RankAccumulator {
public:
    /// Returns true if the row increased the rank.
    bool add(const SparseRow& row) {
        detail::SRow r(row.entries.begin(), row.entries.end());
        Rat rhs = row.rhs;
        detail::reduce_row(r, rhs, basis_);
        if (r.empty()) return false;
        int p = r.begin()->first;
        basis_.emplace(p, std::make_pair(std::move(r), std::move(rhs)));
        return true;
    }
    size_t rank() const { return basis_.size(); }

private:
    std::map<int, std::pair<detail::SRow, Rat>> basis_;
};

/// Exact rank over the rationals. Rows are processed shortest-first to limit
/// fill (unit rows cancel whole columns before longer rows arrive).
inline size_t rank(const std::vector<SparseRow>& rows) {
    std::vector<const SparseRow*> order;
    order.reserve(rows.size());
    for (const SparseRow& r : rows) order.push_back(&r);
    std::stable_sort(order.begin(), order.end(),
                     [](const SparseRow* a, const SparseRow* b) {
                         return a->entries.size() < b->entries.size();
                     });
    RankAccumulator acc;
    for (const SparseRow* r : order) acc.add(*r);
    return acc.rank();
}

/// Reduced echelon form of an equality system: particular solution plus a
/// sparse basis of the null space (one column per free variable).
struct AffineSolution {
    bool consistent = true;
    RuleVector particular;                            // length ncols
    std::vector<int> free_cols;                       // ascending
    std::vector<std::vector<std::pair<int, Rat>>> null_cols; // per free col, sorted by row index
};

inline AffineSolution solve_equalities(const std::vector<SparseRow>& eq_rows, int ncols) {
    std::map<int, std::pair<detail::SRow, Rat>> basis;
    {
        std::vector<const SparseRow*> order;
        for (const SparseRow& r : eq_rows) {
            if (r.rel != Relation::Eq) throw std::invalid_argument("solve_equalities expects Eq rows");
            order.push_back(&r);
        }
        std::stable_sort(order.begin(), order.end(),
                         [](const SparseRow* a, const SparseRow* b) {
                             return a->entries.size() < b->entries.size();
                         });
        for (const SparseRow* row : order) {
            detail::SRow r(row->entries.begin(), row->entries.end());
            Rat rhs = row->rhs;
            detail::reduce_row(r, rhs, basis);
            if (r.empty()) {
                if (rhs != 0) return {false, {}, {}, {}};
                continue;
            }
            basis.emplace(r.begin()->first, std::make_pair(std::move(r), std::move(rhs)));
        }
    }
    // back-elimination, descending pivots, to reach fully reduced form
    for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
        int q = it->first;
        const auto& [qrow, qrhs] = it->second;
        for (auto jt = basis.begin(); jt != basis.end() && jt->first < q; ++jt) {
            auto& [brow, brhs] = jt->second;
            auto bc = brow.find(q);
            if (bc == brow.end()) continue;
            Rat factor = bc->second / qrow.begin()->second;
            for (const auto& [c, v] : qrow) {
                auto rc = brow.find(c);
                Rat nv = (rc == brow.end() ? Rat(0) : rc->second) - factor * v;
                if (nv == 0) {
                    if (rc != brow.end()) brow.erase(rc);
                } else if (rc == brow.end()) {
                    brow.emplace(c, std::move(nv));
                } else {
                    rc->second = std::move(nv);
                }
            }
            brhs -= factor * qrhs;
        }
    }
    AffineSolution out;
    out.particular.assign(ncols, Rat(0));
    std::vector<bool> is_pivot(ncols, false);
    for (const auto& [p, br] : basis) {
        is_pivot[p] = true;
        out.particular[p] = br.second / br.first.begin()->second;
    }
    std::map<int, int> free_index;
    for (int c = 0; c < ncols; ++c) {
        if (!is_pivot[c]) {
            free_index[c] = (int)out.free_cols.size();
            out.free_cols.push_back(c);
        }
    }
    out.null_cols.assign(out.free_cols.size(), {});
    for (size_t f = 0; f < out.free_cols.size(); ++f)
        out.null_cols[f].emplace_back(out.free_cols[f], Rat(1));
    for (const auto& [p, br] : basis) {
        const Rat& pivot = br.first.begin()->second;
        for (const auto& [c, v] : br.first) {
            if (c == p) continue;
            out.null_cols[free_index.at(c)].emplace_back(p, -v / pivot);
        }
    }
    for (auto& col : out.null_cols)
        std::sort(col.begin(), col.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

/// Rank of the rows satisfied with equality at x. Equality rows are always
/// active; inequality rows are active iff tight. Throws if x is infeasible.
inline size_t active_rank_at(const ConstraintSystem& sys, const RuleVector& x) {
    if ((int)x.size() != sys.ncols) throw std::invalid_argument("vector length mismatch");
    std::vector<SparseRow> active;
    for (const SparseRow& r : sys.rows) {
        Rat v = r.dot(x);
        if (r.rel == Relation::Eq) {
            if (v != r.rhs) throw std::invalid_argument("equality row violated at x");
            active.push_back(r);
        } else {
            if (v < r.rhs) throw std::invalid_argument("inequality row violated at x");
            if (v == r.rhs) active.push_back(r);
        }
    }
    return rank(active);
}

} // namespace axiomlab
