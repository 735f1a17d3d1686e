#pragma once

#include <functional>

#include "axiomlab/linalg.hpp"

namespace axiomlab {

enum class LpStatus { Optimal, Infeasible, Unbounded, Stopped };

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    RuleVector x;                 // full-length point (valid unless Infeasible)
    Rat objective = Rat(0);       // c.x at the returned point
    std::vector<int> active_rows; // inequality row ids tight and in the working
                                  // set at the end; together with the equality
                                  // rows these form the recorded basis
    bool at_vertex = false;       // working set spans the whole null space
};

/// Coefficients for a direction within the current null basis (k columns).
/// The default source is deterministic; the vertex search plugs in a seeded
/// random one.
using DirectionSource = std::function<std::vector<Rat>(int k)>;

/// Equality-reduced exact LP over { x : Eq rows hold, Geq rows hold,
/// (optionally) x >= 0 }. Works in the null-space coordinates of the equality
/// system; the active-set walk adds one tight inequality per step and pivots
/// with Bland's rule at vertices, so it terminates on every input.
class ReducedLp {
public:
    ReducedLp(const ConstraintSystem& sys, bool nonneg) : ncols_(sys.ncols) {
        std::vector<SparseRow> eqs;
        for (const SparseRow& r : sys.rows)
            (r.rel == Relation::Eq ? eqs : ineq_src_).push_back(r);
        if (nonneg) {
            for (int c = 0; c < sys.ncols; ++c) {
                SparseRow r;
                r.rel = Relation::Geq;
                r.rhs = Rat(0);
                r.push(c, Rat(1));
                ineq_src_.push_back(std::move(r));
            }
        }
        affine_ = solve_equalities(eqs, sys.ncols);
        if (!affine_.consistent) return;
        d_ = (int)affine_.free_cols.size();
        // dense z-space images of the inequality rows
        g_.reserve(ineq_src_.size());
        rows_.reserve(ineq_src_.size());
        for (const SparseRow& a : ineq_src_) {
            std::vector<Rat> row(d_, Rat(0));
            for (int j = 0; j < d_; ++j) {
                const auto& col = affine_.null_cols[j];
                for (const auto& [c, v] : a.entries) {
                    auto it = std::lower_bound(col.begin(), col.end(), c,
                                               [](const auto& e, int cc) { return e.first < cc; });
                    if (it != col.end() && it->first == c) row[j] += v * it->second;
                }
            }
            rows_.push_back(std::move(row));
            g_.push_back(a.rhs - a.dot(affine_.particular));
        }
        ok_ = true;
    }

    bool equalities_consistent() const { return ok_; }
    int dim() const { return d_; }

    /// z-coordinates of a full point satisfying the equalities.
    std::vector<Rat> project(const RuleVector& x) const {
        std::vector<Rat> z(d_);
        for (int j = 0; j < d_; ++j) z[j] = x[affine_.free_cols[j]];
        return z;
    }

    RuleVector lift(const std::vector<Rat>& z) const {
        RuleVector x = affine_.particular;
        for (int j = 0; j < d_; ++j) {
            if (z[j] == 0) continue;
            for (const auto& [c, v] : affine_.null_cols[j]) x[c] += v * z[j];
        }
        return x;
    }

    /// Maximizes objective.x (empty objective = 0). If start is given it must
    /// satisfy the whole system. stop_above: return Stopped as soon as the
    /// objective value (in x terms) exceeds it.
    LpOutcome solve(const RuleVector& objective, const RuleVector* start,
                    DirectionSource dirsrc = nullptr,
                    const std::optional<Rat>& stop_above = std::nullopt) const {
        LpOutcome out;
        if (!ok_) return out; // infeasible equalities
        std::vector<Rat> cz(d_, Rat(0));
        Rat cbase(0);
        if (!objective.empty()) {
            if ((int)objective.size() != ncols_) throw std::invalid_argument("objective length mismatch");
            for (int j = 0; j < d_; ++j) {
                const auto& col = affine_.null_cols[j];
                for (const auto& [c, v] : col) cz[j] += objective[c] * v;
            }
            for (int c = 0; c < ncols_; ++c) cbase += objective[c] * affine_.particular[c];
        }
        std::vector<Rat> z;
        if (start) {
            z = project(*start);
            // the projection must reproduce the point, else it violates the equalities
            RuleVector back = lift(z);
            if (back != *start) throw std::invalid_argument("start violates equality rows");
        } else {
            auto zopt = find_feasible_z();
            if (!zopt) return out;
            z = std::move(*zopt);
        }
        std::vector<Rat> slack(rows_.size());
        for (size_t r = 0; r < rows_.size(); ++r) {
            slack[r] = dotz(rows_[r], z) - g_[r];
            if (slack[r] < 0) throw std::invalid_argument("start violates inequality row");
        }
        run(z, slack, cz, dirsrc, stop_above, out);
        out.x = lift(z);
        out.objective = cbase + dotz(cz, z);
        return out;
    }

private:
    static Rat dotz(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        Rat s(0);
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
        return s;
    }

    /// Rescales a direction to a primitive integer vector; keeps coefficient
    /// growth in the null basis under control.
    static void normalize_direction(std::vector<Rat>& v) {
        Int l(1);
        for (const Rat& x : v)
            if (x != 0) l = boost::multiprecision::lcm(l, denominator(x));
        Int g(0);
        for (const Rat& x : v)
            if (x != 0) g = boost::multiprecision::gcd(g, Int(numerator(x) * (l / denominator(x))));
        if (g == 0) return;
        for (Rat& x : v)
            if (x != 0) x = Rat(numerator(x) * (l / denominator(x)) / g);
    }

    /// Phase 1: max -t over { G z + t >= g }; start (0, max violation).
    std::optional<std::vector<Rat>> find_feasible_z() const {
        if (d_ == 0) {
            for (size_t r = 0; r < rows_.size(); ++r)
                if (-g_[r] < 0) return std::nullopt;
            return std::vector<Rat>{};
        }
        ConstraintSystem ext;
        ext.ncols = d_ + 1;
        for (size_t r = 0; r < rows_.size(); ++r) {
            SparseRow row;
            row.rel = Relation::Geq;
            row.rhs = g_[r];
            for (int j = 0; j < d_; ++j)
                if (rows_[r][j] != 0) row.push(j, rows_[r][j]);
            row.push(d_, Rat(1));
            ext.rows.push_back(std::move(row));
        }
        ReducedLp phase1(ext, false);
        RuleVector cobj(d_ + 1, Rat(0));
        cobj[d_] = Rat(-1);
        RuleVector start(d_ + 1, Rat(0));
        Rat t0(0);
        for (size_t r = 0; r < rows_.size(); ++r) t0 = std::max(t0, g_[r]);
        start[d_] = t0;
        LpOutcome res = phase1.solve(cobj, &start, nullptr, Rat(0));
        if (res.status == LpStatus::Unbounded || res.status == LpStatus::Stopped ||
            (res.status == LpStatus::Optimal && res.x[d_] <= 0)) {
            if (res.status == LpStatus::Unbounded)
                throw std::runtime_error("phase-1 line detected; system is degenerate-free");
            std::vector<Rat> z(res.x.begin(), res.x.begin() + d_);
            return z;
        }
        return std::nullopt;
    }

    void run(std::vector<Rat>& z, std::vector<Rat>& slack, const std::vector<Rat>& cz,
             const DirectionSource& dirsrc, const std::optional<Rat>& stop_above,
             LpOutcome& out) const {
        std::vector<int> W;                       // active row ids, in insertion order
        std::vector<std::vector<Rat>> K;          // null basis columns of the active rows
        K.reserve(d_);
        for (int j = 0; j < d_; ++j) {
            std::vector<Rat> e(d_, Rat(0));
            e[j] = Rat(1);
            K.push_back(std::move(e));
        }
        while (true) {
            if (stop_above && dotz(cz, z) > *stop_above) {
                out.status = LpStatus::Stopped;
                out.active_rows = W;
                return;
            }
            std::vector<Rat> v(d_, Rat(0));
            bool improving = false;
            if (!K.empty()) {
                // steepest direction within the null basis: v = K (K^T c)
                std::vector<Rat> w((int)K.size(), Rat(0));
                for (size_t j = 0; j < K.size(); ++j) w[j] = dotz(K[j], cz);
                bool any = false;
                for (const Rat& wj : w)
                    if (wj != 0) any = true;
                if (any) {
                    improving = true;
                    for (size_t j = 0; j < K.size(); ++j)
                        if (w[j] != 0)
                            for (int i = 0; i < d_; ++i) v[i] += K[j][i] * w[j];
                } else {
                    // objective is constant on the face; head toward a vertex
                    std::vector<Rat> coeff;
                    if (dirsrc) coeff = dirsrc((int)K.size());
                    if ((int)coeff.size() != (int)K.size()) {
                        coeff.assign(K.size(), Rat(0));
                        coeff[0] = Rat(1);
                    }
                    for (size_t j = 0; j < K.size(); ++j)
                        if (coeff[j] != 0)
                            for (int i = 0; i < d_; ++i) v[i] += K[j][i] * coeff[j];
                    bool zero = true;
                    for (const Rat& vi : v)
                        if (vi != 0) zero = false;
                    if (zero) v = K[0];
                }
                normalize_direction(v);
            }
            if (K.empty()) {
                // vertex: multiplier test; optimal iff c = G_W^T lambda with lambda <= 0
                std::vector<Rat> lambda = solve_transposed(W, cz);
                int drop = -1;
                for (size_t j = 0; j < W.size(); ++j) {
                    if (lambda[j] > 0 && (drop == -1 || W[j] < W[drop])) drop = (int)j;
                }
                if (drop == -1) {
                    out.status = LpStatus::Optimal;
                    out.at_vertex = true;
                    out.active_rows = W;
                    return;
                }
                std::vector<Rat> u = solve_released(W, drop);
                normalize_direction(u);
                W.erase(W.begin() + drop);
                K.assign(1, std::move(u));
                continue;
            }
            // ratio test along v
            std::vector<Rat> dv(rows_.size());
            int block = -1;
            Rat tmax(0);
            bool bounded = false;
            for (size_t r = 0; r < rows_.size(); ++r) {
                dv[r] = dotz(rows_[r], v);
                if (dv[r] < 0) {
                    Rat t = slack[r] / -dv[r];
                    if (!bounded || t < tmax || (t == tmax && (int)r < block)) {
                        bounded = true;
                        tmax = t;
                        block = (int)r;
                    }
                }
            }
            if (!bounded) {
                if (improving) {
                    out.status = LpStatus::Unbounded;
                    out.active_rows = W;
                    return;
                }
                // neutral unbounded direction: try the reverse once, else the
                // face contains a line and has no vertex
                for (Rat& vi : v) vi = -vi;
                bool rev = false;
                for (size_t r = 0; r < rows_.size(); ++r) {
                    dv[r] = -dv[r];
                    if (dv[r] < 0) {
                        Rat t = slack[r] / -dv[r];
                        if (!rev || t < tmax || (t == tmax && (int)r < block)) {
                            rev = true;
                            tmax = t;
                            block = (int)r;
                        }
                    }
                }
                if (!rev) {
                    out.status = LpStatus::Optimal; // feasible, no vertex on this face
                    out.active_rows = W;
                    return;
                }
            }
            if (tmax != 0) {
                for (int i = 0; i < d_; ++i)
                    if (v[i] != 0) z[i] += tmax * v[i];
                for (size_t r = 0; r < rows_.size(); ++r)
                    if (dv[r] != 0) slack[r] += tmax * dv[r];
                slack[block] = Rat(0);
            }
            // absorb the blocking row into the working set
            std::vector<Rat> w((int)K.size());
            int pivot = -1;
            for (size_t j = 0; j < K.size(); ++j) {
                w[j] = dotz(K[j], rows_[block]);
                if (pivot == -1 && w[j] != 0) pivot = (int)j;
            }
            if (pivot == -1) continue; // dependent on current working set; skip
            for (size_t j = 0; j < K.size(); ++j) {
                if ((int)j == pivot || w[j] == 0) continue;
                Rat f = w[j] / w[pivot];
                for (int i = 0; i < d_; ++i) K[j][i] -= f * K[pivot][i];
                normalize_direction(K[j]);
            }
            K.erase(K.begin() + pivot);
            W.push_back(block);
        }
    }

    /// Solves G_W^T lambda = c (square, rows of W independent by construction).
    std::vector<Rat> solve_transposed(const std::vector<int>& W, const std::vector<Rat>& c) const {
        int k = (int)W.size();
        // build d_ x k matrix with columns = rows of W; solve least-structure
        // via Gaussian elimination on [A | c]
        std::vector<std::vector<Rat>> A(d_, std::vector<Rat>(k + 1, Rat(0)));
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < d_; ++i) A[i][j] = rows_[W[j]][i];
        for (int i = 0; i < d_; ++i) A[i][k] = c[i];
        std::vector<int> piv_row(k, -1);
        int r = 0;
        for (int col = 0; col < k && r < d_; ++col) {
            int sel = -1;
            for (int rr = r; rr < d_; ++rr)
                if (A[rr][col] != 0) {
                    sel = rr;
                    break;
                }
            if (sel == -1) continue;
            std::swap(A[r], A[sel]);
            for (int rr = 0; rr < d_; ++rr) {
                if (rr == r || A[rr][col] == 0) continue;
                Rat f = A[rr][col] / A[r][col];
                for (int cc = col; cc <= k; ++cc) A[rr][cc] -= f * A[r][cc];
            }
            piv_row[col] = r;
            ++r;
        }
        std::vector<Rat> lambda(k, Rat(0));
        for (int col = 0; col < k; ++col)
            if (piv_row[col] >= 0) lambda[col] = A[piv_row[col]][k] / A[piv_row[col]][col];
        return lambda;
    }

    /// Direction u with G_r u = 0 for all kept rows and G_drop u = 1.
    std::vector<Rat> solve_released(const std::vector<int>& W, int drop) const {
        int k = (int)W.size();
        std::vector<std::vector<Rat>> A(k, std::vector<Rat>(d_ + 1, Rat(0)));
        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < d_; ++i) A[j][i] = rows_[W[j]][i];
            A[j][d_] = (j == drop) ? Rat(1) : Rat(0);
        }
        // gaussian solve A u = e_drop (k equations, d_ unknowns, k <= d_)
        std::vector<int> piv_col;
        int r = 0;
        for (int col = 0; col < d_ && r < k; ++col) {
            int sel = -1;
            for (int rr = r; rr < k; ++rr)
                if (A[rr][col] != 0) {
                    sel = rr;
                    break;
                }
            if (sel == -1) continue;
            std::swap(A[r], A[sel]);
            for (int rr = 0; rr < k; ++rr) {
                if (rr == r || A[rr][col] == 0) continue;
                Rat f = A[rr][col] / A[r][col];
                for (int cc = col; cc <= d_; ++cc) A[rr][cc] -= f * A[r][cc];
            }
            piv_col.push_back(col);
            ++r;
        }
        std::vector<Rat> u(d_, Rat(0));
        for (int j = 0; j < r; ++j) u[piv_col[j]] = A[j][d_] / A[j][piv_col[j]];
        return u;
    }

    int ncols_ = 0;
    int d_ = 0;
    bool ok_ = false;
    AffineSolution affine_;
    std::vector<SparseRow> ineq_src_;
    std::vector<std::vector<Rat>> rows_; // z-space inequality rows
    std::vector<Rat> g_;                 // z-space right-hand sides
};

/// Exact feasible point of the system (phase-1 simplex), if one exists.
inline std::optional<RuleVector> lp_feasible(const ConstraintSystem& sys, bool nonneg) {
    ReducedLp lp(sys, nonneg);
    LpOutcome res = lp.solve({}, nullptr);
    if (res.status == LpStatus::Infeasible) return std::nullopt;
    return res.x;
}

struct lp_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Optimal basic feasible solution maximizing objective.x over the system.
inline LpOutcome lp_optimize(const ConstraintSystem& sys, const RuleVector& objective,
                             const RuleVector* start = nullptr, bool nonneg = false,
                             DirectionSource dirsrc = nullptr) {
    ReducedLp lp(sys, nonneg);
    LpOutcome res = lp.solve(objective, start, std::move(dirsrc));
    if (res.status == LpStatus::Infeasible) throw lp_error("infeasible system");
    if (res.status == LpStatus::Unbounded) throw lp_error("objective unbounded");
    return res;
}

} // namespace axiomlab
