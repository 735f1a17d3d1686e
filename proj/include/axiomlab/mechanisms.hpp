#pragma once

#include <set>

#include "axiomlab/assignment.hpp"

namespace axiomlab {

/// Priority order over agents: order[0] picks first.
struct PriorityOrder {
    Perm order;
    explicit PriorityOrder(Perm p) : order(std::move(p)) {}
};

namespace detail {

inline long factorial(int n) {
    long f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

template <typename F>
inline void for_each_order(int n, F&& fn) {
    std::vector<int> ord(n);
    std::iota(ord.begin(), ord.end(), 0);
    do {
        fn(ord);
    } while (std::next_permutation(ord.begin(), ord.end()));
}

} // namespace detail

/// order[0] gets her top house; each later agent her best still-free house.
/// Returns house_of[agent].
inline std::vector<int> serial_dictatorship_matching(const Profile& r, const std::vector<int>& order) {
    std::vector<bool> taken(r.n, false);
    std::vector<int> house_of(r.n, -1);
    for (int a : order) {
        for (int h : r.prefs[a]) {
            if (!taken[h]) {
                taken[h] = true;
                house_of[a] = h;
                break;
            }
        }
    }
    return house_of;
}

inline Assignment serial_dictatorship(const Profile& r, const PriorityOrder& ord) {
    return from_matching(serial_dictatorship_matching(r, ord.order.map));
}

/// Integer counts: cell (i,h) = number of priority orders assigning h to i.
inline std::vector<int> rsd_counts(const Profile& r) {
    std::vector<int> cnt(r.n * r.n, 0);
    detail::for_each_order(r.n, [&](const std::vector<int>& ord) {
        std::vector<int> m = serial_dictatorship_matching(r, ord);
        for (int i = 0; i < r.n; ++i) cnt[i * r.n + m[i]]++;
    });
    return cnt;
}

/// Exact average of serial dictatorship over all n! orders.
inline Assignment rsd(const Profile& r) {
    long f = detail::factorial(r.n);
    std::vector<int> cnt = rsd_counts(r);
    Assignment out(r.n);
    for (int i = 0; i < r.n; ++i)
        for (int h = 0; h < r.n; ++h) out.at(i, h) = Rat(cnt[i * r.n + h], f);
    return out;
}

/// Deduplicated serial-dictatorship outcomes, in a fixed (sorted) order.
inline std::vector<Assignment> efficient_assignments(const Profile& r) {
    std::set<std::vector<int>> seen;
    detail::for_each_order(r.n, [&](const std::vector<int>& ord) {
        seen.insert(serial_dictatorship_matching(r, ord));
    });
    std::vector<Assignment> out;
    out.reserve(seen.size());
    for (const auto& m : seen) out.push_back(from_matching(m));
    return out;
}

/// Cell (i,h) true iff some efficient deterministic assignment gives h to i.
inline std::vector<bool> rsd_support(const Profile& r) {
    std::vector<int> cnt = rsd_counts(r);
    std::vector<bool> out(cnt.size());
    for (size_t k = 0; k < cnt.size(); ++k) out[k] = cnt[k] > 0;
    return out;
}

/// True iff m1 != m2 and every agent's m1 house is weakly better than her m2
/// house (strictly, whenever they differ).
inline bool pareto_dominates(const Profile& r, const Assignment& m1, const Assignment& m2) {
    std::vector<int> a = to_matching(m1);
    std::vector<int> b = to_matching(m2);
    if (a == b) return false;
    for (int i = 0; i < r.n; ++i) {
        if (a[i] == b[i]) continue;
        // position of a[i] must precede position of b[i] in agent i's order
        int pa = -1, pb = -1;
        for (int k = 0; k < r.n; ++k) {
            if (r.prefs[i][k] == a[i]) pa = k;
            if (r.prefs[i][k] == b[i]) pb = k;
        }
        if (pa > pb) return false;
    }
    return true;
}

} // namespace axiomlab
