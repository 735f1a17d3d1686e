#pragma once

#include <map>

#include "axiomlab/assignment.hpp"
#include "axiomlab/mechanisms.hpp"

namespace axiomlab {

struct CanonicalResult {
    Profile canonical;
    /// All (agent perm, house perm) with apply_perm(input, pi, tau) == canonical.
    std::vector<std::pair<Perm, Perm>> witnesses;
};

namespace detail {

/// The lex-min profile in the orbit has first row 0,1,..,n-1 (only a house
/// relabeling by the inverse of some agent's preference achieves that row),
/// and its remaining rows sorted. So the minimum over orbit = minimum over
/// pivot agents a of sort(rows renamed by inverse of agent a's preference).
inline std::vector<Pref> renamed_sorted_rows(const Profile& r, const Perm& tau) {
    std::vector<Pref> rows(r.n, Pref(r.n));
    for (int i = 0; i < r.n; ++i)
        for (int k = 0; k < r.n; ++k) rows[i][k] = tau(r.prefs[i][k]);
    std::sort(rows.begin(), rows.end());
    return rows;
}

} // namespace detail

/// Distinct minimizing house permutations (one per distinct minimizing pivot
/// preference) together with the canonical profile.
inline std::pair<Profile, std::vector<Perm>> canonical_taus(const Profile& r) {
    std::vector<Pref> best;
    std::vector<Perm> taus;
    std::vector<Pref> seen_pivots;
    for (int a = 0; a < r.n; ++a) {
        if (std::find(seen_pivots.begin(), seen_pivots.end(), r.prefs[a]) != seen_pivots.end())
            continue;
        seen_pivots.push_back(r.prefs[a]);
        Perm tau = Perm(r.prefs[a]).inverse();
        std::vector<Pref> cand = detail::renamed_sorted_rows(r, tau);
        if (best.empty() || cand < best) {
            best = cand;
            taus.assign(1, tau);
        } else if (cand == best) {
            taus.push_back(tau);
        }
    }
    return {Profile(r.n, best), std::move(taus)};
}

/// Lexicographic minimum of the orbit under the joint agent/house action,
/// with every witness pair achieving it.
inline CanonicalResult canonical(const Profile& r) {
    auto [canon, taus] = canonical_taus(r);
    CanonicalResult out{canon, {}};
    for (const Perm& tau : taus) {
        // group agents by renamed row; target slots grouped by canonical row
        std::vector<Pref> renamed(r.n);
        for (int i = 0; i < r.n; ++i) {
            renamed[i].resize(r.n);
            for (int k = 0; k < r.n; ++k) renamed[i][k] = tau(r.prefs[i][k]);
        }
        std::map<Pref, std::vector<int>> sources, slots;
        for (int i = 0; i < r.n; ++i) sources[renamed[i]].push_back(i);
        for (int p = 0; p < r.n; ++p) slots[canon.prefs[p]].push_back(p);
        // every assignment of sources to matching slots is a witness
        std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
        for (auto& [row, src] : sources) groups.emplace_back(src, slots[row]);
        std::vector<size_t> idx;
        std::vector<std::vector<std::vector<int>>> perms;
        for (auto& [src, tgt] : groups) {
            std::vector<std::vector<int>> ps;
            std::vector<int> t = tgt;
            std::sort(t.begin(), t.end());
            do {
                ps.push_back(t);
            } while (std::next_permutation(t.begin(), t.end()));
            perms.push_back(std::move(ps));
            idx.push_back(0);
        }
        bool done = false;
        while (!done) {
            std::vector<int> pi(r.n, -1);
            for (size_t g = 0; g < groups.size(); ++g)
                for (size_t j = 0; j < groups[g].first.size(); ++j)
                    pi[groups[g].first[j]] = perms[g][idx[g]][j];
            out.witnesses.emplace_back(Perm(pi), tau);
            // odometer over per-group permutations
            size_t g = 0;
            while (g < idx.size()) {
                if (++idx[g] < perms[g].size()) break;
                idx[g] = 0;
                ++g;
            }
            done = (g == idx.size());
        }
    }
    return out;
}

/// One canonicalizing witness, cheaply (no stabilizer enumeration).
inline std::pair<Profile, std::pair<Perm, Perm>> canonical_witness(const Profile& r) {
    auto [canon, taus] = canonical_taus(r);
    const Perm& tau = taus.front();
    std::vector<bool> used(r.n, false);
    std::vector<int> pi(r.n, -1);
    for (int i = 0; i < r.n; ++i) {
        Pref row(r.n);
        for (int k = 0; k < r.n; ++k) row[k] = tau(r.prefs[i][k]);
        for (int p = 0; p < r.n; ++p) {
            if (!used[p] && canon.prefs[p] == row) {
                pi[i] = p;
                used[p] = true;
                break;
            }
        }
    }
    return {std::move(canon), {Perm(pi), tau}};
}

struct ManipulatorImages {
    Profile canonical;
    std::vector<int> agents; // sorted image set of the queried agent
};

/// Image set of agent i across all canonicalizing witnesses. An agent's image
/// under a witness is determined by the minimizing tau (equal renamed rows are
/// interchangeable), so witnesses need not be materialized.
inline ManipulatorImages canonical_for_agent(const Profile& r, int i) {
    auto [canon, taus] = canonical_taus(r);
    std::vector<int> agents;
    for (const Perm& tau : taus) {
        Pref row(r.n);
        for (int k = 0; k < r.n; ++k) row[k] = tau(r.prefs[i][k]);
        for (int p = 0; p < r.n; ++p)
            if (canon.prefs[p] == row) agents.push_back(p);
    }
    std::sort(agents.begin(), agents.end());
    agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
    return {std::move(canon), std::move(agents)};
}

/// |orbit| = (n!)^2 / #witnesses-to-canonical. The witness count is the number
/// of minimizing taus times the product of row-multiplicity factorials.
inline long orbit_size(const Profile& r) {
    auto [canon, taus] = canonical_taus(r);
    std::map<Pref, int> mult;
    for (const Pref& p : r.prefs) mult[p]++;
    long stab = 0;
    long per_tau = 1;
    for (auto& [p, m] : mult) per_tau *= detail::factorial(m);
    stab = (long)taus.size() * per_tau;
    long f = detail::factorial(r.n);
    return f * f / stab;
}

/// Stabilizer of a canonical profile: all witnesses mapping it to itself.
inline std::vector<std::pair<Perm, Perm>> stabilizer(const Profile& canonical_profile) {
    CanonicalResult c = canonical(canonical_profile);
    if (!(c.canonical == canonical_profile))
        throw std::invalid_argument("stabilizer requires a canonical profile");
    return c.witnesses;
}

} // namespace axiomlab
