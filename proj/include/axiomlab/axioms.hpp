#pragma once

#include <json.hpp>

#include "axiomlab/rule.hpp"
#include "axiomlab/simplex.hpp"

namespace axiomlab {

/// Outcome of an axiom check: holds, or the lexicographically first violation
/// under the fixed profile/agent/house order.
struct Verdict {
    std::string axiom;
    bool holds = true;
    nlohmann::ordered_json witness; // null when holds

    static Verdict ok(std::string axiom) { return {std::move(axiom), true, nullptr}; }
    static Verdict fail(std::string axiom, nlohmann::ordered_json w) {
        return {std::move(axiom), false, std::move(w)};
    }
    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["axiom"] = axiom;
        j["holds"] = holds;
        j["witness"] = witness;
        return j;
    }
};

/// Convex decomposition into deterministic assignments with positive weights.
struct Decomposition {
    std::vector<std::pair<Assignment, Rat>> parts;

    Assignment combine(int n) const {
        Assignment m(n);
        for (const auto& [part, w] : parts)
            for (int i = 0; i < n; ++i)
                for (int h = 0; h < n; ++h) m.at(i, h) += w * part.at(i, h);
        return m;
    }
};

/// Base profiles an axiom check quantifies over. Misreport targets are always
/// filtered by the rule's own domain, so a check may run over a sample of base
/// profiles while manipulations still range over everything the rule defines.
inline std::vector<Profile> check_profiles(const Rule& f) {
    switch (f.domain.tag) {
        case DomainTag::ExplicitSet: return f.domain.explicit_set;
        case DomainTag::Rgt: return enumerate_domain(f.n, DomainKind::rgt(), false);
        default: return enumerate_domain(f.n, DomainKind::full(), false);
    }
}

inline Verdict check_equal_treatment(const Rule& f,
                                     const std::vector<Profile>* base = nullptr) {
    std::vector<Profile> own;
    if (!base) {
        own = check_profiles(f);
        base = &own;
    }
    for (const Profile& r : *base) {
        Assignment m = f.at(r);
        for (int i = 0; i < f.n; ++i)
            for (int j = i + 1; j < f.n; ++j) {
                if (r.prefs[i] != r.prefs[j] || m.rows_equal(i, j)) continue;
                for (int h = 0; h < f.n; ++h) {
                    if (m.at(i, h) != m.at(j, h)) {
                        nlohmann::ordered_json w;
                        w["profile"] = format_profile(r);
                        w["agents"] = {i, j};
                        w["house"] = h;
                        w["values"] = {format_rat(m.at(i, h)), format_rat(m.at(j, h))};
                        return Verdict::fail("ete", std::move(w));
                    }
                }
            }
    }
    return Verdict::ok("ete");
}

inline Verdict check_support_efficiency(const Rule& f,
                                        const std::vector<Profile>* base = nullptr) {
    std::vector<Profile> own;
    if (!base) {
        own = check_profiles(f);
        base = &own;
    }
    for (const Profile& r : *base) {
        Assignment m = f.at(r);
        std::vector<bool> sup = rsd_support(r);
        for (int i = 0; i < f.n; ++i)
            for (int h = 0; h < f.n; ++h) {
                if (!sup[i * f.n + h] && m.at(i, h) != 0) {
                    nlohmann::ordered_json w;
                    w["profile"] = format_profile(r);
                    w["agent"] = i;
                    w["house"] = h;
                    w["value"] = format_rat(m.at(i, h));
                    return Verdict::fail("support", std::move(w));
                }
            }
    }
    return Verdict::ok("support");
}

/// Exact LP feasibility of: weights over the efficient assignments, summing to
/// one, reproducing m cell-for-cell.
inline std::optional<Decomposition> decompose_ex_post(const Profile& r, const Assignment& m) {
    m.validate();
    std::vector<Assignment> eff = efficient_assignments(r);
    int k = (int)eff.size();
    ConstraintSystem sys;
    sys.ncols = k;
    for (int i = 0; i < r.n; ++i)
        for (int h = 0; h < r.n; ++h) {
            SparseRow row;
            row.rel = Relation::Eq;
            row.rhs = m.at(i, h);
            for (int e = 0; e < k; ++e)
                if (eff[e].at(i, h) == 1) row.push(e, Rat(1));
            sys.rows.push_back(std::move(row));
        }
    {
        SparseRow total;
        total.rel = Relation::Eq;
        total.rhs = Rat(1);
        for (int e = 0; e < k; ++e) total.push(e, Rat(1));
        sys.rows.push_back(std::move(total));
    }
    auto sol = lp_feasible(sys, /*nonneg=*/true);
    if (!sol) return std::nullopt;
    Decomposition out;
    for (int e = 0; e < k; ++e)
        if ((*sol)[e] > 0) out.parts.emplace_back(eff[e], (*sol)[e]);
    // exactness: the reconstruction must equal the input cell-for-cell
    if (!(out.combine(r.n) == m)) throw std::logic_error("decomposition does not reconstruct input");
    return out;
}

inline Verdict check_ex_post_efficiency(const Rule& f,
                                        const std::vector<Profile>* base = nullptr) {
    std::vector<Profile> own;
    if (!base) {
        own = check_profiles(f);
        base = &own;
    }
    for (const Profile& r : *base) {
        if (!decompose_ex_post(r, f.at(r))) {
            nlohmann::ordered_json w;
            w["profile"] = format_profile(r);
            return Verdict::fail("expost", std::move(w));
        }
    }
    return Verdict::ok("expost");
}

inline Verdict check_localized(const Rule& f, const std::vector<Profile>* base = nullptr) {
    std::vector<Profile> own;
    if (!base) {
        own = check_profiles(f);
        base = &own;
    }
    for (const Profile& r : *base) {
        Assignment m = f.at(r);
        for (int i = 0; i < f.n; ++i)
            for (int k = 0; k + 1 < f.n; ++k) {
                Profile rp = swap_adjacent(r, i, k);
                if (!f.defined_at(rp)) continue; // manipulation leaves the domain
                Assignment mp = f.at(rp);
                for (int l = 0; l < f.n; ++l) {
                    if (l == k || l == k + 1) continue;
                    int h = r.prefs[i][l];
                    if (m.at(i, h) != mp.at(i, h)) {
                        nlohmann::ordered_json w;
                        w["profile"] = format_profile(r);
                        w["agent"] = i;
                        w["swap"] = k;
                        w["house"] = h;
                        w["values"] = {format_rat(m.at(i, h)), format_rat(mp.at(i, h))};
                        return Verdict::fail("localized", std::move(w));
                    }
                }
            }
    }
    return Verdict::ok("localized");
}

inline Verdict check_nonperverse(const Rule& f, const std::vector<Profile>* base = nullptr) {
    std::vector<Profile> own;
    if (!base) {
        own = check_profiles(f);
        base = &own;
    }
    for (const Profile& r : *base) {
        Assignment m = f.at(r);
        for (int i = 0; i < f.n; ++i)
            for (int k = 0; k + 1 < f.n; ++k) {
                Profile rp = swap_adjacent(r, i, k);
                if (!f.defined_at(rp)) continue;
                Assignment mp = f.at(rp);
                int hk = r.prefs[i][k], hl = r.prefs[i][k + 1];
                if (m.at(i, hk) < mp.at(i, hk) || m.at(i, hl) > mp.at(i, hl)) {
                    nlohmann::ordered_json w;
                    w["profile"] = format_profile(r);
                    w["agent"] = i;
                    w["swap"] = k;
                    w["houses"] = {hk, hl};
                    return Verdict::fail("nonperverse", std::move(w));
                }
            }
    }
    return Verdict::ok("nonperverse");
}

/// Upper-contour prefix sums under the true ranking must dominate every full
/// misreport that stays inside the domain.
inline Verdict check_strategyproof_direct(const Rule& f,
                                          const std::vector<Profile>* base = nullptr) {
    std::vector<Profile> own;
    if (!base) {
        own = check_profiles(f);
        base = &own;
    }
    std::vector<Pref> prefs = detail::all_prefs(f.n);
    for (const Profile& r : *base) {
        Assignment m = f.at(r);
        for (int i = 0; i < f.n; ++i) {
            for (const Pref& alt : prefs) {
                if (alt == r.prefs[i]) continue;
                Profile rp = r;
                rp.prefs[i] = alt;
                if (!f.defined_at(rp)) continue;
                Assignment mp = f.at(rp);
                Rat truth(0), lie(0);
                for (int pos = 0; pos + 1 < f.n; ++pos) {
                    int h = r.prefs[i][pos];
                    truth += m.at(i, h);
                    lie += mp.at(i, h);
                    if (truth < lie) {
                        nlohmann::ordered_json w;
                        w["profile"] = format_profile(r);
                        w["agent"] = i;
                        w["misreport"] = format_profile(rp);
                        w["cutoff"] = pos;
                        w["values"] = {format_rat(truth), format_rat(lie)};
                        return Verdict::fail("sp", std::move(w));
                    }
                }
            }
        }
    }
    return Verdict::ok("sp");
}

/// f(apply_perm(R,pi,tau)) must equal the permuted f(R). Exhaustive over the
/// group for n <= 3; sampled with a fixed seed above.
inline Verdict check_symmetric(const Rule& f, uint64_t seed = 12345,
                               const std::vector<Profile>* base = nullptr) {
    std::vector<Profile> own;
    if (!base) {
        own = check_profiles(f);
        base = &own;
    }
    std::vector<Pref> perms = detail::all_prefs(f.n);
    auto check_pair = [&](const Profile& r, const Perm& pi, const Perm& tau) -> std::optional<Verdict> {
        Profile rp = apply_perm(r, pi, tau);
        if (!f.defined_at(rp)) {
            nlohmann::ordered_json w;
            w["profile"] = format_profile(r);
            w["error"] = "domain is not orbit-closed";
            return Verdict::fail("symmetric", std::move(w));
        }
        Assignment lhs = f.at(rp);
        Assignment rhs = apply_perm(f.at(r), pi, tau);
        if (!(lhs == rhs)) {
            nlohmann::ordered_json w;
            w["profile"] = format_profile(r);
            w["agents_perm"] = pi.map;
            w["houses_perm"] = tau.map;
            return Verdict::fail("symmetric", std::move(w));
        }
        return std::nullopt;
    };
    if (f.n <= 3) {
        for (const Profile& r : *base)
            for (const Pref& p : perms)
                for (const Pref& t : perms)
                    if (auto v = check_pair(r, Perm(p), Perm(t))) return *v;
    } else {
        uint64_t state = seed;
        auto next = [&state]() {
            state += 0x9e3779b97f4a7c15ull;
            uint64_t z = state;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            return z ^ (z >> 31);
        };
        for (const Profile& r : *base) {
            for (int rep = 0; rep < 8; ++rep) {
                const Pref& p = perms[next() % perms.size()];
                const Pref& t = perms[next() % perms.size()];
                if (auto v = check_pair(r, Perm(p), Perm(t))) return *v;
            }
        }
    }
    return Verdict::ok("symmetric");
}

} // namespace axiomlab
