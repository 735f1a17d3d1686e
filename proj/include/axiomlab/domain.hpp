#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>

#include "axiomlab/symmetry.hpp"

namespace axiomlab {

enum class DomainTag { Full, Rgt, ExplicitSet };

/// Profile domain of a rule: the full domain, the shared-ranking-but-one
/// subdomain, or an explicit finite set.
struct DomainKind {
    DomainTag tag = DomainTag::Full;
    std::vector<Profile> explicit_set; // sorted, for ExplicitSet

    static DomainKind full() { return {DomainTag::Full, {}}; }
    static DomainKind rgt() { return {DomainTag::Rgt, {}}; }
    static DomainKind explicit_set_of(std::vector<Profile> ps) {
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        return {DomainTag::ExplicitSet, std::move(ps)};
    }
};

inline std::string domain_name(const DomainKind& d) {
    switch (d.tag) {
        case DomainTag::Full: return "full";
        case DomainTag::Rgt: return "rgt";
        default: return "explicit";
    }
}

/// Member of the shared-ranking-but-one subdomain: some house d exists whose
/// removal leaves all agents with an identical ranking.
inline bool in_rgt(const Profile& r) {
    for (int d = 0; d < r.n; ++d) {
        Pref base;
        bool ok = true;
        for (int i = 0; i < r.n && ok; ++i) {
            Pref rest;
            for (int h : r.prefs[i])
                if (h != d) rest.push_back(h);
            if (i == 0)
                base = rest;
            else if (rest != base)
                ok = false;
        }
        if (ok) return true;
    }
    return false;
}

inline bool domain_contains(const DomainKind& d, const Profile& r) {
    switch (d.tag) {
        case DomainTag::Full: return true;
        case DomainTag::Rgt: return in_rgt(r);
        default:
            return std::binary_search(d.explicit_set.begin(), d.explicit_set.end(), r);
    }
}

namespace detail {

inline std::vector<Pref> all_prefs(int n) {
    std::vector<Pref> out;
    Pref p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace detail

struct domain_guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Streams profiles of a domain in lexicographic order, each exactly once.
/// canonical_only yields one representative per orbit.
template <typename F>
inline void for_each_profile(int n, const DomainKind& kind, bool canonical_only, F&& fn) {
    if (kind.tag == DomainTag::ExplicitSet) {
        for (const Profile& r : kind.explicit_set)
            if (!canonical_only || canonical_taus(r).first == r) fn(r);
        return;
    }
    if (kind.tag == DomainTag::Rgt) {
        std::set<std::vector<Pref>> seen;
        std::vector<int> rest;
        for (int d = 0; d < n; ++d) {
            std::vector<int> others;
            for (int h = 0; h < n; ++h)
                if (h != d) others.push_back(h);
            std::sort(others.begin(), others.end());
            do {
                // every agent inserts house d somewhere into the shared ranking
                std::vector<int> pos(n, 0);
                while (true) {
                    std::vector<Pref> prefs(n);
                    for (int i = 0; i < n; ++i) {
                        Pref p(others.begin(), others.end());
                        p.insert(p.begin() + pos[i], d);
                        prefs[i] = std::move(p);
                    }
                    seen.insert(std::move(prefs));
                    int c = n - 1;
                    while (c >= 0 && ++pos[c] == n) pos[c--] = 0;
                    if (c < 0) break;
                }
            } while (std::next_permutation(others.begin(), others.end()));
        }
        for (const auto& prefs : seen) {
            Profile r(n, prefs);
            if (!canonical_only || canonical_taus(r).first == r) fn(r);
        }
        return;
    }
    // full domain
    if (!canonical_only && n >= 5)
        throw domain_guard_error("exhaustive full-domain enumeration refused for n >= 5; use canonical mode");
    if (canonical_only && n > 5) throw domain_guard_error("canonical enumeration supported for n <= 5");
    std::vector<Pref> prefs = detail::all_prefs(n);
    if (!canonical_only) {
        std::vector<int> idx(n, 0);
        while (true) {
            std::vector<Pref> rows(n);
            for (int i = 0; i < n; ++i) rows[i] = prefs[idx[i]];
            fn(Profile(n, std::move(rows)));
            int c = n - 1;
            while (c >= 0 && ++idx[c] == (int)prefs.size()) idx[c--] = 0;
            if (c < 0) break;
        }
        return;
    }
    // canonical only: first row is the identity order and the remaining rows a
    // nondecreasing sequence; keep candidates equal to their own canonical
    // form. This never materializes the full domain.
    Pref ident(n);
    std::iota(ident.begin(), ident.end(), 0);
    std::vector<int> idx(n - 1, 0); // nondecreasing indices into prefs
    while (true) {
        std::vector<Pref> rows(n);
        rows[0] = ident;
        for (int i = 0; i + 1 < n; ++i) rows[i + 1] = prefs[idx[i]];
        Profile r(n, std::move(rows));
        if (canonical_taus(r).first == r) fn(r);
        int c = n - 2;
        while (c >= 0 && idx[c] == (int)prefs.size() - 1) --c;
        if (c < 0) break;
        int v = ++idx[c];
        for (int j = c + 1; j < n - 1; ++j) idx[j] = v;
    }
}

inline std::vector<Profile> enumerate_domain(int n, const DomainKind& kind, bool canonical_only) {
    std::vector<Profile> out;
    for_each_profile(n, kind, canonical_only, [&](const Profile& r) { out.push_back(r); });
    std::sort(out.begin(), out.end());
    return out;
}

/// Dense index over an enumerated, sorted domain; the fixed profile order used
/// for indicators, witnesses, and reports.
struct ProfileIndex {
    std::vector<Profile> profiles; // sorted
    std::optional<size_t> find(const Profile& r) const {
        auto it = std::lower_bound(profiles.begin(), profiles.end(), r);
        if (it == profiles.end() || !(*it == r)) return std::nullopt;
        return (size_t)(it - profiles.begin());
    }
    size_t at(const Profile& r) const {
        auto k = find(r);
        if (!k) throw std::out_of_range("profile not in enumerated domain");
        return *k;
    }
    size_t size() const { return profiles.size(); }
};

inline ProfileIndex index_domain(int n, const DomainKind& kind, bool canonical_only) {
    return ProfileIndex{enumerate_domain(n, kind, canonical_only)};
}

/// FNV-1a over the profile stream; pins checkpoint files to a domain.
inline uint64_t domain_hash(const ProfileIndex& idx) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (const Profile& r : idx.profiles) {
        mix((uint64_t)r.n);
        for (const Pref& p : r.prefs)
            for (int x : p) mix((uint64_t)(x + 1));
    }
    return h;
}

} // namespace axiomlab
