#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "axiomlab/rational.hpp"

namespace axiomlab {

/// Agents and houses are 0-indexed. Textual form uses '0'..'9' then 'a'..
/// (n > 10 is never exercised).
inline char house_char(int h) { return h < 10 ? char('0' + h) : char('a' + h - 10); }

inline int house_index(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}

/// One agent's strict preference order; position 0 = most preferred house.
using Pref = std::vector<int>;

/// A bijection on 0..n-1; target(i) = map[i].
struct Perm {
    std::vector<int> map;

    Perm() = default;
    explicit Perm(std::vector<int> m) : map(std::move(m)) {
        std::vector<bool> seen(map.size(), false);
        for (int v : map) {
            if (v < 0 || v >= (int)map.size() || seen[v])
                throw std::invalid_argument("not a permutation");
            seen[v] = true;
        }
    }
    static Perm identity(int n) {
        std::vector<int> m(n);
        std::iota(m.begin(), m.end(), 0);
        return Perm(std::move(m));
    }
    int n() const { return (int)map.size(); }
    int operator()(int i) const { return map[i]; }
    Perm inverse() const {
        std::vector<int> inv(map.size());
        for (int i = 0; i < (int)map.size(); ++i) inv[map[i]] = i;
        return Perm(std::move(inv));
    }
    /// (a.then(b))(i) = b(a(i))
    Perm then(const Perm& b) const {
        std::vector<int> m(map.size());
        for (int i = 0; i < (int)map.size(); ++i) m[i] = b.map[map[i]];
        return Perm(std::move(m));
    }
    bool operator==(const Perm& o) const { return map == o.map; }
};

/// Preference profile: prefs[i] is agent i's order over the n houses.
struct Profile {
    int n = 0;
    std::vector<Pref> prefs;

    Profile() = default;
    Profile(int n_, std::vector<Pref> p) : n(n_), prefs(std::move(p)) { validate(); }

    void validate() const {
        if (n < 1) throw std::invalid_argument("profile needs n >= 1");
        if ((int)prefs.size() != n) throw std::invalid_argument("profile arity mismatch");
        for (const Pref& p : prefs) {
            if ((int)p.size() != n) throw std::invalid_argument("preference arity mismatch");
            std::vector<bool> seen(n, false);
            for (int h : p) {
                if (h < 0 || h >= n || seen[h])
                    throw std::invalid_argument("preference is not a permutation of houses");
                seen[h] = true;
            }
        }
    }

    bool operator==(const Profile& o) const { return prefs == o.prefs; }
    /// Lexicographic on the concatenated preference sequences; the fixed total
    /// order used for canonical forms and stable iteration.
    bool operator<(const Profile& o) const { return prefs < o.prefs; }
};

inline Profile parse_profile(const std::string& text, int n) {
    std::vector<std::string> groups;
    std::string cur;
    for (char c : text) {
        if (c == '|') {
            groups.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    groups.push_back(cur);
    if ((int)groups.size() != n)
        throw parse_error("expected " + std::to_string(n) + " groups, got " +
                          std::to_string(groups.size()));
    std::vector<Pref> prefs;
    for (int i = 0; i < n; ++i) {
        const std::string& g = groups[i];
        if ((int)g.size() != n)
            throw parse_error("group '" + g + "' arity " + std::to_string(g.size()) +
                              " != " + std::to_string(n));
        Pref p;
        std::vector<bool> seen(n, false);
        for (char c : g) {
            int h = house_index(c);
            if (h < 0 || h >= n)
                throw parse_error("group '" + g + "' names unknown house '" + std::string(1, c) + "'");
            if (seen[h]) throw parse_error("group '" + g + "' repeats house '" + std::string(1, c) + "'");
            seen[h] = true;
            p.push_back(h);
        }
        prefs.push_back(std::move(p));
    }
    return Profile(n, std::move(prefs));
}

inline std::string format_profile(const Profile& r) {
    std::string out;
    for (int i = 0; i < r.n; ++i) {
        if (i) out += '|';
        for (int h : r.prefs[i]) out += house_char(h);
    }
    return out;
}

/// Agent pi(i) in the result holds agent i's preference with every house h
/// renamed tau(h).
inline Profile apply_perm(const Profile& r, const Perm& pi, const Perm& tau) {
    if (pi.n() != r.n || tau.n() != r.n) throw std::invalid_argument("permutation arity mismatch");
    std::vector<Pref> out(r.n);
    for (int i = 0; i < r.n; ++i) {
        Pref p(r.n);
        for (int k = 0; k < r.n; ++k) p[k] = tau(r.prefs[i][k]);
        out[pi(i)] = std::move(p);
    }
    return Profile(r.n, std::move(out));
}

inline Pref swap_adjacent(const Pref& p, int k) {
    if (k < 0 || k + 1 >= (int)p.size()) throw std::out_of_range("swap position out of range");
    Pref q = p;
    std::swap(q[k], q[k + 1]);
    return q;
}

inline Profile swap_adjacent(const Profile& r, int agent, int k) {
    Profile q = r;
    q.prefs[agent] = swap_adjacent(q.prefs[agent], k);
    return q;
}

} // namespace axiomlab
