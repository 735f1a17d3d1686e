#pragma once

#include <functional>
#include <map>
#include <utility>

#include <json.hpp>

#include "axiomlab/domain.hpp"

namespace axiomlab {

/// A finite map from profiles of a domain to assignments. Backed either by an
/// explicit table or by an evaluator (so full-domain rules at n >= 4 need not
/// be materialized).
struct Rule {
    int n = 0;
    DomainKind domain;
    std::map<Profile, Assignment> table;
    std::function<Assignment(const Profile&)> eval; // fallback when not in table
    std::string name;

    Assignment at(const Profile& r) const {
        auto it = table.find(r);
        if (it != table.end()) return it->second;
        if (eval) return eval(r);
        throw std::out_of_range("rule has no entry for profile " + format_profile(r));
    }

    bool defined_at(const Profile& r) const {
        return table.count(r) > 0 || (eval && domain_contains(domain, r));
    }
};

inline Rule rsd_rule(int n, DomainKind d = DomainKind::full()) {
    Rule f;
    f.n = n;
    f.domain = std::move(d);
    f.eval = [](const Profile& r) { return rsd(r); };
    f.name = "rsd";
    return f;
}

inline Rule constant_rule(int n, Assignment m, DomainKind d = DomainKind::full()) {
    Rule f;
    f.n = n;
    f.domain = std::move(d);
    f.eval = [m = std::move(m)](const Profile&) { return m; };
    f.name = "constant";
    return f;
}

/// Single-profile rule: the natural lift of one (profile, assignment) pair.
inline Rule single_profile_rule(const Profile& r, Assignment m) {
    Rule f;
    f.n = r.n;
    f.domain = DomainKind::explicit_set_of({r});
    f.table.emplace(r, std::move(m));
    f.name = "single";
    return f;
}

struct stabilizer_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Checks that an assignment attached to a canonical profile is invariant
/// under the profile's stabilizer; otherwise orbit expansion is ill-defined.
inline void check_stabilizer_invariant(const Profile& canonical_profile, const Assignment& m) {
    for (const auto& [pi, tau] : stabilizer(canonical_profile)) {
        if (!(apply_perm(m, pi, tau) == m))
            throw stabilizer_error("assignment at " + format_profile(canonical_profile) +
                                   " is not invariant under stabilizer witness (" +
                                   format_profile(apply_perm(canonical_profile, pi, tau)) + ")");
    }
}

/// Extends a rule given on canonical representatives to the whole domain by
/// the symmetry action: f(R) = sigma^{-1} f(R*) for any witness sigma: R -> R*.
inline Rule expand_symmetric_rule(const Rule& partial) {
    for (const auto& [r, m] : partial.table) {
        if (!(canonical_taus(r).first == r))
            throw std::invalid_argument("partial rule entry " + format_profile(r) + " is not canonical");
        check_stabilizer_invariant(r, m);
    }
    Rule full;
    full.n = partial.n;
    full.domain = partial.domain;
    full.name = partial.name;
    auto base = std::make_shared<Rule>(partial);
    full.eval = [base](const Profile& r) {
        auto [canon, wit] = canonical_witness(r);
        Assignment mc = base->at(canon);
        return apply_perm(mc, wit.first.inverse(), wit.second.inverse());
    };
    return full;
}

// ---- rule files ----
// {"n": int, "domain": "full"|"rgt"|"explicit", "symmetric": bool?,
//  "entries": {profileText: [[rational,...],...]}, "gray": {...}? }

inline Assignment assignment_from_json(const nlohmann::json& rows, int n) {
    if ((int)rows.size() != n) throw parse_error("assignment row count mismatch");
    Assignment m(n);
    for (int i = 0; i < n; ++i) {
        if ((int)rows[i].size() != n) throw parse_error("assignment column count mismatch");
        for (int h = 0; h < n; ++h) m.at(i, h) = parse_rat(rows[i][h].get<std::string>());
    }
    m.validate();
    return m;
}

inline nlohmann::ordered_json assignment_to_json(const Assignment& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.n; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int h = 0; h < m.n; ++h) row.push_back(format_rat(m.at(i, h)));
        rows.push_back(std::move(row));
    }
    return rows;
}

struct RuleFile {
    Rule rule;
    bool symmetric = false;
    /// Optional per-entry 0/1 mask (as stored in the file, keyed like entries).
    std::map<Profile, std::vector<bool>> gray;
};

inline RuleFile rule_from_json(const nlohmann::json& j) {
    RuleFile out;
    int n = j.at("n").get<int>();
    out.rule.n = n;
    std::string dom = j.at("domain").get<std::string>();
    std::vector<Profile> keys;
    for (auto it = j.at("entries").begin(); it != j.at("entries").end(); ++it)
        keys.push_back(parse_profile(it.key(), n));
    if (dom == "full")
        out.rule.domain = DomainKind::full();
    else if (dom == "rgt")
        out.rule.domain = DomainKind::rgt();
    else if (dom == "explicit")
        out.rule.domain = DomainKind::explicit_set_of(keys);
    else
        throw parse_error("unknown domain tag '" + dom + "'");
    for (auto it = j.at("entries").begin(); it != j.at("entries").end(); ++it) {
        Profile r = parse_profile(it.key(), n);
        out.rule.table.emplace(std::move(r), assignment_from_json(it.value(), n));
    }
    out.symmetric = j.value("symmetric", false);
    if (j.contains("gray")) {
        for (auto it = j.at("gray").begin(); it != j.at("gray").end(); ++it) {
            Profile r = parse_profile(it.key(), n);
            std::vector<bool> mask;
            for (const auto& row : it.value())
                for (const auto& cell : row) mask.push_back(cell.get<int>() != 0);
            if ((int)mask.size() != n * n) throw parse_error("gray mask size mismatch");
            out.gray.emplace(std::move(r), std::move(mask));
        }
    }
    return out;
}

inline nlohmann::ordered_json rule_to_json(const Rule& f, bool symmetric = false) {
    nlohmann::ordered_json j;
    j["n"] = f.n;
    j["domain"] = domain_name(f.domain);
    if (symmetric) j["symmetric"] = true;
    nlohmann::ordered_json entries;
    for (const auto& [r, m] : f.table) entries[format_profile(r)] = assignment_to_json(m);
    j["entries"] = std::move(entries);
    return j;
}

} // namespace axiomlab
