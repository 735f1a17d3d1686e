#pragma once

#include <cstdio>
#include <fstream>

#include "axiomlab/domain.hpp"

namespace axiomlab {

enum class SearchMode { Full, Canonical };

inline std::string mode_name(SearchMode m) { return m == SearchMode::Full ? "full" : "canonical"; }

/// Dense write-once bit array over (profile index, agent, house) triples.
/// Bits only transition 0 -> 1; one word per profile block (n^2 <= 25 bits).
class IndicatorMap {
public:
    IndicatorMap() = default;
    IndicatorMap(int n, SearchMode mode, size_t profile_count, uint64_t domain_hash)
        : n_(n), mode_(mode), words_(profile_count, 0u), hash_(domain_hash) {}

    int n() const { return n_; }
    SearchMode mode() const { return mode_; }
    size_t profiles() const { return words_.size(); }
    uint64_t hash() const { return hash_; }

    bool get(size_t profile, int agent, int house) const {
        return (words_[profile] >> (agent * n_ + house)) & 1u;
    }
    /// Returns true if the bit was newly set.
    bool set(size_t profile, int agent, int house) {
        uint32_t mask = 1u << (agent * n_ + house);
        if (words_[profile] & mask) return false;
        words_[profile] |= mask;
        ++set_count_;
        return true;
    }
    uint32_t block(size_t profile) const { return words_[profile]; }
    int block_popcount(size_t profile) const { return __builtin_popcount(words_[profile]); }
    bool block_complete(size_t profile) const {
        return words_[profile] == ((n_ * n_ == 32) ? ~0u : ((1u << (n_ * n_)) - 1u));
    }
    uint64_t set_count() const { return set_count_; }

    void save(const std::string& path) const {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write checkpoint " + path);
        const char magic[8] = {'A', 'X', 'L', 'C', 'K', 'P', 'T', '1'};
        os.write(magic, 8);
        uint32_t n32 = (uint32_t)n_;
        uint8_t m8 = mode_ == SearchMode::Full ? 0 : 1;
        uint64_t cnt = words_.size();
        os.write((const char*)&n32, 4);
        os.write((const char*)&m8, 1);
        os.write((const char*)&hash_, 8);
        os.write((const char*)&cnt, 8);
        os.write((const char*)words_.data(), (std::streamsize)(words_.size() * 4));
    }

    /// Refuses to resume when the header does not match the expected domain.
    static IndicatorMap load(const std::string& path, int n, SearchMode mode,
                             size_t profile_count, uint64_t domain_hash) {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw std::runtime_error("cannot read checkpoint " + path);
        char magic[8];
        is.read(magic, 8);
        if (std::string(magic, 8) != "AXLCKPT1") throw std::runtime_error("bad checkpoint magic");
        uint32_t n32;
        uint8_t m8;
        uint64_t hash, cnt;
        is.read((char*)&n32, 4);
        is.read((char*)&m8, 1);
        is.read((char*)&hash, 8);
        is.read((char*)&cnt, 8);
        if ((int)n32 != n || (m8 == 0 ? SearchMode::Full : SearchMode::Canonical) != mode ||
            hash != domain_hash || cnt != profile_count)
            throw std::runtime_error("checkpoint does not match this run (n/mode/domain hash)");
        IndicatorMap out(n, mode, profile_count, domain_hash);
        is.read((char*)out.words_.data(), (std::streamsize)(profile_count * 4));
        if (!is) throw std::runtime_error("truncated checkpoint");
        out.set_count_ = 0;
        for (uint32_t w : out.words_) out.set_count_ += (uint64_t)__builtin_popcount(w);
        return out;
    }

private:
    int n_ = 0;
    SearchMode mode_ = SearchMode::Full;
    std::vector<uint32_t> words_;
    uint64_t hash_ = 0;
    uint64_t set_count_ = 0;
};

} // namespace axiomlab
