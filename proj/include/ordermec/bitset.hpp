#pragma once

#include <array>
#include <cassert>
#include <cstdint>

namespace ordermec {

#ifndef ORDERMEC_MAX_VERTICES
#define ORDERMEC_MAX_VERTICES 512
#endif

// Hard cap on graph size; adjacency is stored in fixed-width bitsets so that
// neighborhood intersections in the orientation rules are a few word ops.
inline constexpr int kMaxVertices = ORDERMEC_MAX_VERTICES;

class VertexSet {
public:
    static constexpr int kWords = (kMaxVertices + 63) / 64;

    VertexSet() = default;
    explicit VertexSet(int nbits) : nbits_(nbits) {
        assert(nbits >= 0 && nbits <= kMaxVertices);
    }

    int capacity_bits() const { return nbits_; }

    void set(int i) {
        assert(i >= 0 && i < nbits_);
        w_[i >> 6] |= std::uint64_t(1) << (i & 63);
    }
    void reset(int i) {
        assert(i >= 0 && i < nbits_);
        w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }
    bool test(int i) const {
        assert(i >= 0 && i < nbits_);
        return (w_[i >> 6] >> (i & 63)) & 1;
    }

    void clear() { w_.fill(0); }

    bool any() const {
        for (int k = 0; k < words_used(); ++k)
            if (w_[k]) return true;
        return false;
    }
    bool none() const { return !any(); }

    int count() const {
        int c = 0;
        for (int k = 0; k < words_used(); ++k) c += __builtin_popcountll(w_[k]);
        return c;
    }

    VertexSet& operator&=(const VertexSet& o) {
        for (int k = 0; k < words_used(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o) {
        for (int k = 0; k < words_used(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    // this &= ~o
    VertexSet& and_not(const VertexSet& o) {
        for (int k = 0; k < words_used(); ++k) w_[k] &= ~o.w_[k];
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }

    bool intersects(const VertexSet& o) const {
        for (int k = 0; k < words_used(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    bool is_subset_of(const VertexSet& o) const {
        for (int k = 0; k < words_used(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    // First set bit at or after `from`, or -1.
    int next(int from = 0) const {
        if (from >= nbits_) return -1;
        int k = from >> 6;
        std::uint64_t word = w_[k] & (~std::uint64_t(0) << (from & 63));
        while (true) {
            if (word) return (k << 6) + __builtin_ctzll(word);
            if (++k >= words_used()) return -1;
            word = w_[k];
        }
    }

    template <class F>
    void for_each(F f) const {
        for (int v = next(0); v != -1; v = next(v + 1)) f(v);
    }

    bool operator==(const VertexSet& o) const {
        for (int k = 0; k < words_used(); ++k)
            if (w_[k] != o.w_[k]) return false;
        return true;
    }
    bool operator!=(const VertexSet& o) const { return !(*this == o); }

private:
    int words_used() const { return (nbits_ + 63) >> 6; }

    int nbits_ = 0;
    std::array<std::uint64_t, kWords> w_{};
};

}  // namespace ordermec
