#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace wbl {

// Fixed-size bitset sized at runtime. Vertex sets everywhere in the
// strategies; the word layout is exposed enough for AND/popcount scans.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int n) : n_(n), words_((n + 63) / 64, 0) {}

    int universe() const { return n_; }

    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { words_[i >> 6] |= 1ULL << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }
    void clear() { for (auto& w : words_) w = 0; }

    void fill() {
        for (auto& w : words_) w = ~0ULL;
        trim();
    }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    int count_and(const VertexSet& o) const {
        int c = 0;
        for (size_t i = 0; i < words_.size(); ++i)
            c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }

    // First set bit >= from, or -1.
    int next(int from = 0) const {
        if (from >= n_) return -1;
        size_t wi = (size_t)from >> 6;
        uint64_t w = words_[wi] & (~0ULL << (from & 63));
        while (true) {
            if (w) return (int)(wi * 64 + std::countr_zero(w));
            if (++wi >= words_.size()) return -1;
            w = words_[wi];
        }
    }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t wi = 0; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            while (w) {
                int b = std::countr_zero(w);
                f((int)(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

    const std::vector<uint64_t>& words() const { return words_; }

private:
    void trim() {
        if (n_ & 63) words_.back() &= (~0ULL >> (64 - (n_ & 63)));
    }

    int n_ = 0;
    std::vector<uint64_t> words_;
};

} // namespace wbl
