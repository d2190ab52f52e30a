#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace cyl {

/// Fixed-width dynamic bitset; the element type of all powerset algebras here.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static Bits zeros(std::size_t n) { return Bits(n); }
    static Bits ones(std::size_t n) {
        Bits b(n);
        for (auto& w : b.w_) w = ~0ull;
        b.trim();
        return b;
    }
    static Bits single(std::size_t n, std::size_t i) {
        Bits b(n);
        b.set(i);
        return b;
    }

    std::size_t size() const { return n_; }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { w_[i >> 6] |= 1ull << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(1ull << (i & 63)); }

    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += (std::size_t)__builtin_popcountll(w);
        return c;
    }

    Bits& operator|=(const Bits& o) { for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i]; return *this; }
    Bits& operator&=(const Bits& o) { for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i]; return *this; }
    Bits& operator^=(const Bits& o) { for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i]; return *this; }
    /// set difference
    Bits& operator-=(const Bits& o) { for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i]; return *this; }

    friend Bits operator|(Bits a, const Bits& b) { a |= b; return a; }
    friend Bits operator&(Bits a, const Bits& b) { a &= b; return a; }
    friend Bits operator^(Bits a, const Bits& b) { a ^= b; return a; }
    friend Bits operator-(Bits a, const Bits& b) { a -= b; return a; }

    Bits operator~() const {
        Bits r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.trim();
        return r;
    }

    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bits& o) const { return !(*this == o); }
    bool operator<(const Bits& o) const { return w_ < o.w_; }

    bool subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const Bits& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    /// index of lowest set bit, or size() if empty
    std::size_t first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return i * 64 + (std::size_t)__builtin_ctzll(w_[i]);
        return n_;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                f(i * 64 + (std::size_t)__builtin_ctzll(w));
                w &= w - 1;
            }
        }
    }

    std::size_t hash() const {
        std::size_t h = n_;
        for (auto w : w_) h = h * 1099511628211ull + (std::size_t)w;
        return h;
    }

private:
    void trim() {
        if (n_ % 64) w_.back() &= (1ull << (n_ % 64)) - 1;
    }
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return b.hash(); }
};

} // namespace cyl
