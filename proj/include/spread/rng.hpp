#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spread {

// Deterministic, platform-independent randomness. std::mt19937_64 plus the
// standard distributions would not replay bit-identically across standard
// library implementations, so the generator and all draw helpers are local.
//
// Contract: identical (seed, stream) gives identical draw sequences; distinct
// stream indices give statistically independent streams. One algorithm
// invocation consumes one stream; sub-procedures derive child streams from
// (parent stream, call ordinal).

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class RngStream {
public:
    RngStream() : RngStream(0, 0) {}

    RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
        std::uint64_t s = seed ^ 0x6a09e667f3bcc908ULL;
        std::uint64_t mixed = splitmix64(s) ^ stream;
        std::uint64_t t = mixed;
        for (auto& word : state_) word = splitmix64(t);
        // xoshiro dislikes the all-zero state; splitmix output makes it
        // astronomically unlikely, but keep the guarantee absolute.
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    /// Derived stream for the `ordinal`-th sub-procedure of this invocation.
    RngStream child(std::uint64_t ordinal) const {
        std::uint64_t s = stream_ ^ (0x9e3779b97f4a7c15ULL + ordinal);
        std::uint64_t mixed = splitmix64(s);
        return RngStream(seed_, mixed);
    }

    // xoshiro256++ (Blackman & Vigna, public domain reference implementation).
    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, bound) by Lemire rejection; bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
        while (true) {
            std::uint64_t x = next_u64();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            std::uint64_t lo = static_cast<std::uint64_t>(m);
            if (lo >= bound || lo >= (-bound) % bound) return static_cast<std::uint64_t>(m >> 64);
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return next_double() < p;
    }

    /// Uniform element of a non-empty vector.
    template <typename T>
    const T& pick(const std::vector<T>& items) {
        if (items.empty()) throw std::invalid_argument("pick: empty vector");
        return items[next_below(items.size())];
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    /// The first `count` entries of a random permutation of [0, n).
    std::vector<std::uint32_t> sample_prefix(std::uint32_t n, std::uint32_t count) {
        if (count > n) throw std::invalid_argument("sample_prefix: count > n");
        std::vector<std::uint32_t> pool(n);
        for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
        for (std::uint32_t i = 0; i < count; ++i) {
            std::uint32_t j = i + static_cast<std::uint32_t>(next_below(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(count);
        return pool;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::array<std::uint64_t, 4> state_;
};

/// Indices kept by independent Bernoulli(p) over [0, total), emitted in
/// increasing order via geometric skips; O(#kept) time. Exactly the law of
/// per-index coin flips, which keeps binomial subsampling of huge implicit
/// edge sets (complete hosts) affordable.
class BernoulliSkipSampler {
public:
    BernoulliSkipSampler(std::uint64_t total, double p, RngStream& rng)
        : total_(total), p_(p), rng_(&rng), position_(0) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("BernoulliSkipSampler: p out of range");
        log1mp_ = (p > 0.0 && p < 1.0) ? std::log1p(-p) : 0.0;
        advance();
    }

    bool has_next() const { return position_ < total_; }

    std::uint64_t next() {
        std::uint64_t result = position_;
        ++position_;
        advance();
        return result;
    }

private:
    void advance() {
        if (p_ <= 0.0) {
            position_ = total_;
            return;
        }
        if (p_ >= 1.0) return;
        while (position_ < total_) {
            double u = rng_->next_double();
            if (u <= 0.0) u = 0x1.0p-53;
            double skip = std::floor(std::log(u) / log1mp_);
            if (skip >= static_cast<double>(total_)) {
                position_ = total_;
                return;
            }
            position_ += static_cast<std::uint64_t>(skip);
            return;
        }
    }

    std::uint64_t total_;
    double p_;
    double log1mp_;
    RngStream* rng_;
    std::uint64_t position_;
};

}  // namespace spread
