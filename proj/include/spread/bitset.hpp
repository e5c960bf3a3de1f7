#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace spread {

/// Fixed-capacity bitset sized at runtime. Hot loops (adjacency tests,
/// clique search) run on raw words.
class DynBitset {
public:
    DynBitset() : size_(0) {}
    explicit DynBitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    void set(std::size_t i) { words_[i >> 6] |= (1ULL << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }

    void clear() { std::fill(words_.begin(), words_.end(), 0ULL); }

    std::size_t count() const {
        std::size_t total = 0;
        for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    std::size_t count_and(const DynBitset& other) const {
        std::size_t total = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            total += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return total;
    }

    DynBitset& operator&=(const DynBitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }

    DynBitset& operator|=(const DynBitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    bool intersects(const DynBitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    /// Calls fn(index) for each set bit in increasing order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                int bit = std::countr_zero(w);
                fn(wi * 64 + static_cast<std::size_t>(bit));
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> to_vector() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
        return out;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    friend bool operator==(const DynBitset& a, const DynBitset& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

private:
    std::size_t size_;
    std::vector<std::uint64_t> words_;
};

}  // namespace spread
