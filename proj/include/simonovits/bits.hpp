#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace simonovits {

// Fixed-length dynamic bitset. Length is set at construction; all binary
// operations assume equal lengths.
class Bits {
public:
    Bits() = default;
    explicit Bits(int size) : size_(size), w_((size + 63) / 64, 0) {}

    int size() const { return size_; }
    int words() const { return static_cast<int>(w_.size()); }
    std::uint64_t word(int i) const { return w_[i]; }
    std::uint64_t& word(int i) { return w_[i]; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void assign(int i, bool v) { v ? set(i) : reset(i); }
    void clear() { for (auto& x : w_) x = 0; }
    void fill() {
        for (auto& x : w_) x = ~std::uint64_t{0};
        trim();
    }

    int count() const {
        int c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }
    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }
    bool none() const { return !any(); }

    // index of lowest set bit, or -1
    int first() const {
        for (int i = 0; i < words(); ++i)
            if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
        return -1;
    }

    Bits& operator&=(const Bits& o) {
        for (int i = 0; i < words(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (int i = 0; i < words(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bits& andnot(const Bits& o) {
        for (int i = 0; i < words(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

    int count_and(const Bits& o) const {
        int c = 0;
        for (int i = 0; i < words(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }
    bool intersects(const Bits& o) const {
        for (int i = 0; i < words(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    bool subset_of(const Bits& o) const {
        for (int i = 0; i < words(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    template <class F>
    void for_each(F&& f) const {
        for (int i = 0; i < words(); ++i) {
            std::uint64_t x = w_[i];
            while (x) {
                int b = std::countr_zero(x);
                f(i * 64 + b);
                x &= x - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

    bool operator==(const Bits& o) const { return size_ == o.size_ && w_ == o.w_; }

private:
    void trim() {
        if (size_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }
    int size_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace simonovits
