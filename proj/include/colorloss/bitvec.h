#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace colorloss {

// Fixed-length bit vector packed into 64-bit words. Bits past size() stay zero.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }
    size_t num_words() const { return w_.size(); }
    uint64_t* data() { return w_.data(); }
    const uint64_t* data() const { return w_.data(); }

    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(size_t i, bool v = true) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v) {
            w_[i >> 6] |= m;
        } else {
            w_[i >> 6] &= ~m;
        }
    }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (size_t k = 0; k < w_.size(); k++) w_[k] ^= o.w_[k];
        return *this;
    }
    BitVec& operator&=(const BitVec& o) {
        for (size_t k = 0; k < w_.size(); k++) w_[k] &= o.w_[k];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    bool operator==(const BitVec& o) const = default;

    size_t popcount() const {
        size_t c = 0;
        for (uint64_t x : w_) c += std::popcount(x);
        return c;
    }
    bool any() const {
        for (uint64_t x : w_) {
            if (x) return true;
        }
        return false;
    }
    // Parity of |this & o|.
    bool dot(const BitVec& o) const {
        uint64_t acc = 0;
        for (size_t k = 0; k < w_.size(); k++) acc ^= w_[k] & o.w_[k];
        return std::popcount(acc) & 1;
    }

    std::vector<int> ones() const {
        std::vector<int> out;
        for (size_t k = 0; k < w_.size(); k++) {
            uint64_t x = w_[k];
            while (x) {
                out.push_back(static_cast<int>(k * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
        return out;
    }

    template <class It>
    static BitVec from_indices(size_t n, It first, It last) {
        BitVec v(n);
        for (; first != last; ++first) v.flip(static_cast<size_t>(*first));
        return v;
    }
    static BitVec from_indices(size_t n, const std::vector<int>& idx) {
        return from_indices(n, idx.begin(), idx.end());
    }

  private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace colorloss
