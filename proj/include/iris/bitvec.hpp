#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "iris/errors.hpp"

namespace iris {

/// Packed bit vector. Bit i lives at word i/64, bit i%64; serialization is
/// LSB-first per byte. Unused high bits of the last word are kept zero so
/// word-wise popcounts need no masking.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        const uint64_t m = uint64_t{1} << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }

    size_t count() const {
        size_t c = 0;
        for (uint64_t w : w_) c += static_cast<size_t>(std::popcount(w));
        return c;
    }

    /// Cyclic rotation toward higher indices: out[(i + t) mod n] = in[i].
    BitVec rotated(long long t) const {
        BitVec out(n_);
        if (n_ == 0) return out;
        long long s = t % static_cast<long long>(n_);
        if (s < 0) s += static_cast<long long>(n_);
        const size_t split = n_ - static_cast<size_t>(s);
        copy_range(*this, 0, out, static_cast<size_t>(s), split);
        copy_range(*this, split, out, 0, static_cast<size_t>(s));
        return out;
    }

    BitVec operator^(const BitVec& o) const {
        check_same(o);
        BitVec out(n_);
        for (size_t i = 0; i < w_.size(); ++i) out.w_[i] = w_[i] ^ o.w_[i];
        return out;
    }

    BitVec operator&(const BitVec& o) const {
        check_same(o);
        BitVec out(n_);
        for (size_t i = 0; i < w_.size(); ++i) out.w_[i] = w_[i] & o.w_[i];
        return out;
    }

    BitVec operator~() const {
        BitVec out(n_);
        for (size_t i = 0; i < w_.size(); ++i) out.w_[i] = ~w_[i];
        out.mask_tail();
        return out;
    }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    /// popcount((a ^ b) & m) and popcount(m) in one pass.
    static void xor_and_counts(const BitVec& a, const BitVec& b, const BitVec& m,
                               size_t& disagreeing, size_t& valid) {
        a.check_same(b);
        a.check_same(m);
        disagreeing = 0;
        valid = 0;
        for (size_t i = 0; i < a.w_.size(); ++i) {
            disagreeing += static_cast<size_t>(std::popcount((a.w_[i] ^ b.w_[i]) & m.w_[i]));
            valid += static_cast<size_t>(std::popcount(m.w_[i]));
        }
    }

    std::vector<uint8_t> to_bytes() const {
        std::vector<uint8_t> out((n_ + 7) / 8, 0);
        for (size_t i = 0; i < out.size(); ++i)
            out[i] = static_cast<uint8_t>((w_[i >> 3] >> ((i & 7) * 8)) & 0xff);
        return out;
    }

    static BitVec from_bytes(const std::vector<uint8_t>& bytes, size_t n) {
        if (bytes.size() != (n + 7) / 8)
            throw ParameterError("BitVec::from_bytes: byte count does not match length");
        BitVec out(n);
        for (size_t i = 0; i < bytes.size(); ++i)
            out.w_[i >> 3] |= static_cast<uint64_t>(bytes[i]) << ((i & 7) * 8);
        out.mask_tail();
        return out;
    }

  private:
    // Reads up to 64 bits starting at bit position pos (pos + len <= n).
    static uint64_t read_chunk(const std::vector<uint64_t>& w, size_t pos, unsigned len) {
        const size_t wi = pos >> 6;
        const unsigned off = pos & 63;
        uint64_t v = w[wi] >> off;
        if (off != 0 && wi + 1 < w.size()) v |= w[wi + 1] << (64 - off);
        if (len < 64) v &= (uint64_t{1} << len) - 1;
        return v;
    }

    // Copies len bits from src@spos into dst@dpos. dst bits must start zeroed.
    static void copy_range(const BitVec& src, size_t spos, BitVec& dst, size_t dpos,
                           size_t len) {
        while (len > 0) {
            const unsigned chunk = static_cast<unsigned>(len < 64 ? len : 64);
            const uint64_t v = read_chunk(src.w_, spos, chunk);
            const size_t wi = dpos >> 6;
            const unsigned off = dpos & 63;
            dst.w_[wi] |= v << off;
            if (off != 0 && wi + 1 < dst.w_.size()) dst.w_[wi + 1] |= v >> (64 - off);
            spos += chunk;
            dpos += chunk;
            len -= chunk;
        }
    }

    void check_same(const BitVec& o) const {
        if (n_ != o.n_) throw DimensionError("BitVec: length mismatch");
    }
    void mask_tail() {
        if (n_ % 64 != 0 && !w_.empty())
            w_.back() &= (uint64_t{1} << (n_ % 64)) - 1;
    }

    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace iris
