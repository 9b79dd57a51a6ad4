#pragma once

#include <cstdint>
#include <vector>

#include "iris/bitvec.hpp"

namespace iris {

/// Hadamard code of parameter k: the Sylvester Hadamard matrix of order
/// 2^(k-1) with -1 mapped to 0, stacked with its complement, giving 2^k rows
/// of 2^(k-1) bits. Any two distinct rows differ in exactly 2^(k-2) positions
/// except complementary pairs, which differ everywhere. Decoding is maximum
/// correlation, so up to 2^(k-3) - 1 bit flips per block are always corrected.
class HadamardCode {
  public:
    explicit HadamardCode(int k);

    int k() const { return k_; }
    int block_bits() const { return len_; }   // 2^(k-1)
    int rows() const { return 2 * len_; }     // 2^k

    /// Row selected by the message's decimal value.
    BitVec encode(uint32_t message) const;

    struct Decoded {
        uint32_t message = 0;
        double confidence = 0.0;  // max dot product / 2^(k-1), in [-1, 1]
    };

    /// Nearest row by +/-1 dot product; ties go to the smallest row index.
    Decoded decode(const BitVec& block) const;

    bool row_bit(uint32_t row, int col) const;

  private:
    int k_;
    int len_;
    // Sylvester rows over {0,1}; row r, column c is parity of popcount(r & c).
    std::vector<BitVec> base_rows_;
};

}  // namespace iris
