#include "iris/hadamard.hpp"

#include <bit>

namespace iris {

HadamardCode::HadamardCode(int k) : k_(k), len_(1 << (k - 1)) {
    if (k < 2 || k > 16) throw ParameterError("HadamardCode: k must be in [2, 16]");
    base_rows_.reserve(static_cast<size_t>(len_));
    for (int r = 0; r < len_; ++r) {
        BitVec row(static_cast<size_t>(len_));
        for (int c = 0; c < len_; ++c) {
            const int parity =
                std::popcount(static_cast<unsigned>(r) & static_cast<unsigned>(c)) & 1;
            row.set(static_cast<size_t>(c), parity == 0);
        }
        base_rows_.push_back(std::move(row));
    }
}

bool HadamardCode::row_bit(uint32_t row, int col) const {
    const bool base = base_rows_[row % static_cast<uint32_t>(len_)].get(
        static_cast<size_t>(col));
    return row < static_cast<uint32_t>(len_) ? base : !base;
}

BitVec HadamardCode::encode(uint32_t message) const {
    if (message >= static_cast<uint32_t>(rows()))
        throw ParameterError("HadamardCode::encode: message wider than k bits");
    if (message < static_cast<uint32_t>(len_)) return base_rows_[message];
    return ~base_rows_[message - static_cast<uint32_t>(len_)];
}

HadamardCode::Decoded HadamardCode::decode(const BitVec& block) const {
    if (block.size() != static_cast<size_t>(len_))
        throw ParameterError("HadamardCode::decode: wrong block length");

    // dot(+/-1 block, +/-1 row) = len - 2 * hamming(block, row); the
    // complement row scores the negation. Rows are scanned in index order
    // (all base rows, then all complements) so ties keep the smallest index.
    std::vector<long> dots(static_cast<size_t>(len_));
    for (int r = 0; r < len_; ++r) {
        const long dist =
            static_cast<long>((block ^ base_rows_[static_cast<size_t>(r)]).count());
        dots[static_cast<size_t>(r)] = len_ - 2 * dist;
    }
    Decoded best;
    long best_dot = -len_ - 1;
    for (int r = 0; r < len_; ++r) {
        if (dots[static_cast<size_t>(r)] > best_dot) {
            best_dot = dots[static_cast<size_t>(r)];
            best.message = static_cast<uint32_t>(r);
        }
    }
    for (int r = 0; r < len_; ++r) {
        if (-dots[static_cast<size_t>(r)] > best_dot) {
            best_dot = -dots[static_cast<size_t>(r)];
            best.message = static_cast<uint32_t>(r + len_);
        }
    }
    best.confidence = static_cast<double>(best_dot) / static_cast<double>(len_);
    return best;
}

}  // namespace iris
