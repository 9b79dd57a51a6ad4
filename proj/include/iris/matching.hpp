#pragma once

#include "iris/encoding.hpp"

namespace iris {

struct MatchScore {
    double hd = 1.0;
    int best_shift = 0;      // angular columns; probe = reference shifted by this
    size_t valid_bits = 0;   // bits compared at the best shift
    size_t total_bits = 0;   // template length, for the evidence floor
};

/// Masked Hamming distance at a single alignment:
/// popcount((a.code ^ b.code) & a.mask & b.mask) / popcount(a.mask & b.mask).
/// Throws IncomparableError when no bit is valid in both masks.
MatchScore hamming(const IrisTemplate& a, const IrisTemplate& b);

/// Minimum Hamming distance over cyclic angular shifts of b in
/// [-max_shift, +max_shift] columns (code and mask shift together). Ties
/// prefer the smaller |shift|, then the negative one. best_shift reports the
/// column offset c such that b matches a shifted by c.
MatchScore match(const IrisTemplate& a, const IrisTemplate& b, int max_shift);

enum class Decision { Accept, Reject };

/// Accept iff hd <= threshold and at least evidence_floor of the template's
/// bits were actually compared.
Decision decide(const MatchScore& score, double threshold,
                double evidence_floor = 0.2);

}  // namespace iris
