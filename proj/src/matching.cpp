#include "iris/matching.hpp"

#include <cmath>

namespace iris {

MatchScore hamming(const IrisTemplate& a, const IrisTemplate& b) {
    if (!a.same_shape(b)) throw DimensionError("hamming: template shape mismatch");
    const BitVec m = a.mask & b.mask;
    size_t disagreeing = 0, valid = 0;
    BitVec::xor_and_counts(a.code, b.code, m, disagreeing, valid);
    if (valid == 0) throw IncomparableError("hamming: no mutually valid bits");
    MatchScore s;
    s.hd = static_cast<double>(disagreeing) / static_cast<double>(valid);
    s.best_shift = 0;
    s.valid_bits = valid;
    s.total_bits = a.bit_count();
    return s;
}

MatchScore match(const IrisTemplate& a, const IrisTemplate& b, int max_shift) {
    if (!a.same_shape(b)) throw DimensionError("match: template shape mismatch");
    if (max_shift < 0 || 2 * max_shift >= a.angular_res)
        throw ParameterError("match: max_shift must be in [0, angular_res/2)");

    bool found = false;
    MatchScore best;
    for (int c = -max_shift; c <= max_shift; ++c) {
        // Candidate hypothesis: b equals a shifted by c columns, so shifting b
        // back by -c must line the codes up.
        const IrisTemplate aligned = shift_template_columns(b, -c);
        MatchScore s;
        try {
            s = hamming(a, aligned);
        } catch (const IncomparableError&) {
            continue;
        }
        s.best_shift = c;
        const bool improves =
            !found || s.hd < best.hd ||
            (s.hd == best.hd && (std::abs(c) < std::abs(best.best_shift) ||
                                 (std::abs(c) == std::abs(best.best_shift) &&
                                  c < best.best_shift)));
        if (improves) {
            best = s;
            found = true;
        }
    }
    if (!found) throw IncomparableError("match: no shift with mutually valid bits");
    return best;
}

Decision decide(const MatchScore& score, double threshold, double evidence_floor) {
    const bool enough = static_cast<double>(score.valid_bits) >=
                        evidence_floor * static_cast<double>(score.total_bits);
    return (score.hd <= threshold && enough) ? Decision::Accept : Decision::Reject;
}

}  // namespace iris
