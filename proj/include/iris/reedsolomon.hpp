#pragma once

#include <optional>
#include <vector>

#include "iris/galois.hpp"

namespace iris {

/// Evaluation-style Reed-Solomon code over GF(2^m): the message symbols are
/// the coefficients of a polynomial of degree < k (message[0] is the constant
/// term) and the codeword is its values at n distinct points. The point
/// sequence is generator-ordered and includes 0: {0, 1, alpha, alpha^2, ...},
/// permitting any n up to 2^m.
struct RsParams {
    int m = 6;
    int n = 32;
    int k = 16;
    std::vector<uint16_t> points;

    static RsParams standard(int m, int n, int k);
    int correctable() const { return (n - k) / 2; }
    void validate(const GaloisField& gf) const;
};

std::vector<uint16_t> rs_encode(const std::vector<uint16_t>& message,
                                const RsParams& p, const GaloisField& gf);

struct RsDecoded {
    std::vector<uint16_t> message;
    int corrected = 0;
};

/// Berlekamp-Welch decoding: solves Q(x_i) = r_i * E(x_i) with monic E of
/// degree t = (n-k)/2, recovers the message as Q/E, and verifies the result
/// re-encodes within distance t of the received word. Returns nullopt (never
/// a wrong answer presented as clean) when that fails.
std::optional<RsDecoded> rs_decode(const std::vector<uint16_t>& received,
                                   const RsParams& p, const GaloisField& gf);

}  // namespace iris
