#pragma once

#include <array>
#include <string>
#include <vector>

#include "iris/bitvec.hpp"
#include "iris/encoding.hpp"
#include "iris/hadamard.hpp"
#include "iris/reedsolomon.hpp"

namespace iris {

/// Concatenated code for key binding: Reed-Solomon outer (burst errors from
/// whole corrupted blocks), Hadamard inner (random bit flips within a block).
/// One inner block per outer symbol, so hadamard_k must equal rs_m.
struct KeybindScheme {
    int hadamard_k = 6;
    int rs_m = 6;
    int rs_n = 32;
    int rs_k = 16;

    size_t key_bits() const { return static_cast<size_t>(rs_k) * rs_m; }
    size_t block_bits() const { return size_t{1} << (hadamard_k - 1); }
    size_t codeword_bits() const { return static_cast<size_t>(rs_n) * block_bits(); }
    void validate() const;
};

/// Fuzzy commitment: the concatenated codeword of the key XORed with iris code
/// bits. The only key-dependent field is the SHA-256 digest; the selection
/// list and the locked pad reveal nothing without the iris.
struct Commitment {
    KeybindScheme scheme;
    uint32_t hash_id = 1;  // 1 = SHA-256
    std::vector<uint32_t> selection;  // template bit positions used for the pad
    BitVec locked;
    std::array<uint8_t, 32> key_digest{};
};

/// Binds `key` (exactly rs_k * rs_m bits) against the enrollment template.
/// The pad uses the first codeword-length template bits that are valid under
/// the enrollment mask, lowest positions first.
Commitment lock(const std::vector<uint8_t>& key, const IrisTemplate& enrollment,
                const KeybindScheme& scheme = {});

struct UnlockResult {
    enum class Status { Ok, RsFailure, DigestMismatch };
    Status status = Status::RsFailure;
    std::vector<uint8_t> key;  // released only when status == Ok
    int corrected_symbols = 0;

    bool ok() const { return status == Status::Ok; }
};

/// Recovers the key from an aligned probe template. The caller aligns the
/// probe first (matching::match best_shift against the enrollment template
/// stored beside the commitment). The key is released only when the decoded
/// candidate's digest matches.
UnlockResult unlock(const Commitment& c, const IrisTemplate& probe);

/// Normative container: "IRC1", then hadamard_k, rs_m, rs_n, rs_k and the
/// hash id as u32 little-endian, the selection index list (u32 each,
/// codeword-length entries), locked bits packed LSB-first, 32-byte digest.
std::vector<uint8_t> serialize_commitment(const Commitment& c);
Commitment parse_commitment(const std::vector<uint8_t>& bytes);
void write_commitment(const Commitment& c, const std::string& path);
Commitment read_commitment(const std::string& path);

}  // namespace iris
