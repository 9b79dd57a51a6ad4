#include "iris/keybind.hpp"

#include <fstream>

#include "iris/sha256.hpp"

namespace iris {

namespace {

// Key bit b: byte b/8, MSB first within the byte. Symbol i is the m-bit group
// starting at bit i*m, MSB first.
bool key_bit(const std::vector<uint8_t>& key, size_t b) {
    return (key[b / 8] >> (7 - b % 8)) & 1;
}

void set_key_bit(std::vector<uint8_t>& key, size_t b, bool v) {
    const uint8_t m = static_cast<uint8_t>(1u << (7 - b % 8));
    if (v)
        key[b / 8] |= m;
    else
        key[b / 8] &= static_cast<uint8_t>(~m);
}

std::vector<uint16_t> key_to_symbols(const std::vector<uint8_t>& key, int k, int m) {
    std::vector<uint16_t> sym(static_cast<size_t>(k), 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j)
            sym[static_cast<size_t>(i)] = static_cast<uint16_t>(
                (sym[static_cast<size_t>(i)] << 1) |
                (key_bit(key, static_cast<size_t>(i) * m + j) ? 1 : 0));
    return sym;
}

std::vector<uint8_t> symbols_to_key(const std::vector<uint16_t>& sym, int m) {
    const size_t bits = sym.size() * static_cast<size_t>(m);
    std::vector<uint8_t> key((bits + 7) / 8, 0);
    for (size_t i = 0; i < sym.size(); ++i)
        for (int j = 0; j < m; ++j)
            set_key_bit(key, i * static_cast<size_t>(m) + static_cast<size_t>(j),
                        (sym[i] >> (m - 1 - j)) & 1);
    return key;
}

BitVec concatenated_encode(const std::vector<uint8_t>& key, const KeybindScheme& s) {
    const GaloisField gf(s.rs_m);
    const RsParams rs = RsParams::standard(s.rs_m, s.rs_n, s.rs_k);
    const HadamardCode had(s.hadamard_k);

    const auto symbols = key_to_symbols(key, s.rs_k, s.rs_m);
    const auto codeword = rs_encode(symbols, rs, gf);

    BitVec bits(s.codeword_bits());
    for (size_t i = 0; i < codeword.size(); ++i) {
        const BitVec block = had.encode(codeword[i]);
        for (size_t b = 0; b < s.block_bits(); ++b)
            bits.set(i * s.block_bits() + b, block.get(b));
    }
    return bits;
}

}  // namespace

void KeybindScheme::validate() const {
    if (hadamard_k < 2 || hadamard_k > 12)
        throw ParameterError("KeybindScheme: hadamard_k out of range");
    if (hadamard_k != rs_m)
        throw ParameterError(
            "KeybindScheme: one inner block per outer symbol requires hadamard_k == rs_m");
    GaloisField gf(rs_m);
    RsParams::standard(rs_m, rs_n, rs_k).validate(gf);
}

Commitment lock(const std::vector<uint8_t>& key, const IrisTemplate& enrollment,
                const KeybindScheme& scheme) {
    scheme.validate();
    if (key.size() * 8 != scheme.key_bits())
        throw ParameterError("lock: key must be exactly rs_k * rs_m bits");

    const size_t L = scheme.codeword_bits();
    std::vector<uint32_t> selection;
    selection.reserve(L);
    for (size_t i = 0; i < enrollment.bit_count() && selection.size() < L; ++i)
        if (enrollment.mask.get(i)) selection.push_back(static_cast<uint32_t>(i));
    if (selection.size() < L)
        throw ParameterError("lock: iris template has too few valid bits");

    BitVec pad(L);
    for (size_t i = 0; i < L; ++i) pad.set(i, enrollment.code.get(selection[i]));

    Commitment c;
    c.scheme = scheme;
    c.selection = std::move(selection);
    c.locked = concatenated_encode(key, scheme) ^ pad;
    c.key_digest = sha256(key);
    return c;
}

UnlockResult unlock(const Commitment& c, const IrisTemplate& probe) {
    c.scheme.validate();
    const size_t L = c.scheme.codeword_bits();
    if (c.selection.size() != L || c.locked.size() != L)
        throw ParameterError("unlock: commitment inconsistent with its scheme");

    BitVec pad(L);
    for (size_t i = 0; i < L; ++i) {
        const uint32_t idx = c.selection[i];
        if (idx >= probe.bit_count())
            throw ParameterError("unlock: selection index outside probe template");
        pad.set(i, probe.code.get(idx));
    }
    const BitVec noisy = c.locked ^ pad;

    const HadamardCode had(c.scheme.hadamard_k);
    std::vector<uint16_t> symbols(static_cast<size_t>(c.scheme.rs_n));
    for (size_t i = 0; i < symbols.size(); ++i) {
        BitVec block(c.scheme.block_bits());
        for (size_t b = 0; b < c.scheme.block_bits(); ++b)
            block.set(b, noisy.get(i * c.scheme.block_bits() + b));
        symbols[i] = static_cast<uint16_t>(had.decode(block).message);
    }

    const GaloisField gf(c.scheme.rs_m);
    const RsParams rs = RsParams::standard(c.scheme.rs_m, c.scheme.rs_n, c.scheme.rs_k);
    const auto decoded = rs_decode(symbols, rs, gf);

    UnlockResult res;
    if (!decoded) {
        res.status = UnlockResult::Status::RsFailure;
        return res;
    }
    const std::vector<uint8_t> candidate = symbols_to_key(decoded->message, c.scheme.rs_m);
    if (sha256(candidate) != c.key_digest) {
        res.status = UnlockResult::Status::DigestMismatch;
        return res;
    }
    res.status = UnlockResult::Status::Ok;
    res.key = candidate;
    res.corrected_symbols = decoded->corrected;
    return res;
}

namespace {

void push_u32le(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xff));
    out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<uint8_t>((v >> 24) & 0xff));
}

uint32_t read_u32le(const std::vector<uint8_t>& in, size_t& pos) {
    if (pos + 4 > in.size()) throw IoError("commitment: truncated data");
    const uint32_t v = static_cast<uint32_t>(in[pos]) |
                       (static_cast<uint32_t>(in[pos + 1]) << 8) |
                       (static_cast<uint32_t>(in[pos + 2]) << 16) |
                       (static_cast<uint32_t>(in[pos + 3]) << 24);
    pos += 4;
    return v;
}

}  // namespace

std::vector<uint8_t> serialize_commitment(const Commitment& c) {
    std::vector<uint8_t> out = {'I', 'R', 'C', '1'};
    push_u32le(out, static_cast<uint32_t>(c.scheme.hadamard_k));
    push_u32le(out, static_cast<uint32_t>(c.scheme.rs_m));
    push_u32le(out, static_cast<uint32_t>(c.scheme.rs_n));
    push_u32le(out, static_cast<uint32_t>(c.scheme.rs_k));
    push_u32le(out, c.hash_id);
    for (uint32_t idx : c.selection) push_u32le(out, idx);
    const auto locked = c.locked.to_bytes();
    out.insert(out.end(), locked.begin(), locked.end());
    out.insert(out.end(), c.key_digest.begin(), c.key_digest.end());
    return out;
}

Commitment parse_commitment(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 24 || bytes[0] != 'I' || bytes[1] != 'R' || bytes[2] != 'C' ||
        bytes[3] != '1')
        throw IoError("commitment: bad magic");
    size_t pos = 4;
    Commitment c;
    c.scheme.hadamard_k = static_cast<int>(read_u32le(bytes, pos));
    c.scheme.rs_m = static_cast<int>(read_u32le(bytes, pos));
    c.scheme.rs_n = static_cast<int>(read_u32le(bytes, pos));
    c.scheme.rs_k = static_cast<int>(read_u32le(bytes, pos));
    c.hash_id = read_u32le(bytes, pos);
    if (c.hash_id != 1) throw IoError("commitment: unknown hash id");
    c.scheme.validate();

    const size_t L = c.scheme.codeword_bits();
    c.selection.resize(L);
    for (size_t i = 0; i < L; ++i) c.selection[i] = read_u32le(bytes, pos);

    const size_t locked_bytes = (L + 7) / 8;
    if (bytes.size() != pos + locked_bytes + 32)
        throw IoError("commitment: bad payload size");
    std::vector<uint8_t> locked(bytes.begin() + static_cast<long>(pos),
                                bytes.begin() + static_cast<long>(pos + locked_bytes));
    c.locked = BitVec::from_bytes(locked, L);
    pos += locked_bytes;
    std::copy(bytes.begin() + static_cast<long>(pos), bytes.end(),
              c.key_digest.begin());
    return c;
}

void write_commitment(const Commitment& c, const std::string& path) {
    const auto bytes = serialize_commitment(c);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_commitment: cannot open " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write_commitment: write failed for " + path);
}

Commitment read_commitment(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_commitment: cannot open " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return parse_commitment(bytes);
}

}  // namespace iris
