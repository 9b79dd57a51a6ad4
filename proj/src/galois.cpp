#include "iris/galois.hpp"

namespace iris {

namespace {

// Primitive polynomials over GF(2), one per field size.
uint32_t primitive_poly(int m) {
    switch (m) {
        case 2: return 0x7;    // x^2 + x + 1
        case 3: return 0xB;    // x^3 + x + 1
        case 4: return 0x13;   // x^4 + x + 1
        case 5: return 0x25;   // x^5 + x^2 + 1
        case 6: return 0x43;   // x^6 + x + 1
        case 7: return 0x89;   // x^7 + x^3 + 1
        case 8: return 0x11D;  // x^8 + x^4 + x^3 + x^2 + 1
        default:
            throw ParameterError("GaloisField: m must be in [2, 8]");
    }
}

}  // namespace

GaloisField::GaloisField(int m) : m_(m), order_(1 << m) {
    const uint32_t poly = primitive_poly(m);
    exp_.assign(static_cast<size_t>(order_ - 1), 0);
    log_.assign(static_cast<size_t>(order_), 0);
    uint32_t v = 1;
    for (int i = 0; i < order_ - 1; ++i) {
        exp_[static_cast<size_t>(i)] = static_cast<uint16_t>(v);
        log_[v] = static_cast<uint16_t>(i);
        v <<= 1;
        if (v & static_cast<uint32_t>(order_)) v ^= poly;
    }
}

uint16_t GaloisField::pow(uint16_t a, int e) const {
    check_element(a);
    if (e == 0) return 1;
    if (a == 0) return 0;
    int le = (log_[a] * static_cast<long long>(e)) % (order_ - 1);
    if (le < 0) le += order_ - 1;
    return exp_[static_cast<size_t>(le)];
}

}  // namespace iris
