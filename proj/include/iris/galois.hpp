#pragma once

#include <cstdint>
#include <vector>

#include "iris/errors.hpp"

namespace iris {

/// GF(2^m) arithmetic via log/antilog tables, m in [2, 8]. Elements are the
/// integers [0, 2^m); addition is XOR.
class GaloisField {
  public:
    explicit GaloisField(int m);

    int m() const { return m_; }
    int order() const { return order_; }           // 2^m
    uint16_t generator() const { return 2; }       // alpha = x

    uint16_t add(uint16_t a, uint16_t b) const { return a ^ b; }

    uint16_t mul(uint16_t a, uint16_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (order_ - 1)];
    }

    uint16_t inv(uint16_t a) const {
        if (a == 0) throw ParameterError("GaloisField: inverse of zero");
        return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
    }

    uint16_t div(uint16_t a, uint16_t b) const { return mul(a, inv(b)); }

    uint16_t pow(uint16_t a, int e) const;

    void check_element(uint16_t a) const {
        if (a >= order_) throw ParameterError("GaloisField: symbol outside field");
    }

  private:
    int m_;
    int order_;
    std::vector<uint16_t> exp_;
    std::vector<uint16_t> log_;
};

}  // namespace iris
