#include "iris/reedsolomon.hpp"

#include <algorithm>

namespace iris {

RsParams RsParams::standard(int m, int n, int k) {
    GaloisField gf(m);
    if (n < 2 || n > gf.order())
        throw ParameterError("RsParams: need 2 <= n <= 2^m");
    if (k < 1 || k >= n) throw ParameterError("RsParams: need 1 <= k < n");
    RsParams p;
    p.m = m;
    p.n = n;
    p.k = k;
    p.points.push_back(0);
    uint16_t v = 1;
    for (int i = 1; i < n; ++i) {
        p.points.push_back(v);
        v = gf.mul(v, gf.generator());
    }
    return p;
}

void RsParams::validate(const GaloisField& gf) const {
    if (gf.m() != m) throw ParameterError("RsParams: field mismatch");
    if (static_cast<int>(points.size()) != n)
        throw ParameterError("RsParams: wrong number of evaluation points");
    if (k < 1 || k >= n) throw ParameterError("RsParams: need 1 <= k < n");
    for (int i = 0; i < n; ++i) {
        gf.check_element(points[static_cast<size_t>(i)]);
        for (int j = i + 1; j < n; ++j)
            if (points[static_cast<size_t>(i)] == points[static_cast<size_t>(j)])
                throw ParameterError("RsParams: evaluation points not distinct");
    }
}

namespace {

// Horner evaluation, coeffs[0] = constant term.
uint16_t poly_eval(const std::vector<uint16_t>& coeffs, uint16_t x,
                   const GaloisField& gf) {
    uint16_t acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = gf.add(gf.mul(acc, x), coeffs[i]);
    return acc;
}

// Gaussian elimination over GF(2^m). Returns false when the system is
// inconsistent; free variables are set to zero.
bool solve_linear(std::vector<std::vector<uint16_t>>& aug, int cols,
                  std::vector<uint16_t>& solution, const GaloisField& gf) {
    const int rows = static_cast<int>(aug.size());
    std::vector<int> pivot_col_of_row(static_cast<size_t>(rows), -1);
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int rr = row; rr < rows; ++rr) {
            if (aug[static_cast<size_t>(rr)][static_cast<size_t>(col)] != 0) {
                piv = rr;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(aug[static_cast<size_t>(row)], aug[static_cast<size_t>(piv)]);
        const uint16_t inv = gf.inv(aug[static_cast<size_t>(row)][static_cast<size_t>(col)]);
        for (int c = col; c <= cols; ++c)
            aug[static_cast<size_t>(row)][static_cast<size_t>(c)] =
                gf.mul(aug[static_cast<size_t>(row)][static_cast<size_t>(c)], inv);
        for (int rr = 0; rr < rows; ++rr) {
            if (rr == row) continue;
            const uint16_t f = aug[static_cast<size_t>(rr)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c <= cols; ++c)
                aug[static_cast<size_t>(rr)][static_cast<size_t>(c)] = gf.add(
                    aug[static_cast<size_t>(rr)][static_cast<size_t>(c)],
                    gf.mul(f, aug[static_cast<size_t>(row)][static_cast<size_t>(c)]));
        }
        pivot_col_of_row[static_cast<size_t>(row)] = col;
        ++row;
    }
    for (int rr = row; rr < rows; ++rr)
        if (aug[static_cast<size_t>(rr)][static_cast<size_t>(cols)] != 0) return false;

    // Reduced row echelon form with free variables at zero: each pivot takes
    // its row's RHS directly.
    solution.assign(static_cast<size_t>(cols), 0);
    for (int rr = 0; rr < row; ++rr) {
        const int pc = pivot_col_of_row[static_cast<size_t>(rr)];
        solution[static_cast<size_t>(pc)] =
            aug[static_cast<size_t>(rr)][static_cast<size_t>(cols)];
    }
    return true;
}

// Polynomial long division; returns quotient and sets `exact` when the
// remainder is zero.
std::vector<uint16_t> poly_divide(const std::vector<uint16_t>& num,
                                  const std::vector<uint16_t>& den, bool& exact,
                                  const GaloisField& gf) {
    std::vector<uint16_t> rem = num;
    int dn = static_cast<int>(rem.size()) - 1;
    while (dn >= 0 && rem[static_cast<size_t>(dn)] == 0) --dn;
    int dd = static_cast<int>(den.size()) - 1;
    while (dd >= 0 && den[static_cast<size_t>(dd)] == 0) --dd;
    if (dd < 0) {
        exact = false;
        return {};
    }
    if (dn < dd) {
        exact = dn < 0;  // zero numerator divides exactly
        return {0};
    }
    std::vector<uint16_t> quot(static_cast<size_t>(dn - dd + 1), 0);
    const uint16_t lead_inv = gf.inv(den[static_cast<size_t>(dd)]);
    for (int i = dn - dd; i >= 0; --i) {
        const uint16_t c = gf.mul(rem[static_cast<size_t>(i + dd)], lead_inv);
        quot[static_cast<size_t>(i)] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<size_t>(i + j)] =
                gf.add(rem[static_cast<size_t>(i + j)],
                       gf.mul(c, den[static_cast<size_t>(j)]));
    }
    exact = std::all_of(rem.begin(), rem.end(), [](uint16_t v) { return v == 0; });
    return quot;
}

}  // namespace

std::vector<uint16_t> rs_encode(const std::vector<uint16_t>& message,
                                const RsParams& p, const GaloisField& gf) {
    p.validate(gf);
    if (static_cast<int>(message.size()) != p.k)
        throw ParameterError("rs_encode: message must have k symbols");
    for (uint16_t s : message) gf.check_element(s);
    std::vector<uint16_t> out(static_cast<size_t>(p.n));
    for (int i = 0; i < p.n; ++i)
        out[static_cast<size_t>(i)] =
            poly_eval(message, p.points[static_cast<size_t>(i)], gf);
    return out;
}

std::optional<RsDecoded> rs_decode(const std::vector<uint16_t>& received,
                                   const RsParams& p, const GaloisField& gf) {
    p.validate(gf);
    if (static_cast<int>(received.size()) != p.n)
        throw ParameterError("rs_decode: received word must have n symbols");
    for (uint16_t s : received) gf.check_element(s);

    const int t = p.correctable();
    const int qn = p.k + t;  // deg Q <= k + t - 1
    const int cols = qn + t; // unknowns: q_0..q_{qn-1}, e_0..e_{t-1}

    // Q(x_i) + r_i * (e_0 + e_1 x_i + ... + e_{t-1} x_i^{t-1}) = r_i * x_i^t
    std::vector<std::vector<uint16_t>> aug(
        static_cast<size_t>(p.n), std::vector<uint16_t>(static_cast<size_t>(cols + 1), 0));
    for (int i = 0; i < p.n; ++i) {
        const uint16_t x = p.points[static_cast<size_t>(i)];
        const uint16_t r = received[static_cast<size_t>(i)];
        uint16_t xp = 1;
        for (int j = 0; j < qn; ++j) {
            aug[static_cast<size_t>(i)][static_cast<size_t>(j)] = xp;
            xp = gf.mul(xp, x);
        }
        xp = 1;
        for (int j = 0; j < t; ++j) {
            aug[static_cast<size_t>(i)][static_cast<size_t>(qn + j)] = gf.mul(r, xp);
            xp = gf.mul(xp, x);
        }
        aug[static_cast<size_t>(i)][static_cast<size_t>(cols)] = gf.mul(r, gf.pow(x, t));
    }

    std::vector<uint16_t> sol;
    if (!solve_linear(aug, cols, sol, gf)) return std::nullopt;

    std::vector<uint16_t> q(sol.begin(), sol.begin() + qn);
    std::vector<uint16_t> e(sol.begin() + qn, sol.end());
    e.push_back(1);  // monic x^t term

    bool exact = false;
    std::vector<uint16_t> msg = poly_divide(q, e, exact, gf);
    if (!exact) return std::nullopt;
    if (msg.size() > static_cast<size_t>(p.k)) return std::nullopt;
    msg.resize(static_cast<size_t>(p.k), 0);

    const std::vector<uint16_t> reencoded = rs_encode(msg, p, gf);
    int dist = 0;
    for (int i = 0; i < p.n; ++i)
        if (reencoded[static_cast<size_t>(i)] != received[static_cast<size_t>(i)])
            ++dist;
    if (dist > t) return std::nullopt;
    return RsDecoded{std::move(msg), dist};
}

}  // namespace iris
