#include "latdisc/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "latdisc/numerics.hpp"

namespace latdisc {

std::size_t arith_tables::idx(std::int64_t n) const {
    if (n < 0 || n > limit_)
        throw std::out_of_range("arith_tables: index outside table");
    return static_cast<std::size_t>(n);
}

arith_tables arith_tables::build(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("arith_tables: limit >= 1");
    if (n > 100'000'000)
        throw std::invalid_argument("arith_tables: limit exceeds memory guard");
    arith_tables t;
    t.limit_ = n;
    const std::size_t sz = static_cast<std::size_t>(n) + 1;
    t.spf_.assign(sz, 0);
    t.r2_.assign(sz, 0);
    t.omega_.assign(sz, 0);
    t.a1_.assign(sz, 0);

    // linear sieve for smallest prime factors
    std::vector<std::uint32_t> primes;
    for (std::int64_t i = 2; i <= n; ++i) {
        if (t.spf_[static_cast<std::size_t>(i)] == 0) {
            t.spf_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (const std::uint32_t p : primes) {
            if (p > t.spf_[static_cast<std::size_t>(i)]) break;
            const std::int64_t ip = i * static_cast<std::int64_t>(p);
            if (ip > n) break;
            t.spf_[static_cast<std::size_t>(ip)] = p;
        }
    }

    // r2(n)/4 is multiplicative: (e+1) per prime 1 mod 4, parity gate per
    // prime 3 mod 4, and powers of 2 are inert
    t.r2_[0] = 1;
    if (n >= 1) {
        t.r2_[1] = 4;
        t.a1_[1] = 1;
        t.omega_[1] = 0;
    }
    for (std::int64_t v = 2; v <= n; ++v) {
        std::int64_t m = v;
        int omega = 0;
        bool all_1mod4 = true;
        std::int64_t b = 1;  // r2/4
        while (m > 1) {
            const std::uint32_t p = t.spf_[static_cast<std::size_t>(m)];
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            ++omega;
            if (p == 2) {
                all_1mod4 = false;
            } else if (p % 4 == 1) {
                b *= (e + 1);
            } else {
                all_1mod4 = false;
                if (e & 1) b = 0;
            }
        }
        t.omega_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(omega);
        t.a1_[static_cast<std::size_t>(v)] = all_1mod4 ? 1 : 0;
        t.r2_[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(4 * b);
    }
    return t;
}

std::int64_t arith_tables::r3(std::int64_t n) const {
    if (n < 0 || n > limit_)
        throw std::out_of_range("r3: n outside table");
    std::int64_t j = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while ((j + 1) * (j + 1) <= n) ++j;
    while (j * j > n) --j;
    std::int64_t total = r2(n);  // j = 0
    for (std::int64_t i = 1; i <= j; ++i)
        total += 2 * static_cast<std::int64_t>(r2(n - i * i));
    return total;
}

std::int64_t arith_tables::r3_partial(std::int64_t u) const {
    if (u < 1 || u > limit_)
        throw std::out_of_range("r3_partial: u outside table");
    std::int64_t total = 0;
    for (std::int64_t n = 1; n <= u; ++n) total += r3(n);
    return total;
}

std::vector<std::int64_t> enumerate_resonant(const arith_tables& t, double L,
                                             int k, double a1, double a2) {
    if (!(L > 0.0) || !(a2 > a1) || !(a1 > 0.0) || k < 0)
        throw std::invalid_argument("enumerate_resonant: bad window");
    const double lo = a1 * a1 * L * L;
    const double hi = a2 * a2 * L * L;
    if (hi > static_cast<double>(t.limit()) + 0.5)
        throw std::invalid_argument("enumerate_resonant: window beyond table");
    const std::int64_t lo_i =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(lo - 1e-9)));
    const std::int64_t hi_i = static_cast<std::int64_t>(std::floor(hi + 1e-9));
    std::vector<std::int64_t> out;
    for (std::int64_t l = lo_i; l <= hi_i; ++l)
        if (t.a1(l) && t.omega(l) == k) out.push_back(l);
    return out;
}

cardinality_report cardinality_check(const arith_tables& t,
                                     const std::vector<double>& lambdas,
                                     double beta, double a1, double a2) {
    if (!(beta > 0.0))
        throw std::invalid_argument("cardinality_check: beta > 0");
    cardinality_report rep;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    bool any = false;
    for (const double L : lambdas) {
        cardinality_row row;
        row.lambda = L;
        const iter_log_result ll = iterated_log_clamped(L, 2);
        row.k = static_cast<int>(std::floor(beta * ll.value));
        row.exact = static_cast<std::int64_t>(
            enumerate_resonant(t, L, row.k, a1, a2).size());
        if (row.k >= 1) {
            const double l1 = std::log(L);
            const double l2 = std::log(l1);
            double fact = 1.0;
            for (int i = 2; i <= row.k - 1; ++i) fact *= i;
            row.predicted =
                L * L / l1 * std::pow(0.5 * l2, row.k - 1) / fact;
            row.ratio = static_cast<double>(row.exact) / row.predicted;
            if (!any || row.ratio < rep.ratio_min) rep.ratio_min = row.ratio;
            if (!any || row.ratio > rep.ratio_max) rep.ratio_max = row.ratio;
            any = true;
        } else {
            row.predicted = nan;
            row.ratio = nan;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace latdisc
