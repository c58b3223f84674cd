#pragma once
// Multiplicative tables on [0, N]: smallest prime factor, signed two-square
// representation counts, distinct-prime-factor counts, and membership in the
// class of integers all of whose prime divisors are 1 mod 4. Built by linear
// sieve plus one factorization pass; everything downstream (three-square
// counts, resonant window enumeration, cardinality diagnostics) reads these.

#include <cstdint>
#include <vector>

namespace latdisc {

class arith_tables {
  public:
    // Memory guard: refuses N > 100'000'000.
    static arith_tables build(std::int64_t n);

    std::int64_t limit() const { return limit_; }

    // ordered signed pairs (m1,m2) with m1^2 + m2^2 = n; r2(0) = 1
    std::int32_t r2(std::int64_t n) const { return r2_[idx(n)]; }
    // distinct prime factors; omega(1) = 0
    int omega(std::int64_t n) const { return omega_[idx(n)]; }
    // every prime divisor is 1 mod 4 (vacuously true for 1)
    bool a1(std::int64_t n) const { return a1_[idx(n)] != 0; }
    std::uint32_t spf(std::int64_t n) const { return spf_[idx(n)]; }

    // ordered signed triples summing to n, via convolution with r2; n <= limit
    std::int64_t r3(std::int64_t n) const;
    // sum of r3 over 1..u
    std::int64_t r3_partial(std::int64_t u) const;

  private:
    std::size_t idx(std::int64_t n) const;
    std::int64_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<std::int32_t> r2_;
    std::vector<std::uint8_t> omega_;
    std::vector<std::uint8_t> a1_;
};

// Integers l in [a1^2 L^2, a2^2 L^2] with every prime divisor 1 mod 4 and
// exactly k distinct prime factors (l = 1 qualifies iff k = 0). Ascending.
std::vector<std::int64_t> enumerate_resonant(const arith_tables& t, double L,
                                             int k, double a1, double a2);

struct cardinality_row {
    double lambda = 0.0;
    int k = 0;
    std::int64_t exact = 0;
    double predicted = 0.0;  // NaN for k = 0 (formula undefined)
    double ratio = 0.0;      // exact / predicted, NaN for k = 0
};

struct cardinality_report {
    std::vector<cardinality_row> rows;
    double ratio_min = 0.0;  // over rows with k >= 1
    double ratio_max = 0.0;
};

// k = floor(beta * loglog(lambda)) per scale; predicted cardinality
// (L^2/log L) * (loglog(L)/2)^(k-1) / (k-1)!.
cardinality_report cardinality_check(const arith_tables& t,
                                     const std::vector<double>& lambdas,
                                     double beta, double a1, double a2);

}  // namespace latdisc
