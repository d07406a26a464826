#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ncx::nt {

// Deterministic for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// Number of prime factors counted with multiplicity. Returns early with any
// value > cap once the count exceeds cap.
unsigned big_omega(std::uint64_t n, unsigned cap = 64);

class MultiplicityTable {
 public:
  std::uint32_t n_max() const noexcept { return n_max_; }

  // Valid for 1 <= n <= n_max; omega(1) = 0, spf(1) = 1.
  std::uint8_t omega(std::uint32_t n) const { return omega_[n]; }
  std::uint32_t spf(std::uint32_t n) const { return spf_[n]; }
  bool is_prime(std::uint32_t n) const { return n >= 2 && omega_[n] == 1; }

  std::span<const std::uint8_t> omegas() const noexcept { return omega_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  unsigned max_omega() const noexcept { return max_omega_; }

  // All divisors of n in increasing order.
  std::vector<std::uint32_t> divisors(std::uint32_t n) const;

  // Number of m <= x with omega(m) == k. Served from block prefix counts.
  std::uint64_t count_exact(std::uint32_t x, unsigned k) const;

 private:
  friend MultiplicityTable sieve(std::uint32_t n_max);
  static constexpr std::uint32_t kBlock = 1024;

  std::uint32_t n_max_ = 0;
  unsigned max_omega_ = 0;
  std::vector<std::uint8_t> omega_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
  // block_counts_[k * blocks + b] = #{m < b * kBlock : omega(m) == k}, m >= 1
  std::vector<std::uint32_t> block_counts_;
};

inline constexpr std::uint32_t kSieveLimit = 400'000'000;

// Linear smallest-prime-factor sieve. n_max >= 2; CapacityExceeded above kSieveLimit.
MultiplicityTable sieve(std::uint32_t n_max);

// pi(x) and pi_k(x): number of n <= x with omega(n) == 1 (resp. k).
std::uint64_t prime_pi(const MultiplicityTable& t, std::uint32_t x);
std::uint64_t pi_k(const MultiplicityTable& t, std::uint32_t x, unsigned k);

struct BoundViolation {
  std::uint64_t x;
  unsigned k;
  double count;
  double bound;
};

struct PiBoundReport {
  std::uint32_t n_max = 0;
  unsigned k_max = 1;
  std::uint64_t checks = 0;
  std::vector<BoundViolation> violations;
  bool pass() const noexcept { return violations.empty(); }
};

// Closed-form bounds, natural logarithms.
double pi_upper_bound(double x);
double pi_k_upper_bound(double x, unsigned k);

// pi(x) < 20x/log x for 2 <= x <= n_max; the pi_k bound for 2 <= k <= k_max
// and 16 <= x <= n_max. k_max <= 6.
PiBoundReport verify_pi_bounds(const MultiplicityTable& t, unsigned k_max);

struct GapTerm {
  std::uint64_t m;      // 1-based index among numbers with omega <= k
  std::uint32_t value;  // the m-th such number
  std::uint32_t gap;    // distance to the next one
  std::uint32_t running_max;
};

struct GapSeries {
  unsigned k = 0;
  std::vector<GapTerm> terms;
  // Number of strict increases of running_max along the series.
  std::size_t record_count() const;
};

GapSeries multiplicity_gaps(const MultiplicityTable& t, unsigned k);

struct BadRunResult {
  std::uint64_t capital_n = 0;
  std::uint64_t k = 0;
  std::uint64_t start = 0;  // 0 when length == 0
  std::uint64_t length = 0;
};

inline constexpr std::uint64_t kBadRunLimit = 1ULL << 32;

// Longest run of consecutive a in [1, N^2] with no factorization a = x*y,
// x, y <= kN. Ties broken by smallest start.
BadRunResult longest_bad_run(std::uint64_t capital_n, std::uint64_t k);

// True iff a = x*y for some x, y <= bound.
bool has_bounded_factorization(std::uint64_t a, std::uint64_t bound);

struct GrowthRow {
  std::uint64_t capital_n;
  std::uint64_t length;
  double log_n;
};

struct GrowthSeries {
  std::uint64_t k = 0;
  std::vector<GrowthRow> rows;
  // Least-squares fit log(length) ~ slope * log(log N) + intercept over rows
  // with length > 0. Absent with fewer than two usable rows.
  std::optional<double> slope;
  std::optional<double> intercept;
  std::optional<double> residual;  // root mean square residual of the fit
};

GrowthSeries bad_run_growth(std::uint64_t k, std::span<const std::uint64_t> n_list);

}  // namespace ncx::nt
