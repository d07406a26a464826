#pragma once

// Hard checks of the proven inequalities on {1,S,+,*} and descriptive scanners
// for the open conjectures. Scanners never fail on counterexamples; they list
// them as findings.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncx/bounds.hpp"
#include "ncx/engine.hpp"
#include "ncx/extremals.hpp"

namespace ncx::lab {

struct BoundViolation {
  std::uint64_t n;
  std::uint64_t cost;
  double bound;
  bool lower;  // which side was violated
};

struct BoundReport {
  std::uint64_t n_lo = 1;
  std::uint64_t n_hi = 0;
  std::uint64_t checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<BoundViolation> violations;  // first kMaxListed only
  bool pass() const noexcept { return violation_count == 0; }
};

inline constexpr std::size_t kMaxListed = 1000;

// Lower bound for every 1 <= n <= n_max, upper bound for 3 <= n <= n_max.
// MetricUnsupported unless the table is on 1s+*.
BoundReport verify_bounds(const ComplexityTable& t);

enum class ScanId { Ratio, Power3, Power2, UkSquare, U2U, Half, Primes, Census, Bounded };

std::string_view to_string(ScanId id) noexcept;

struct ScanRow {
  std::uint64_t index = 0;
  double observed = 0;
  double reference = 0;
  std::string note;
};

struct ScanReport {
  ScanId id;
  std::vector<ScanRow> rows;
  std::vector<ScanRow> counterexamples;
  std::vector<ScanRow> blocks;  // ratio scan: running maxima per dyadic block
  std::vector<std::pair<std::string, double>> summary;
  std::uint64_t counterexample_count = 0;

  bool pass() const noexcept { return counterexample_count == 0; }
};

// u_{k+6} >= 3u_k + 2 and u_{k+4} >= 2u_k + 1 wherever both ends are complete.
ScanReport verify_u2u(std::span<const extremal::ExtremalRecord> records);

// cost[floor(n/2)] >= cost[n] - 4 (symbols) or - 3 (ones), 2 <= n <= n_max.
ScanReport verify_half(const ComplexityTable& t);

// cost[3^j] vs 4j - 1 (symbols) or cost[2^j] vs 2j (ones).
ScanReport scan_power_conjecture(const ComplexityTable& t);

// cost[n] / (5 log4 n) or cost[n] / (3 log3 n) at multiples of stride, plus
// the maximum over every dyadic block [2^j, 2^(j+1)).
ScanReport ratio_series(const ComplexityTable& t, std::uint64_t stride);

inline constexpr int kDeltaMin = -5;
inline constexpr int kDeltaMax = 5;

// Per k, the minimal delta in [-5, 5] with u_k^2 < u_{2k+delta}.
ScanReport scan_square_conjecture(std::span<const extremal::ExtremalRecord> records);

// Primality of u_k and floor(u_k / 2) with aggregate rates.
ScanReport prime_report(std::span<const extremal::ExtremalRecord> records);

// Max cost over 2 <= n <= n_max on 1s+p (symbols); pass iff <= 5.
ScanReport bounded_library_check(const ComplexityTable& t);

// Fraction of n <= N with cost <= K for each N in n_list and 1 <= K <= k_max.
// Rows: index = N, observed = fraction, reference = K.
ScanReport census_scan(const ComplexityTable& t, std::span<const std::uint64_t> n_list, std::uint64_t k_max);

}  // namespace ncx::lab
