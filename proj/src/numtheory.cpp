#include "ncx/numtheory.hpp"

#include <algorithm>
#include <cmath>

#include "ncx/error.hpp"

namespace ncx::nt {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are deterministic below 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

unsigned big_omega(std::uint64_t n, unsigned cap) {
  unsigned count = 0;
  std::uint64_t p = 2;
  while (n > 1) {
    if (is_prime(n)) return count + 1;
    while (n % p != 0) p += (p == 2 ? 1 : 2);
    while (n % p == 0) {
      n /= p;
      if (++count > cap) return count;
    }
  }
  return count;
}

MultiplicityTable sieve(std::uint32_t n_max) {
  if (n_max < 2) throw Error(ErrorCode::InvalidArgument, "sieve needs n_max >= 2");
  if (n_max > kSieveLimit) {
    throw Error(ErrorCode::CapacityExceeded, "sieve limit is " + std::to_string(kSieveLimit));
  }
  MultiplicityTable t;
  t.n_max_ = n_max;
  t.omega_.assign(static_cast<std::size_t>(n_max) + 1, 0);
  t.spf_.assign(static_cast<std::size_t>(n_max) + 1, 0);
  t.spf_[1] = 1;
  for (std::uint32_t i = 2; i <= n_max; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = i;
      t.omega_[i] = 1;
      t.primes_.push_back(i);
    }
    const std::uint32_t limit = t.spf_[i];
    for (std::uint32_t p : t.primes_) {
      if (p > limit) break;
      const std::uint64_t m = static_cast<std::uint64_t>(i) * p;
      if (m > n_max) break;
      t.spf_[m] = p;
      t.omega_[m] = static_cast<std::uint8_t>(t.omega_[i] + 1);
    }
  }
  t.max_omega_ = *std::max_element(t.omega_.begin() + 1, t.omega_.end());

  const std::size_t blocks = n_max / MultiplicityTable::kBlock + 1;
  t.block_counts_.assign((t.max_omega_ + 1) * blocks, 0);
  std::vector<std::uint32_t> running(t.max_omega_ + 1, 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (unsigned k = 0; k <= t.max_omega_; ++k) t.block_counts_[k * blocks + b] = running[k];
    const std::uint64_t lo = std::max<std::uint64_t>(1, b * MultiplicityTable::kBlock);
    const std::uint64_t hi = std::min<std::uint64_t>(n_max, (b + 1) * MultiplicityTable::kBlock - 1);
    for (std::uint64_t m = lo; m <= hi; ++m) ++running[t.omega_[m]];
  }
  return t;
}

std::vector<std::uint32_t> MultiplicityTable::divisors(std::uint32_t n) const {
  std::vector<std::uint32_t> out{1};
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    const std::size_t base = out.size();
    std::uint32_t pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t MultiplicityTable::count_exact(std::uint32_t x, unsigned k) const {
  if (x > n_max_) throw Error(ErrorCode::OutOfRange, "x beyond sieve range");
  if (k > max_omega_) return 0;
  const std::size_t blocks = n_max_ / kBlock + 1;
  const std::size_t b = x / kBlock;
  std::uint64_t count = block_counts_[k * blocks + b];
  for (std::uint64_t m = std::max<std::uint64_t>(1, b * kBlock); m <= x; ++m) {
    if (omega_[m] == k) ++count;
  }
  return count;
}

std::uint64_t prime_pi(const MultiplicityTable& t, std::uint32_t x) { return pi_k(t, x, 1); }

std::uint64_t pi_k(const MultiplicityTable& t, std::uint32_t x, unsigned k) {
  if (x < 2 || x > t.n_max()) {
    throw Error(ErrorCode::OutOfRange, "need 2 <= x <= " + std::to_string(t.n_max()));
  }
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k >= 1");
  return t.count_exact(x, k);
}

double pi_upper_bound(double x) { return 20.0 * x / std::log(x); }

double pi_k_upper_bound(double x, unsigned k) {
  const double lx = std::log(x);
  return 20.0 * k * x * std::pow(std::log(lx), static_cast<double>(k) - 1.0) / lx;
}

PiBoundReport verify_pi_bounds(const MultiplicityTable& t, unsigned k_max) {
  if (k_max < 1 || k_max > 6) throw Error(ErrorCode::InvalidArgument, "k_max in [1, 6]");
  PiBoundReport report;
  report.n_max = t.n_max();
  report.k_max = k_max;
  std::vector<std::uint64_t> counts(k_max + 1, 0);
  for (std::uint32_t x = 2; x <= t.n_max(); ++x) {
    const unsigned w = t.omega(x);
    if (w <= k_max) ++counts[w];
    const double dx = x;
    const double lx = std::log(dx);
    const double pi_bound = 20.0 * dx / lx;
    ++report.checks;
    if (!(static_cast<double>(counts[1]) < pi_bound)) {
      report.violations.push_back({x, 1, static_cast<double>(counts[1]), pi_bound});
    }
    if (x < 16) continue;
    const double llx = std::log(lx);
    double power = 1.0;  // (log log x)^(k-1)
    for (unsigned k = 2; k <= k_max; ++k) {
      power *= llx;
      const double bound = 20.0 * k * dx * power / lx;
      ++report.checks;
      if (!(static_cast<double>(counts[k]) < bound)) {
        report.violations.push_back({x, k, static_cast<double>(counts[k]), bound});
      }
    }
  }
  return report;
}

std::size_t GapSeries::record_count() const {
  std::size_t records = 0;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].running_max > terms[i - 1].running_max) ++records;
  }
  return records;
}

GapSeries multiplicity_gaps(const MultiplicityTable& t, unsigned k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k >= 1");
  GapSeries series;
  series.k = k;
  std::uint32_t prev = 1;  // omega(1) = 0 always qualifies
  std::uint64_t index = 1;
  std::uint32_t running = 0;
  for (std::uint32_t v = 2; v <= t.n_max(); ++v) {
    if (t.omega(v) > k) continue;
    const std::uint32_t gap = v - prev;
    running = std::max(running, gap);
    series.terms.push_back({index, prev, gap, running});
    prev = v;
    ++index;
  }
  return series;
}

bool has_bounded_factorization(std::uint64_t a, std::uint64_t bound) {
  for (std::uint64_t x = 1; x <= bound && x * x <= a; ++x) {
    if (a % x == 0 && a / x <= bound) return true;
  }
  return false;
}

BadRunResult longest_bad_run(std::uint64_t capital_n, std::uint64_t k) {
  if (k < 2 || capital_n < 1) throw Error(ErrorCode::InvalidArgument, "need k >= 2 and N >= 1");
  if (capital_n > (1ULL << 16) || capital_n * capital_n > kBadRunLimit) {
    throw Error(ErrorCode::CapacityExceeded, "N^2 exceeds the marking budget");
  }
  const std::uint64_t top = capital_n * capital_n;
  const std::uint64_t bound = k * capital_n;
  std::vector<bool> good(top + 1, false);
  for (std::uint64_t x = 1; x <= bound && x * x <= top; ++x) {
    const std::uint64_t y_max = std::min(bound, top / x);
    for (std::uint64_t y = x; y <= y_max; ++y) good[x * y] = true;
  }

  BadRunResult best{capital_n, k, 0, 0};
  std::uint64_t run_start = 0;
  for (std::uint64_t a = 1; a <= top + 1; ++a) {
    const bool bad = a <= top && !good[a];
    if (bad) {
      if (run_start == 0) run_start = a;
    } else if (run_start != 0) {
      const std::uint64_t len = a - run_start;
      if (len > best.length) {
        best.start = run_start;
        best.length = len;
      }
      run_start = 0;
    }
  }
  return best;
}

GrowthSeries bad_run_growth(std::uint64_t k, std::span<const std::uint64_t> n_list) {
  GrowthSeries series;
  series.k = k;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::uint64_t n : n_list) {
    const BadRunResult r = longest_bad_run(n, k);
    const double log_n = std::log(static_cast<double>(n));
    series.rows.push_back({n, r.length, log_n});
    if (r.length > 0 && n >= 2) {
      xs.push_back(std::log(log_n));
      ys.push_back(std::log(static_cast<double>(r.length)));
    }
  }
  if (xs.size() >= 2) {
    const double cnt = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double denom = cnt * sxx - sx * sx;
    if (std::abs(denom) > 1e-12) {
      const double slope = (cnt * sxy - sx * sy) / denom;
      const double intercept = (sy - slope * sx) / cnt;
      double rss = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (slope * xs[i] + intercept);
        rss += r * r;
      }
      series.slope = slope;
      series.intercept = intercept;
      series.residual = std::sqrt(rss / cnt);
    }
  }
  return series;
}

}  // namespace ncx::nt
