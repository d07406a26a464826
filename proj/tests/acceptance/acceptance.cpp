// Acceptance run: one PASS/FAIL line per criterion. Exit status 0 iff all pass.
// Criterion 13 runs first so its peak-RSS reading is not inflated by the rest.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "ncx/bounds.hpp"
#include "ncx/conjecture_lab.hpp"
#include "ncx/engine.hpp"
#include "ncx/error.hpp"
#include "ncx/extremals.hpp"
#include "ncx/numtheory.hpp"

using namespace ncx;

namespace {

// Pinned limits.
constexpr double kOracleSeconds = 120;
constexpr double kPrunedExactSeconds = 60;
constexpr double kBoundsSeconds = 120;
constexpr double kMaximalSeconds = 30;
constexpr double kBadRunSeconds = 60;
constexpr double kBuildSeconds = 60;
constexpr double kRssLimitMiB = 200;
constexpr std::uint64_t kMillion = 1'000'000;

const SymbolLibrary kArith(LibraryId::OneSuccPlusTimes);

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double peak_rss_mib() {
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return static_cast<double>(ru.ru_maxrss) / 1024.0;  // Linux reports KiB
}

bool power_of(std::uint64_t n, std::uint64_t base) {
  while (n % base == 0) n /= base;
  return n == 1;
}

bool positive_power_of(std::uint64_t n, std::uint64_t base) { return n > 1 && power_of(n, base); }

bool expressible(std::uint64_t a, std::uint64_t bound) {
  for (std::uint64_t x = 1; x <= bound && x * x <= a; ++x) {
    if (a % x == 0 && a / x <= bound) return true;
  }
  return false;
}

// Tables shared by several criteria, built on first use.
struct Tables {
  std::optional<ComplexityTable> symbols, ones;
  const ComplexityTable& get(CostMetric m) {
    auto& slot = m == CostMetric::SymbolCount ? symbols : ones;
    if (!slot) slot.emplace(build_table(kArith, m, kMillion, BuildMode::Pruned));
    return *slot;
  }
} tables;

Outcome performance() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  ComplexityTable t = build_table(kArith, CostMetric::SymbolCount, kMillion, BuildMode::Pruned);
  const double build = seconds_since(t0);
  const double rss = peak_rss_mib();
  const auto bytes = encode_table(t);
  const ComplexityTable back = decode_table(bytes);
  const bool identical = back == t && encode_table(back) == bytes;
  o.note << "build " << build << " s, peak RSS " << rss << " MiB, NCX1 " << bytes.size() << " bytes";
  o.require(build < kBuildSeconds, "build time");
  o.require(rss < kRssLimitMiB, "resident memory");
  o.require(identical, "NCX1 round trip");
  tables.symbols.emplace(std::move(t));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  struct Case {
    LibraryId id;
    std::uint64_t n_max;
    bool ones;
  };
  const Case cases[] = {
      {LibraryId::OneSucc, 300, true},           {LibraryId::OneSuccPlus, 300, true},
      {LibraryId::OneSuccTimes, 300, true},      {LibraryId::OneSuccPlusTimes, 300, true},
      {LibraryId::OneSuccTimesPrimes, 1000, false}, {LibraryId::OneSuccPlusPrimes, 1000, false},
  };
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t compared = 0, mismatched = 0;
  for (const Case& c : cases) {
    const SymbolLibrary lib(c.id);
    for (CostMetric metric : {CostMetric::SymbolCount, CostMetric::OnesCount}) {
      if (metric == CostMetric::OnesCount && !c.ones) continue;
      const auto table = build_table(lib, metric, c.n_max, BuildMode::Pruned);
      const auto oracle = oracle_costs(lib, metric, c.n_max);
      for (std::uint64_t n = 1; n <= c.n_max; ++n) {
        ++compared;
        mismatched += table[n] != oracle[n];
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.note << compared << " values compared, " << mismatched << " mismatches, " << elapsed << " s";
  o.require(mismatched == 0, "exact match");
  o.require(elapsed < kOracleSeconds, "time");
  return o;
}

Outcome pruned_exact() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (CostMetric metric : {CostMetric::SymbolCount, CostMetric::OnesCount}) {
    const auto exact = build_table(kArith, metric, 100'000, BuildMode::Exact);
    const auto pruned = build_table(kArith, metric, 100'000, BuildMode::Pruned);
    const bool same = std::equal(exact.costs().begin(), exact.costs().end(), pruned.costs().begin());
    o.require(same && exact == pruned, std::string(to_string(metric)) + " tables differ");
  }
  const double elapsed = seconds_since(t0);
  o.note << "both metrics to 1e5 identical, " << elapsed << " s";
  o.require(elapsed < kPrunedExactSeconds, "time");
  return o;
}

Outcome proven_bounds() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  tables.ones.reset();
  for (CostMetric metric : {CostMetric::SymbolCount, CostMetric::OnesCount}) {
    const auto& t = tables.get(metric);
    const auto r = lab::verify_bounds(t);
    o.note << to_string(metric) << ": " << r.checked << " checked, " << r.violation_count << " violations; ";
    o.require(r.pass(), std::string(to_string(metric)) + " bound violated");
  }
  const double elapsed = seconds_since(t0);
  o.note << elapsed << " s";
  o.require(elapsed < kBoundsSeconds, "time");
  return o;
}

Outcome u2u_and_half() {
  Outcome o;
  const auto& s = tables.get(CostMetric::SymbolCount);
  const auto u2u = lab::verify_u2u(extremal::minimal_elements(s));
  o.note << "u2u rows " << u2u.rows.size() << ", violations " << u2u.counterexample_count;
  o.require(u2u.pass() && !u2u.rows.empty(), "u2u");
  for (CostMetric metric : {CostMetric::SymbolCount, CostMetric::OnesCount}) {
    const auto half = lab::verify_half(tables.get(metric));
    o.note << "; halving (" << to_string(metric) << ") violations " << half.counterexample_count;
    o.require(half.pass(), "halving");
  }
  return o;
}

Outcome maximal() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto limit = *extremal::certifying_n_max(kArith, CostMetric::SymbolCount, 30);
  const auto t = build_table(kArith, CostMetric::SymbolCount, limit, BuildMode::Pruned);
  const auto m = extremal::maximal_elements(t, 30);
  std::uint64_t closed_bad = 0;
  for (std::uint64_t k = 11; k <= 30; ++k) {
    closed_bad += !(m[k - 1].m_complete && m[k - 1].m_k == extremal::maximal_closed_form(k));
  }
  const auto oracle = oracle_costs(kArith, CostMetric::SymbolCount, 300);
  std::uint64_t small_bad = 0;
  for (std::uint64_t k = 1; k <= 10; ++k) {
    std::uint64_t expect = 0;
    for (std::uint64_t n = 1; n <= 300; ++n) {
      if (oracle[n] == k) expect = n;
    }
    small_bad += !(m[k - 1].m_complete && m[k - 1].m_k == expect);
  }
  std::uint64_t form_bad = 0;
  for (std::uint64_t k = 11; k <= 20; ++k) form_bad += !extremal::mk_form_check(t, k);
  const double elapsed = seconds_since(t0);
  o.note << "closed form mismatches " << closed_bad << ", small-k mismatches " << small_bad
         << ", product-form failures " << form_bad << ", M_30 = " << *m[29].m_k << ", " << elapsed << " s";
  o.require(closed_bad == 0 && small_bad == 0 && form_bad == 0, "exact values");
  o.require(elapsed < kMaximalSeconds, "time");
  return o;
}

Outcome structure() {
  Outcome o;
  struct Case {
    SymbolLibrary lib;
    CostMetric metric;
    std::uint64_t n_max;
  };
  // {1,S} and {1,S,+} have cost[n] = n; their tables stop below the 16-bit cost ceiling.
  const Case cases[] = {
      {SymbolLibrary(LibraryId::OneSucc), CostMetric::SymbolCount, 30000},
      {SymbolLibrary(LibraryId::OneSucc), CostMetric::OnesCount, 30000},
      {SymbolLibrary(LibraryId::OneSuccPlus), CostMetric::SymbolCount, 30000},
      {SymbolLibrary(LibraryId::OneSuccPlus), CostMetric::OnesCount, 30000},
      {SymbolLibrary(LibraryId::OneSuccTimes), CostMetric::SymbolCount, kMillion},
      {SymbolLibrary(LibraryId::OneSuccTimes), CostMetric::OnesCount, kMillion},
      {kArith, CostMetric::SymbolCount, kMillion},
      {kArith, CostMetric::OnesCount, kMillion},
      {SymbolLibrary(LibraryId::OneSuccTimesPrimes), CostMetric::SymbolCount, kMillion},
      {SymbolLibrary(LibraryId::OneSuccPlusPrimes), CostMetric::SymbolCount, kMillion},
      {SymbolLibrary(LibraryId::OneSuccTimesPm, 2), CostMetric::SymbolCount, kMillion},
  };
  std::uint64_t tables_checked = 0, violations = 0;
  for (const Case& c : cases) {
    const bool shared = c.lib == kArith;
    std::optional<ComplexityTable> own;
    if (!shared) own.emplace(build_table(c.lib, c.metric, c.n_max, BuildMode::Pruned));
    const ComplexityTable& t = shared ? tables.get(c.metric) : *own;
    const auto report = extremal::check_structure(t);
    ++tables_checked;
    for (const auto& clause : report.clauses) {
      if (clause.applicable) violations += clause.violations;
    }
    o.require(report.pass(), std::string(c.lib.flag()) + " " + std::string(to_string(c.metric)));
  }
  o.note << tables_checked << " tables, " << violations << " violations";
  return o;
}

Outcome defects() {
  Outcome o;
  const auto& s = tables.get(CostMetric::SymbolCount);
  const auto& w = tables.get(CostMetric::OnesCount);
  std::uint64_t zero_bad = 0, zero_s = 0, zero_o = 0, prime_bad = 0, primes = 0;
  std::ostringstream offenders;
  for (std::uint64_t n = 1; n <= kMillion; ++n) {
    const bool zs = extremal::defect(s, n).zero;
    const bool zo = extremal::defect(w, n).zero;
    zero_s += zs;
    zero_o += zo;
    zero_bad += (zs != positive_power_of(n, 4)) + (zo != positive_power_of(n, 3));
  }
  const auto sieve = nt::sieve(kMillion);
  for (std::uint32_t p : sieve.primes()) {
    if (p <= 16) continue;
    ++primes;
    const double d = extremal::defect(s, p).defect;
    if (d < 0.5 || (!power_of(p - 1, 2) && !(d > 1.0))) {
      ++prime_bad;
      offenders << " p=" << p << " defect=" << d;
    }
  }
  o.note << "zero-defect n: " << zero_s << " (symbols), " << zero_o << " (ones), mismatches " << zero_bad << "; "
         << primes << " primes, violations " << prime_bad << offenders.str();
  o.require(zero_bad == 0, "zero-defect characterization");
  o.require(prime_bad == 0, "prime defect");
  return o;
}

Outcome scanners() {
  Outcome o;
  const auto& s = tables.get(CostMetric::SymbolCount);
  const auto& w = tables.get(CostMetric::OnesCount);
  const auto ratio = lab::ratio_series(s, 1000);
  const auto ratio_ones = lab::ratio_series(w, 1000);
  const auto square = lab::scan_square_conjecture(extremal::minimal_elements(s));
  const auto p3 = lab::scan_power_conjecture(s);
  const auto p2 = lab::scan_power_conjecture(w);
  auto covers = [](const lab::ScanReport& r, std::uint64_t j_max) {
    std::uint64_t seen = 0;
    for (const auto& row : r.rows) seen += row.index <= j_max;
    return seen == j_max;
  };
  o.require(!ratio.rows.empty() && !ratio_ones.rows.empty() && !square.rows.empty(), "scanner output");
  o.require(covers(p3, 12), "3^j rows for j <= 12");
  o.require(covers(p2, 19), "2^j rows for j <= 19");
  double last_block = ratio.blocks.empty() ? 0 : ratio.blocks.back().observed;
  o.note << "3^j deviations " << p3.counterexample_count << " (j <= " << p3.rows.size() << "), 2^j deviations "
         << p2.counterexample_count << " (j <= " << p2.rows.size() << "), last dyadic ratio max " << last_block;
  for (const auto& [key, value] : square.summary) o.note << ", " << key << " " << value;
  for (const auto& c : p3.counterexamples) o.note << "; finding: cost[3^" << c.index << "] = " << c.observed;
  for (const auto& c : p2.counterexamples) o.note << "; finding: cost[2^" << c.index << "] = " << c.observed;
  return o;
}

Outcome prime_library() {
  Outcome o;
  const SymbolLibrary lib(LibraryId::OneSuccTimesPrimes);
  const auto t = build_table(lib, CostMetric::SymbolCount, 10 * kMillion, BuildMode::Pruned);
  const auto u = extremal::minimal_elements(t);
  bool increasing = true;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (!u[k].u_k) increasing = false;
    if (k > 0 && u[k].u_k && u[k - 1].u_k && !(*u[k].u_k > *u[k - 1].u_k)) increasing = false;
  }
  const auto report = extremal::check_structure(t);
  const std::uint64_t ns[] = {10'000, 100'000, kMillion};
  const auto census = lab::census_scan(t, ns, t.max_cost());
  o.note << "max cost " << t.max_cost() << ", u_k =";
  for (const auto& r : u) o.note << " " << *r.u_k;
  o.note << "; census non-decreasing cells " << census.counterexample_count;
  o.require(t.max_cost() >= 5, "max cost >= 5");
  o.require(increasing, "u_k strictly increasing");
  o.require(report.pass(), "no skipped class / structure");
  o.require(census.pass(), "census decreasing");
  return o;
}

Outcome bounded() {
  Outcome o;
  const auto t = build_table(SymbolLibrary(LibraryId::OneSuccPlusPrimes), CostMetric::SymbolCount, kMillion,
                             BuildMode::Pruned);
  const auto r = lab::bounded_library_check(t);
  for (const auto& [key, value] : r.summary) o.note << key << " " << value << " ";
  o.require(r.pass(), "max cost <= 5");
  return o;
}

Outcome number_theory() {
  Outcome o;
  const auto t = nt::sieve(kMillion);
  const auto r = nt::verify_pi_bounds(t, 4);
  o.require(r.pass(), "pi bounds");
  std::mt19937_64 rng(1000);
  std::uint64_t partition_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint32_t x = 2 + static_cast<std::uint32_t>(rng() % (kMillion - 1));
    std::uint64_t sum = 1;
    for (unsigned k = 1; k <= t.max_omega(); ++k) sum += nt::pi_k(t, x, k);
    partition_bad += sum != x;
  }
  o.require(partition_bad == 0, "pi_k partition");
  o.note << r.checks << " bound checks, " << r.violations.size() << " violations; partition mismatches "
         << partition_bad << "; gap records";
  for (unsigned k = 1; k <= 3; ++k) {
    const auto g = nt::multiplicity_gaps(t, k);
    bool monotone = true;
    std::uint32_t prev = 0;
    for (const auto& term : g.terms) {
      monotone = monotone && term.running_max >= prev;
      prev = term.running_max;
    }
    o.note << " k=" << k << ":" << g.record_count() << " (max " << prev << ")";
    o.require(monotone && g.record_count() >= 2, "gap maxima grow for k=" + std::to_string(k));
  }
  return o;
}

Outcome bad_runs() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t cases = 0, mismatches = 0;
  for (std::uint64_t n = 2; n <= 64; ++n) {
    for (std::uint64_t k : {2, 3}) {
      const auto got = nt::longest_bad_run(n, k);
      std::uint64_t best_start = 0, best_len = 0, start = 0, len = 0;
      for (std::uint64_t a = 1; a <= n * n; ++a) {
        if (expressible(a, k * n)) {
          len = 0;
          continue;
        }
        if (len++ == 0) start = a;
        if (len > best_len) {
          best_len = len;
          best_start = start;
        }
      }
      ++cases;
      mismatches += got.length != best_len || (best_len > 0 && got.start != best_start);
    }
  }
  const double elapsed = seconds_since(t0);
  o.note << cases << " (N, k) pairs, " << mismatches << " mismatches, " << elapsed << " s";
  o.require(mismatches == 0, "oracle agreement");
  o.require(elapsed < kBadRunSeconds, "time");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {13, "performance and NCX1 round trip", performance},
      {1, "DP equals exhaustive oracle", oracle_equivalence},
      {2, "pruned build equals exact build", pruned_exact},
      {3, "logarithmic upper and lower bounds", proven_bounds},
      {4, "u_k growth lemma and halving corollary", u2u_and_half},
      {5, "maximal elements", maximal},
      {6, "structure suite", structure},
      {7, "defect characterization", defects},
      {8, "conjecture scanners", scanners},
      {9, "prime library unboundedness echo", prime_library},
      {10, "bounded additive prime library", bounded},
      {11, "number theory suite", number_theory},
      {12, "bad-run oracle", bad_runs},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.note << "exception: " << e.what();
    }
    failures += !out.pass;
    std::printf("%s criterion %2d: %s -- %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, out.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
