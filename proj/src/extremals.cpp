#include "ncx/extremals.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "ncx/bounds.hpp"
#include "ncx/error.hpp"
#include "ncx/numtheory.hpp"

namespace ncx::extremal {

std::vector<ExtremalRecord> minimal_elements(const ComplexityTable& t) {
  const cost_t top = t.max_cost();
  std::vector<ExtremalRecord> records(top);
  for (std::uint64_t k = 1; k <= top; ++k) records[k - 1].k = k;
  for (std::uint64_t n = 1; n <= t.n_max(); ++n) {
    auto& r = records[t[n] - 1];
    if (!r.u_k) {
      r.u_k = n;
      r.u_complete = true;  // every smaller n is inside the table
    }
  }
  return records;
}

std::optional<std::uint64_t> certifying_n_max(const SymbolLibrary& lib, CostMetric metric, std::uint64_t k) {
  auto limit = lab::certification_limit(lib, metric, static_cast<std::int64_t>(k));
  if (limit && *limit < 1) return std::uint64_t{1};
  return limit;
}

std::vector<ExtremalRecord> maximal_elements(const ComplexityTable& t, std::uint64_t k_max) {
  if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "k_max >= 1");
  std::vector<ExtremalRecord> records(k_max);
  for (std::uint64_t k = 1; k <= k_max; ++k) records[k - 1].k = k;
  for (std::uint64_t n = t.n_max(); n >= 1; --n) {
    const std::uint64_t c = t[n];
    if (c <= k_max && !records[c - 1].m_k) records[c - 1].m_k = n;
  }
  for (auto& r : records) {
    const auto limit = certifying_n_max(t.library(), t.metric(), r.k);
    r.m_complete = limit && t.n_max() >= *limit;
    if (r.m_complete && !r.m_k) r.m_complete = false;
  }
  const auto top_limit = certifying_n_max(t.library(), t.metric(), k_max);
  if (top_limit && !records.back().m_complete) {
    throw Error(ErrorCode::RangeInsufficient, "certifying M_" + std::to_string(k_max) + " needs n_max >= " +
                                                  std::to_string(*top_limit));
  }
  return records;
}

std::uint64_t maximal_closed_form(std::uint64_t k) {
  if (k < 11) throw Error(ErrorCode::BelowThreshold, "closed form holds for k >= 11");
  const std::uint64_t m = (k + 1 + 4) / 5;  // smallest m with k <= 5m - 1
  const std::uint64_t r = 5 * m - 1 - k;
  std::uint64_t value = 1;
  auto times = [&](std::uint64_t f) {
    if (__builtin_mul_overflow(value, f, &value)) {
      throw Error(ErrorCode::CapacityExceeded, "M_k exceeds 64 bits");
    }
  };
  for (std::uint64_t i = 0; i < r; ++i) times(3);
  for (std::uint64_t i = 0; i < m - r; ++i) times(4);
  return value;
}

DefectValue defect(const ComplexityTable& t, std::uint64_t n) {
  if (t.library().id() != LibraryId::OneSuccPlusTimes) {
    throw Error(ErrorCode::MetricUnsupported, "defect is defined on 1s+* tables");
  }
  const std::int64_t c = complexity(t, n);
  const lab::LogForm form = lab::lower_form(t.metric());
  const bool zero = lab::compare_to_form(c, form, n) == 0;
  const double value = zero ? 0.0 : static_cast<double>(c) - lab::lower_bound(n, t.metric());
  return {n, value, zero};
}

bool StructureReport::pass() const {
  for (const auto& c : clauses) {
    if (c.applicable && !c.pass) return false;
  }
  return true;
}

namespace {

// c/(c-1) (c^(e) - 1) style sums in long double; overflow saturates to infinity.
long double geometric_bound(long double c, long double scale, std::uint64_t exponent) {
  return scale * (std::pow(c, static_cast<long double>(exponent)) - 1.0L) / (c - 1.0L);
}

ClauseResult clause(std::string name) {
  ClauseResult r;
  r.name = std::move(name);
  return r;
}

void fail(ClauseResult& r, const std::string& detail) {
  ++r.violations;
  r.pass = false;
  if (r.detail.empty()) r.detail = detail;
}

}  // namespace

StructureReport check_structure(const ComplexityTable& t) {
  StructureReport report;
  const auto records = minimal_elements(t);

  ClauseResult below = clause("below_uk");
  ClauseResult predecessor = clause("predecessor_of_uk");
  ClauseResult contiguous = clause("no_skipped_class");
  {
    std::uint64_t running_max = 0;  // max cost over [1, n-1]
    std::size_t next = 0;
    for (std::uint64_t n = 1; n <= t.n_max() && next < records.size(); ++n) {
      while (next < records.size() && records[next].u_k && *records[next].u_k == n) {
        ++below.checked;
        if (running_max >= records[next].k) fail(below, "n < u_" + std::to_string(records[next].k));
        ++next;
      }
      running_max = std::max<std::uint64_t>(running_max, t[n]);
    }
  }
  for (const auto& r : records) {
    ++contiguous.checked;
    if (!r.u_k) fail(contiguous, "class " + std::to_string(r.k) + " skipped");
    if (r.k >= 2 && r.u_k) {
      ++predecessor.checked;
      if (t[*r.u_k - 1] != r.k - 1) fail(predecessor, "u_" + std::to_string(r.k));
    }
  }
  report.clauses.push_back(below);
  report.clauses.push_back(predecessor);
  report.clauses.push_back(contiguous);

  const SymbolLibrary& lib = t.library();
  const bool counting_applies = lib.finite() && t.metric() == CostMetric::SymbolCount;
  const long double c = lib.symbol_count();

  ClauseResult log_count = clause("log_density_count");
  ClauseResult term_count = clause("term_count");
  log_count.applicable = term_count.applicable = counting_applies;
  if (counting_applies) {
    const std::uint64_t n = t.n_max();
    const long double log_n = std::log(static_cast<long double>(n));
    for (double eps : {0.1, 0.25, 0.5}) {
      const long double threshold = (1.0L - eps) * log_n / std::log(c);
      std::uint64_t count = 0;
      for (std::uint64_t x = 1; x <= n; ++x) {
        if (t[x] <= threshold) ++count;
      }
      const auto k = static_cast<std::uint64_t>(std::floor(threshold));
      const long double bound = geometric_bound(c, c, k + 2);
      ++log_count.checked;
      if (static_cast<long double>(count) > bound) {
        fail(log_count, "eps=" + std::to_string(eps) + " count=" + std::to_string(count));
      }
    }
    std::vector<std::uint64_t> at_most(t.max_cost() + 1, 0);
    for (std::uint64_t x = 1; x <= n; ++x) ++at_most[t[x]];
    std::uint64_t cumulative = 0;
    for (std::uint64_t k = 1; k < at_most.size(); ++k) {
      cumulative += at_most[k];
      const long double bound = geometric_bound(c, c, k + 1);
      ++term_count.checked;
      if (static_cast<long double>(cumulative) > bound) fail(term_count, "k=" + std::to_string(k));
    }
  }
  report.clauses.push_back(log_count);
  report.clauses.push_back(term_count);

  // Primes under {1,S,*}: a prime has no nontrivial product form, so cost[p]
  // should be cost[p-1] + 1; the equal-cost reading is counted alongside.
  if (lib.id() == LibraryId::OneSuccTimes && t.n_max() >= 2) {
    ClauseResult primes = clause("prime_cost_vs_predecessor");
    std::uint64_t equal = 0;
    for (std::uint64_t p = 2; p <= t.n_max(); ++p) {
      if (!nt::is_prime(p)) continue;
      ++primes.checked;
      if (t[p] == t[p - 1]) ++equal;
      if (t[p] != t[p - 1] + 1) ++primes.violations;
    }
    primes.pass = primes.violations == 0;
    primes.detail = "cost[p]=cost[p-1]+1 for " + std::to_string(primes.checked - primes.violations) +
                    " primes, cost[p]=cost[p-1] for " + std::to_string(equal);
    report.observations.push_back(primes);
  }

  // At most four consecutive integers are minimal elements (k > 3), and an odd
  // u_k has u_{k+3} > u_k + 3 (k > 3).
  {
    ClauseResult consecutive = clause("consecutive_minimals");
    ClauseResult odd = clause("odd_uk_gap");
    std::uint64_t streak = 1;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      if (!r.u_k || r.k <= 3) continue;
      if (i > 0 && records[i - 1].u_k && records[i - 1].k > 3 && *records[i - 1].u_k + 1 == *r.u_k) {
        ++streak;
      } else {
        streak = 1;
      }
      ++consecutive.checked;
      if (streak > 4) fail(consecutive, "run ending at u_" + std::to_string(r.k));
      if (*r.u_k % 2 == 1 && i + 3 < records.size() && records[i + 3].u_k) {
        ++odd.checked;
        if (!(*records[i + 3].u_k > *r.u_k + 3)) fail(odd, "u_" + std::to_string(r.k));
      }
    }
    report.observations.push_back(consecutive);
    report.observations.push_back(odd);
  }
  return report;
}

namespace {

// Factor values of a pure product of successor chains, or nullopt.
bool collect_factors(const Term& t, std::array<unsigned, 8>& counts) {
  if (t.root().kind == NodeKind::Times) {
    for (const Term& child : t.children()) {
      if (!collect_factors(child, counts)) return false;
    }
    return true;
  }
  const auto nodes = t.nodes();
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i].kind != NodeKind::Succ) return false;
  }
  if (nodes.back().kind != NodeKind::One) return false;
  const std::size_t value = nodes.size();  // S^(len-1) 1
  if (value < 2 || value > 6) return false;
  ++counts[value];
  return true;
}

bool admissible_product(const Term& t) {
  std::array<unsigned, 8> counts{};
  if (!collect_factors(t, counts)) return false;
  if (counts[3] > 4) return false;
  if (counts[2] > 1 || counts[5] > 1 || counts[6] > 1) return false;
  const auto has = [&](int v) { return counts[v] > 0; };
  if ((has(2) && has(5)) || (has(2) && has(6)) || (has(5) && has(6))) return false;
  return true;
}

}  // namespace

bool mk_form_check(const ComplexityTable& t, std::uint64_t k) {
  if (t.library().id() != LibraryId::OneSuccPlusTimes || t.metric() != CostMetric::SymbolCount) {
    throw Error(ErrorCode::MetricUnsupported, "M_k structure is stated for symbols on 1s+*");
  }
  const auto records = maximal_elements(t, k);
  const std::uint64_t m = *records.back().m_k;
  const Enumeration all = enumerate_optimal(t.library(), t.metric(), m, 1'000'000);
  for (const Term& term : all.terms) {
    if (admissible_product(term)) return true;
  }
  if (all.truncated) {
    throw Error(ErrorCode::SearchBudgetExceeded, "optimal presentations of M_k truncated");
  }
  return false;
}

}  // namespace ncx::extremal
