#include "ncx/conjecture_lab.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "ncx/error.hpp"
#include "ncx/numtheory.hpp"

namespace ncx::lab {

std::string_view to_string(ScanId id) noexcept {
  switch (id) {
    case ScanId::Ratio: return "ratio";
    case ScanId::Power3: return "power3";
    case ScanId::Power2: return "power2";
    case ScanId::UkSquare: return "uksquare";
    case ScanId::U2U: return "u2u";
    case ScanId::Half: return "half";
    case ScanId::Primes: return "primes";
    case ScanId::Census: return "census";
    case ScanId::Bounded: return "bounded";
  }
  return "unknown";
}

namespace {

void require_arithmetic(const ComplexityTable& t, std::string_view what) {
  if (t.library().id() != LibraryId::OneSuccPlusTimes) {
    throw Error(ErrorCode::MetricUnsupported, std::string(what) + " is stated for 1s+* tables");
  }
}

void record(ScanReport& r, ScanRow row) {
  ++r.counterexample_count;
  if (r.counterexamples.size() < kMaxListed) r.counterexamples.push_back(std::move(row));
}

}  // namespace

BoundReport verify_bounds(const ComplexityTable& t) {
  require_arithmetic(t, "the logarithmic bounds");
  const LogForm lower = lower_form(t.metric());
  const LogForm upper = upper_form(t.metric());
  BoundReport report;
  report.n_hi = t.n_max();
  auto violate = [&](std::uint64_t n, bool is_lower) {
    ++report.violation_count;
    if (report.violations.size() < kMaxListed) {
      const LogForm& f = is_lower ? lower : upper;
      report.violations.push_back({n, t[n], f.eval(static_cast<double>(n)), is_lower});
    }
  };
  for (std::uint64_t n = 1; n <= t.n_max(); ++n) {
    const std::int64_t c = t[n];
    ++report.checked;
    if (compare_to_form(c, lower, n) < 0) violate(n, true);
    if (n >= 3 && compare_to_form(c, upper, n) > 0) violate(n, false);
  }
  return report;
}

ScanReport verify_u2u(std::span<const extremal::ExtremalRecord> records) {
  ScanReport r{ScanId::U2U, {}, {}, {}, {}, 0};
  auto find = [&](std::uint64_t k) -> std::optional<std::uint64_t> {
    for (const auto& rec : records) {
      if (rec.k == k && rec.u_k && rec.u_complete) return rec.u_k;
    }
    return std::nullopt;
  };
  for (const auto& rec : records) {
    if (!rec.u_k || !rec.u_complete) continue;
    const std::uint64_t u = *rec.u_k;
    if (auto far = find(rec.k + 6)) {
      ScanRow row{rec.k, static_cast<double>(*far), static_cast<double>(3 * u + 2), "u_{k+6} >= 3u_k+2"};
      if (*far < 3 * u + 2) record(r, row);
      r.rows.push_back(std::move(row));
    }
    if (auto near = find(rec.k + 4)) {
      ScanRow row{rec.k, static_cast<double>(*near), static_cast<double>(2 * u + 1), "u_{k+4} >= 2u_k+1"};
      if (*near < 2 * u + 1) record(r, row);
      r.rows.push_back(std::move(row));
    }
  }
  return r;
}

ScanReport verify_half(const ComplexityTable& t) {
  require_arithmetic(t, "the halving corollary");
  const int offset = t.metric() == CostMetric::SymbolCount ? 4 : 3;
  ScanReport r{ScanId::Half, {}, {}, {}, {}, 0};
  std::uint64_t checked = 0;
  for (std::uint64_t n = 2; n <= t.n_max(); ++n) {
    ++checked;
    const int lhs = t[n / 2];
    const int rhs = static_cast<int>(t[n]) - offset;
    if (lhs < rhs) record(r, {n, static_cast<double>(lhs), static_cast<double>(rhs), "cost[n/2] < cost[n]-offset"});
  }
  r.summary.emplace_back("checked", static_cast<double>(checked));
  r.summary.emplace_back("offset", offset);
  return r;
}

ScanReport scan_power_conjecture(const ComplexityTable& t) {
  require_arithmetic(t, "the power conjecture");
  const bool symbols = t.metric() == CostMetric::SymbolCount;
  const std::uint64_t base = symbols ? 3 : 2;
  ScanReport r{symbols ? ScanId::Power3 : ScanId::Power2, {}, {}, {}, {}, 0};
  std::uint64_t power = base;
  for (std::uint64_t j = 1; power <= t.n_max(); ++j) {
    const double expected = symbols ? 4.0 * j - 1.0 : 2.0 * j;
    ScanRow row{j, static_cast<double>(t[power]), expected, std::to_string(power)};
    if (row.observed != expected) record(r, row);
    r.rows.push_back(std::move(row));
    if (power > t.n_max() / base) break;
    power *= base;
  }
  return r;
}

ScanReport ratio_series(const ComplexityTable& t, std::uint64_t stride) {
  require_arithmetic(t, "the ratio series");
  if (stride < 1) throw Error(ErrorCode::InvalidArgument, "stride >= 1");
  const bool symbols = t.metric() == CostMetric::SymbolCount;
  const double coef = symbols ? 5.0 / std::log(4.0) : 3.0 / std::log(3.0);
  auto ratio = [&](std::uint64_t n) { return t[n] / (coef * std::log(static_cast<double>(n))); };

  ScanReport r{ScanId::Ratio, {}, {}, {}, {}, 0};
  for (std::uint64_t n = stride; n <= t.n_max(); n += stride) {
    if (n < 2) continue;
    r.rows.push_back({n, ratio(n), 1.0, ""});
  }
  for (std::uint64_t lo = 2; lo <= t.n_max(); lo *= 2) {
    const std::uint64_t hi = std::min(t.n_max(), 2 * lo - 1);
    double best = -1;
    std::uint64_t arg = lo;
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const double v = ratio(n);
      if (v > best) {
        best = v;
        arg = n;
      }
    }
    r.blocks.push_back({lo, best, static_cast<double>(arg), "block max; reference = argmax"});
    if (lo > t.n_max() / 2) break;
  }
  return r;
}

ScanReport scan_square_conjecture(std::span<const extremal::ExtremalRecord> records) {
  ScanReport r{ScanId::UkSquare, {}, {}, {}, {}, 0};
  std::map<std::uint64_t, std::uint64_t> u;
  for (const auto& rec : records) {
    if (rec.u_k && rec.u_complete) u[rec.k] = *rec.u_k;
  }
  int worst = std::numeric_limits<int>::min();
  std::uint64_t complete_rows = 0;
  for (const auto& [k, uk] : u) {
    const double square = static_cast<double>(uk) * static_cast<double>(uk);
    ScanRow row{k, std::numeric_limits<double>::quiet_NaN(), square, "incomplete"};
    // u is increasing in k, so the condition is monotone in delta.
    const long long low_index = 2LL * static_cast<long long>(k) + kDeltaMin;
    if (low_index >= 1 && u.count(low_index) && static_cast<double>(u[low_index]) > square) {
      row.note = "below-window";
      row.observed = kDeltaMin;
    } else {
      for (int delta = kDeltaMin; delta <= kDeltaMax; ++delta) {
        const long long index = 2LL * static_cast<long long>(k) + delta;
        if (index < 1) continue;
        auto it = u.find(static_cast<std::uint64_t>(index));
        if (it == u.end()) break;  // beyond the recorded range
        if (static_cast<double>(it->second) > square) {
          row.observed = delta;
          row.note = "complete";
          break;
        }
        if (delta == kDeltaMax) row.note = "above-window";
      }
    }
    if (row.note == "complete" || row.note == "below-window") {
      ++complete_rows;
      worst = std::max(worst, static_cast<int>(row.observed));
    }
    if (row.note == "above-window") record(r, row);
    r.rows.push_back(std::move(row));
  }
  r.summary.emplace_back("complete_rows", static_cast<double>(complete_rows));
  r.summary.emplace_back("max_minimal_delta",
                         complete_rows ? static_cast<double>(worst) : std::numeric_limits<double>::quiet_NaN());
  return r;
}

ScanReport prime_report(std::span<const extremal::ExtremalRecord> records) {
  ScanReport r{ScanId::Primes, {}, {}, {}, {}, 0};
  std::uint64_t total = 0, u_prime = 0, half_prime = 0;
  for (const auto& rec : records) {
    if (!rec.u_k) continue;
    const bool p = nt::is_prime(*rec.u_k);
    const bool h = nt::is_prime(*rec.u_k / 2);
    ++total;
    u_prime += p;
    half_prime += h;
    r.rows.push_back({rec.k, p ? 1.0 : 0.0, h ? 1.0 : 0.0, std::to_string(*rec.u_k)});
  }
  const double denom = total ? static_cast<double>(total) : 1.0;
  r.summary.emplace_back("count", static_cast<double>(total));
  r.summary.emplace_back("u_prime_rate", u_prime / denom);
  r.summary.emplace_back("half_prime_rate", half_prime / denom);
  return r;
}

ScanReport bounded_library_check(const ComplexityTable& t) {
  if (t.library().id() != LibraryId::OneSuccPlusPrimes || t.metric() != CostMetric::SymbolCount) {
    throw Error(ErrorCode::MetricUnsupported, "bounded check is for 1s+p with the symbol metric");
  }
  ScanReport r{ScanId::Bounded, {}, {}, {}, {}, 0};
  std::uint64_t worst = 0, arg = 1;
  std::vector<std::uint64_t> histogram;
  for (std::uint64_t n = 2; n <= t.n_max(); ++n) {
    if (t[n] >= histogram.size()) histogram.resize(t[n] + 1, 0);
    ++histogram[t[n]];
    if (t[n] > worst) {
      worst = t[n];
      arg = n;
    }
  }
  for (std::uint64_t c = 1; c < histogram.size(); ++c) {
    r.rows.push_back({c, static_cast<double>(histogram[c]), 0.0, "numbers with this cost"});
  }
  r.summary.emplace_back("max_cost", static_cast<double>(worst));
  r.summary.emplace_back("first_argmax", static_cast<double>(arg));
  if (worst > 5) record(r, {arg, static_cast<double>(worst), 5.0, "cost above 5"});
  return r;
}

ScanReport census_scan(const ComplexityTable& t, std::span<const std::uint64_t> n_list, std::uint64_t k_max) {
  ScanReport r{ScanId::Census, {}, {}, {}, {}, 0};
  std::vector<std::uint64_t> sorted(n_list.begin(), n_list.end());
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.back() > t.n_max()) {
    throw Error(ErrorCode::OutOfRange, "census N beyond the table");
  }
  std::vector<std::vector<double>> fraction(sorted.size(), std::vector<double>(k_max + 1, 0));
  std::vector<std::uint64_t> at_most(k_max + 1, 0);
  std::size_t next = 0;
  for (std::uint64_t n = 1; n <= t.n_max() && next < sorted.size(); ++n) {
    if (t[n] <= k_max) ++at_most[t[n]];
    while (next < sorted.size() && sorted[next] == n) {
      std::uint64_t cumulative = 0;
      for (std::uint64_t k = 1; k <= k_max; ++k) {
        cumulative += at_most[k];
        fraction[next][k] = static_cast<double>(cumulative) / static_cast<double>(n);
      }
      ++next;
    }
  }
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      ScanRow row{sorted[i], fraction[i][k], static_cast<double>(k), ""};
      // A class that already covers everything cannot shrink further.
      if (i > 0 && fraction[i - 1][k] < 1.0 && !(fraction[i][k] < fraction[i - 1][k])) {
        row.note = "not decreasing";
        record(r, row);
      }
      r.rows.push_back(std::move(row));
    }
  }
  return r;
}

}  // namespace ncx::lab
