#include <doctest.h>

#include <cmath>

#include "ncx/bounds.hpp"
#include "ncx/conjecture_lab.hpp"
#include "ncx/engine.hpp"
#include "ncx/error.hpp"
#include "ncx/extremals.hpp"

using namespace ncx;
using namespace ncx::lab;

namespace {

const SymbolLibrary kArith(LibraryId::OneSuccPlusTimes);

ComplexityTable arith(CostMetric metric, std::uint64_t n_max) {
  return build_table(kArith, metric, n_max, BuildMode::Pruned);
}

ComplexityTable with_cost(const ComplexityTable& t, std::uint64_t n, cost_t c) {
  std::vector<cost_t> cost(t.costs().begin(), t.costs().end());
  cost[n] = c;
  return ComplexityTable(t.library(), t.metric(), cost, {t.tags().begin(), t.tags().end()},
                         {t.operands().begin(), t.operands().end()});
}

const ScanRow* row_at(const ScanReport& r, std::uint64_t index) {
  for (const auto& row : r.rows) {
    if (row.index == index) return &row;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("bound values") {
  CHECK(lower_bound(64, CostMetric::SymbolCount) == doctest::Approx(14.0));
  CHECK(lower_bound(1, CostMetric::OnesCount) == 0.0);
  CHECK(lower_bound(27, CostMetric::OnesCount) == doctest::Approx(9.0));
  CHECK(upper_bound(3, CostMetric::SymbolCount) == doctest::Approx(3.0));
  CHECK(upper_bound(2, CostMetric::OnesCount) == doctest::Approx(3.0));
  CHECK(upper_bound(9, CostMetric::SymbolCount) == doctest::Approx(9.0));
  try {
    upper_bound(2, CostMetric::SymbolCount);
    FAIL("threshold ignored");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BelowThreshold);
  }
}

TEST_CASE("exact comparison at the tight points") {
  const LogForm lower = lower_form(CostMetric::SymbolCount);
  const LogForm ones = lower_form(CostMetric::OnesCount);
  std::uint64_t p4 = 1, p3 = 1;
  for (int j = 0; j < 20; ++j, p4 *= 4, p3 *= 3) {
    CHECK(compare_to_form(5 * j - 1, lower, p4) == 0);
    CHECK(compare_to_form(5 * j - 1, lower, p4 + 1) < 0);
    CHECK(compare_to_form(3 * j, ones, p3) == 0);
    if (p3 > 1) CHECK(compare_to_form(3 * j, ones, p3 - 1) > 0);
  }
  CHECK(compare_to_form(3, upper_form(CostMetric::SymbolCount), 3) == 0);
  CHECK(largest_within(lower, 14) == 64);
  CHECK(largest_within(ones, 9) == 27);
}

TEST_CASE("proven bounds hold") {
  CHECK(verify_bounds(arith(CostMetric::SymbolCount, 100000)).pass());
  const auto ones = verify_bounds(arith(CostMetric::OnesCount, 100000));
  CHECK(ones.pass());
  CHECK(ones.checked == 100000);
}

TEST_CASE("bound violations are listed") {
  const auto report = verify_bounds(with_cost(arith(CostMetric::SymbolCount, 300), 100, 50));
  CHECK_FALSE(report.pass());
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].n == 100);
  CHECK(report.violations[0].cost == 50);
  CHECK_FALSE(report.violations[0].lower);
  CHECK_THROWS_AS(verify_bounds(build_table(SymbolLibrary(LibraryId::OneSuccTimes), CostMetric::SymbolCount, 10,
                                            BuildMode::Exact)),
                  Error);
}

TEST_CASE("u2u inequalities") {
  const auto records = extremal::minimal_elements(arith(CostMetric::SymbolCount, 300));
  const auto r = verify_u2u(records);
  CHECK(r.pass());
  REQUIRE_FALSE(r.rows.empty());
  CHECK(r.rows[0].index == 1);
  CHECK(r.rows[0].observed == 7);
  CHECK(r.rows[0].reference == 5);

  std::vector<extremal::ExtremalRecord> fake(5);
  for (std::uint64_t k = 1; k <= 5; ++k) fake[k - 1] = {k, k * 10, std::nullopt, true, false};
  fake[4].u_k = 20;  // u_5 = 2 u_1
  const auto bad = verify_u2u(fake);
  CHECK_FALSE(bad.pass());
  REQUIRE(bad.counterexamples.size() == 1);
  CHECK(bad.counterexamples[0].index == 1);
}

TEST_CASE("halving corollary") {
  const auto s = arith(CostMetric::SymbolCount, 100000);
  CHECK(s[4] >= s[8] - 4);
  CHECK(verify_half(s).pass());
  CHECK(verify_half(arith(CostMetric::OnesCount, 100000)).pass());
  CHECK_FALSE(verify_half(with_cost(s, 1000, 40)).pass());
}

TEST_CASE("power scans") {
  const auto s = scan_power_conjecture(arith(CostMetric::SymbolCount, 1000));
  CHECK(s.id == ScanId::Power3);
  REQUIRE(s.rows.size() == 6);
  CHECK(s.rows[0].observed == 3);
  CHECK(s.rows[1].observed == 7);
  CHECK(s.pass());
  const auto o = scan_power_conjecture(arith(CostMetric::OnesCount, 1000));
  CHECK(o.id == ScanId::Power2);
  CHECK(o.rows[2].observed == 6);
  CHECK(o.rows.size() == 9);

  const auto damaged = scan_power_conjecture(with_cost(arith(CostMetric::SymbolCount, 100), 81, 14));
  CHECK(damaged.counterexample_count == 1);
  CHECK(damaged.counterexamples[0].index == 4);
}

TEST_CASE("ratio series") {
  const auto r = ratio_series(arith(CostMetric::SymbolCount, 1000), 1);
  CHECK(row_at(r, 4)->observed == doctest::Approx(0.8));
  CHECK(row_at(r, 7)->observed == doctest::Approx(7.0 / (5.0 * std::log(7.0) / std::log(4.0))));
  CHECK(row_at(r, 7)->observed == doctest::Approx(0.998).epsilon(1e-3));
  CHECK(row_at(r, 64)->observed == doctest::Approx(14.0 / 15.0));
  CHECK(row_at(r, 1) == nullptr);
  CHECK(r.blocks.size() == 9);
  CHECK(ratio_series(arith(CostMetric::SymbolCount, 1000), 100).rows.size() == 10);
}

TEST_CASE("square scan") {
  const auto r = scan_square_conjecture(extremal::minimal_elements(arith(CostMetric::SymbolCount, 300)));
  CHECK(row_at(r, 2)->observed <= 1);
  CHECK(row_at(r, 3)->observed == 2);
  CHECK(row_at(r, 3)->note == "complete");

  auto records = extremal::minimal_elements(arith(CostMetric::SymbolCount, 300));
  records.resize(4);
  const auto cut = scan_square_conjecture(records);
  for (const auto& row : cut.rows) {
    if (row.index >= 2) CHECK(row.note == "incomplete");
  }
  CHECK(row_at(cut, 1)->note == "complete");
}

TEST_CASE("prime report") {
  const auto records = extremal::minimal_elements(arith(CostMetric::SymbolCount, 300));
  std::vector<extremal::ExtremalRecord> first8(records.begin(), records.begin() + 8);
  const auto r = prime_report(first8);
  CHECK(row_at(r, 8)->observed == 0);
  CHECK(row_at(r, 8)->reference == 1);
  CHECK(row_at(r, 2)->observed == 1);
  CHECK(row_at(r, 2)->reference == 0);
  for (const auto& [key, value] : r.summary) {
    if (key != "count") CHECK((value >= 0 && value <= 1));
  }
}

TEST_CASE("bounded library check") {
  const SymbolLibrary lib(LibraryId::OneSuccPlusPrimes);
  const auto t = build_table(lib, CostMetric::SymbolCount, 100000, BuildMode::Pruned);
  const auto r = bounded_library_check(t);
  CHECK(r.pass());
  CHECK_THROWS_AS(bounded_library_check(arith(CostMetric::SymbolCount, 10)), Error);
}

TEST_CASE("census") {
  const SymbolLibrary lib(LibraryId::OneSuccTimesPrimes);
  const auto t = build_table(lib, CostMetric::SymbolCount, 100000, BuildMode::Pruned);
  const std::uint64_t ns[] = {1000, 10000, 100000};
  const auto r = census_scan(t, ns, 3);
  CHECK(r.rows.size() == 9);
  CHECK(r.pass());
  const std::uint64_t far[] = {200000};
  CHECK_THROWS_AS(census_scan(t, far, 3), Error);
}
