#pragma once

// Minimal elements u_k, maximal elements M_k, defects and the structural
// statements about u_k, checked over a finite table.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncx/engine.hpp"

namespace ncx::extremal {

struct ExtremalRecord {
  std::uint64_t k = 0;
  std::optional<std::uint64_t> u_k;
  std::optional<std::uint64_t> m_k;
  bool u_complete = false;
  bool m_complete = false;
};

// One record per k = 1..max cost in the table; u_k is the first n with cost k.
std::vector<ExtremalRecord> minimal_elements(const ComplexityTable& t);

// Records for k = 1..k_max with m_k = max{n <= n_max : cost[n] = k}. m_complete
// is set when the library's certified lower bound rules out any larger n of
// cost <= k. For libraries without finite maximal elements m_complete is false.
// RangeInsufficient if k_max itself cannot be certified on a certifiable library.
std::vector<ExtremalRecord> maximal_elements(const ComplexityTable& t, std::uint64_t k_max);

// Smallest n_max that certifies M_k, or nullopt if the library has none.
std::optional<std::uint64_t> certifying_n_max(const SymbolLibrary& lib, CostMetric metric, std::uint64_t k);

// 3^r 4^(m-r) with m minimal such that k <= 5m - 1 and r = 5m - 1 - k.
// BelowThreshold for k < 11.
std::uint64_t maximal_closed_form(std::uint64_t k);

struct DefectValue {
  std::uint64_t n;
  double defect;
  bool zero;  // exact: cost equals the lower bound
};

// cost[n] - (5 log4 n - 1) for symbols, cost[n] - 3 log3 n for ones, on {1,S,+,*}.
DefectValue defect(const ComplexityTable& t, std::uint64_t n);

struct ClauseResult {
  std::string name;
  bool applicable = true;
  bool pass = true;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::string detail;
};

struct StructureReport {
  std::vector<ClauseResult> clauses;
  // Informational lines that are reported but never fail the report.
  std::vector<ClauseResult> observations;
  bool pass() const;
};

StructureReport check_structure(const ComplexityTable& t);

// True iff some optimal presentation of M_k is a product of successor-chain
// factors with values in {2,...,6} obeying the multiplicity restrictions for
// maximal elements. Only for symbols on {1,S,+,*}.
bool mk_form_check(const ComplexityTable& t, std::uint64_t k);

}  // namespace ncx::extremal
