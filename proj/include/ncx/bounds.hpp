#pragma once

// Closed-form logarithmic complexity bounds for {1, S, +, *} and exact
// comparisons against them.

#include <cstdint>
#include <optional>

#include "ncx/term.hpp"

namespace ncx::lab {

// bound(n) = (coef * log_base(n) + offset) / denom, with denom > 0 and coef >= 0.
struct LogForm {
  std::int64_t coef;
  std::int64_t offset;
  std::int64_t denom;
  std::uint64_t base;

  double eval(double n) const;
};

// 5 log4 n - 1 (symbols) and 3 log3 n (ones).
LogForm lower_form(CostMetric metric) noexcept;
// 6 log3 n - 3 (symbols) and 3 log2 n (ones).
LogForm upper_form(CostMetric metric) noexcept;

double lower_bound(std::uint64_t n, CostMetric metric);
// BelowThreshold for n < 3 under the symbol metric and n < 1 under ones.
double upper_bound(std::uint64_t n, CostMetric metric);

// Sign of cost - form(n). A floating comparison decides unless the two sides
// are within 1e-9, in which case base^(denom*cost - offset) is compared with
// n^coef in exact integer arithmetic.
int compare_to_form(std::int64_t cost, const LogForm& form, std::uint64_t n);

// Largest n with form(n) <= k, saturating at UINT64_MAX.
std::uint64_t largest_within(const LogForm& form, std::int64_t k);

// Certified lower bound on c_O(x) for any x in a library, used both for
// pruning and for certifying maximal elements. Linear for libraries without
// multiplication, logarithmic for {1,S,*} and {1,S,+,*}, and the constant 1
// for libraries with infinitely many atoms.
double library_lower_bound(const SymbolLibrary& lib, CostMetric metric, std::uint64_t x);

// Largest n whose certified lower bound is <= k; nullopt when the library has
// infinitely many atoms (no finite maximal element exists).
std::optional<std::uint64_t> certification_limit(const SymbolLibrary& lib, CostMetric metric,
                                                 std::int64_t k);

}  // namespace ncx::lab
