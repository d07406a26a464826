#include "ncx/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>

#include "ncx/error.hpp"

namespace ncx::lab {

namespace mp = boost::multiprecision;

double LogForm::eval(double n) const {
  return (static_cast<double>(coef) * std::log(n) / std::log(static_cast<double>(base)) +
          static_cast<double>(offset)) /
         static_cast<double>(denom);
}

LogForm lower_form(CostMetric metric) noexcept {
  return metric == CostMetric::SymbolCount ? LogForm{5, -1, 1, 4} : LogForm{3, 0, 1, 3};
}

LogForm upper_form(CostMetric metric) noexcept {
  return metric == CostMetric::SymbolCount ? LogForm{6, -3, 1, 3} : LogForm{3, 0, 1, 2};
}

double lower_bound(std::uint64_t n, CostMetric metric) {
  if (n < 1) throw Error(ErrorCode::BelowThreshold, "n >= 1");
  return lower_form(metric).eval(static_cast<double>(n));
}

double upper_bound(std::uint64_t n, CostMetric metric) {
  const std::uint64_t min_n = metric == CostMetric::SymbolCount ? 3 : 1;
  if (n < min_n) {
    throw Error(ErrorCode::BelowThreshold, "upper bound holds from n = " + std::to_string(min_n));
  }
  return upper_form(metric).eval(static_cast<double>(n));
}

int compare_to_form(std::int64_t cost, const LogForm& form, std::uint64_t n) {
  // cost - form(n) has the sign of (denom*cost - offset) - coef*log_base(n).
  const std::int64_t lhs = form.denom * cost - form.offset;
  const double rhs = static_cast<double>(form.coef) * std::log(static_cast<double>(n)) /
                     std::log(static_cast<double>(form.base));
  const double diff = static_cast<double>(lhs) - rhs;
  if (std::abs(diff) > 1e-9) return diff > 0 ? 1 : -1;
  if (lhs < 0) return -1;  // rhs >= 0 and base^lhs < 1 <= n^coef
  const mp::cpp_int left = mp::pow(mp::cpp_int(form.base), static_cast<unsigned>(lhs));
  const mp::cpp_int right = mp::pow(mp::cpp_int(n), static_cast<unsigned>(form.coef));
  if (left == right) return 0;
  return left > right ? 1 : -1;
}

std::uint64_t largest_within(const LogForm& form, std::int64_t k) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (compare_to_form(k, form, 1) < 0) return 0;
  // form(n) <= k  <=>  n <= base^((denom*k - offset)/coef)
  const double estimate = std::pow(static_cast<double>(form.base),
                                   static_cast<double>(form.denom * k - form.offset) /
                                       static_cast<double>(form.coef));
  if (!(estimate < 1e19)) return kMax;
  std::uint64_t lo = 1;
  std::uint64_t hi = static_cast<std::uint64_t>(estimate) + 2;
  while (compare_to_form(k, form, hi) >= 0) {
    if (hi > kMax / 2) return kMax;
    hi *= 2;
  }
  // invariant: form(lo) <= k < form(hi)
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (compare_to_form(k, form, mid) >= 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double library_lower_bound(const SymbolLibrary& lib, CostMetric metric, std::uint64_t x) {
  if (lib.has_extra_atoms()) return 1.0;
  if (!lib.has_times()) return static_cast<double>(x);
  return lower_bound(x, metric);
}

std::optional<std::uint64_t> certification_limit(const SymbolLibrary& lib, CostMetric metric,
                                                 std::int64_t k) {
  if (lib.has_extra_atoms()) return std::nullopt;
  if (!lib.has_times()) return k < 0 ? 0 : static_cast<std::uint64_t>(k);
  return largest_within(lower_form(metric), k);
}

}  // namespace ncx::lab
