// Exhaustive search routines. Nothing here consults the DP tables or the
// sieve: atoms are recognised by trial division and costs are discovered by
// growing value sets one cost level at a time.

#include <algorithm>
#include <map>
#include <string>

#include "ncx/engine.hpp"
#include "ncx/error.hpp"

namespace ncx {

namespace {

bool trial_atom(const SymbolLibrary& lib, std::uint64_t v) {
  if (v < 2 || !lib.has_extra_atoms()) return false;
  unsigned factors = 0;
  std::uint64_t rest = v;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    while (rest % p == 0) {
      rest /= p;
      ++factors;
    }
  }
  if (rest > 1) ++factors;
  const unsigned limit = lib.id() == LibraryId::OneSuccTimesPm ? lib.m_param() : 1;
  return factors <= limit;
}

void charge(std::uint64_t& work, std::uint64_t amount, std::uint64_t budget) {
  work += amount;
  if (work > budget) throw Error(ErrorCode::SearchBudgetExceeded, "exhaustive search budget spent");
}

}  // namespace

std::vector<std::uint32_t> oracle_costs(const SymbolLibrary& lib, CostMetric metric,
                                        std::uint64_t n_max, std::uint64_t budget) {
  if (!lib.supports(metric)) {
    throw Error(ErrorCode::MetricUnsupported, "ones metric is undefined for " + lib.describe());
  }
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n >= 1");
  if (n_max > 5'000'000) throw Error(ErrorCode::SearchBudgetExceeded, "oracle range too large");

  const std::uint64_t op = metric == CostMetric::SymbolCount ? 1 : 0;
  std::vector<std::uint32_t> best(n_max + 1, 0);
  std::vector<std::vector<std::uint64_t>> level(1);  // level[c]: values whose minimum is c
  std::uint64_t found = 0;
  std::uint64_t work = 0;

  auto discover = [&](std::uint64_t v, std::uint32_t c, std::vector<std::uint64_t>& out) {
    if (v <= n_max && best[v] == 0) {
      best[v] = c;
      out.push_back(v);
      ++found;
    }
  };

  for (std::uint32_t c = 1; found < n_max; ++c) {
    std::vector<std::uint64_t> fresh;
    if (c == 1) {
      discover(1, 1, fresh);
      for (std::uint64_t v = 2; v <= n_max; ++v) {
        if (trial_atom(lib, v)) discover(v, 1, fresh);
      }
    } else {
      for (std::uint64_t v : level[c - 1]) discover(v + 1, c, fresh);
      charge(work, level[c - 1].size(), budget);
    }
    // Binary operations: operand levels i <= j with i + j + op == c.
    for (std::uint64_t i = 1; i + op < c; ++i) {
      const std::uint64_t j = c - op - i;
      if (j < i) break;
      const auto& lhs = level[i];
      const auto& rhs = level[j];
      if (lib.has_plus()) {
        for (std::uint64_t a : lhs) {
          for (std::uint64_t b : rhs) {
            if (a + b > n_max) break;
            discover(a + b, c, fresh);
          }
        }
      }
      if (lib.has_times()) {
        for (std::uint64_t a : lhs) {
          for (std::uint64_t b : rhs) {
            if (a * b > n_max) break;
            discover(a * b, c, fresh);
          }
        }
      }
      charge(work, lhs.size() * rhs.size(), budget);
    }
    std::sort(fresh.begin(), fresh.end());
    level.push_back(std::move(fresh));
  }
  return best;
}

std::uint64_t oracle_complexity(const SymbolLibrary& lib, CostMetric metric, std::uint64_t n,
                                std::uint64_t budget) {
  return oracle_costs(lib, metric, n, budget)[n];
}

namespace {

class Enumerator {
 public:
  Enumerator(const SymbolLibrary& lib, CostMetric metric, std::vector<std::uint32_t> min_cost,
             std::size_t cap, std::uint64_t budget)
      : lib_(lib),
        op_(metric == CostMetric::SymbolCount ? 1 : 0),
        min_cost_(std::move(min_cost)),
        cap_(cap),
        budget_(budget) {}

  struct Entry {
    std::vector<Term> terms;
    std::vector<std::string> rendered;
  };

  const Entry& terms(std::uint64_t v, std::uint64_t c) {
    const auto key = std::make_pair(v, c);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Entry out;
    auto add = [&](Term t) {
      charge(work_, 1, budget_);
      if (out.terms.size() >= cap_) {
        truncated_ = true;
        return;
      }
      out.rendered.push_back(render(t));
      out.terms.push_back(std::move(t));
    };

    if (c == 1 && v == 1) add(Term::one());
    if (c == 1 && v >= 2 && trial_atom(lib_, v)) {
      add(Term::atom(lib_.id() == LibraryId::OneSuccTimesPm ? NodeKind::MultAtom : NodeKind::PrimeAtom, v));
    }
    if (v >= 2 && c >= 2 && c - 1 >= min_cost_[v - 1]) {
      for (const Term& inner : terms(v - 1, c - 1).terms) add(Term::succ(inner));
    }
    auto combine = [&](std::uint64_t a, std::uint64_t b, bool is_plus) {
      if (c < op_ + min_cost_[a] + min_cost_[b]) return;
      for (std::uint64_t i = min_cost_[a]; i + min_cost_[b] + op_ <= c; ++i) {
        const std::uint64_t j = c - op_ - i;
        // std::map keeps references valid across the insertions these calls make.
        const Entry& lhs = terms(a, i);
        const Entry& rhs = terms(b, j);
        for (std::size_t x = 0; x < lhs.terms.size(); ++x) {
          for (std::size_t y = 0; y < rhs.terms.size(); ++y) {
            if (a == b && lhs.rendered[x] > rhs.rendered[y]) continue;
            add(is_plus ? Term::plus(lhs.terms[x], rhs.terms[y]) : Term::times(lhs.terms[x], rhs.terms[y]));
          }
        }
      }
    };
    if (lib_.has_plus()) {
      for (std::uint64_t a = 1; 2 * a <= v; ++a) combine(a, v - a, true);
    }
    if (lib_.has_times()) {
      for (std::uint64_t d = 1; d * d <= v; ++d) {
        if (v % d == 0) combine(d, v / d, false);
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  bool truncated() const noexcept { return truncated_; }

 private:
  const SymbolLibrary& lib_;
  std::uint64_t op_;
  std::vector<std::uint32_t> min_cost_;
  std::size_t cap_;
  std::uint64_t budget_;
  std::uint64_t work_ = 0;
  bool truncated_ = false;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Entry> memo_;
};

}  // namespace

Enumeration enumerate_optimal(const SymbolLibrary& lib, CostMetric metric, std::uint64_t n,
                              std::size_t cap, std::uint64_t budget) {
  if (cap == 0) throw Error(ErrorCode::InvalidArgument, "cap >= 1");
  auto min_cost = oracle_costs(lib, metric, n);
  const std::uint64_t target = min_cost[n];
  if (target > kEnumerateMaxCost) {
    throw Error(ErrorCode::SearchBudgetExceeded,
                "optimal cost " + std::to_string(target) + " is beyond the enumeration guard");
  }
  Enumerator e(lib, metric, std::move(min_cost), cap, budget);
  const auto& entry = e.terms(n, target);

  std::vector<std::size_t> order(entry.terms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return entry.rendered[x] < entry.rendered[y]; });
  Enumeration result;
  result.cost = target;
  result.truncated = e.truncated();
  for (std::size_t i : order) result.terms.push_back(entry.terms[i]);
  return result;
}

}  // namespace ncx
