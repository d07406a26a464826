#include "ncx/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "ncx/bounds.hpp"
#include "ncx/error.hpp"
#include "ncx/numtheory.hpp"

namespace ncx {

ComplexityTable::ComplexityTable(SymbolLibrary lib, CostMetric metric, std::vector<cost_t> cost,
                                 std::vector<OpTag> tag, std::vector<std::uint32_t> operand)
    : lib_(lib),
      metric_(metric),
      cost_(std::move(cost)),
      tag_(std::move(tag)),
      operand_(std::move(operand)) {
  if (cost_.size() < 2 || tag_.size() != cost_.size() || operand_.size() != cost_.size()) {
    throw Error(ErrorCode::InvalidArgument, "table arrays must share a length >= 2");
  }
}

cost_t ComplexityTable::max_cost() const {
  return *std::max_element(cost_.begin() + 1, cost_.end());
}

namespace {

// Lexicographic key: cost, then category rank, then operand.
struct Candidate {
  std::uint32_t cost;
  OpTag tag;
  std::uint32_t operand;

  static int rank(OpTag t) {
    switch (t) {
      case OpTag::Atom: return 0;
      case OpTag::Times: return 1;
      case OpTag::Plus: return 2;
      case OpTag::Succ: return 3;
    }
    return 4;
  }

  bool beats(const Candidate& other) const {
    if (cost != other.cost) return cost < other.cost;
    if (rank(tag) != rank(other.tag)) return rank(tag) < rank(other.tag);
    return operand < other.operand;
  }
};

class DivisorBuffer {
 public:
  explicit DivisorBuffer(const nt::MultiplicityTable& sieve) : sieve_(sieve) {}

  // Divisors d of n with 2 <= d <= sqrt(n), unsorted.
  std::span<const std::uint32_t> small_divisors(std::uint32_t n) {
    all_.clear();
    all_.push_back(1);
    std::uint32_t rest = n;
    while (rest > 1) {
      const std::uint32_t p = sieve_.spf(rest);
      const std::size_t base = all_.size();
      std::uint64_t pk = 1;
      while (rest % p == 0) {
        rest /= p;
        pk *= p;
        for (std::size_t j = 0; j < base; ++j) all_.push_back(static_cast<std::uint32_t>(all_[j] * pk));
      }
    }
    small_.clear();
    for (std::uint32_t d : all_) {
      if (d >= 2 && static_cast<std::uint64_t>(d) * d <= n) small_.push_back(d);
    }
    return small_;
  }

 private:
  const nt::MultiplicityTable& sieve_;
  std::vector<std::uint32_t> all_;
  std::vector<std::uint32_t> small_;
};

// Minkowski sum A + A of the atom set (atoms >= 2), as a bitset over [0, n_max].
std::vector<std::uint64_t> atom_pair_sums(const std::vector<bool>& atom, std::uint64_t n_max) {
  const std::size_t words = n_max / 64 + 1;
  std::vector<std::uint64_t> a_bits(words, 0);
  for (std::uint64_t v = 2; v <= n_max; ++v) {
    if (atom[v]) a_bits[v / 64] |= 1ULL << (v % 64);
  }
  std::vector<std::uint64_t> sums(words, 0);
  for (std::uint64_t a = 2; 2 * a <= n_max; ++a) {
    if (!atom[a]) continue;
    const std::size_t q = a / 64;
    const unsigned r = a % 64;
    // b >= a suffices by symmetry; start at the word holding a.
    for (std::size_t i = q; i + q < words; ++i) {
      const std::uint64_t w = a_bits[i];
      if (w == 0) continue;
      sums[i + q] |= w << r;
      if (r != 0 && i + q + 1 < words) sums[i + q + 1] |= w >> (64 - r);
    }
  }
  return sums;
}

}  // namespace

ComplexityTable build_table(const SymbolLibrary& lib, CostMetric metric, std::uint64_t n_max,
                            BuildMode mode, BuildStats* stats) {
  if (!lib.supports(metric)) {
    throw Error(ErrorCode::MetricUnsupported,
                std::string(to_string(metric)) + " metric is undefined for " + lib.describe());
  }
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max >= 1");
  if (n_max > kTableLimit || n_max > nt::kSieveLimit) {
    throw Error(ErrorCode::CapacityExceeded, "n_max too large for an in-memory table");
  }

  const std::uint32_t op_cost = metric == CostMetric::SymbolCount ? 1 : 0;
  const std::size_t size = n_max + 1;
  std::vector<cost_t> cost(size, 0);
  std::vector<OpTag> tag(size, OpTag::Atom);
  std::vector<std::uint32_t> operand(size, 0);
  BuildStats local;

  std::optional<nt::MultiplicityTable> sieve;
  if ((lib.has_times() || lib.has_extra_atoms()) && n_max >= 2) {
    sieve.emplace(nt::sieve(static_cast<std::uint32_t>(n_max)));
  }
  std::vector<bool> atom(size, false);
  if (lib.has_extra_atoms() && sieve) {
    const unsigned limit = lib.id() == LibraryId::OneSuccTimesPm ? lib.m_param() : 1;
    for (std::uint64_t v = 2; v <= n_max; ++v) {
      atom[v] = sieve->omega(static_cast<std::uint32_t>(v)) <= limit;
    }
  }

  enum class Floor { Linear, Logarithmic, AtomPairs, Generic };
  Floor floor_kind = Floor::Generic;
  if (!lib.has_extra_atoms()) {
    floor_kind = lib.has_times() ? Floor::Logarithmic : Floor::Linear;
  } else if (lib.has_plus()) {
    floor_kind = Floor::AtomPairs;
  }
  const bool pruned = mode == BuildMode::Pruned && lib.has_plus();
  std::vector<double> lb;
  std::vector<std::uint64_t> pair_sums;
  if (pruned && floor_kind == Floor::Logarithmic) {
    lb.resize(size, 0.0);
    for (std::uint64_t x = 1; x <= n_max; ++x) lb[x] = lab::lower_bound(x, metric);
  }
  if (pruned && floor_kind == Floor::AtomPairs) pair_sums = atom_pair_sums(atom, n_max);

  // Lower bound on cost[a'] + cost[n - a'] over all a' in [a, n/2].
  auto plus_floor = [&](std::uint64_t n, std::uint64_t a) -> std::uint32_t {
    switch (floor_kind) {
      case Floor::Linear:
        return static_cast<std::uint32_t>(n);
      case Floor::Logarithmic:
        // lb(a') + lb(n - a') is nondecreasing on [a, n/2] since lb is concave in log form.
        return static_cast<std::uint32_t>(std::max(0.0, std::ceil(lb[a] + lb[n - a] - 1e-9)));
      case Floor::AtomPairs:
        return (pair_sums[n / 64] >> (n % 64)) & 1 ? 2 : 3;
      case Floor::Generic:
        return 2;
    }
    return 2;
  };

  std::optional<DivisorBuffer> divisors;
  if (lib.has_times() && sieve) divisors.emplace(*sieve);

  cost[1] = 1;
  tag[1] = OpTag::Atom;
  ++local.atoms;
  const cost_t* c = cost.data();

  for (std::uint64_t n = 2; n <= n_max; ++n) {
    if (atom[n]) {
      cost[n] = 1;
      tag[n] = OpTag::Atom;
      ++local.atoms;
      continue;
    }
    Candidate best{static_cast<std::uint32_t>(c[n - 1]) + 1, OpTag::Succ, 0};

    if (divisors && n >= 4) {
      for (std::uint32_t d : divisors->small_divisors(static_cast<std::uint32_t>(n))) {
        const Candidate cand{op_cost + c[d] + c[n / d], OpTag::Times, d};
        if (cand.beats(best)) best = cand;
      }
    }

    if (lib.has_plus() && n >= 4) {
      const std::uint64_t half = n / 2;
      if (mode == BuildMode::Exact) {
        cost_t min_sum = std::numeric_limits<cost_t>::max();
        for (std::uint64_t a = 2; a <= half; ++a) {
          const cost_t s = static_cast<cost_t>(c[a] + c[n - a]);
          min_sum = s < min_sum ? s : min_sum;
        }
        local.plus_candidates += half - 1;
        const Candidate probe{op_cost + min_sum, OpTag::Plus, 0};
        if (probe.beats(best)) {
          for (std::uint64_t a = 2; a <= half; ++a) {
            if (static_cast<cost_t>(c[a] + c[n - a]) == min_sum) {
              best = Candidate{op_cost + min_sum, OpTag::Plus, static_cast<std::uint32_t>(a)};
              break;
            }
          }
        }
      } else {
        for (std::uint64_t a = 2; a <= half; ++a) {
          const std::uint32_t floor_cost = op_cost + plus_floor(n, a);
          // No remaining split can be cheaper, and an equal one would lose the tie.
          if (floor_cost > best.cost ||
              (floor_cost == best.cost && Candidate::rank(best.tag) <= Candidate::rank(OpTag::Plus))) {
            break;
          }
          ++local.plus_candidates;
          const Candidate cand{op_cost + c[a] + c[n - a], OpTag::Plus, static_cast<std::uint32_t>(a)};
          if (cand.beats(best)) best = cand;
        }
      }
    }

    if (best.cost > kCostCapacity) {
      throw Error(ErrorCode::CapacityExceeded,
                  "cost of " + std::to_string(n) + " exceeds " + std::to_string(kCostCapacity));
    }
    cost[n] = static_cast<cost_t>(best.cost);
    tag[n] = best.tag;
    operand[n] = best.operand;
    switch (best.tag) {
      case OpTag::Atom: ++local.atoms; break;
      case OpTag::Succ: ++local.succs; break;
      case OpTag::Plus: ++local.plus_splits; break;
      case OpTag::Times: ++local.times_splits; break;
    }
  }

  if (stats) *stats = local;
  return ComplexityTable(lib, metric, std::move(cost), std::move(tag), std::move(operand));
}

BuildStats provenance_census(const ComplexityTable& t) {
  BuildStats s;
  for (std::uint64_t n = 1; n <= t.n_max(); ++n) {
    switch (t.provenance(n).tag) {
      case OpTag::Atom: ++s.atoms; break;
      case OpTag::Succ: ++s.succs; break;
      case OpTag::Plus: ++s.plus_splits; break;
      case OpTag::Times: ++s.times_splits; break;
    }
  }
  return s;
}

cost_t complexity(const ComplexityTable& t, std::uint64_t n) {
  if (n < 1 || n > t.n_max()) {
    throw Error(ErrorCode::OutOfRange, std::to_string(n) + " outside [1, " + std::to_string(t.n_max()) + "]");
  }
  return t[n];
}

Term reconstruct_one(const ComplexityTable& t, std::uint64_t n) {
  if (n < 1 || n > t.n_max()) {
    throw Error(ErrorCode::OutOfRange, std::to_string(n) + " outside [1, " + std::to_string(t.n_max()) + "]");
  }
  const NodeKind atom_kind =
      t.library().id() == LibraryId::OneSuccTimesPm ? NodeKind::MultAtom : NodeKind::PrimeAtom;
  std::vector<Node> nodes;
  std::vector<std::uint64_t> pending{n};
  while (!pending.empty()) {
    const std::uint64_t v = pending.back();
    pending.pop_back();
    const Provenance p = t.provenance(v);
    switch (p.tag) {
      case OpTag::Atom:
        nodes.push_back(v == 1 ? Node{NodeKind::One, 0} : Node{atom_kind, v});
        break;
      case OpTag::Succ:
        nodes.push_back({NodeKind::Succ, 0});
        pending.push_back(v - 1);
        break;
      case OpTag::Plus:
        nodes.push_back({NodeKind::Plus, 0});
        pending.push_back(v - p.operand);
        pending.push_back(p.operand);
        break;
      case OpTag::Times:
        nodes.push_back({NodeKind::Times, 0});
        pending.push_back(v / p.operand);
        pending.push_back(p.operand);
        break;
    }
  }
  return Term::from_prefix(std::move(nodes));
}

}  // namespace ncx
