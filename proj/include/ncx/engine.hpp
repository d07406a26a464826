#pragma once

// Complexity tables c_O(n) for 1 <= n <= n_max with reconstruction provenance.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ncx/term.hpp"

namespace ncx {

using cost_t = std::uint16_t;

// In-memory cost ceiling; keeps pairwise sums inside cost_t.
inline constexpr unsigned kCostCapacity = 32767;
// Operands are held as 32-bit values in memory.
inline constexpr std::uint64_t kTableLimit = 0xFFFF'FFFFULL;

enum class BuildMode : std::uint8_t { Exact, Pruned };

enum class OpTag : std::uint8_t { Atom = 0, Succ = 1, Plus = 2, Times = 3 };

struct Provenance {
  OpTag tag;
  std::uint64_t operand;  // a for Plus, d for Times, 0 otherwise

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

class ComplexityTable {
 public:
  // Arrays are indexed by n; index 0 is unused and must hold zeros.
  ComplexityTable(SymbolLibrary lib, CostMetric metric, std::vector<cost_t> cost,
                  std::vector<OpTag> tag, std::vector<std::uint32_t> operand);

  const SymbolLibrary& library() const noexcept { return lib_; }
  CostMetric metric() const noexcept { return metric_; }
  std::uint64_t n_max() const noexcept { return cost_.size() - 1; }

  // Unchecked accessors for 1 <= n <= n_max.
  cost_t operator[](std::uint64_t n) const { return cost_[n]; }
  Provenance provenance(std::uint64_t n) const { return {tag_[n], operand_[n]}; }

  std::span<const cost_t> costs() const noexcept { return cost_; }
  std::span<const OpTag> tags() const noexcept { return tag_; }
  std::span<const std::uint32_t> operands() const noexcept { return operand_; }

  cost_t max_cost() const;

  friend bool operator==(const ComplexityTable&, const ComplexityTable&) = default;

 private:
  SymbolLibrary lib_;
  CostMetric metric_;
  std::vector<cost_t> cost_;
  std::vector<OpTag> tag_;
  std::vector<std::uint32_t> operand_;
};

struct BuildStats {
  std::uint64_t atoms = 0;
  std::uint64_t succs = 0;
  std::uint64_t plus_splits = 0;  // best_op = PlusSplit (always with a >= 2)
  std::uint64_t times_splits = 0;
  std::uint64_t plus_candidates = 0;  // addends actually examined
};

// Candidates per n: atom, Succ(n-1), Plus(a, n-a) for 2 <= a <= n/2, Times(d, n/d)
// for d | n, 2 <= d <= sqrt(n). Ties prefer Atom, then Times (smallest d), then
// Plus (smallest a), then Succ. Pruned mode stops the addend scan once the
// certified lower bound on every remaining split cannot win; it yields the
// same table as Exact.
ComplexityTable build_table(const SymbolLibrary& lib, CostMetric metric, std::uint64_t n_max,
                            BuildMode mode, BuildStats* stats = nullptr);

// Tag counts of an existing table.
BuildStats provenance_census(const ComplexityTable& t);

cost_t complexity(const ComplexityTable& t, std::uint64_t n);

Term reconstruct_one(const ComplexityTable& t, std::uint64_t n);

// Independent exhaustive oracle: minimal costs of every value 1..n_max
// by value-set iteration over cost levels. Index 0 unused.
std::vector<std::uint32_t> oracle_costs(const SymbolLibrary& lib, CostMetric metric,
                                        std::uint64_t n_max,
                                        std::uint64_t budget = 400'000'000);

std::uint64_t oracle_complexity(const SymbolLibrary& lib, CostMetric metric, std::uint64_t n,
                                std::uint64_t budget = 400'000'000);

struct Enumeration {
  std::uint64_t cost = 0;
  std::vector<Term> terms;  // sorted by rendering
  bool truncated = false;
};

inline constexpr std::uint64_t kEnumerateMaxCost = 25;

// All optimal presentations of n, treating + and * as commutative: the left
// operand never has the larger value, and equal-valued operands appear in
// rendering order.
Enumeration enumerate_optimal(const SymbolLibrary& lib, CostMetric metric, std::uint64_t n,
                              std::size_t cap, std::uint64_t budget = 50'000'000);

// NCX1 persistence; see README for the byte layout.
void save_table(const ComplexityTable& t, const std::filesystem::path& path);
ComplexityTable load_table(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_table(const ComplexityTable& t);
ComplexityTable decode_table(std::span<const std::uint8_t> bytes);

}  // namespace ncx
