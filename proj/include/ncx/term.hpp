#pragma once

// Prefix-notation terms over a symbol library.
//
// A term is stored as its flat prefix token sequence. Because every symbol has
// a fixed arity the sequence determines the tree uniquely, so the flat form is
// both the parse result and the rendering source.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncx {

enum class LibraryId : std::uint8_t {
  OneSucc = 0,             // {1, S}
  OneSuccPlus = 1,         // {1, S, +}
  OneSuccTimes = 2,        // {1, S, *}
  OneSuccPlusTimes = 3,    // {1, S, +, *}
  OneSuccTimesPrimes = 4,  // {1, S, *} u P
  OneSuccPlusPrimes = 5,   // {1, S, +} u P
  OneSuccTimesPm = 6,      // {1, S, *} u P_m
};

inline constexpr int kLibraryCount = 7;

enum class CostMetric : std::uint8_t {
  SymbolCount = 0,
  OnesCount = 1,
};

class SymbolLibrary {
 public:
  // m_param must be 0 unless id is OneSuccTimesPm, where it must be >= 1.
  explicit SymbolLibrary(LibraryId id, unsigned m_param = 0);

  LibraryId id() const noexcept { return id_; }
  unsigned m_param() const noexcept { return m_param_; }

  bool has_plus() const noexcept;
  bool has_times() const noexcept;
  bool has_extra_atoms() const noexcept;  // primes or P_m
  bool finite() const noexcept { return !has_extra_atoms(); }

  // Number of declared symbols for finite libraries (1, S, and each operation).
  unsigned symbol_count() const noexcept;

  bool supports(CostMetric metric) const noexcept;

  // True when v >= 2 is a single atom of this library. Uses trial division /
  // Miller-Rabin, so it is exact for any 64-bit value.
  bool is_atom_value(std::uint64_t v) const;

  // Short spelling used by the CLI and file names: 1s, 1s+, 1s*, 1s+*, 1s*p, 1s+p, 1s*pm.
  std::string_view flag() const noexcept;
  std::string describe() const;

  friend bool operator==(const SymbolLibrary&, const SymbolLibrary&) = default;

 private:
  LibraryId id_;
  unsigned m_param_;
};

std::string_view to_string(CostMetric metric) noexcept;
std::optional<LibraryId> library_from_flag(std::string_view flag) noexcept;
std::optional<CostMetric> metric_from_flag(std::string_view flag) noexcept;

enum class NodeKind : std::uint8_t { One, PrimeAtom, MultAtom, Succ, Plus, Times };

struct Node {
  NodeKind kind;
  std::uint64_t value = 0;  // only meaningful for PrimeAtom / MultAtom

  friend bool operator==(const Node&, const Node&) = default;
};

int arity(NodeKind kind) noexcept;

class Term {
 public:
  static Term one();
  static Term atom(NodeKind kind, std::uint64_t value);
  static Term succ(const Term& inner);
  static Term plus(const Term& lhs, const Term& rhs);
  static Term times(const Term& lhs, const Term& rhs);

  // Takes ownership of a prefix sequence; throws IncompleteTerm / TrailingInput
  // if the arities do not close exactly.
  static Term from_prefix(std::vector<Node> nodes);

  std::span<const Node> nodes() const noexcept { return nodes_; }
  const Node& root() const noexcept { return nodes_.front(); }
  std::size_t size() const noexcept { return nodes_.size(); }

  // Immediate subterms of the root, left to right.
  std::vector<Term> children() const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  explicit Term(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}
  std::vector<Node> nodes_;
};

// Tokens: 1, S, +, *, <d> with d >= 2 decimal. Whitespace between tokens is ignored.
Term parse(std::string_view text, const SymbolLibrary& lib);

// Throws CapacityExceeded if the value does not fit in 64 bits.
std::uint64_t evaluate(const Term& t);

std::string render(const Term& t);

// SYMBOL_COUNT counts every node; ONES_COUNT counts One and Succ nodes and is
// undefined (MetricUnsupported) for terms containing prime or P_m atoms.
std::uint64_t cost(const Term& t, CostMetric metric);
std::uint64_t cost(const Term& t, const SymbolLibrary& lib, CostMetric metric);

}  // namespace ncx
