#include "ncx/term.hpp"

#include <array>
#include <charconv>
#include <limits>

#include "ncx/error.hpp"
#include "ncx/numtheory.hpp"

namespace ncx {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::IncompleteTerm: return "IncompleteTerm";
    case ErrorCode::TrailingInput: return "TrailingInput";
    case ErrorCode::IllegalAtom: return "IllegalAtom";
    case ErrorCode::MetricUnsupported: return "MetricUnsupported";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::FormatMismatch: return "FormatMismatch";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::RangeInsufficient: return "RangeInsufficient";
    case ErrorCode::BelowThreshold: return "BelowThreshold";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

constexpr std::array<std::string_view, kLibraryCount> kFlags = {
    "1s", "1s+", "1s*", "1s+*", "1s*p", "1s+p", "1s*pm"};

}  // namespace

SymbolLibrary::SymbolLibrary(LibraryId id, unsigned m_param) : id_(id), m_param_(m_param) {
  if (static_cast<unsigned>(id) >= kLibraryCount) {
    throw Error(ErrorCode::InvalidArgument, "unknown library id");
  }
  if (id == LibraryId::OneSuccTimesPm) {
    if (m_param < 1 || m_param > 255) {
      throw Error(ErrorCode::InvalidArgument, "1s*pm needs 1 <= m <= 255");
    }
  } else if (m_param != 0) {
    throw Error(ErrorCode::InvalidArgument, "m is only meaningful for 1s*pm");
  }
}

bool SymbolLibrary::has_plus() const noexcept {
  return id_ == LibraryId::OneSuccPlus || id_ == LibraryId::OneSuccPlusTimes ||
         id_ == LibraryId::OneSuccPlusPrimes;
}

bool SymbolLibrary::has_times() const noexcept {
  return id_ == LibraryId::OneSuccTimes || id_ == LibraryId::OneSuccPlusTimes ||
         id_ == LibraryId::OneSuccTimesPrimes || id_ == LibraryId::OneSuccTimesPm;
}

bool SymbolLibrary::has_extra_atoms() const noexcept {
  return id_ == LibraryId::OneSuccTimesPrimes || id_ == LibraryId::OneSuccPlusPrimes ||
         id_ == LibraryId::OneSuccTimesPm;
}

unsigned SymbolLibrary::symbol_count() const noexcept {
  return 2u + (has_plus() ? 1u : 0u) + (has_times() ? 1u : 0u);
}

bool SymbolLibrary::supports(CostMetric metric) const noexcept {
  return metric == CostMetric::SymbolCount || !has_extra_atoms();
}

bool SymbolLibrary::is_atom_value(std::uint64_t v) const {
  if (v < 2) return false;
  switch (id_) {
    case LibraryId::OneSuccTimesPrimes:
    case LibraryId::OneSuccPlusPrimes:
      return nt::is_prime(v);
    case LibraryId::OneSuccTimesPm:
      return nt::big_omega(v, m_param_) <= m_param_;
    default:
      return false;
  }
}

std::string_view SymbolLibrary::flag() const noexcept {
  return kFlags[static_cast<std::size_t>(id_)];
}

std::string SymbolLibrary::describe() const {
  std::string out(flag());
  if (id_ == LibraryId::OneSuccTimesPm) out += "(m=" + std::to_string(m_param_) + ")";
  return out;
}

std::string_view to_string(CostMetric metric) noexcept {
  return metric == CostMetric::SymbolCount ? "symbols" : "ones";
}

std::optional<LibraryId> library_from_flag(std::string_view flag) noexcept {
  for (std::size_t i = 0; i < kFlags.size(); ++i) {
    if (kFlags[i] == flag) return static_cast<LibraryId>(i);
  }
  return std::nullopt;
}

std::optional<CostMetric> metric_from_flag(std::string_view flag) noexcept {
  if (flag == "symbols") return CostMetric::SymbolCount;
  if (flag == "ones") return CostMetric::OnesCount;
  return std::nullopt;
}

int arity(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::Succ: return 1;
    case NodeKind::Plus:
    case NodeKind::Times: return 2;
    default: return 0;
  }
}

namespace {

// Arity bookkeeping shared by parse and from_prefix: `open` is the number of
// operand slots still to be filled.
void check_closes(std::span<const Node> nodes) {
  if (nodes.empty()) throw Error(ErrorCode::IncompleteTerm, "empty term");
  long open = 1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (open == 0) {
      throw Error(ErrorCode::TrailingInput, "extra tokens after position " + std::to_string(i));
    }
    open += arity(nodes[i].kind) - 1;
  }
  if (open != 0) {
    throw Error(ErrorCode::IncompleteTerm, std::to_string(open) + " operand(s) missing");
  }
}

std::size_t subterm_end(std::span<const Node> nodes, std::size_t pos) {
  long open = 1;
  while (open > 0) {
    open += arity(nodes[pos].kind) - 1;
    ++pos;
  }
  return pos;
}

}  // namespace

Term Term::one() { return Term({Node{NodeKind::One, 0}}); }

Term Term::atom(NodeKind kind, std::uint64_t value) {
  if ((kind != NodeKind::PrimeAtom && kind != NodeKind::MultAtom) || value < 2) {
    throw Error(ErrorCode::IllegalAtom, "atoms are prime or P_m literals >= 2");
  }
  return Term({Node{kind, value}});
}

Term Term::succ(const Term& inner) {
  std::vector<Node> nodes;
  nodes.reserve(inner.size() + 1);
  nodes.push_back({NodeKind::Succ, 0});
  nodes.insert(nodes.end(), inner.nodes_.begin(), inner.nodes_.end());
  return Term(std::move(nodes));
}

namespace {

std::vector<Node> binary(NodeKind kind, const std::vector<Node>& lhs, const std::vector<Node>& rhs) {
  std::vector<Node> nodes;
  nodes.reserve(lhs.size() + rhs.size() + 1);
  nodes.push_back({kind, 0});
  nodes.insert(nodes.end(), lhs.begin(), lhs.end());
  nodes.insert(nodes.end(), rhs.begin(), rhs.end());
  return nodes;
}

}  // namespace

Term Term::plus(const Term& lhs, const Term& rhs) {
  return Term(binary(NodeKind::Plus, lhs.nodes_, rhs.nodes_));
}

Term Term::times(const Term& lhs, const Term& rhs) {
  return Term(binary(NodeKind::Times, lhs.nodes_, rhs.nodes_));
}

Term Term::from_prefix(std::vector<Node> nodes) {
  check_closes(nodes);
  return Term(std::move(nodes));
}

std::vector<Term> Term::children() const {
  std::vector<Term> out;
  std::size_t pos = 1;
  for (int i = 0; i < arity(root().kind); ++i) {
    const std::size_t end = subterm_end(nodes_, pos);
    out.push_back(Term(std::vector<Node>(nodes_.begin() + static_cast<long>(pos),
                                         nodes_.begin() + static_cast<long>(end))));
    pos = end;
  }
  return out;
}

Term parse(std::string_view text, const SymbolLibrary& lib) {
  std::vector<Node> nodes;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    switch (c) {
      case '1': nodes.push_back({NodeKind::One, 0}); ++i; continue;
      case 'S': nodes.push_back({NodeKind::Succ, 0}); ++i; continue;
      case '+':
        if (!lib.has_plus()) throw Error(ErrorCode::UnknownSymbol, "'+' not in " + lib.describe());
        nodes.push_back({NodeKind::Plus, 0});
        ++i;
        continue;
      case '*':
        if (!lib.has_times()) throw Error(ErrorCode::UnknownSymbol, "'*' not in " + lib.describe());
        nodes.push_back({NodeKind::Times, 0});
        ++i;
        continue;
      case '<': {
        const std::size_t close = text.find('>', i);
        if (close == std::string_view::npos) {
          throw Error(ErrorCode::UnknownSymbol, "unterminated atom literal at offset " + std::to_string(i));
        }
        if (!lib.has_extra_atoms()) {
          throw Error(ErrorCode::UnknownSymbol, "atom literals not in " + lib.describe());
        }
        const std::string_view digits = text.substr(i + 1, close - i - 1);
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
          throw Error(ErrorCode::IllegalAtom, "bad atom literal <" + std::string(digits) + ">");
        }
        if (!lib.is_atom_value(value)) {
          throw Error(ErrorCode::IllegalAtom,
                      std::to_string(value) + " is not an atom of " + lib.describe());
        }
        const NodeKind kind =
            lib.id() == LibraryId::OneSuccTimesPm ? NodeKind::MultAtom : NodeKind::PrimeAtom;
        nodes.push_back({kind, value});
        i = close + 1;
        continue;
      }
      default:
        throw Error(ErrorCode::UnknownSymbol,
                    std::string("unexpected character '") + c + "' at offset " + std::to_string(i));
    }
  }
  return Term::from_prefix(std::move(nodes));
}

std::uint64_t evaluate(const Term& t) {
  const auto nodes = t.nodes();
  std::vector<std::uint64_t> stack;
  stack.reserve(nodes.size());
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    switch (it->kind) {
      case NodeKind::One: stack.push_back(1); break;
      case NodeKind::PrimeAtom:
      case NodeKind::MultAtom: stack.push_back(it->value); break;
      case NodeKind::Succ:
        if (stack.back() == kMax) throw Error(ErrorCode::CapacityExceeded, "value overflows 64 bits");
        ++stack.back();
        break;
      case NodeKind::Plus:
      case NodeKind::Times: {
        // Left operand is on top: prefix order reversed.
        const std::uint64_t lhs = stack.back();
        stack.pop_back();
        const std::uint64_t rhs = stack.back();
        std::uint64_t out = 0;
        const bool overflow = it->kind == NodeKind::Plus ? __builtin_add_overflow(lhs, rhs, &out)
                                                         : __builtin_mul_overflow(lhs, rhs, &out);
        if (overflow) throw Error(ErrorCode::CapacityExceeded, "value overflows 64 bits");
        stack.back() = out;
        break;
      }
    }
  }
  return stack.back();
}

std::string render(const Term& t) {
  std::string out;
  out.reserve(t.size());
  for (const Node& n : t.nodes()) {
    switch (n.kind) {
      case NodeKind::One: out += '1'; break;
      case NodeKind::Succ: out += 'S'; break;
      case NodeKind::Plus: out += '+'; break;
      case NodeKind::Times: out += '*'; break;
      case NodeKind::PrimeAtom:
      case NodeKind::MultAtom:
        out += '<';
        out += std::to_string(n.value);
        out += '>';
        break;
    }
  }
  return out;
}

std::uint64_t cost(const Term& t, CostMetric metric) {
  if (metric == CostMetric::SymbolCount) return t.size();
  std::uint64_t total = 0;
  for (const Node& n : t.nodes()) {
    if (n.kind == NodeKind::PrimeAtom || n.kind == NodeKind::MultAtom) {
      throw Error(ErrorCode::MetricUnsupported, "ones metric is undefined for atom literals");
    }
    if (n.kind == NodeKind::One || n.kind == NodeKind::Succ) ++total;
  }
  return total;
}

std::uint64_t cost(const Term& t, const SymbolLibrary& lib, CostMetric metric) {
  if (!lib.supports(metric)) {
    throw Error(ErrorCode::MetricUnsupported, "ones metric is undefined for " + lib.describe());
  }
  return cost(t, metric);
}

}  // namespace ncx
