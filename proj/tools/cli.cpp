#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <new>
#include <optional>
#include <ostream>

#include "ncx/conjecture_lab.hpp"
#include "ncx/engine.hpp"
#include "ncx/error.hpp"
#include "ncx/extremals.hpp"
#include "ncx/numtheory.hpp"
#include "ncx/report.hpp"

namespace ncx::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

constexpr std::uint64_t kDefaultScanRange = 100'000;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string lib = "1s+*";
  std::string metric = "symbols";
  unsigned m = 0;
  std::string mode = "pruned";
  std::string format = "table";
  std::uint64_t n_max = 0;  // 0: command default
  bool no_cache = false;

  std::vector<std::uint64_t> n;
  std::uint64_t k = 0;
  std::uint64_t k_max = 0;
  bool all = false;
  std::size_t cap = 1000;
  std::vector<std::string> suites;
  std::vector<std::string> scans;
  std::uint64_t stride = 1000;
  std::vector<std::uint64_t> ns;
  std::vector<std::uint64_t> capital_n;
  std::string term;
};

class Session {
 public:
  Session(const Options& o, std::ostream& out, std::ostream& err)
      : o_(o), out_(out), err_(err), lib_(resolve_library(o)), metric_(*metric_from_flag(o.metric)) {
    mode_ = o.mode == "exact" ? BuildMode::Exact : BuildMode::Pruned;
    format_ = o.format == "csv" ? OutputFormat::Csv : o.format == "jsonl" ? OutputFormat::Jsonl : OutputFormat::Table;
    if (!lib_.supports(metric_)) {
      throw Error(ErrorCode::MetricUnsupported, std::string(lib_.flag()) + " has no ones metric");
    }
  }

  const SymbolLibrary& lib() const { return lib_; }
  CostMetric metric() const { return metric_; }
  OutputFormat format() const { return format_; }
  std::ostream& err() { return err_; }

  void emit(const ResultSet& rs) { write(out_, rs, format_); }

  // A table covering exactly 1..n_max, from the cache when possible.
  ComplexityTable table(std::uint64_t n_max);

 private:
  static SymbolLibrary resolve_library(const Options& o) {
    const auto id = library_from_flag(o.lib);
    if (!id) throw UsageError("unknown library " + o.lib);
    return SymbolLibrary(*id, o.m);
  }

  std::string cache_prefix() const {
    return "ncx_" + std::to_string(static_cast<int>(lib_.id())) + "_" + std::to_string(static_cast<int>(metric_)) +
           "_" + std::to_string(lib_.m_param()) + "_";
  }

  std::optional<ComplexityTable> from_cache(const fs::path& dir, std::uint64_t n_max);
  void store(const fs::path& dir, const ComplexityTable& t);

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  SymbolLibrary lib_;
  CostMetric metric_;
  BuildMode mode_;
  OutputFormat format_;
};

fs::path cache_dir() {
  const char* env = std::getenv("NCX_CACHE_DIR");
  return env && *env ? fs::path(env) : fs::path("ncx-cache");
}

ComplexityTable truncate(const ComplexityTable& t, std::uint64_t n_max) {
  if (n_max == t.n_max()) return t;
  const auto c = t.costs();
  const auto g = t.tags();
  const auto op = t.operands();
  return ComplexityTable(t.library(), t.metric(), {c.begin(), c.begin() + n_max + 1},
                         {g.begin(), g.begin() + n_max + 1}, {op.begin(), op.begin() + n_max + 1});
}

std::optional<ComplexityTable> Session::from_cache(const fs::path& dir, std::uint64_t n_max) {
  const std::string prefix = cache_prefix();
  std::optional<std::pair<std::uint64_t, fs::path>> best;
  std::error_code ec;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    const std::string name = it->path().filename().string();
    if (!name.starts_with(prefix) || !name.ends_with(".ncx1")) continue;
    const char* first = name.data() + prefix.size();
    const char* last = name.data() + name.size() - 5;
    std::uint64_t size = 0;
    auto [ptr, res] = std::from_chars(first, last, size);
    if (res != std::errc() || ptr != last || size < n_max) continue;
    if (!best || size < best->first) best.emplace(size, it->path());
  }
  if (!best) return std::nullopt;
  try {
    ComplexityTable t = load_table(best->second);
    if (t.library() == lib_ && t.metric() == metric_ && t.n_max() == best->first) {
      err_ << "loaded " << best->second.string() << "\n";
      return truncate(t, n_max);
    }
    err_ << "ignoring " << best->second.string() << ": header disagrees with its name\n";
  } catch (const Error& e) {
    err_ << "ignoring " << best->second.string() << ": " << e.what() << "\n";
  }
  return std::nullopt;
}

void Session::store(const fs::path& dir, const ComplexityTable& t) {
  try {
    fs::create_directories(dir);
    const fs::path final_path = dir / (cache_prefix() + std::to_string(t.n_max()) + ".ncx1");
    const fs::path tmp = final_path.string() + ".tmp";
    save_table(t, tmp);
    fs::rename(tmp, final_path);
  } catch (const Error& e) {
    err_ << "table not cached: " << e.what() << "\n";
  } catch (const fs::filesystem_error& e) {
    err_ << "table not cached: " << e.what() << "\n";
  }
}

ComplexityTable Session::table(std::uint64_t n_max) {
  if (n_max < 1) throw UsageError("--nmax must be at least 1");
  const fs::path dir = cache_dir();
  if (!o_.no_cache) {
    if (auto t = from_cache(dir, n_max)) return std::move(*t);
  }
  err_ << "building " << lib_.flag() << " " << to_string(metric_) << " table to " << n_max << "\n";
  ComplexityTable t = build_table(lib_, metric_, n_max, mode_);
  if (!o_.no_cache) store(dir, t);
  return t;
}

std::string_view tag_name(OpTag tag) {
  switch (tag) {
    case OpTag::Atom: return "atom";
    case OpTag::Succ: return "succ";
    case OpTag::Plus: return "plus";
    case OpTag::Times: return "times";
  }
  return "?";
}

Cell opt_cell(const std::optional<std::uint64_t>& v) { return v ? Cell{*v} : Cell{}; }

// TABLE output drops to the named columns; CSV and JSONL keep everything.
ResultSet project(const ResultSet& rs, const std::vector<std::string>& keep) {
  std::vector<std::size_t> idx;
  for (const auto& name : keep) {
    idx.push_back(static_cast<std::size_t>(std::find(rs.columns.begin(), rs.columns.end(), name) - rs.columns.begin()));
  }
  ResultSet out(keep);
  for (const auto& row : rs.rows) {
    std::vector<Cell> r;
    for (std::size_t i : idx) r.push_back(row[i]);
    out.add(std::move(r));
  }
  return out;
}

std::uint64_t require_n(const Options& o) {
  if (o.n.empty()) throw UsageError("--n is required");
  if (std::find(o.n.begin(), o.n.end(), 0) != o.n.end()) throw UsageError("--n values must be at least 1");
  return *std::max_element(o.n.begin(), o.n.end());
}

int cmd_build(Session& s, const Options& o) {
  if (o.n_max == 0) throw UsageError("--nmax is required");
  const ComplexityTable t = s.table(o.n_max);
  const BuildStats st = provenance_census(t);
  ResultSet rs({"library", "metric", "m", "n_max", "max_cost", "atom", "succ", "plus", "times"});
  rs.add({std::string(s.lib().flag()), std::string(to_string(s.metric())), std::uint64_t{s.lib().m_param()},
          t.n_max(), std::uint64_t{t.max_cost()}, st.atoms, st.succs, st.plus_splits, st.times_splits});
  s.emit(rs);
  return kExitOk;
}

int cmd_complexity(Session& s, const Options& o) {
  const std::uint64_t top = require_n(o);
  const ComplexityTable t = s.table(o.n_max ? o.n_max : top);
  ResultSet rs({"n", "cost", "presentation"});
  for (std::uint64_t n : o.n) {
    rs.add({n, std::uint64_t{complexity(t, n)}, render(reconstruct_one(t, n))});
  }
  s.emit(rs);
  return kExitOk;
}

int cmd_present(Session& s, const Options& o) {
  if (!o.all) return cmd_complexity(s, o);
  require_n(o);
  ResultSet rs({"n", "cost", "presentation"});
  for (std::uint64_t n : o.n) {
    const Enumeration e = enumerate_optimal(s.lib(), s.metric(), n, o.cap);
    if (e.truncated) s.err() << "n=" << n << ": listing truncated at " << o.cap << " presentations\n";
    for (const Term& term : e.terms) rs.add({n, e.cost, render(term)});
  }
  s.emit(rs);
  return kExitOk;
}

int cmd_eval(Session& s, const Options& o) {
  if (o.term.empty()) throw UsageError("--term is required");
  const Term t = parse(o.term, s.lib());
  ResultSet rs({"term", "value", "cost"});
  rs.add({render(t), evaluate(t), cost(t, s.lib(), s.metric())});
  s.emit(rs);
  return kExitOk;
}

ResultSet extremal_rows(const std::vector<extremal::ExtremalRecord>& records, std::uint64_t only_k) {
  ResultSet rs({"k", "u_k", "u_complete", "M_k", "M_complete"});
  for (const auto& r : records) {
    if (only_k && r.k != only_k) continue;
    rs.add({r.k, opt_cell(r.u_k), r.u_complete, opt_cell(r.m_k), r.m_complete});
  }
  return rs;
}

ResultSet status_view(const ResultSet& rs, const std::string& value, const std::string& flag) {
  ResultSet view = project(rs, {"k", value, flag});
  for (auto& row : view.rows) row[2] = std::string(std::get<bool>(row[2]) ? "complete" : "incomplete");
  return view;
}

int cmd_minimal(Session& s, const Options& o) {
  const ComplexityTable t = s.table(o.n_max ? o.n_max : 10'000);
  const ResultSet rs = extremal_rows(extremal::minimal_elements(t), o.k);
  s.emit(s.format() == OutputFormat::Table ? status_view(rs, "u_k", "u_complete") : rs);
  return kExitOk;
}

int cmd_maximal(Session& s, const Options& o) {
  const std::uint64_t top = o.k ? o.k : o.k_max;
  if (!top) throw UsageError("--k or --kmax is required");
  std::uint64_t n_max = o.n_max;
  if (!n_max) {
    const auto limit = extremal::certifying_n_max(s.lib(), s.metric(), top);
    if (!limit) throw UsageError(std::string(s.lib().flag()) + " has no finite M_k; pass --nmax");
    n_max = std::max<std::uint64_t>(*limit, 1);
  }
  const ComplexityTable t = s.table(n_max);
  auto records = extremal::maximal_elements(t, top);
  const auto minimal = extremal::minimal_elements(t);
  for (auto& r : records) {
    if (r.k <= minimal.size()) {
      r.u_k = minimal[r.k - 1].u_k;
      r.u_complete = minimal[r.k - 1].u_complete;
    }
  }
  const ResultSet rs = extremal_rows(records, o.k);
  s.emit(s.format() == OutputFormat::Table ? status_view(rs, "M_k", "M_complete") : rs);
  return kExitOk;
}

int cmd_defect(Session& s, const Options& o) {
  const std::uint64_t top = require_n(o);
  const ComplexityTable t = s.table(o.n_max ? o.n_max : top);
  ResultSet rs({"n", "cost", "lower_bound", "defect", "zero"});
  for (std::uint64_t n : o.n) {
    const auto d = extremal::defect(t, n);
    rs.add({n, std::uint64_t{t[n]}, lab::lower_bound(n, t.metric()), d.defect, d.zero});
  }
  s.emit(rs);
  return kExitOk;
}

const std::vector<std::string> kSuites = {"bounds", "u2u", "half", "structure", "pi", "mkform"};

std::vector<std::string> expand(const std::vector<std::string>& picked, const std::vector<std::string>& known) {
  std::vector<std::string> out;
  for (const auto& s : picked) {
    if (s == "all") {
      out = known;
      return out;
    }
    out.push_back(s);
  }
  return out;
}

int cmd_verify(Session& s, const Options& o) {
  const bool everything = o.suites.empty() || std::find(o.suites.begin(), o.suites.end(), "all") != o.suites.end();
  const auto suites = o.suites.empty() ? kSuites : expand(o.suites, kSuites);
  const std::uint64_t n_max = o.n_max ? o.n_max : kDefaultScanRange;
  const bool arithmetic = s.lib().id() == LibraryId::OneSuccPlusTimes;
  const bool symbols = s.metric() == CostMetric::SymbolCount;

  std::optional<ComplexityTable> cached;
  auto table = [&]() -> const ComplexityTable& {
    if (!cached) cached.emplace(s.table(n_max));
    return *cached;
  };

  ResultSet rs({"suite", "clause", "checked", "violations", "status"});
  bool failed = false;
  auto row = [&](const std::string& suite, const std::string& clause, std::uint64_t checked, std::uint64_t bad,
                 const std::string& status) {
    if (status == "fail") failed = true;
    rs.add({suite, clause, checked, bad, status});
  };
  auto verdict = [](bool pass) { return std::string(pass ? "pass" : "fail"); };
  auto applicable = [&](const std::string& suite, bool ok) {
    if (ok) return true;
    if (!everything) {
      throw Error(ErrorCode::MetricUnsupported, suite + " does not apply to " + std::string(s.lib().flag()) + " " +
                                                    std::string(to_string(s.metric())));
    }
    row(suite, "-", 0, 0, "skipped");
    return false;
  };

  for (const auto& suite : suites) {
    if (suite == "bounds") {
      if (!applicable(suite, arithmetic)) continue;
      const auto r = lab::verify_bounds(table());
      row(suite, "lower_and_upper", r.checked, r.violation_count, verdict(r.pass()));
      for (const auto& v : r.violations) {
        s.err() << "bounds: n=" << v.n << " cost=" << v.cost << (v.lower ? " below " : " above ") << v.bound << "\n";
      }
    } else if (suite == "u2u") {
      if (!applicable(suite, arithmetic && symbols)) continue;
      const auto records = extremal::minimal_elements(table());
      const auto r = lab::verify_u2u(records);
      row(suite, "u_k+6_and_u_k+4", r.rows.size(), r.counterexample_count, verdict(r.pass()));
    } else if (suite == "half") {
      if (!applicable(suite, arithmetic)) continue;
      const auto r = lab::verify_half(table());
      row(suite, "halving", table().n_max() - 1, r.counterexample_count, verdict(r.pass()));
    } else if (suite == "structure") {
      const auto r = extremal::check_structure(table());
      for (const auto& c : r.clauses) {
        row(suite, c.name, c.checked, c.violations, c.applicable ? verdict(c.pass) : "skipped");
      }
      for (const auto& c : r.observations) {
        row(suite, c.name, c.checked, c.violations, "observed");
        if (!c.detail.empty()) s.err() << c.name << ": " << c.detail << "\n";
      }
    } else if (suite == "pi") {
      if (n_max > nt::kSieveLimit) throw Error(ErrorCode::CapacityExceeded, "sieve range too large");
      const unsigned k_max = o.k_max ? static_cast<unsigned>(o.k_max) : 4;
      const auto r = nt::verify_pi_bounds(nt::sieve(static_cast<std::uint32_t>(std::max<std::uint64_t>(n_max, 2))),
                                          k_max);
      row(suite, "pi_and_pi_k", r.checks, r.violations.size(), verdict(r.pass()));
    } else if (suite == "mkform") {
      if (!applicable(suite, arithmetic && symbols)) continue;
      const std::uint64_t k_top = o.k_max ? o.k_max : 20;
      std::uint64_t checked = 0, bad = 0;
      for (std::uint64_t k = 11; k <= k_top; ++k) {
        const auto limit = extremal::certifying_n_max(s.lib(), s.metric(), k);
        if (!limit || *limit > table().n_max()) break;
        ++checked;
        if (!extremal::mk_form_check(table(), k)) ++bad;
      }
      row(suite, "k=11.." + std::to_string(10 + checked), checked, bad, checked ? verdict(bad == 0) : "skipped");
    } else {
      throw UsageError("unknown suite " + suite);
    }
  }
  s.emit(rs);
  return failed ? kExitFailed : kExitOk;
}

const std::vector<std::string> kScans = {"ratio", "power", "uksquare", "primes", "census", "bounded"};

void append_scan(ResultSet& rs, const lab::ScanReport& r) {
  const std::string id(lab::to_string(r.id));
  for (const auto& row : r.rows) rs.add({id, std::string("row"), row.index, row.observed, row.reference, row.note});
  for (const auto& row : r.blocks) rs.add({id, std::string("block"), row.index, row.observed, row.reference, row.note});
  for (const auto& row : r.counterexamples) {
    rs.add({id, std::string("counterexample"), row.index, row.observed, row.reference, row.note});
  }
  rs.add({id, std::string("summary"), Cell{}, static_cast<double>(r.counterexample_count), Cell{},
          std::string("counterexamples")});
  for (const auto& [key, value] : r.summary) rs.add({id, std::string("summary"), Cell{}, value, Cell{}, key});
}

int cmd_scan(Session& s, const Options& o) {
  const auto scans = o.scans.empty() ? std::vector<std::string>{"ratio"} : expand(o.scans, kScans);
  std::vector<std::uint64_t> ns = o.ns;
  std::uint64_t n_max = o.n_max;
  if (!n_max) n_max = ns.empty() ? kDefaultScanRange : *std::max_element(ns.begin(), ns.end());
  if (ns.empty()) {
    for (std::uint64_t p = 10; p <= n_max; p *= 10) ns.push_back(p);
  }
  const ComplexityTable t = s.table(n_max);
  ResultSet rs({"scan", "kind", "index", "observed", "reference", "note"});
  bool failed = false;
  for (const auto& scan : scans) {
    if (scan == "ratio") {
      append_scan(rs, lab::ratio_series(t, o.stride));
    } else if (scan == "power") {
      append_scan(rs, lab::scan_power_conjecture(t));
    } else if (scan == "uksquare") {
      append_scan(rs, lab::scan_square_conjecture(extremal::minimal_elements(t)));
    } else if (scan == "primes") {
      append_scan(rs, lab::prime_report(extremal::minimal_elements(t)));
    } else if (scan == "census") {
      append_scan(rs, lab::census_scan(t, ns, o.k_max ? o.k_max : t.max_cost()));
    } else if (scan == "bounded") {
      const auto r = lab::bounded_library_check(t);
      failed = failed || !r.pass();
      append_scan(rs, r);
    } else {
      throw UsageError("unknown scan " + scan);
    }
  }
  s.emit(rs);
  return failed ? kExitFailed : kExitOk;
}

int cmd_runs(Session& s, const Options& o) {
  if (o.capital_n.empty()) throw UsageError("--N is required");
  const std::uint64_t k = o.k ? o.k : 2;
  ResultSet rs({"N", "k", "start", "length"});
  for (std::uint64_t n : o.capital_n) {
    const auto r = nt::longest_bad_run(n, k);
    rs.add({r.capital_n, r.k, r.start, r.length});
  }
  s.emit(rs);
  return kExitOk;
}

int cmd_gaps(Session& s, const Options& o) {
  const std::uint64_t n_max = o.n_max ? o.n_max : kDefaultScanRange;
  if (n_max > nt::kSieveLimit) throw Error(ErrorCode::CapacityExceeded, "sieve range too large");
  const auto t = nt::sieve(static_cast<std::uint32_t>(std::max<std::uint64_t>(n_max, 2)));
  const auto series = nt::multiplicity_gaps(t, static_cast<unsigned>(o.k ? o.k : 1));
  ResultSet rs({"m", "value", "gap", "running_max"});
  for (const auto& g : series.terms) {
    rs.add({g.m, std::uint64_t{g.value}, std::uint64_t{g.gap}, std::uint64_t{g.running_max}});
  }
  s.emit(rs);
  return kExitOk;
}

int cmd_growth(Session& s, const Options& o) {
  const std::vector<std::uint64_t> ns = o.ns.empty() ? std::vector<std::uint64_t>{64, 128, 256, 512} : o.ns;
  const auto series = nt::bad_run_growth(o.k ? o.k : 2, ns);
  ResultSet rs({"N", "length", "logN"});
  for (const auto& r : series.rows) rs.add({r.capital_n, r.length, r.log_n});
  s.emit(rs);
  if (series.slope) {
    s.err() << "fit log(length) ~ log(log N): slope=" << *series.slope << " intercept=" << *series.intercept
            << " rms_residual=" << *series.residual << "\n";
  } else {
    s.err() << "fit unavailable: fewer than two nonempty runs\n";
  }
  return kExitOk;
}

int cmd_export(Session& s, const Options& o) {
  if (o.n_max == 0) throw UsageError("--nmax is required");
  const ComplexityTable t = s.table(o.n_max);
  ResultSet rs({"n", "cost", "op", "operand"});
  rs.rows.reserve(t.n_max());
  for (std::uint64_t n = 1; n <= t.n_max(); ++n) {
    const Provenance p = t.provenance(n);
    rs.rows.push_back({n, std::uint64_t{t[n]}, std::string(tag_name(p.tag)), p.operand});
  }
  s.emit(rs);
  return kExitOk;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::CapacityExceeded:
    case ErrorCode::SearchBudgetExceeded:
    case ErrorCode::IoFailure:
    case ErrorCode::FormatMismatch:
    case ErrorCode::ChecksumMismatch:
      return kExitCapacity;
    default:
      return kExitUsage;
  }
}

void add_table_options(CLI::App* sub, Options& o) {
  std::vector<std::string> flags;
  for (int i = 0; i < kLibraryCount; ++i) flags.emplace_back(SymbolLibrary(static_cast<LibraryId>(i), i == 6).flag());
  sub->add_option("--lib", o.lib, "symbol library")->check(CLI::IsMember(flags))->capture_default_str();
  sub->add_option("--metric", o.metric, "cost metric")->check(CLI::IsMember({"symbols", "ones"}))->capture_default_str();
  sub->add_option("--m", o.m, "multiplicity bound for 1s*pm")->check(CLI::Range(0, 255));
  sub->add_option("--mode", o.mode, "build mode")->check(CLI::IsMember({"exact", "pruned"}))->capture_default_str();
  sub->add_option("--nmax", o.n_max, "table range");
  sub->add_flag("--no-cache", o.no_cache, "neither read nor write cached tables");
}

void add_format(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"table", "csv", "jsonl"}))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Integer complexity tables, extremal elements and conjecture scans", "ncx"};
  app.require_subcommand(1);

  using Handler = std::function<int(Session&, const Options&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto command = [&](const char* name, const char* help, Handler h, bool needs_table = true) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (needs_table) add_table_options(sub, o);
    add_format(sub, o);
    commands.emplace_back(sub, std::move(h));
    return sub;
  };

  command("build", "build and cache a table", cmd_build);
  command("complexity", "cost and one optimal presentation", cmd_complexity)
      ->add_option("--n", o.n, "targets")->delimiter(',')->required();
  {
    auto* sub = command("present", "optimal presentations", cmd_present);
    sub->add_option("--n", o.n, "targets")->delimiter(',')->required();
    sub->add_flag("--all", o.all, "list every optimal presentation");
    sub->add_option("--cap", o.cap, "maximum presentations listed per n");
  }
  command("eval", "parse and evaluate a term", cmd_eval)->add_option("--term", o.term, "prefix term")->required();
  command("minimal", "minimal elements u_k", cmd_minimal)->add_option("--k", o.k, "single class");
  {
    auto* sub = command("maximal", "maximal elements M_k", cmd_maximal);
    sub->add_option("--k", o.k, "single class");
    sub->add_option("--kmax", o.k_max, "classes 1..kmax");
  }
  command("defect", "defect against the logarithmic lower bound", cmd_defect)
      ->add_option("--n", o.n, "targets")->delimiter(',')->required();
  {
    auto* sub = command("verify", "check proven statements over a table", cmd_verify);
    sub->add_option("--suite", o.suites, "bounds,u2u,half,structure,pi,mkform,all")->delimiter(',');
    sub->add_option("--kmax", o.k_max, "k range for pi (default 4) and mkform (default 20)");
  }
  {
    auto* sub = command("scan", "conjecture scanners", cmd_scan);
    sub->add_option("--scan", o.scans, "ratio,power,uksquare,primes,census,bounded,all")->delimiter(',');
    sub->add_option("--stride", o.stride, "ratio sampling stride")->check(CLI::PositiveNumber);
    sub->add_option("--Ns", o.ns, "census ranges")->delimiter(',');
    sub->add_option("--kmax", o.k_max, "census classes");
  }
  {
    auto* sub = command("runs", "longest run without bounded factorization", cmd_runs, false);
    sub->add_option("--N", o.capital_n, "N values")->delimiter(',')->required();
    sub->add_option("--k", o.k, "factor bound multiplier (default 2)");
  }
  {
    auto* sub = command("gaps", "gaps between numbers of multiplicity <= k", cmd_gaps, false);
    sub->add_option("--k", o.k, "multiplicity bound (default 1)");
    sub->add_option("--nmax", o.n_max, "sieve range");
  }
  {
    auto* sub = command("growth", "bad-run lengths against log N", cmd_growth, false);
    sub->add_option("--k", o.k, "factor bound multiplier (default 2)");
    sub->add_option("--Ns", o.ns, "N values")->delimiter(',');
  }
  command("export", "dump a table with provenance", cmd_export);

  std::vector<std::string> argv_store{"ncx"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      Session session(o, out, err);
      return handler(session, o);
    }
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitCapacity;
  }
}

}  // namespace ncx::cli
