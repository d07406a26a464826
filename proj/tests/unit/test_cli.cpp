#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ncx::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Points NCX_CACHE_DIR at a fresh directory for the lifetime of the object.
struct FreshCache {
  fs::path dir;
  explicit FreshCache(const std::string& name) : dir(fs::temp_directory_path() / name) {
    fs::remove_all(dir);
    setenv("NCX_CACHE_DIR", dir.c_str(), 1);
  }
  ~FreshCache() { fs::remove_all(dir); }
};

}  // namespace

TEST_CASE("complexity prints n, cost and a presentation") {
  FreshCache cache("ncx_cli_complexity");
  const auto r = invoke({"complexity", "--lib", "1s+*", "--metric", "symbols", "--n", "6"});
  CHECK(r.code == 0);
  CHECK(r.out == "6,6,*S1SS1\n");
}

TEST_CASE("maximal element with automatic range") {
  FreshCache cache("ncx_cli_maximal");
  const auto r = invoke({"maximal", "--lib", "1s+*", "--metric", "symbols", "--k", "14"});
  CHECK(r.code == 0);
  CHECK(r.out == "14,64,complete\n");
  const auto csv = invoke({"maximal", "--k", "14", "--format", "csv"});
  CHECK(csv.out.rfind("k,u_k,u_complete,M_k,M_complete\n", 0) == 0);
}

TEST_CASE("verify suite passes on a fresh table") {
  FreshCache cache("ncx_cli_verify");
  const auto r = invoke({"verify", "--lib", "1s+*", "--metric", "symbols", "--nmax", "100000", "--suite", "all"});
  CHECK(r.code == 0);
  CHECK(r.out.find(",fail") == std::string::npos);
  CHECK(r.out.find("mkform,") != std::string::npos);
}

TEST_CASE("exit codes") {
  FreshCache cache("ncx_cli_exit");
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"complexity", "--lib", "nope", "--n", "3"}).code == 2);
  CHECK(invoke({"complexity", "--n", "0"}).code == 2);
  CHECK(invoke({"complexity", "--lib", "1s+p", "--metric", "ones", "--n", "3"}).code == 2);
  CHECK(invoke({"verify", "--lib", "1s*", "--suite", "bounds", "--nmax", "100"}).code == 2);
  CHECK(invoke({"export", "--lib", "1s", "--nmax", "40000", "--no-cache"}).code == 3);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("damaged cache files are rebuilt, not trusted") {
  FreshCache cache("ncx_cli_damaged");
  const auto first = invoke({"complexity", "--n", "100"});
  const fs::path file = cache.dir / "ncx_3_0_0_100.ncx1";
  REQUIRE(fs::exists(file));
  fs::resize_file(file, fs::file_size(file) - 3);
  const auto second = invoke({"complexity", "--n", "100"});
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
  CHECK(second.err.find("ignoring") != std::string::npos);
}

TEST_CASE("cache transparency") {
  FreshCache cache("ncx_cli_cache");
  const std::vector<std::vector<std::string>> commands = {
      {"complexity", "--n", "6,9,1000"},
      {"minimal", "--nmax", "5000", "--format", "jsonl"},
      {"scan", "--scan", "all", "--lib", "1s+*", "--metric", "ones", "--nmax", "20000"},
      {"defect", "--n", "64,65", "--format", "csv"},
      {"export", "--nmax", "50"},
  };
  for (const auto& args : commands) {
    const auto cold = invoke(args);
    const auto warm = invoke(args);
    const auto uncached = invoke([&] {
      auto a = args;
      a.push_back("--no-cache");
      return a;
    }());
    CAPTURE(args[0]);
    CHECK(cold.out == warm.out);
    CHECK(cold.out == uncached.out);
  }
  // A larger cached table serves smaller requests with identical output.
  const auto small_first = invoke({"scan", "--scan", "power", "--nmax", "3000"});
  invoke({"build", "--nmax", "9000"});
  fs::remove(cache.dir / "ncx_3_0_0_3000.ncx1");
  const auto from_large = invoke({"scan", "--scan", "power", "--nmax", "3000"});
  CHECK(from_large.err.find("loaded") != std::string::npos);
  CHECK(from_large.err.find("building") == std::string::npos);
  CHECK(small_first.out == from_large.out);
}

TEST_CASE("csv and jsonl carry the same data") {
  FreshCache cache("ncx_cli_formats");
  const auto csv = invoke({"present", "--n", "6", "--all", "--format", "csv"});
  const auto jsonl = invoke({"present", "--n", "6", "--all", "--format", "jsonl"});
  CHECK(csv.out == "n,cost,presentation\n6,6,*S1SS1\n6,6,SSSSS1\n");
  std::istringstream in(jsonl.out);
  std::string line;
  std::vector<std::string> terms;
  while (std::getline(in, line)) terms.push_back(nlohmann::json::parse(line)["presentation"]);
  CHECK(terms == std::vector<std::string>{"*S1SS1", "SSSSS1"});
}

TEST_CASE("number theory commands") {
  CHECK(invoke({"runs", "--N", "4", "--k", "2"}).out == "4,2,11,1\n");
  const auto gaps = invoke({"gaps", "--k", "1", "--nmax", "12"});
  CHECK(gaps.out.rfind("1,1,1,1\n2,2,1,1\n3,3,2,2\n", 0) == 0);
  const auto growth = invoke({"growth", "--Ns", "4"});
  CHECK(growth.out.rfind("4,1,", 0) == 0);
  CHECK(invoke({"eval", "--term", "*S1SS1", "--metric", "ones"}).out == "*S1SS1,6,5\n");
  CHECK(invoke({"eval", "--term", "*SSSSS"}).code == 2);
}
