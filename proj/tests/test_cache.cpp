#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "weylprop/basis_cache.hpp"
#include "weylprop/errors.hpp"

using namespace weylprop;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) { fs::remove_all(path); }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("graph records round trip") {
  for (const auto& x : enumerate_basis(2, 2, 1, 3)) CHECK(graph_from_record(graph_record(x), 2, 2) == x);
  CHECK_THROWS_AS(graph_from_record(nlohmann::json::parse(R"({"labels": [[2,1]]})"), 2, 1), InputError);
}

TEST_CASE("cached levels are byte-identical across runs") {
  TempDir a("weylprop_cache_a");
  TempDir b("weylprop_cache_b");
  BasisCache ca(a.path);
  BasisCache cb(b.path);
  const auto la = cached_level(2, 2, 1, 4, &ca);
  const auto lb = cached_level(2, 2, 1, 4, &cb);
  CHECK(la.graphs == lb.graphs);
  for (int p = 1; p <= 4; ++p) {
    REQUIRE(fs::exists(ca.file_for(2, 2, 1, p)));
    CHECK(slurp(ca.file_for(2, 2, 1, p)) == slurp(cb.file_for(2, 2, 1, p)));
  }
  // A hit reads back the same level and leaves the file untouched.
  const auto before = slurp(ca.file_for(2, 2, 1, 4));
  const auto hit = cached_level(2, 2, 1, 4, &ca);
  CHECK(hit.graphs == la.graphs);
  CHECK(hit.null_graphs == la.null_graphs);
  CHECK(slurp(ca.file_for(2, 2, 1, 4)) == before);
  CHECK(la.graphs == enumerate_basis(2, 2, 1, 4));
}

TEST_CASE("other format versions are misses, bad files are errors") {
  TempDir d("weylprop_cache_bad");
  BasisCache c(d.path);
  fs::create_directories(d.path);
  {
    std::ofstream out(c.file_for(2, 1, 0, 1));
    out << R"({"format_version": 999, "r": 2, "t": 1, "g": 0, "p": 1, "graphs": [], "null_graphs": []})";
  }
  CHECK_FALSE(c.load(2, 1, 0, 1).has_value());
  {
    std::ofstream out(c.file_for(2, 1, 0, 1));
    out << "{not json";
  }
  CHECK_THROWS_AS(c.load(2, 1, 0, 1), InputError);
  {
    // Two-vertex graph in vertex order that is not canonical.
    const auto level = cached_level(3, 1, 0, 2, nullptr);
    REQUIRE(!level.graphs.empty());
    PropGraph x = level.graphs[0];
    std::swap(x.labels[0], x.labels[1]);
    std::swap(x.in_legs[0], x.in_legs[1]);
    std::swap(x.out_legs[0], x.out_legs[1]);
    x.edges = {x.edges[3], x.edges[2], x.edges[1], x.edges[0]};
    BasisLevel bad;
    bad.graphs = {x};
    c.store(3, 1, 0, 2, bad);
  }
  CHECK_THROWS_AS(c.load(3, 1, 0, 2), InputError);
  CHECK(slurp(c.file_for(3, 1, 0, 2)).find(".tmp") == std::string::npos);
}
