#include <omp.h>

#include <filesystem>

#include "doctest.h"
#include "weylprop/errors.hpp"
#include "weylprop/homology.hpp"

using namespace weylprop;

namespace {

bool proportional(const GraphVector& a, const GraphVector& b, const Scalar& factor) {
  GraphVector scaled = b;
  scaled *= factor;
  return a == scaled;
}

}  // namespace

TEST_CASE("cell (2,1,0)") {
  const auto cell = build_complex(2, 1, 0);
  CHECK_FALSE(cell.truncated);
  REQUIRE(cell.degrees() == 1);
  CHECK(cell.dim(1) == 1);
  const auto row = betti(cell);
  CHECK(row.betti == std::vector<long>{1});
  const GraphVector mu(single_vertex({2, 1, 0}), 1);
  CHECK(is_cycle(mu, cell));
  CHECK_FALSE(is_boundary(mu, cell));
  CHECK(is_cycle(GraphVector{}, cell));
  CHECK(is_boundary(GraphVector{}, cell));
}

TEST_CASE("cell (1,2,0)") {
  const auto row = betti(build_complex(1, 2, 0));
  CHECK(row.betti == std::vector<long>{1});
}

TEST_CASE("cell (1,1,1)") {
  const auto cell = build_complex(1, 1, 1);
  REQUIRE(cell.degrees() == 2);
  CHECK(cell.dim(1) == 1);
  CHECK(cell.dim(2) == 1);
  const auto& m = cell.boundaries[0];
  REQUIRE(m.columns.size() == 1);
  REQUIRE(m.columns[0].size() == 1);
  // scale * (1/2) with scale = 2
  CHECK(cell.scale == 2);
  CHECK(std::abs(m.columns[0][0].second) == 1);
  const auto row = betti(cell);
  CHECK(row.betti == std::vector<long>{0, 0});
}

TEST_CASE("the empty cell (1,1,0)") {
  const auto cell = build_complex(1, 1, 0);
  CHECK(cell.degrees() == 0);
}

TEST_CASE("relation classes") {
  auto up_to_sign = [](const GraphVector& a, const GraphVector& b, const Scalar& f) {
    return proportional(a, b, f) || proportional(a, b, -f);
  };
  CHECK(up_to_sign(relation_class("involutivity"), d_generator({1, 1, 1}), 2));
  CHECK(up_to_sign(relation_class("jacobi"), d_generator({3, 1, 0}), 1));
  CHECK(up_to_sign(relation_class("cojacobi"), d_generator({1, 3, 0}), 1));
  for (const auto& name : relation_names()) {
    CAPTURE(name);
    const auto key = relation_cell(name);
    const auto cell = build_complex(key.r, key.t, key.g);
    const auto x = relation_class(name);
    CHECK_FALSE(x.empty());
    CHECK(is_cycle(x, cell));
    CHECK(is_boundary(x, cell));
  }
  CHECK_THROWS_AS(relation_class("pentagon"), InputError);
}

TEST_CASE("images of d are boundaries") {
  const auto cell = build_complex(2, 2, 1);
  for (int p = 1; p < cell.degrees(); ++p)
    for (std::size_t i = 0; i < std::min<std::size_t>(cell.dim(p), 5); ++i) {
      const auto dx = differential(cell.graph(p, i));
      if (dx.empty()) continue;
      CHECK(is_boundary(dx, cell));
      CHECK(is_cycle(dx, cell));
    }
}

TEST_CASE("inhomogeneous vectors are rejected") {
  const auto cell = build_complex(2, 2, 1);
  GraphVector x(cell.graph(1, 0), 1);
  x.add(cell.graph(2, 0), 1);
  CHECK_THROWS_AS(is_cycle(x, cell), InputError);
}

TEST_CASE("truncated cells refuse Betti numbers") {
  BuildLimits limits;
  limits.p_max = 2;
  const auto cell = build_complex(2, 2, 1, limits);
  CHECK(cell.truncated);
  CHECK_THROWS_AS(betti(cell), TruncatedError);
  const auto row = truncated_row(cell);
  CHECK_FALSE(row.complete);
  CHECK(row.dims.size() == 2);
}

TEST_CASE("Euler characteristic from chains and from Betti numbers") {
  const auto table = homology_table(grid_cells(5, 0, 1), {}, nullptr);
  for (const auto& row : table.rows) {
    CAPTURE(row.key.r);
    CAPTURE(row.key.t);
    CAPTURE(row.key.g);
    REQUIRE(row.complete);
    CHECK(row.euler_chains == row.euler_betti);
    long chi = 0;
    for (std::size_t i = 0; i < row.dims.size(); ++i)
      chi += (i % 2 == 0 ? -1L : 1L) * static_cast<long>(row.dims[i]);
    CHECK(chi == row.euler_chains);
  }
}

TEST_CASE("certified and exact ranks agree") {
  for (auto key : {CellKey{2, 2, 1}, CellKey{3, 1, 1}, CellKey{2, 3, 0}, CellKey{1, 2, 2}}) {
    const auto cell = build_complex(key.r, key.t, key.g);
    RankOptions exact;
    exact.exact_nonzeros = std::size_t(-1);
    RankOptions modular;
    modular.exact_nonzeros = 0;
    const auto a = betti(cell, exact);
    const auto b = betti(cell, modular);
    CHECK(a.ranks == b.ranks);
    CHECK(a.betti == b.betti);
  }
}

TEST_CASE("tables do not depend on the thread count") {
  const auto cells = grid_cells(5, 0, 1);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = table_csv(homology_table(cells, {}, nullptr));
  omp_set_num_threads(4);
  const auto four = table_csv(homology_table(cells, {}, nullptr));
  omp_set_num_threads(saved);
  CHECK(one == four);
  CHECK(one.rfind("r,t,g,degree,dim_chains,betti\n", 0) == 0);
}

TEST_CASE("json table records status and degrees") {
  const auto j = table_json(homology_table({{2, 1, 0}}, {}, nullptr));
  REQUIRE(j["cells"].size() == 1);
  CHECK(j["cells"][0]["status"] == "complete");
  CHECK(j["cells"][0]["degrees"][0]["betti"] == 1);
  CHECK(j["cells"][0]["degrees"][0]["degree"] == -1);
}

TEST_CASE("cached bases give the same complex") {
  const auto dir = std::filesystem::temp_directory_path() / "weylprop_test_homology_cache";
  std::filesystem::remove_all(dir);
  BasisCache cache(dir);
  const auto fresh = build_complex(2, 2, 1);
  const auto first = build_complex(2, 2, 1, {}, &cache);
  const auto second = build_complex(2, 2, 1, {}, &cache);
  CHECK(first.bases == fresh.bases);
  CHECK(second.bases == fresh.bases);
  std::filesystem::remove_all(dir);
}
