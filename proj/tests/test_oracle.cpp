#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "esdf/oracle.hpp"

using namespace esdf;

TEST_CASE("exact distances on hand-checked points") {
  std::vector<VoxelKey> occ{{0, 0, 0}};
  std::vector<VoxelKey> dom{{0, 0, 0}, {3, 4, 0}, {0, 0, 5}, {-3, -4, 0}};
  auto d = exact_edt_serial(occ, dom);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == doctest::Approx(5.0));  // 3-4-5 triangle
  CHECK(d[2] == doctest::Approx(5.0));
  CHECK(d[3] == doctest::Approx(5.0));
}

TEST_CASE("empty obstacle set is infinite everywhere") {
  std::vector<VoxelKey> dom{{0, 0, 0}, {1, 2, 3}};
  for (auto* fn : {exact_edt_serial, exact_edt_parallel, exact_edt_kdtree}) {
    auto d = fn({}, dom);
    REQUIRE(d.size() == 2);
    CHECK(std::isinf(d[0]));
    CHECK(std::isinf(d[1]));
  }
}

TEST_CASE("three routes agree exactly on random inputs") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> c(-12, 12);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<VoxelKey> occ, dom;
    for (int i = 0; i < 60; ++i) occ.push_back({c(rng), c(rng), c(rng)});
    for (int i = 0; i < 4000; ++i) dom.push_back({c(rng), c(rng), c(rng)});
    auto a = exact_edt_serial(occ, dom);
    auto b = exact_edt_parallel(occ, dom);
    auto k = exact_edt_kdtree(occ, dom);
    REQUIRE(a.size() == dom.size());
    for (size_t i = 0; i < dom.size(); ++i) {
      CHECK(a[i] == b[i]);  // exact: same squared-int arithmetic
      CHECK(a[i] == k[i]);
    }
  }
}

TEST_CASE("translation invariance") {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> c(0, 9);
  std::vector<VoxelKey> occ, dom, occ_t, dom_t;
  const VoxelKey off{101, -57, 23};
  for (int i = 0; i < 20; ++i) occ.push_back({c(rng), c(rng), c(rng)});
  for (int i = 0; i < 500; ++i) dom.push_back({c(rng), c(rng), c(rng)});
  for (auto& k : occ) occ_t.push_back({k.x + off.x, k.y + off.y, k.z + off.z});
  for (auto& k : dom) dom_t.push_back({k.x + off.x, k.y + off.y, k.z + off.z});
  auto a = exact_edt_kdtree(occ, dom);
  auto b = exact_edt_kdtree(occ_t, dom_t);
  for (size_t i = 0; i < dom.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("rms_error on a perfect and an imperfect field") {
  IndexConfig idx;
  idx.backend = IndexBackend::HashedBlocks;
  OccupancyConfig occ_cfg;
  occ_cfg.voxel_size = 1.0;
  occ_cfg.deterministic = true;
  EsdfConfig esdf_cfg;
  esdf_cfg.connectivity = Connectivity::C26;
  EsdfMap map(idx, occ_cfg, esdf_cfg);
  std::vector<VoxelKey> dom;
  for (int x = 0; x < 7; ++x)
    for (int y = 0; y < 7; ++y)
      for (int z = 0; z < 7; ++z) {
        const VoxelKey k{x, y, z};
        dom.push_back(k);
        if (k == VoxelKey{3, 3, 3})
          map.observe_occupied(k);
        else
          map.observe_free(k);
      }
  map.run_epoch();

  auto truth = exact_edt(map.occupied_voxels(), dom);
  auto rep = rms_error(map, dom, truth);
  CHECK_FALSE(rep.empty);
  CHECK(rep.compared_voxel_count == 343);
  CHECK(rep.excluded_voxel_count == 0);
  CHECK(rep.rms_error_voxels == doctest::Approx(0.0));

  // shift truth by one voxel everywhere -> rms = max = 1
  for (auto& t : truth) t += 1.0;
  auto rep2 = rms_error(map, dom, truth);
  CHECK(rep2.rms_error_voxels == doctest::Approx(1.0));
  CHECK(rep2.max_error_voxels == doctest::Approx(1.0));
}

TEST_CASE("rms_error flags an empty comparison") {
  IndexConfig idx;
  idx.backend = IndexBackend::HashedBlocks;
  EsdfMap map(idx, {}, {});
  std::vector<VoxelKey> dom{{0, 0, 0}};
  std::vector<double> truth{kInf};
  auto rep = rms_error(map, dom, truth);
  CHECK(rep.empty);
  CHECK(rep.compared_voxel_count == 0);
  CHECK(rep.excluded_voxel_count == 1);
}

TEST_CASE("csv row shape matches the header") {
  ErrorReport r;
  r.scenario = "s";
  auto count = [](const std::string& s) {
    return std::count(s.begin(), s.end(), ',');
  };
  CHECK(count(ErrorReport::csv_header()) == count(r.csv_row()));
}
