#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "esdf/esdf_map.hpp"
#include "esdf/oracle.hpp"

using namespace esdf;

namespace {

EsdfMap make_map(EsdfConfig esdf = {}, double voxel_size = 1.0) {
  IndexConfig idx;
  idx.backend = IndexBackend::HashedBlocks;
  idx.block_size = 8;
  OccupancyConfig occ;
  occ.voxel_size = voxel_size;
  occ.deterministic = true;
  return EsdfMap(idx, occ, esdf);
}

// Observe every voxel in [lo, hi] as free, then flip `occupied` on.
void observe_box(EsdfMap& map, const VoxelKey& lo, const VoxelKey& hi,
                 const std::vector<VoxelKey>& occupied) {
  std::set<VoxelKey> occ(occupied.begin(), occupied.end());
  for (int x = lo.x; x <= hi.x; ++x)
    for (int y = lo.y; y <= hi.y; ++y)
      for (int z = lo.z; z <= hi.z; ++z) {
        const VoxelKey k{x, y, z};
        if (occ.count(k))
          map.observe_occupied(k);
        else
          map.observe_free(k);
      }
}

std::vector<VoxelKey> box_domain(const VoxelKey& lo, const VoxelKey& hi) {
  std::vector<VoxelKey> d;
  for (int x = lo.x; x <= hi.x; ++x)
    for (int y = lo.y; y <= hi.y; ++y)
      for (int z = lo.z; z <= hi.z; ++z) d.push_back({x, y, z});
  return d;
}

double field_vs_exact_max_err(const EsdfMap& map,
                              std::span<const VoxelKey> domain) {
  auto truth = exact_edt_serial(map.occupied_voxels(), domain);
  double worst = 0.0;
  for (size_t i = 0; i < domain.size(); ++i) {
    const double d = map.voxel_distance(domain[i]);
    if (std::isinf(d) && std::isinf(truth[i])) continue;
    worst = std::max(worst, std::abs(d - truth[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("single insert produces literal wavefront distances") {
  EsdfConfig cfg;
  cfg.connectivity = Connectivity::C26;
  EsdfMap map = make_map(cfg);
  observe_box(map, {-3, -3, -3}, {3, 3, 3}, {{0, 0, 0}});
  auto rep = map.run_epoch();
  CHECK(rep.inserts == 1);
  CHECK(rep.deletes == 0);

  CHECK(map.voxel_distance({0, 0, 0}) == 0.0);
  CHECK(map.voxel_distance({1, 0, 0}) == 1.0);
  CHECK(map.voxel_distance({1, 1, 0}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(map.voxel_distance({1, 1, 1}) == doctest::Approx(std::sqrt(3.0)));
  CHECK(map.voxel_distance({3, 2, 1}) == doctest::Approx(std::sqrt(14.0)));
  // every voxel points at the only obstacle
  for (const auto& k : box_domain({-3, -3, -3}, {3, 3, 3}))
    CHECK(map.voxel_coc(k) == VoxelKey{0, 0, 0});
}

TEST_CASE("deleting the sole obstacle returns the field to infinity") {
  EsdfMap map = make_map();
  observe_box(map, {-2, -2, -2}, {2, 2, 2}, {{0, 0, 0}});
  map.run_epoch();
  CHECK(map.voxel_distance({2, 2, 2}) < kInf);

  map.clear_occupied({0, 0, 0});
  auto rep = map.run_epoch();
  CHECK(rep.deletes == 1);
  for (const auto& k : box_domain({-2, -2, -2}, {2, 2, 2})) {
    CHECK(map.voxel_distance(k) == kInf);
    CHECK_FALSE(defined(map.voxel_coc(k)));
  }
  // everything returns to the Ideal Point list
  CHECK(map.ip_members().size() == 125);
  CHECK(map.check_dll_partition());
}

TEST_CASE("delete adopts the surviving obstacle exactly") {
  EsdfConfig cfg;
  cfg.connectivity = Connectivity::C26;
  EsdfMap map = make_map(cfg);
  const VoxelKey lo{0, 0, 0}, hi{9, 9, 9};
  observe_box(map, lo, hi, {{2, 5, 5}, {8, 5, 5}});
  map.run_epoch();
  map.clear_occupied({2, 5, 5});
  map.run_epoch();
  CHECK(field_vs_exact_max_err(map, box_domain(lo, hi)) ==
        doctest::Approx(0.0));
  for (const auto& k : box_domain(lo, hi))
    CHECK(map.voxel_coc(k) == VoxelKey{8, 5, 5});
}

TEST_CASE("limited observation patch recovers the shorter route") {
  // 1-D corridor: only x axis observed; obstacle appears next to a voxel
  // whose queue entry was consumed before the insert arrived.
  auto run = [](bool patch) {
    EsdfConfig cfg;
    cfg.connectivity = Connectivity::C6;
    cfg.limited_observation_patch = patch;
    EsdfMap map = make_map(cfg);
    for (int x = 0; x <= 4; ++x) map.observe_free({x, 0, 0});
    map.observe_occupied({4, 0, 0});
    map.run_epoch();
    // new closer obstacle at x=0; simultaneously the far one vanishes
    map.observe_occupied({0, 0, 0});
    map.clear_occupied({4, 0, 0});
    map.run_epoch();
    return map;
  };
  auto with = run(true);
  CHECK(with.voxel_distance({1, 0, 0}) == 1.0);
  CHECK(with.voxel_coc({1, 0, 0}) == VoxelKey{0, 0, 0});
  CHECK(with.voxel_distance({3, 0, 0}) == 3.0);
  CHECK(with.count_fixed_point_violations() == 0);
  auto without = run(false);
  // without the patch the field still converges here; the guarantee the
  // patch adds shows up as zero violations under partial observation below
  CHECK(without.voxel_distance({1, 0, 0}) <= 4.0);
}

TEST_CASE("random churn matches exact truth across rules and connectivity") {
  std::mt19937 rng(7);
  const VoxelKey lo{0, 0, 0}, hi{9, 9, 9};
  const auto domain = box_domain(lo, hi);
  std::uniform_int_distribution<int> coord(0, 9);

  for (auto conn : {Connectivity::C6, Connectivity::C18, Connectivity::C24,
                    Connectivity::C26, Connectivity::C32}) {
    EsdfConfig cfg;
    cfg.connectivity = conn;
    EsdfMap map = make_map(cfg);
    observe_box(map, lo, hi, {});
    std::set<VoxelKey> occ;
    for (int epoch = 0; epoch < 6; ++epoch) {
      for (int i = 0; i < 8; ++i) {
        const VoxelKey k{coord(rng), coord(rng), coord(rng)};
        if (occ.count(k)) {
          map.clear_occupied(k);
          occ.erase(k);
        } else {
          map.observe_occupied(k);
          occ.insert(k);
        }
      }
      map.run_epoch();
      CHECK(map.count_fixed_point_violations() == 0);
      CHECK(map.check_dll_partition());
      // upper-bound property: field never under-reports
      auto truth = exact_edt_serial(map.occupied_voxels(), domain);
      for (size_t i = 0; i < domain.size(); ++i) {
        const double d = map.voxel_distance(domain[i]);
        if (std::isinf(truth[i])) {
          CHECK(std::isinf(d));
        } else {
          CHECK(d >= truth[i] - 1e-9);
        }
      }
    }
  }
}

TEST_CASE("fully observed C26 field is exact") {
  EsdfConfig cfg;
  cfg.connectivity = Connectivity::C26;
  EsdfMap map = make_map(cfg);
  const VoxelKey lo{0, 0, 0}, hi{10, 10, 10};
  observe_box(map, lo, hi, {{5, 5, 5}});
  map.run_epoch();
  auto domain = box_domain(lo, hi);
  auto truth = exact_edt_serial(map.occupied_voxels(), domain);
  auto rep = rms_error(map, domain, truth);
  CHECK(rep.rms_error_voxels == doctest::Approx(0.0));
  CHECK(rep.max_error_voxels == doctest::Approx(0.0));
  CHECK(rep.compared_voxel_count == 11 * 11 * 11);
}

TEST_CASE("quasi-euclidean rule over-reports off-axis, never under-reports") {
  EsdfConfig e, q;
  e.connectivity = q.connectivity = Connectivity::C6;
  q.rule = UpdateRule::QuasiEuclidean;
  EsdfMap em = make_map(e), qm = make_map(q);
  const VoxelKey lo{0, 0, 0}, hi{8, 8, 8};
  for (auto* m : {&em, &qm}) {
    observe_box(*m, lo, hi, {{4, 4, 4}});
    m->run_epoch();
  }
  // C6 broken-line distance to (0,0,0) is Manhattan = 12
  CHECK(qm.voxel_distance({0, 0, 0}) == doctest::Approx(12.0));
  // Euclidean rule with exact coc arithmetic stays exact even on C6 here
  CHECK(em.voxel_distance({0, 0, 0}) ==
        doctest::Approx(std::sqrt(48.0)));
  for (const auto& k : box_domain(lo, hi))
    CHECK(qm.voxel_distance(k) >= em.voxel_distance(k) - 1e-9);
  CHECK(qm.count_fixed_point_violations() == 0);
}

TEST_CASE("queue disciplines agree on the converged field") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> coord(0, 7);
  EsdfConfig f, p;
  p.discipline = QueueDiscipline::PriorityByDistance;
  EsdfMap fm = make_map(f), pm = make_map(p);
  const VoxelKey lo{0, 0, 0}, hi{7, 7, 7};
  std::vector<VoxelKey> occ;
  for (int i = 0; i < 6; ++i) occ.push_back({coord(rng), coord(rng), coord(rng)});
  for (auto* m : {&fm, &pm}) {
    observe_box(*m, lo, hi, occ);
    m->run_epoch();
  }
  for (const auto& k : box_domain(lo, hi)) {
    CHECK(fm.voxel_distance(k) == doctest::Approx(pm.voxel_distance(k)));
  }
}

TEST_CASE("metric queries: nearest voxel, interpolation, gradient") {
  EsdfConfig cfg;
  cfg.connectivity = Connectivity::C26;
  EsdfMap map = make_map(cfg, 0.5);  // half-meter voxels
  observe_box(map, {0, 0, 0}, {10, 10, 10}, {{5, 5, 5}});
  map.run_epoch();

  // center of voxel (7,5,5): two voxels away -> 2 * 0.5 m
  const Eigen::Vector3d p{7.5 * 0.5, 5.5 * 0.5, 5.5 * 0.5};
  auto q = map.query_distance(p);
  CHECK(q.observed);
  CHECK(q.distance == doctest::Approx(1.0));

  // midway between the centers of (7,5,5) and (8,5,5): (2+3)/2 voxels
  const Eigen::Vector3d mid{8.0 * 0.5, 5.5 * 0.5, 5.5 * 0.5};
  auto iq = map.query_distance_interpolated(mid);
  REQUIRE(iq.has_value());
  CHECK(*iq == doctest::Approx(2.5 * 0.5));

  auto g = map.query_gradient(p);
  REQUIRE(g.has_value());
  CHECK((*g).normalized().x() == doctest::Approx(1.0).epsilon(1e-6));

  // unobserved point
  CHECK_FALSE(map.query_distance({100.0, 0.0, 0.0}).observed);
  CHECK_FALSE(map.query_distance_interpolated({100.0, 0.0, 0.0}).has_value());
}

TEST_CASE("signed mode yields negative distances inside a solid block") {
  EsdfConfig cfg;
  cfg.connectivity = Connectivity::C26;
  cfg.signed_mode = true;
  EsdfMap map = make_map(cfg, 1.0);
  std::vector<VoxelKey> solid;
  for (int x = 3; x <= 6; ++x)
    for (int y = 3; y <= 6; ++y)
      for (int z = 3; z <= 6; ++z) solid.push_back({x, y, z});
  observe_box(map, {0, 0, 0}, {9, 9, 9}, solid);
  map.run_epoch();

  auto center = [](const VoxelKey& k) {
    return Eigen::Vector3d{k.x + 0.5, k.y + 0.5, k.z + 0.5};
  };
  CHECK(map.signed_distance(center({4, 4, 4})) < 0.0);   // interior
  CHECK(map.signed_distance(center({0, 0, 0})) > 0.0);   // free space
  // sign flips exactly at the occupancy boundary on a straight probe
  CHECK(map.signed_distance(center({3, 4, 4})) < 0.0);  // last occupied
  CHECK(map.signed_distance(center({2, 4, 4})) > 0.0);  // first free
  // complement layer keeps its own consistent bookkeeping
  CHECK(map.check_dll_partition(nullptr, FieldLayer::Complement));
  CHECK(map.count_fixed_point_violations(FieldLayer::Complement) == 0);
}

TEST_CASE("identical operation sequences give identical fields") {
  auto build = [] {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coord(0, 11);
    EsdfMap map = make_map();
    observe_box(map, {0, 0, 0}, {11, 11, 11}, {});
    for (int e = 0; e < 4; ++e) {
      for (int i = 0; i < 10; ++i)
        map.observe_occupied({coord(rng), coord(rng), coord(rng)});
      map.run_epoch();
    }
    return map;
  };
  auto a = build();
  auto b = build();
  for (const auto& k : box_domain({0, 0, 0}, {11, 11, 11})) {
    CHECK(a.voxel_distance(k) == b.voxel_distance(k));
    CHECK(a.voxel_coc(k) == b.voxel_coc(k));
  }
}
