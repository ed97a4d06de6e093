#include <doctest.h>

#include <cmath>
#include <random>

#include "nnreach/error.hpp"
#include "nnreach/geometry.hpp"
#include "test_support.hpp"

using namespace nnreach;

TEST_CASE("interval invariants") {
  CHECK_NOTHROW(Interval(1.0, 1.0));
  CHECK_THROWS_AS(Interval(2.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(Interval(0.0, INFINITY), ArgumentError);
  CHECK_THROWS_AS(Interval(NAN, 0.0), ArgumentError);
  CHECK_THROWS_AS(HyperBox(std::vector<Interval>{}), ArgumentError);
  CHECK_THROWS_AS(PartitionSpec({2, 0}), ArgumentError);
}

TEST_CASE("interval arithmetic") {
  const Interval a(-1, 2), b(3, 4);
  CHECK(a + b == Interval(2, 6));
  CHECK(a - b == Interval(-5, -1));
  CHECK(a * b == Interval(-4, 8));
  CHECK(-2.0 * a == Interval(-4, 2));
  CHECK(hull(a, b) == Interval(-1, 4));
}

TEST_CASE("partition_box") {
  SUBCASE("unit square into 10 x 10") {
    const auto cells = partition_box(HyperBox{{-1, 1}, {-1, 1}}, {10, 10});
    CHECK(cells.size() == 100);
  }
  SUBCASE("identity partition") {
    const HyperBox h{{-1, 1}, {-1, 1}};
    const auto cells = partition_box(h, {1, 1});
    REQUIRE(cells.size() == 1);
    CHECK(cells[0] == h);
  }
  SUBCASE("grid boundaries and lexicographic order") {
    const auto cells = partition_box(HyperBox{{0, 1}, {0, 3}}, {2, 3});
    REQUIRE(cells.size() == 6);
    const double xs[] = {0, 0.5, 1};
    const double ys[] = {0, 1, 2, 3};
    std::size_t k = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j, ++k) {
        CHECK(cells[k] == HyperBox{{xs[i], xs[i + 1]}, {ys[j], ys[j + 1]}});
        CHECK(cells.source(k) == k);
        CHECK(cell_multi_index(k, {2, 3}) == std::vector<std::size_t>{std::size_t(i), std::size_t(j)});
      }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(partition_box(HyperBox{{0, 1}}, {2, 2}), ArgumentError);
  }
}

TEST_CASE("partition tiles the box") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> count(1, 7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    const HyperBox h = oracle::random_box(rng, dim);
    std::vector<std::size_t> counts;
    for (std::size_t i = 0; i < dim; ++i) counts.push_back(count(rng));
    const PartitionSpec m(counts);
    const auto cells = partition_box(h, m);
    CHECK(cells.size() == m.cell_count());
    if (h.volume() > 0) CHECK(std::abs(cells.volume_sum() - h.volume()) <= 1e-9 * h.volume());
    for (const auto& c : cells) CHECK(h.contains(c));
    for (int s = 0; s < 200; ++s) CHECK(cells.contains(oracle::uniform_point(rng, h)));
    // Shared faces are bit-identical, so no gaps open up between neighbours.
    CHECK(cells.contains(h.lower()));
    CHECK(cells.contains(h.upper()));
  }
}

TEST_CASE("refined grids reproduce coarse boundaries exactly") {
  const Interval range(-0.7353, 1.9123);
  for (std::size_t m : {3u, 5u, 7u})
    for (std::size_t k : {2u, 4u, 10u})
      for (std::size_t j = 0; j <= m; ++j) CHECK(grid_boundary(range, j, m) == grid_boundary(range, k * j, k * m));
}

TEST_CASE("partition_union") {
  SUBCASE("set equal to bounding box") {
    const auto kept = partition_union(BoxUnion(HyperBox{{0, 1}, {0, 1}}), HyperBox{{0, 1}, {0, 1}}, {2, 2});
    CHECK(kept.size() == 4);
  }
  SUBCASE("touching cells are kept") {
    const auto kept = partition_union(BoxUnion(HyperBox{{0, 1}, {0, 1}}), HyperBox{{0, 2}, {0, 2}}, {2, 2});
    CHECK(kept.size() == 4);
  }
  SUBCASE("only the lower-left cell meets the set") {
    const auto kept = partition_union(BoxUnion(HyperBox{{0, 0.4}, {0, 0.4}}), HyperBox{{0, 2}, {0, 2}}, {2, 2});
    REQUIRE(kept.size() == 1);
    CHECK(kept[0] == HyperBox{{0, 1}, {0, 1}});
    CHECK(kept.source(0) == 0);
  }
  SUBCASE("bounding box must contain the set") {
    CHECK_THROWS_AS(partition_union(BoxUnion(HyperBox{{0, 3}}), HyperBox{{0, 2}}, {2}), ArgumentError);
  }
  SUBCASE("never drops a cell holding a point of the set, never keeps a disjoint one") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      BoxUnion h(2);
      for (int b = 0; b < 3; ++b) h.push_back(oracle::random_box(rng, 2, 2.0));
      const HyperBox bounding = interval_hull(h);
      const auto kept = partition_union(h, bounding, {6, 5});
      for (const auto& cell : kept) {
        bool meets = false;
        for (const auto& b : h) meets = meets || boxes_intersect(cell, b);
        CHECK(meets);
      }
      for (int s = 0; s < 100; ++s) {
        const auto& b = h[static_cast<std::size_t>(s % 3)];
        CHECK(kept.contains(oracle::uniform_point(rng, b)));
      }
    }
  }
}

TEST_CASE("boxes_intersect") {
  CHECK_FALSE(boxes_intersect(HyperBox{{0, 1}, {0, 1}}, HyperBox{{2, 3}, {2, 3}}));
  CHECK(boxes_intersect(HyperBox{{0, 1}, {0, 1}}, HyperBox{{1, 2}, {1, 2}}));
  CHECK(boxes_intersect(HyperBox{{0, 2}, {0, 2}}, HyperBox{{1, 3}, {-1, 0.5}}));
  CHECK_THROWS_AS(boxes_intersect(HyperBox{{0, 1}}, HyperBox{{0, 1}, {0, 1}}), ArgumentError);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto a = oracle::random_box(rng, 3), b = oracle::random_box(rng, 3);
    CHECK(boxes_intersect(a, b) == boxes_intersect(b, a));
  }
}

TEST_CASE("interval_hull") {
  CHECK(interval_hull(BoxUnion(HyperBox{{0, 1}, {0, 1}})) == HyperBox{{0, 1}, {0, 1}});
  CHECK(interval_hull(BoxUnion({HyperBox{{0, 1}, {0, 1}}, HyperBox{{2, 3}, {-1, 0}}})) == HyperBox{{0, 3}, {-1, 1}});
  const auto point = interval_hull(BoxUnion(HyperBox{Interval::point(0.25), Interval::point(-3)}));
  CHECK(point.volume() == 0.0);
  CHECK(point[0].lo() == 0.25);
  CHECK_THROWS_AS(interval_hull(BoxUnion(2)), EmptySetError);

  std::mt19937_64 rng(5);
  BoxUnion u(2);
  for (int i = 0; i < 20; ++i) u.push_back(oracle::random_box(rng, 2));
  const auto h = interval_hull(u);
  for (const auto& b : u) CHECK(h.contains(b));
}

TEST_CASE("cartesian_product") {
  CHECK(cartesian_product(HyperBox{{0, 1}}, HyperBox{{-0.5, 0.5}}) == HyperBox{{0, 1}, {-0.5, 0.5}});
  const auto p = cartesian_product(HyperBox{Interval::point(1)}, HyperBox{Interval::point(2)});
  CHECK(p.volume() == 0.0);
  CHECK(cartesian_product(HyperBox{{-1, 2}}, HyperBox{{0, 1}, {0, 1}}) == HyperBox{{-1, 2}, {0, 1}, {0, 1}});
}

TEST_CASE("sampled_hausdorff_gap") {
  const BoxUnion unit(HyperBox{{0, 1}, {0, 1}});
  CHECK(sampled_hausdorff_gap(unit, {{0.5, 0.5}, {0, 1}}) == 0.0);
  CHECK(sampled_hausdorff_gap(unit, {{2, 0}}) == 1.0);
  CHECK(sampled_hausdorff_gap(unit, {{2, 2}}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(sampled_hausdorff_gap(unit, {}), ArgumentError);
}

TEST_CASE("box_covered_by") {
  const HyperBox target{{0, 2}, {0, 2}};
  const std::vector<HyperBox> halves{HyperBox{{0, 1}, {0, 2}}, HyperBox{{1, 2}, {0, 2}}};
  CHECK(box_covered_by(target, halves));
  const std::vector<HyperBox> gap{HyperBox{{0, 0.9}, {0, 2}}, HyperBox{{1, 2}, {0, 2}}};
  CHECK_FALSE(box_covered_by(target, gap));
  const std::vector<HyperBox> l_shape{HyperBox{{0, 2}, {0, 1}}, HyperBox{{0, 1}, {1, 2}}};
  CHECK_FALSE(box_covered_by(target, l_shape));
  CHECK(box_covered_by(HyperBox{{0.5, 0.5}, {0, 1}}, l_shape));
}
