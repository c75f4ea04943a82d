#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "glide/propagation.hpp"
#include "oracles.hpp"

using namespace glide;

TEST_CASE("eikonal update worked examples") {
  const double inf = kInfinity;
  CHECK(eikonal_update(0, inf, inf, 0, 1, 1) == doctest::Approx(0.707107).epsilon(1e-6));
  CHECK(eikonal_update(10, inf, inf, 0, 1, 1) == 1.0);
  // U_x = 3 (left), U_y = 4 (down), h = 1, g = 0.5.
  const double u = eikonal_update(inf, inf, 4, 3, 1, 0.5);
  CHECK(u == doctest::Approx(oracle::two_sided_root(3, 4, 2)).epsilon(1e-12));
  CHECK(u == doctest::Approx(4.822876).epsilon(1e-6));
  CHECK(eikonal_update(inf, inf, inf, inf, 1, 1) == inf);
}

TEST_CASE("eikonal update randomized properties") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> val(0.0, 10.0), hg(0.05, 3.0), bump(0.0, 2.0);
  std::bernoulli_distribution absent(0.15);
  auto draw = [&] { return absent(rng) ? kInfinity : val(rng); };
  for (int trial = 0; trial < 10000; ++trial) {
    double in[4] = {draw(), draw(), draw(), draw()};
    if (std::all_of(in, in + 4, [](double v) { return std::isinf(v); })) in[trial % 4] = val(rng);
    const double h_over_g = hg(rng);
    const double u = eikonal_update_hg(in[0], in[1], in[2], in[3], h_over_g);
    const double lo = *std::min_element(in, in + 4);

    REQUIRE(u >= lo);
    REQUIRE(u <= lo + h_over_g * (1 + 1e-12));

    const double ux = std::min(in[1], in[3]), uy = std::min(in[0], in[2]);
    if (std::isfinite(ux) && std::isfinite(uy) && std::abs(ux - uy) <= h_over_g) {
      const double r = (ux - u) * (ux - u) + (uy - u) * (uy - u);
      REQUIRE(r == doctest::Approx(h_over_g * h_over_g).epsilon(1e-9));
    }

    double raised[4] = {in[0], in[1], in[2], in[3]};
    raised[trial % 4] += bump(rng);
    REQUIRE(eikonal_update_hg(raised[0], raised[1], raised[2], raised[3], h_over_g) >= u);
  }
}

TEST_CASE("front queue order and decrease-key") {
  FrontQueue q(3);
  q.push(0, 3);
  q.push(1, 1);
  q.push(2, 2);
  CHECK(q.pop_min().first == 1);
  CHECK(q.pop_min().first == 2);
  CHECK(q.pop_min().first == 0);
  CHECK(q.empty());

  FrontQueue d(1);
  d.push(0, 3);
  d.push(0, 0.5);
  const auto [node, value] = d.pop_min();
  CHECK(node == 0);
  CHECK(value == 0.5);
  CHECK(d.empty());
  CHECK_THROWS_AS(d.pop_min(), std::out_of_range);
}

TEST_CASE("front queue pops ties by lowest index") {
  FrontQueue q(4);
  q.push(3, 1.0);
  q.push(1, 1.0);
  q.push(2, 1.0);
  CHECK(q.pop_min().first == 1);
  CHECK(q.pop_min().first == 2);
  CHECK(q.pop_min().first == 3);
}

TEST_CASE("front queue pop order is non-decreasing under random use") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> val(0.0, 100.0);
  FrontQueue q(500);
  for (NodeIndex k = 0; k < 500; ++k) q.push(k, val(rng));
  for (int k = 0; k < 300; ++k) q.push(rng() % 500, val(rng));
  double last = -1.0;
  while (!q.empty()) {
    const double v = q.pop_min().second;
    REQUIRE(v >= last);
    last = v;
  }
}

TEST_CASE("adjacency four-neighbor order and counts") {
  const GridSpec g3{3, 3, 1.0, {}};
  const Adjacency a = build_adjacency(g3, false);
  const auto center = a.of(g3.index(1, 1));
  CHECK(center[Adjacency::up] == g3.index(1, 2));
  CHECK(center[Adjacency::right] == g3.index(2, 1));
  CHECK(center[Adjacency::down] == g3.index(1, 0));
  CHECK(center[Adjacency::left] == g3.index(0, 1));
  CHECK(a.count(g3.index(1, 1)) == 4);
  CHECK(a.count(g3.index(0, 0)) == 2);
  CHECK(a.of(g3.index(0, 0))[Adjacency::down] == Adjacency::absent);
  CHECK(a.of(g3.index(0, 0))[Adjacency::left] == Adjacency::absent);

  const GridSpec g2{2, 2, 1.0, {}};
  const Adjacency b = build_adjacency(g2, false);
  for (NodeIndex n = 0; n < 4; ++n) CHECK(b.count(n) == 2);
}

TEST_CASE("triangulated adjacency adds the lower-left to upper-right diagonal") {
  const GridSpec g2{2, 2, 1.0, {}};
  const Adjacency t = build_adjacency(g2, true);
  int diagonal_edges = 0;
  for (NodeIndex n = 0; n < 4; ++n)
    if (t.of(n)[Adjacency::up_right] != Adjacency::absent) ++diagonal_edges;
  CHECK(diagonal_edges == 1);
  CHECK(t.of(g2.index(0, 0))[Adjacency::up_right] == g2.index(1, 1));
  CHECK(t.of(g2.index(1, 1))[Adjacency::down_left] == g2.index(0, 0));
  CHECK(t.of(g2.index(1, 0))[Adjacency::up_right] == Adjacency::absent);
}

TEST_CASE("adjacency is symmetric") {
  for (bool tri : {false, true}) {
    const GridSpec g{7, 5, 1.0, {}};
    const Adjacency a = build_adjacency(g, tri);
    for (NodeIndex n = 0; n < g.node_count(); ++n)
      for (NodeIndex m : a.of(n)) {
        if (m == Adjacency::absent) continue;
        const auto back = a.of(m);
        CHECK(std::find(back.begin(), back.end(), n) != back.end());
      }
    CHECK(a.count(g.index(3, 2)) == (tri ? 6 : 4));
  }
}
