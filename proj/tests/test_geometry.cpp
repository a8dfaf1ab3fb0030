#include "doctest.h"

#include "conepave/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <vector>

using namespace conepave;

namespace {

Rational Q(long n, long d = 1) { return Rational(n, d); }

DualVector pt(std::initializer_list<long> c) {
  DualVector v;
  for (long x : c) v.push_back(Rational(x));
  return v;
}

uint64_t splitmix(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rational rand_q(uint64_t& s, long span = 8) {
  long num = static_cast<long>(splitmix(s) % (2 * span + 1)) - span;
  long den = static_cast<long>(splitmix(s) % 7) + 1;
  return Rational(num, den);
}

// Convex combination of V with positive weight on every index in `on`.
DualVector combo(uint64_t& s, const std::vector<DualVector>& V,
                 const std::vector<size_t>& on) {
  RatVec w(V.size(), Rational(0));
  Rational total = 0;
  for (size_t i : on) {
    w[i] = Rational(static_cast<long>(splitmix(s) % 5) + 1);
    total += w[i];
  }
  DualVector x(V[0].size(), Rational(0));
  for (size_t i = 0; i < V.size(); ++i) {
    if (w[i] == 0) continue;
    for (size_t r = 0; r < x.size(); ++r) x[r] += (w[i] / total) * V[i][r];
  }
  return x;
}

const std::vector<DualVector> square = {pt({0, 0}), pt({1, 0}), pt({1, 1}),
                                        pt({0, 1})};

void check_weights(const RatVec& w, const std::vector<DualVector>& V,
                   const DualVector& x, bool strict) {
  REQUIRE(w.size() == V.size());
  Rational total = 0;
  DualVector rec(x.size(), Rational(0));
  for (size_t i = 0; i < w.size(); ++i) {
    if (strict)
      CHECK(w[i] > 0);
    else
      CHECK(w[i] >= 0);
    total += w[i];
    for (size_t r = 0; r < x.size(); ++r) rec[r] += w[i] * V[i][r];
  }
  CHECK(total == 1);
  CHECK(rec == x);
}

}  // namespace

TEST_CASE("affine hull ranks") {
  CHECK(affine_hull({pt({3, 7})}).dim == 0);
  auto line = affine_hull({pt({0, 0}), pt({1, 0}), pt({2, 0})});
  CHECK(line.dim == 1);
  REQUIRE(line.directions.size() == 1);
  CHECK(line.directions[0][1] == 0);
  CHECK(affine_hull(square).dim == 2);
  CHECK_THROWS_AS(affine_hull({}), std::invalid_argument);
}

TEST_CASE("affine hull of rank-r column sets plus averages") {
  uint64_t s = 11;
  for (size_t trial = 0; trial < 20; ++trial) {
    size_t m = 4, r = 1 + splitmix(s) % 3;
    // r random points, then midpoints of consecutive pairs: affine dim
    // stays r-1, so shifting by a fresh independent origin gives rank r.
    std::vector<DualVector> pts;
    DualVector origin(m, Rational(0));
    pts.push_back(origin);
    for (size_t i = 0; i < r; ++i) {
      DualVector v(m);
      bool retry = true;
      while (retry) {
        for (size_t k = 0; k < m; ++k) v[k] = rand_q(s);
        std::vector<DualVector> probe = pts;
        probe.push_back(v);
        retry = affine_hull(probe).dim != pts.size();
      }
      pts.push_back(v);
    }
    std::vector<DualVector> fattened = pts;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      DualVector mid(m);
      for (size_t k = 0; k < m; ++k)
        mid[k] = (pts[i][k] + pts[i + 1][k]) / 2;
      fattened.push_back(mid);
    }
    CHECK(affine_hull(fattened).dim == r);
  }
}

TEST_CASE("in_affine_hull and hull equality") {
  auto h = affine_hull({pt({0, 0}), pt({2, 2})});
  CHECK(in_affine_hull(pt({1, 1}), h));
  CHECK(in_affine_hull(pt({-3, -3}), h));
  CHECK(!in_affine_hull(pt({1, 0}), h));
  auto h2 = affine_hull({pt({1, 1}), pt({5, 5})});
  CHECK(affine_hull_equal(h, h2));
  auto h3 = affine_hull({pt({0, 0}), pt({1, 0})});
  CHECK(!affine_hull_equal(h, h3));
}

TEST_CASE("conv_member: vertex, midpoint, outside with separator") {
  auto at_vertex = conv_member(pt({1, 1}), square);
  REQUIRE(at_vertex.weights.has_value());
  check_weights(*at_vertex.weights, square, pt({1, 1}), false);

  DualVector mid = {Q(1, 2), Q(0)};
  auto at_mid = conv_member(mid, {pt({0, 0}), pt({1, 0})});
  REQUIRE(at_mid.weights.has_value());
  CHECK((*at_mid.weights)[0] == Q(1, 2));
  CHECK((*at_mid.weights)[1] == Q(1, 2));

  auto outside = conv_member(pt({2, 2}), square);
  REQUIRE(!outside.weights.has_value());
  Rational ax = 0;
  for (size_t r = 0; r < 2; ++r) ax += outside.separator[r] * Rational(2);
  CHECK(ax > outside.threshold);
  for (const auto& v : square) {
    Rational av = 0;
    for (size_t r = 0; r < 2; ++r) av += outside.separator[r] * v[r];
    CHECK(av <= outside.threshold);
  }
}

TEST_CASE("rint_member on segment and square") {
  std::vector<DualVector> seg = {pt({-1}), pt({1})};
  auto mid = rint_member(pt({0}), seg);
  REQUIRE(mid.has_value());
  CHECK((*mid)[0] == Q(1, 2));
  CHECK((*mid)[1] == Q(1, 2));
  CHECK(!rint_member(pt({1}), seg).has_value());

  DualVector edge = {Q(1, 2), Q(0)};
  CHECK(!rint_member(edge, square).has_value());
  DualVector center = {Q(1, 2), Q(1, 2)};
  auto inw = rint_member(center, square);
  REQUIRE(inw.has_value());
  check_weights(*inw, square, center, true);
}

TEST_CASE("minimal_face on the unit square") {
  auto corner = minimal_face(pt({0, 1}), square);
  CHECK(corner.active == std::vector<size_t>{3});

  DualVector bottom = {Q(1, 2), Q(0)};
  auto edge = minimal_face(bottom, square);
  CHECK(edge.active == std::vector<size_t>{0, 1});

  DualVector inner = {Q(1, 2), Q(1, 4)};
  auto all = minimal_face(inner, square);
  CHECK(all.active == std::vector<size_t>{0, 1, 2, 3});

  CHECK_THROWS_AS(minimal_face(pt({5, 5}), square), std::invalid_argument);
}

TEST_CASE("minimal_face active set supports the query in its rint") {
  uint64_t s = 99;
  for (size_t trial = 0; trial < 60; ++trial) {
    size_t m = 2 + splitmix(s) % 3, nv = 3 + splitmix(s) % 5;
    std::vector<DualVector> V;
    for (size_t i = 0; i < nv; ++i) {
      DualVector v(m);
      for (size_t k = 0; k < m; ++k) v[k] = rand_q(s);
      V.push_back(v);
    }
    std::vector<size_t> on;
    for (size_t i = 0; i < nv; ++i)
      if (splitmix(s) % 2) on.push_back(i);
    if (on.empty()) on.push_back(0);
    DualVector x = combo(s, V, on);
    auto face = minimal_face(x, V);
    std::vector<DualVector> sub;
    for (size_t i : face.active) sub.push_back(V[i]);
    CHECK(rint_member(x, sub).has_value());
    // union of representations: every chosen vertex must be active
    for (size_t i : on) {
      CHECK(std::find(face.active.begin(), face.active.end(), i) !=
            face.active.end());
    }
  }
}

TEST_CASE("gleason_equiv on the square") {
  DualVector a = {Q(1, 4), Q(0)}, b = {Q(3, 4), Q(0)};
  CHECK(gleason_equiv(a, a, square));
  CHECK(gleason_equiv(a, b, square));
  DualVector inner = {Q(1, 2), Q(1, 2)};
  DualVector edge = {Q(1, 2), Q(0)};
  CHECK(!gleason_equiv(edge, inner, square));
  CHECK(!gleason_equiv(pt({0, 0}), edge, square));
}

TEST_CASE("harnack_equiv basics") {
  // 1-D segment embedded with a constants row: (x, 1).
  std::vector<DualVector> seg = {pt({-1, 1}), pt({1, 1})};
  DualVector a = {Q(0), Q(1)}, b = {Q(1), Q(1)};
  CHECK(harnack_equiv(a, a, seg));
  CHECK(!harnack_equiv(a, b, seg));
  CHECK(!harnack_equiv(b, a, seg));
  DualVector c = {Q(1, 2), Q(1)};
  CHECK(harnack_equiv(a, c, seg));
}

TEST_CASE("harnack_equiv matches gleason_equiv on random triples") {
  uint64_t s = 2026;
  size_t done = 0;
  while (done < 200) {
    size_t m = 1 + splitmix(s) % 3, nv = 2 + splitmix(s) % 6;
    std::vector<DualVector> V;
    for (size_t i = 0; i < nv; ++i) {
      DualVector v(m + 1);
      for (size_t k = 0; k < m; ++k) v[k] = rand_q(s);
      v[m] = 1;  // constants row
      V.push_back(v);
    }
    auto draw = [&] {
      std::vector<size_t> on;
      for (size_t i = 0; i < nv; ++i)
        if (splitmix(s) % 2) on.push_back(i);
      if (on.empty()) on.push_back(splitmix(s) % nv);
      return combo(s, V, on);
    };
    DualVector a = draw(), b = draw();
    bool h = harnack_equiv(a, b, V);
    CHECK(h == harnack_equiv(b, a, V));
    CHECK(h == gleason_equiv(a, b, V));
    ++done;
  }
}

TEST_CASE("rint_intersect on segments") {
  std::vector<DualVector> seg = {pt({0}), pt({2})};
  auto self = rint_intersect(seg, seg);
  REQUIRE(self.has_value());
  CHECK(rint_member(self->point, seg).has_value());

  CHECK(!rint_intersect({pt({0}), pt({1})}, {pt({1}), pt({2})}).has_value());

  auto overlap = rint_intersect({pt({0}), pt({2})}, {pt({1}), pt({3})});
  REQUIRE(overlap.has_value());
  CHECK(overlap->point[0] > 1);
  CHECK(overlap->point[0] < 2);
  check_weights(overlap->weights1, {pt({0}), pt({2})}, overlap->point, true);
  check_weights(overlap->weights2, {pt({1}), pt({3})}, overlap->point, true);
}

TEST_CASE("membership implications") {
  uint64_t s = 31337;
  for (size_t trial = 0; trial < 80; ++trial) {
    size_t m = 1 + splitmix(s) % 3, nv = 2 + splitmix(s) % 5;
    std::vector<DualVector> V;
    for (size_t i = 0; i < nv; ++i) {
      DualVector v(m);
      for (size_t k = 0; k < m; ++k) v[k] = rand_q(s);
      V.push_back(v);
    }
    DualVector x(m);
    for (size_t k = 0; k < m; ++k) x[k] = rand_q(s, 4);
    auto cm = conv_member(x, V);
    auto rm = rint_member(x, V);
    if (rm.has_value()) CHECK(cm.weights.has_value());
    if (!cm.weights.has_value()) CHECK(!rm.has_value());
  }
}
