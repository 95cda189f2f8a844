#include <doctest.h>

#include "trop/cone.h"

using namespace trop;

static IVec iv(std::initializer_list<long> xs) {
  IVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}
static QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

TEST_CASE("orthant round trip") {
  Cone c = orthant(3);
  CHECK(c.dim == 3);
  CHECK(c.rays.size() == 3);
  CHECK(c.lin.empty());
  CHECK(c.ineq.size() == 3);
  Cone v = cone_from_v(3, c.rays, {});
  CHECK(v == c);
  CHECK(cone_contains(c, qv({1, 2, 0})));
  CHECK(!cone_contains(c, qv({1, -1, 0})));
  CHECK(in_relint(c, qv({1, 2, 3})));
  CHECK(!in_relint(c, qv({1, 0, 3})));
}

TEST_CASE("full space, zero cone, half space") {
  Cone f = full_space(2);
  CHECK(f.dim == 2);
  CHECK(f.rays.empty());
  CHECK(f.lin.size() == 2);
  CHECK(f.ineq.empty());
  Cone z = zero_cone(2);
  CHECK(z.dim == 0);
  CHECK(z.eq.size() == 2);
  CHECK(cone_contains(z, qv({0, 0})));
  CHECK(!cone_contains(z, qv({1, 0})));
  // half plane a1 <= 0
  Cone h = cone_from_h(2, {iv({-1, 0})}, {});
  CHECK(h.dim == 2);
  CHECK(h.lin.size() == 1);
  CHECK(h.rays.size() == 1);
  CHECK(cone_contains(h, qv({-3, 5})));
  CHECK(!cone_contains(h, qv({1, 5})));
}

TEST_CASE("simplicial and non-simplicial H to V") {
  // cone over a square: 4 facets, 4 extreme rays
  IMat ineq = {iv({1, 0, 0}), iv({-1, 0, 1}), iv({0, 1, 0}), iv({0, -1, 1})};
  Cone c = cone_from_h(3, ineq);
  CHECK(c.dim == 3);
  CHECK(c.rays.size() == 4);
  CHECK(c.ineq.size() == 4);
  for (auto& r : c.rays)
    for (auto& a : ineq) CHECK(dot(a, r) >= 0);
  Cone v = cone_from_v(3, c.rays);
  CHECK(v == c);
  CHECK(v.ineq == c.ineq);
}

TEST_CASE("lineality detected from H") {
  // {x + y >= 0, x + y <= 0} = line x = -y
  Cone c = cone_from_h(2, {iv({1, 1}), iv({-1, -1})});
  CHECK(c.dim == 1);
  CHECK(c.rays.empty());
  CHECK(c.lin.size() == 1);
  CHECK(cone_contains(c, qv({5, -5})));
  CHECK(!cone_contains(c, qv({1, 1})));
}

TEST_CASE("polar duality") {
  Cone c = orthant(2);
  Cone p = polar(c);
  CHECK(p.rays.size() == 2);
  CHECK(cone_contains(p, qv({-1, -1})));
  CHECK(!cone_contains(p, qv({1, 0})));
  Cone pp = polar(p);
  CHECK(pp == c);
}

TEST_CASE("random V/H round trips") {
  Rng rng(3);
  for (int trial = 0; trial < 120; ++trial) {
    int n = (int)rng.uniform(1, 4);
    int k = (int)rng.uniform(1, 5);
    IMat gens;
    for (int i = 0; i < k; ++i) {
      IVec g = rng.vec(n, -3, 3);
      if (!is_zero(g)) gens.push_back(g);
    }
    Cone c = cone_from_v(n, gens);
    // every generator is inside, facets are satisfied
    for (auto& g : gens) CHECK(cone_contains_i(c, g));
    for (auto& r : c.rays)
      for (auto& a : c.ineq) CHECK(dot(a, r) >= 0);
    // round trip through the facet description
    Cone h = cone_from_h(n, c.ineq, c.eq);
    CHECK(h == c);
    // polar twice is the identity
    CHECK(polar(polar(c)) == c);
    // dim consistency
    IMat all = c.rays;
    all.insert(all.end(), c.lin.begin(), c.lin.end());
    CHECK(c.dim == rank_of(all));
  }
}

TEST_CASE("intersect and minimal face") {
  Cone a = orthant(3);
  Cone b = cone_from_h(3, {iv({-1, 1, 0})});  // y >= x
  Cone c = intersect(a, b);
  CHECK(cone_contains(c, qv({1, 2, 1})));
  CHECK(!cone_contains(c, qv({2, 1, 1})));
  Cone f = minimal_face(a, qv({1, 0, 2}));
  CHECK(f.dim == 2);
  CHECK(cone_contains(f, qv({3, 0, 1})));
  CHECK(!cone_contains(f, qv({3, 1, 1})));
  Cone g = minimal_face(a, qv({0, 0, 0}));
  CHECK(g.dim == 0);
}

TEST_CASE("image of a cone") {
  // orthant in Q^3 projected to first two coordinates
  Cone c = orthant(3);
  IMat p = {iv({1, 0, 0}), iv({0, 1, 0})};
  Cone img = cone_image(c, p);
  CHECK(img == orthant(2));
  // projection collapsing to a line
  IMat q = {iv({1, -1, 0})};
  Cone img2 = cone_image(c, q);
  CHECK(img2.dim == 1);
  CHECK(img2.lin.size() == 1);
}

TEST_CASE("product") {
  Cone c = product(orthant(1), orthant(2));
  CHECK(c == orthant(3));
}
