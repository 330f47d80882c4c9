#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "weavehash/groups.hpp"
#include "weavehash/rng.hpp"
#include "weavehash/su2.hpp"

using namespace weavehash;

namespace {

// Angle histogram with keys rounded to 1e-6 radians.
std::map<long, int> angle_classes(const FiniteGroup& g) {
  std::map<long, int> out;
  for (int i = 0; i < g.order(); ++i) {
    out[std::lround(g.rotation_angle(i) * 1e6)]++;
  }
  return out;
}

long akey(double angle) { return std::lround(angle * 1e6); }

}  // namespace

TEST_CASE("group orders and identity placement") {
  const FiniteGroup ico = FiniteGroup::icosahedral();
  const FiniteGroup cub = FiniteGroup::cubic();
  CHECK(ico.order() == 60);
  CHECK(cub.order() == 24);
  CHECK(ico.name() == "icosahedral");
  CHECK(cub.name() == "cubic");
  for (const FiniteGroup* g : {&ico, &cub}) {
    CHECK(g->quat(0).w == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(g->quat(0).x) < 1e-12);
    CHECK(std::fabs(g->quat(0).y) < 1e-12);
    CHECK(std::fabs(g->quat(0).z) < 1e-12);
    CHECK(g->rotation_angle(0) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("elements are canonical unit quaternions in sorted order") {
  for (const char* name : {"icosahedral", "cubic"}) {
    const FiniteGroup g = FiniteGroup::by_name(name);
    for (int i = 0; i < g.order(); ++i) {
      const Quat& q = g.quat(i);
      CHECK(std::fabs(q.norm2() - 1.0) < 1e-12);
      // canonical representative is a fixed point of canonical_sign
      const Quat c = canonical_sign(q);
      CHECK(c.w == q.w);
      CHECK(c.x == q.x);
      CHECK(c.y == q.y);
      CHECK(c.z == q.z);
      CHECK(q.w >= -1e-12);
    }
    for (int i = 0; i + 1 < g.order(); ++i) {
      const Quat& a = g.quat(i);
      const Quat& b = g.quat(i + 1);
      const std::array<double, 4> ka{-a.w, -a.x, -a.y, -a.z};
      const std::array<double, 4> kb{-b.w, -b.x, -b.y, -b.z};
      CHECK(ka < kb);
    }
    // distinct projective classes
    for (int i = 0; i < g.order(); ++i) {
      for (int j = i + 1; j < g.order(); ++j) {
        CHECK(proj_distance(g.quat(i), g.quat(j)) > 1e-3);
      }
    }
  }
}

TEST_CASE("multiplication table matches quaternion products") {
  for (const char* name : {"icosahedral", "cubic"}) {
    const FiniteGroup g = FiniteGroup::by_name(name);
    const int n = g.order();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Quat p = canonical_sign(g.quat(i) * g.quat(j));
        const Quat& t = g.quat(g.mul(i, j));
        CHECK(std::fabs(p.w - t.w) < 1e-9);
        CHECK(std::fabs(p.x - t.x) < 1e-9);
        CHECK(std::fabs(p.y - t.y) < 1e-9);
        CHECK(std::fabs(p.z - t.z) < 1e-9);
      }
    }
  }
}

TEST_CASE("tables satisfy the group axioms") {
  for (const char* name : {"icosahedral", "cubic"}) {
    const FiniteGroup g = FiniteGroup::by_name(name);
    const int n = g.order();
    for (int i = 0; i < n; ++i) {
      CHECK(g.mul(0, i) == i);
      CHECK(g.mul(i, 0) == i);
      CHECK(g.mul(i, g.inv(i)) == 0);
      CHECK(g.mul(g.inv(i), i) == 0);
      // rows and columns are permutations
      std::set<int> row, col;
      for (int j = 0; j < n; ++j) {
        row.insert(g.mul(i, j));
        col.insert(g.mul(j, i));
      }
      CHECK(static_cast<int>(row.size()) == n);
      CHECK(static_cast<int>(col.size()) == n);
    }
    // full associativity check
    bool assoc = true;
    for (int i = 0; i < n && assoc; ++i) {
      for (int j = 0; j < n && assoc; ++j) {
        for (int k = 0; k < n; ++k) {
          if (g.mul(g.mul(i, j), k) != g.mul(i, g.mul(j, k))) {
            assoc = false;
            break;
          }
        }
      }
    }
    CHECK(assoc);
  }
}

TEST_CASE("icosahedral rotation angle classes") {
  const FiniteGroup g = FiniteGroup::icosahedral();
  const auto classes = angle_classes(g);
  CHECK(classes.size() == 5);
  CHECK(classes.at(akey(0.0)) == 1);
  CHECK(classes.at(akey(2.0 * M_PI / 5.0)) == 12);
  CHECK(classes.at(akey(4.0 * M_PI / 5.0)) == 12);
  CHECK(classes.at(akey(2.0 * M_PI / 3.0)) == 20);
  CHECK(classes.at(akey(M_PI)) == 15);
  // angle is a class function: invariant under conjugation
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const int h = static_cast<int>(rng.next() % 60);
    const int c = static_cast<int>(rng.next() % 60);
    const int conj = g.mul(g.mul(c, h), g.inv(c));
    CHECK(g.rotation_angle(conj) == doctest::Approx(g.rotation_angle(h)).epsilon(1e-9));
  }
}

TEST_CASE("cubic rotation angle classes split by axis type") {
  const FiniteGroup g = FiniteGroup::cubic();
  const auto classes = angle_classes(g);
  CHECK(classes.size() == 4);
  CHECK(classes.at(akey(0.0)) == 1);
  CHECK(classes.at(akey(M_PI / 2.0)) == 6);
  CHECK(classes.at(akey(2.0 * M_PI / 3.0)) == 8);
  CHECK(classes.at(akey(M_PI)) == 9);
  // the nine half-turns: three about coordinate axes, six about face diagonals
  int coordinate = 0, diagonal = 0;
  for (int i = 0; i < g.order(); ++i) {
    if (std::fabs(g.rotation_angle(i) - M_PI) > 1e-9) continue;
    const Quat& q = g.quat(i);
    const double m = std::max({std::fabs(q.x), std::fabs(q.y), std::fabs(q.z)});
    if (m > 0.99) {
      ++coordinate;
    } else {
      CHECK(m == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
      ++diagonal;
    }
  }
  CHECK(coordinate == 3);
  CHECK(diagonal == 6);
}

TEST_CASE("five-fold axes are the icosahedron vertex directions") {
  const FiniteGroup g = FiniteGroup::icosahedral();
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double len = std::sqrt(1.0 + phi * phi);
  std::vector<std::array<double, 3>> vertices;
  for (double s1 : {1.0, -1.0}) {
    for (double s2 : {phi, -phi}) {
      vertices.push_back({0.0, s1 / len, s2 / len});
      vertices.push_back({s1 / len, s2 / len, 0.0});
      vertices.push_back({s2 / len, 0.0, s1 / len});
    }
  }
  REQUIRE(vertices.size() == 12);

  std::vector<bool> hit(12, false);
  int fivefold = 0;
  const double half = M_PI / 5.0;  // half of the 2*pi/5 rotation angle
  for (int i = 0; i < g.order(); ++i) {
    if (std::fabs(g.rotation_angle(i) - 2.0 * M_PI / 5.0) > 1e-9) continue;
    ++fivefold;
    const Quat& q = g.quat(i);
    const double s = std::sin(half);
    const std::array<double, 3> axis{q.x / s, q.y / s, q.z / s};
    int found = -1;
    for (size_t v = 0; v < vertices.size(); ++v) {
      const double d = std::hypot(axis[0] - vertices[v][0], axis[1] - vertices[v][1],
                                  axis[2] - vertices[v][2]);
      if (d < 1e-9) {
        found = static_cast<int>(v);
        break;
      }
    }
    REQUIRE(found >= 0);
    CHECK(!hit[found]);
    hit[found] = true;
  }
  CHECK(fivefold == 12);
  CHECK(std::count(hit.begin(), hit.end(), true) == 12);
}

TEST_CASE("closing element completes products to the identity") {
  const FiniteGroup g = FiniteGroup::icosahedral();
  CHECK(closing_element(g, {}) == 0);
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const int k = 1 + static_cast<int>(rng.next() % 4);
    std::vector<int> idx(k);
    for (int& v : idx) v = static_cast<int>(rng.next() % 60);
    const int c = closing_element(g, idx);
    int acc = 0;
    for (int v : idx) acc = g.mul(acc, v);
    CHECK(g.mul(acc, c) == 0);
  }
  CHECK_THROWS_AS(closing_element(g, std::array<int, 1>{60}), std::invalid_argument);
  CHECK_THROWS_AS(closing_element(g, std::array<int, 1>{-1}), std::invalid_argument);
}

TEST_CASE("construction is deterministic") {
  for (const char* name : {"icosahedral", "cubic"}) {
    const FiniteGroup a = FiniteGroup::by_name(name);
    const FiniteGroup b = FiniteGroup::by_name(name);
    REQUIRE(a.order() == b.order());
    CHECK(std::memcmp(a.quats().data(), b.quats().data(),
                      sizeof(Quat) * a.quats().size()) == 0);
    for (int i = 0; i < a.order(); ++i) {
      CHECK(a.inv(i) == b.inv(i));
      for (int j = 0; j < a.order(); ++j) CHECK(a.mul(i, j) == b.mul(i, j));
    }
  }
}

TEST_CASE("unknown group names are rejected") {
  CHECK_THROWS_AS(FiniteGroup::by_name("tetrahedral"), std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroup::by_name(""), std::invalid_argument);
}
