#include <random>

#include "bifix/transformation.hpp"
#include "doctest.h"

using namespace bifix;

namespace {

Transformation random_transformation(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<State> img(0, n - 1);
  std::vector<State> images(static_cast<std::size_t>(n));
  for (auto& v : images) v = img(rng);
  return Transformation(std::move(images));
}

}  // namespace

TEST_CASE("composition applies the left operand first") {
  const Transformation s({2, 1, 3, 3});
  const Transformation t({1, 2, 3, 3});
  CHECK(compose(s, t) == Transformation({3, 2, 3, 3}));
  CHECK(compose(Transformation::identity(4), t) == t);
  CHECK(compose(t, t) == Transformation({2, 3, 3, 3}));
  CHECK(s * t == compose(s, t));
}

TEST_CASE("composition rejects mismatched state counts") {
  CHECK_THROWS_AS(compose(Transformation::identity(3), Transformation::identity(4)),
                  DimensionError);
}

TEST_CASE("constructor validates images") {
  CHECK_THROWS_AS(Transformation({0, 4, 1, 2}), DimensionError);
  CHECK_THROWS_AS(Transformation({-1, 0}), DimensionError);
  CHECK_THROWS_AS(Transformation(std::vector<State>{}), DimensionError);
}

TEST_CASE("semiconstant maps") {
  CHECK(semiconstant({1, 2}, 3, 5) == Transformation({0, 3, 3, 3, 4}));
  CHECK(semiconstant({}, 0, 3) == Transformation::identity(3));
  CHECK(semiconstant({0, 1, 2}, 2, 3) == Transformation({2, 2, 2}));
  CHECK_THROWS_AS(semiconstant({5}, 0, 3), DimensionError);
  CHECK_THROWS_AS(semiconstant({0}, 7, 3), DimensionError);
}

TEST_CASE("orbit decomposition") {
  SUBCASE("cycle plus fixed point") {
    const auto dec = orbits(Transformation({1, 2, 0, 3}));
    REQUIRE(dec.orbit_count() == 2);
    const int oc = dec.orbit_of[0];
    CHECK(dec.orbit_of[1] == oc);
    CHECK(dec.orbit_of[2] == oc);
    CHECK(dec.core[static_cast<std::size_t>(oc)] == std::vector<State>{0, 1, 2});
    const int of = dec.orbit_of[3];
    CHECK(of != oc);
    CHECK(dec.is_fixed_point(of));
    CHECK(dec.core[static_cast<std::size_t>(of)] == std::vector<State>{3});
  }
  SUBCASE("identity splits into fixed points") {
    const auto dec = orbits(Transformation::identity(3));
    CHECK(dec.orbit_count() == 3);
    for (int o = 0; o < 3; ++o) CHECK(dec.is_fixed_point(o));
  }
  SUBCASE("everything flows into one sink") {
    const auto dec = orbits(Transformation({1, 2, 3, 3}));
    CHECK(dec.orbit_count() == 1);
    CHECK(dec.core[0] == std::vector<State>{3});
  }
}

TEST_CASE("in_degree") {
  const Transformation t({1, 2, 3, 3});
  CHECK(in_degree(t, 3) == 2);
  CHECK(in_degree(t, 0) == 0);
  CHECK(in_degree(Transformation::identity(4), 0) == 1);
}

TEST_CASE("distance") {
  const Transformation t({1, 2, 3, 3});
  CHECK(distance(t, 0, 3) == 3);
  CHECK(distance(t, 2, 2) == 0);
  CHECK_FALSE(distance(t, 3, 0).has_value());
}

TEST_CASE("tree_of") {
  const Transformation t({1, 2, 3, 3});
  CHECK(tree_of(t, 2) == std::vector<State>{0, 1, 2});
  CHECK(tree_of(t, 0) == std::vector<State>{0});
  CHECK_THROWS_AS(tree_of(Transformation({1, 2, 0, 3}), 0), DomainError);
}

TEST_CASE("packed keys round-trip and order like image sequences") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 500; ++iter) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const auto a = random_transformation(n, rng);
    const auto b = random_transformation(n, rng);
    CHECK(Transformation::from_key(a.key(), n) == a);
    CHECK((a.key() < b.key()) == (a < b));
    CHECK(compose_keys(a.key(), b.key(), n) == compose(a, b).key());
  }
}

TEST_CASE("associativity and identity on random triples") {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 10'000; ++iter) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const auto a = random_transformation(n, rng);
    const auto b = random_transformation(n, rng);
    const auto c = random_transformation(n, rng);
    REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
    REQUIRE(compose(Transformation::identity(n), a) == a);
    REQUIRE(compose(a, Transformation::identity(n)) == a);
  }
}

TEST_CASE("in-degrees sum to n and orbits reach their core") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto t = random_transformation(n, rng);
    int total = 0;
    for (State q = 0; q < n; ++q) total += in_degree(t, q);
    REQUIRE(total == n);
    const auto dec = orbits(t);
    for (State q = 0; q < n; ++q) {
      const State w = t.apply_power(q, n);
      REQUIRE(dec.orbit_of[static_cast<std::size_t>(w)] ==
              dec.orbit_of[static_cast<std::size_t>(q)]);
      REQUIRE(dec.on_core(w));
    }
  }
}

TEST_CASE("distance is bounded by n-1 and reflexive at 0") {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto t = random_transformation(n, rng);
    for (State p = 0; p < n; ++p) {
      REQUIRE(distance(t, p, p) == 0);
      for (State q = 0; q < n; ++q) {
        const auto d = distance(t, p, q);
        if (d) REQUIRE(*d <= n - 1);
      }
    }
  }
}
