#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "bifix/conflicts.hpp"
#include "bifix/phi.hpp"
#include "doctest.h"

using namespace bifix;

namespace {

Classification expect_label(const Transformation& t, CaseLabel label,
                            Subsubcase sub = Subsubcase::kNone) {
  const auto cls = classify(t);
  CHECK(cls.label == label);
  CHECK(cls.sub == sub);
  return cls;
}

// The middle states t and s map differently all lie in one component of s.
bool diff_confined_to_one_orbit(const Transformation& t, const Transformation& s) {
  const auto dec = orbits(s);
  std::set<int> touched;
  for (State q = 1; q <= t.n() - 3; ++q) {
    if (t[q] != s[q]) touched.insert(dec.orbit_of[static_cast<std::size_t>(q)]);
  }
  return touched.size() <= 1;
}

}  // namespace

TEST_CASE("members of the target set are fixed by the map") {
  const auto wge6 = enumerate_wge6(8);
  for (std::size_t i = 0; i < wge6.size(); i += 997) {
    const auto cls = classify(wge6[i]);
    CHECK(cls.label == CaseLabel::k1);
    CHECK(phi(wge6[i], cls) == wge6[i]);
  }
}

TEST_CASE("a chain into the final state with all middles dead is already in the target") {
  // 0 -> 1 -> n-2 and every other middle to the sink: third family.
  expect_label(Transformation({1, 6, 7, 7, 7, 7, 7, 7}), CaseLabel::k1);
}

TEST_CASE("hand-worked classifications and images, chains ending at the sink") {
  SUBCASE("2.1: a cycle") {
    const Transformation t({1, 7, 3, 2, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k2_1);
    CHECK(cls.ctx.p == 1);
    CHECK(cls.ctx.k == 0);
    CHECK(cls.ctx.r == 2);
    CHECK(cls.ctx.z == 3);
    CHECK(phi(t, cls) == Transformation({7, 2, 3, 2, 7, 7, 7, 7}));
  }
  SUBCASE("2.2: no cycle, k >= 1") {
    const Transformation t({1, 2, 7, 7, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k2_2);
    CHECK(cls.ctx.p == 1);
    CHECK(cls.ctx.k == 1);
    CHECK(phi(t, cls) == Transformation({7, 1, 1, 7, 7, 7, 7, 7}));
  }
  SUBCASE("2.3: two lone fixed points") {
    const Transformation t({1, 7, 2, 3, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k2_3);
    CHECK(cls.ctx.f1 == 2);
    CHECK(cls.ctx.f2 == 3);
    const auto s = phi(t, cls);
    CHECK(s == Transformation({7, 3, 3, 2, 7, 7, 7, 7}));
    // Exactly one cycle, of length 2, with in-degrees 1 and 2.
    const auto dec = orbits(s);
    int cycles = 0;
    for (int o = 0; o < dec.orbit_count(); ++o) {
      if (!dec.is_fixed_point(o)) {
        ++cycles;
        REQUIRE(dec.core[static_cast<std::size_t>(o)].size() == 2);
        std::multiset<int> degs{in_degree(s, dec.core[static_cast<std::size_t>(o)][0]),
                                in_degree(s, dec.core[static_cast<std::size_t>(o)][1])};
        CHECK(degs == std::multiset<int>{1, 2});
      }
    }
    CHECK(cycles == 1);
  }
  SUBCASE("2.4.1: long movable chain into the sink") {
    const Transformation t({1, 7, 3, 4, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k2_4_1);
    CHECK(cls.ctx.x == 2);
    CHECK(cls.ctx.ell == 2);
    CHECK(phi(t, cls) == Transformation({7, 4, 3, 4, 7, 7, 7, 7}));
  }
  SUBCASE("2.4.2: short chain, shared image") {
    const Transformation t({1, 7, 4, 4, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k2_4_2);
    CHECK(cls.ctx.x == 2);
    CHECK(cls.ctx.y == 3);
    CHECK(phi(t, cls) == Transformation({7, 3, 3, 4, 2, 7, 7, 7}));
  }
  SUBCASE("2.4.3: short chain, lone image") {
    const Transformation t({1, 7, 3, 7, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k2_4_3, Subsubcase::kI);
    CHECK(phi(t, cls) == Transformation({7, 2, 6, 2, 7, 7, 7, 7}));
  }
  SUBCASE("2.4.4: movable chain into the final state") {
    const Transformation t({1, 7, 3, 6, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k2_4_4);
    CHECK(phi(t, cls) == Transformation({7, 6, 3, 6, 7, 7, 7, 7}));
  }
  SUBCASE("2.4.5: movable chain into a fixed point") {
    const Transformation t({1, 7, 3, 3, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k2_4_5);
    const auto s = phi(t, cls);
    CHECK(s == Transformation({7, 3, 3, 3, 7, 7, 7, 7}));
    CHECK_FALSE(has_cycle(s));
    CHECK(in_degree(s, 3) >= 3);
  }
  SUBCASE("2.5.1: several middles straight to the sink") {
    const Transformation t({1, 7, 2, 7, 7, 6, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k2_5_1);
    CHECK(cls.ctx.f == 2);
    CHECK(cls.ctx.r_list == std::vector<State>{3, 4});
    CHECK(phi(t, cls) == Transformation({7, 2, 2, 4, 3, 6, 7, 7}));
  }
  SUBCASE("2.5.2: middles into the final state instead") {
    const Transformation t({1, 7, 2, 6, 6, 6, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k2_5_2);
    CHECK(cls.ctx.q_list == std::vector<State>{3, 4, 5});
    CHECK(phi(t, cls) == Transformation({7, 2, 2, 5, 3, 4, 7, 7}));
  }
}

TEST_CASE("hand-worked classifications and images, chains ending at the final state") {
  SUBCASE("3.1: a cycle") {
    const Transformation t({1, 6, 3, 2, 7, 6, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_1);
    CHECK(cls.ctx.r == 2);
    CHECK(cls.ctx.q_list == std::vector<State>{5});
    CHECK(phi(t, cls) == Transformation({6, 2, 3, 2, 7, 1, 7, 7}));
  }
  SUBCASE("3.2.1 (ii): long movable chain, no small q") {
    const Transformation t({1, 6, 3, 4, 7, 6, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_2_1, Subsubcase::kII);
    CHECK(cls.ctx.x == 2);
    CHECK(cls.ctx.ell == 2);
    CHECK(phi(t, cls) == Transformation({6, 4, 3, 4, 7, 1, 7, 7}));
  }
  SUBCASE("3.2.1 (i): a q below x") {
    const Transformation t({3, 6, 5, 6, 2, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_2_1, Subsubcase::kI);
    CHECK(cls.ctx.p == 3);
    CHECK(cls.ctx.x == 4);
    CHECK(cls.ctx.ell == 2);
    CHECK(phi(t, cls) == Transformation({6, 3, 5, 5, 2, 5, 7, 7}));
  }
  SUBCASE("3.2.2: short chain, shared image") {
    const Transformation t({1, 6, 4, 4, 7, 6, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_2_2);
    CHECK(cls.ctx.y == 3);
    CHECK(phi(t, cls) == Transformation({6, 3, 3, 4, 2, 1, 7, 7}));
  }
  SUBCASE("3.2.3 (i): short chain, lone image, q present") {
    const Transformation t({1, 6, 3, 7, 6, 6, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_2_3, Subsubcase::kI);
    CHECK(phi(t, cls) == Transformation({6, 2, 2, 2, 1, 1, 7, 7}));
  }
  SUBCASE("3.2.3 (ii): no q and p above the chain image") {
    const Transformation t({3, 2, 7, 6, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_2_3, Subsubcase::kII);
    CHECK(cls.ctx.x == 1);
    CHECK(phi(t, cls) == Transformation({6, 7, 1, 1, 7, 7, 7, 7}));
  }
  SUBCASE("3.2.4: movable chain into a fixed point") {
    const Transformation t({1, 6, 3, 3, 6, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_2_4);
    const auto s = phi(t, cls);
    CHECK(s == Transformation({6, 3, 1, 2, 2, 7, 7, 7}));
    // Exactly one cycle: p, x.t^ell, ..., x.
    const auto dec = orbits(s);
    int cycles = 0;
    for (int o = 0; o < dec.orbit_count(); ++o) {
      if (!dec.is_fixed_point(o)) {
        ++cycles;
        CHECK(dec.core[static_cast<std::size_t>(o)].size() ==
              static_cast<std::size_t>(*cls.ctx.ell) + 2);
      }
    }
    CHECK(cycles == 1);
  }
  SUBCASE("3.3: two lone fixed points") {
    const Transformation t({1, 6, 2, 3, 6, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_3);
    CHECK(phi(t, cls) == Transformation({6, 3, 3, 2, 1, 7, 7, 7}));
  }
  SUBCASE("3.4.1: two or more q states") {
    const Transformation t({1, 6, 2, 6, 6, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_4_1);
    CHECK(cls.ctx.q_list == std::vector<State>{3, 4});
    CHECK(cls.ctx.r_list == std::vector<State>{5});
    CHECK(phi(t, cls) == Transformation({6, 2, 2, 4, 3, 4, 7, 7}));
  }
  SUBCASE("3.4.2: exactly one q state") {
    const Transformation t({1, 6, 2, 6, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_4_2);
    CHECK(phi(t, cls) == Transformation({6, 2, 2, 2, 1, 1, 7, 7}));
  }
  SUBCASE("3.4.3: no q state") {
    const Transformation t({1, 6, 2, 7, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_4_3);
    CHECK(cls.ctx.r_list == std::vector<State>{3, 4, 5});
    CHECK(phi(t, cls) == Transformation({6, 2, 2, 1, 2, 2, 7, 7}));
  }
  SUBCASE("3.5.1: long initial chain, lone tail preimage") {
    const Transformation t({1, 2, 6, 7, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_5_1);
    CHECK(cls.ctx.k == 1);
    CHECK(phi(t, cls) == Transformation({6, 1, 1, 7, 7, 7, 7, 7}));
  }
  SUBCASE("3.5.2: long initial chain, shared tail preimage") {
    const Transformation t({1, 2, 6, 2, 7, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_5_2);
    CHECK(cls.ctx.y == 3);
    CHECK(phi(t, cls) == Transformation({6, 3, 1, 7, 7, 7, 7, 7}));
  }
  SUBCASE("3.5.3: long initial chain with q states") {
    const Transformation t({1, 2, 6, 6, 3, 7, 7, 7});
    const auto cls = expect_label(t, CaseLabel::k3_5_3);
    CHECK(cls.ctx.c == 1);
    CHECK(cls.ctx.x == 4);
    CHECK(cls.ctx.q_m == 3);
    CHECK(phi(t, cls) == Transformation({6, 4, 1, 3, 3, 7, 7, 7}));

    const Transformation t2({1, 2, 6, 6, 6, 7, 7, 7});
    const auto cls2 = expect_label(t2, CaseLabel::k3_5_3);
    CHECK(cls2.ctx.c == 0);
    CHECK(cls2.ctx.x == 3);
    CHECK(phi(t2, cls2) == Transformation({6, 3, 1, 4, 3, 7, 7, 7}));
  }
}

TEST_CASE("preconditions") {
  // Focuses {1,2} along the initial chain, so outside the candidate set.
  CHECK_THROWS_AS(classify(Transformation({1, 1, 7, 7, 7, 7, 7, 7})),
                  PreconditionError);
  CHECK_THROWS_AS(classify(Transformation({1, 3, 3, 3})), DomainError);  // n = 4
}

TEST_CASE("totality, codomain, anchors and orbit confinement over the full candidate sets") {
  for (int n : {6, 7}) {
    const auto bbf = enumerate_bbf(n);
    const auto wge6 = enumerate_wge6(n);
    std::map<CaseLabel, int> histogram;
    for (const auto& t : bbf.elements()) {
      const auto cls = classify(t);
      ++histogram[cls.label];
      const auto s = phi(t, cls);
      REQUIRE(wge6.contains(s));
      // Fixed exactly on the target set, with the supercase anchor on 0.
      REQUIRE((s == t) == (cls.label == CaseLabel::k1));
      const auto name = to_string(cls.label);
      if (name[0] == '2') REQUIRE(s[0] == n - 1);
      if (name[0] == '3') REQUIRE(s[0] == n - 2);
      // Subsubcases only where defined.
      if (cls.sub != Subsubcase::kNone) {
        REQUIRE((cls.label == CaseLabel::k2_4_3 || cls.label == CaseLabel::k3_2_1 ||
                 cls.label == CaseLabel::k3_2_3));
      }
      // Orbit confinement of the changed middle states; the three cases that
      // rebuild a cycle away from p's landing spot genuinely touch two
      // components and claim no such property.
      if (cls.label != CaseLabel::k2_5_1 && cls.label != CaseLabel::k2_5_2 &&
          cls.label != CaseLabel::k3_4_1) {
        REQUIRE(diff_confined_to_one_orbit(t, s));
      }
    }
    // Every supercase is populated.
    CHECK(histogram[CaseLabel::k1] == static_cast<int>(wge6.size()));
    CHECK(histogram.size() > 10);
  }
}

TEST_CASE("codomain membership holds across the full n = 8 candidate set") {
  const auto bbf = enumerate_bbf(8, /*allow_large=*/true);
  for (const auto& t : bbf.elements()) {
    REQUIRE(in_wge6(phi(t)));
  }
}

TEST_CASE("at n = 8 the map collides only on pairs no semigroup can host") {
  // Grouping the full candidate set by image: every two preimages of a
  // common image must be in conflict, otherwise some transition semigroup
  // could contain both and the map would fail to separate them. Checking
  // all pairs makes the injectivity claim exhaustive at n = 8, not sampled.
  const auto bbf = enumerate_bbf(8, /*allow_large=*/true);
  std::map<std::uint64_t, std::vector<std::size_t>> by_image;
  for (std::size_t i = 0; i < bbf.size(); ++i) {
    by_image[phi(bbf[i]).key()].push_back(i);
  }
  // The map is onto the target family.
  CHECK(by_image.size() == wge6_cardinality(8));
  std::size_t pairs = 0;
  for (const auto& [key, group] : by_image) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        ++pairs;
        REQUIRE(conflict(bbf[group[a]], bbf[group[b]]).conflicting);
      }
    }
  }
  CHECK(pairs == 36095);
}

TEST_CASE("the map is injective on genuine witness semigroups") {
  const auto report = audit_injectivity(transition_semigroup(witness_dfa(8)));
  CHECK(report.injective);
  CHECK(report.image_in_wge6);
  CHECK(report.domain_size == 24743);
  CHECK(report.image_size == 24743);
  CHECK_FALSE(report.has_colliding_pair);
}

TEST_CASE("collisions on artificial subsets are reported, not errors") {
  // Two candidates that no common transition semigroup can host, landing on
  // the same image by different cases.
  const Transformation a({1, 6, 3, 7, 6, 6, 7, 7});
  const Transformation b({1, 6, 2, 6, 7, 7, 7, 7});
  REQUIRE(phi(a) == phi(b));
  const auto report =
      audit_injectivity(Semigroup::from_elements(8, {a, b}));
  CHECK_FALSE(report.injective);
  REQUIRE(report.collisions.size() == 1);
  CHECK(report.collisions[0].label_a != report.collisions[0].label_b);
}
