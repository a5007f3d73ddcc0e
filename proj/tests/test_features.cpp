#include <doctest.h>

#include <random>

#include "qport/features.hpp"
#include "qport/oracle.hpp"
#include "support.hpp"

using namespace qport;
using qport::test::cover_of;

namespace {

FeatureVector features_of(const char* spec) { return classify(derive_portrait(cover_of(spec))); }

}  // namespace

TEST_SUITE("features") {

TEST_CASE("classify examples") {
  CHECK(features_of("A*>A B*>B") == FeatureVector{TwoComponents{{0, 1}, {0, 1}}});
  CHECK(features_of("A*>P P>Q Q>A B*>B") == FeatureVector{TwoComponents{{0, 3}, {0, 1}}});
  CHECK(features_of("A*>P P>M B*>Q Q>M M>T T>T") == FeatureVector{Intersecting{2, 2, 1, 1}});
  CHECK(features_of("A*>P P>T1 T1>T2 T2>T1 B*>Q Q>T2") == FeatureVector{DisjointPrePeriods{2, 2, 1, 1}});
}

TEST_CASE("classify the remaining patterns") {
  CHECK(features_of("A*>P P>B* B>Q Q>A") == FeatureVector{OneCycle{2, 2}});
  CHECK(features_of("A*>B* B>A") == FeatureVector{OneCycle{1, 1}});
  CHECK(features_of("A*>P P>T T>B* B>U U>T") == FeatureVector{OnePrePeriod{2, 1, 2}});
  CHECK(features_of("A*>B* B>Q Q>T T>T") == FeatureVector{Contained{3, 2, 1, 1}});
}

TEST_CASE("OnePrePeriod and Contained fix C1 by shape") {
  // Stored order (B, A) but A is the pre-periodic one.
  const auto cls = classify_with_roles(derive_portrait(cover_of("B*>U U>T A*>P P>T T>B")));
  CHECK(cls.features == FeatureVector{OnePrePeriod{2, 1, 2}});
  CHECK(cls.c1 == CriticalSlot::second);
}

TEST_CASE("OnePrePeriod k1 = 0 iff C2 is the first periodic point of C1") {
  CHECK(features_of("A*>P P>B* B>Q Q>B") == FeatureVector{OnePrePeriod{2, 0, 2}});
}

TEST_CASE("canonical encoding examples") {
  CHECK(canonical_encoding(OneCycle{1, 3}) == canonical_encoding(OneCycle{3, 1}));
  CHECK(canonical_encoding(TwoComponents{{0, 1}, {0, 2}}) == canonical_encoding(TwoComponents{{0, 2}, {0, 1}}));
  CHECK(canonical_encoding(Contained{3, 2, 1, 1}) != canonical_encoding(Intersecting{2, 2, 1, 1}));
}

TEST_CASE("encoding layout") {
  const auto enc = encode_labeling(DisjointPrePeriods{2, 3, 1, 258});
  const std::vector<std::uint8_t> expected{4, 0, 0, 0, 2, 0, 0, 0, 3, 0, 0, 0, 1, 0, 0, 1, 2};
  CHECK(enc.bytes == expected);
  CHECK_FALSE(relabeled(OnePrePeriod{}));
  CHECK_FALSE(relabeled(Contained{}));
  CHECK(relabeled(Intersecting{2, 3, 1, 4}) == std::optional<FeatureVector>{Intersecting{3, 2, 1, 4}});
}

TEST_CASE("names and lengths round trip") {
  const std::vector<FeatureVector> all{TwoComponents{{2, 3}, {0, 1}}, OneCycle{1, 4},  OnePrePeriod{3, 0, 2},
                                       DisjointPrePeriods{2, 4, 1, 3}, Intersecting{2, 3, 1, 5},
                                       Contained{5, 2, 3, 2}};
  for (const auto& fv : all) {
    CHECK(make_features(pattern_name(pattern_of(fv)), lengths_of(fv)) == fv);
  }
  CHECK(to_string(all[0]) == "TwoComponents{(2,3),(0,1)}");
  CHECK_THROWS_AS(make_features("Nope", {}), std::invalid_argument);
  CHECK_THROWS_AS(make_features("OneCycle", {1}), std::invalid_argument);
}

TEST_CASE("features_isomorphic examples") {
  const Portrait rabbit = derive_portrait(cover_of("A*>P P>Q Q>A B*>B"));
  const Portrait renamed = derive_portrait(cover_of("x*>y y>z z>x w*>w"));
  CHECK(features_isomorphic(rabbit, renamed));
  CHECK_FALSE(features_isomorphic(derive_portrait(cover_of("A*>A B*>B")),
                                  derive_portrait(cover_of("A*>P P>A B*>B"))));
  CHECK(features_isomorphic(derive_portrait(cover_of("A*>P P>B* B>A")),
                            derive_portrait(cover_of("B*>P P>A* A>B"))));
}

TEST_CASE("classification is invariant under renaming and critical order") {
  std::mt19937_64 rng(11);
  for (const auto& c : enumerate_portraits(6)) {
    const FeatureVector fv = classify(derive_portrait(c));
    const MarkedCover same_order = scramble(c, rng, false);
    CHECK(classify(derive_portrait(same_order)) == fv);
    const MarkedCover swapped = scramble(c, rng, true);
    CHECK(canonical_encoding(classify(derive_portrait(swapped))) == canonical_encoding(fv));
  }
}

TEST_CASE("realize builds the requested features") {
  const std::vector<FeatureVector> samples{TwoComponents{{0, 1}, {0, 1}}, TwoComponents{{3, 2}, {2, 4}},
                                           OneCycle{1, 1},    OneCycle{3, 2},
                                           OnePrePeriod{2, 0, 2}, OnePrePeriod{4, 2, 3},
                                           DisjointPrePeriods{2, 3, 2, 1}, Intersecting{2, 4, 3, 2},
                                           Contained{3, 2, 1, 1}, Contained{6, 2, 4, 3}};
  for (const auto& fv : samples) {
    const MarkedCover c = realize(fv);
    REQUIRE(validate_cover(c).pass());
    CHECK(classify(derive_portrait(c)) == fv);
  }
}

}  // TEST_SUITE
