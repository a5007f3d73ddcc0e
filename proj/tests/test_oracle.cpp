#include <doctest.h>

#include <random>
#include <set>

#include "qport/features.hpp"
#include "qport/moves.hpp"
#include "qport/oracle.hpp"
#include "support.hpp"

using namespace qport;
using qport::test::cover_of;

TEST_SUITE("oracle") {

TEST_CASE("brute force examples") {
  const Portrait rabbit = derive_portrait(cover_of("A*>P P>Q Q>A B*>B"));
  const Portrait renamed = derive_portrait(cover_of("u*>v v>w w>u z*>z"));
  const auto w = brute_force_isomorphism(rabbit, renamed);
  REQUIRE(w);
  CHECK(w->bijection.size() == 4);
  CHECK(w->bijection.at(PointId("A")) == PointId("u"));

  CHECK_FALSE(brute_force_isomorphism(derive_portrait(cover_of("A*>P P>A B*>B")),
                                      derive_portrait(cover_of("A*>A B*>B"))));

  const Portrait d13 = derive_portrait(cover_of("A*>B* B>P P>Q Q>A"));
  const Portrait d22 = derive_portrait(cover_of("A*>P P>B* B>Q Q>A"));
  CHECK_FALSE(brute_force_isomorphism(d13, d22));
  CHECK_FALSE(features_isomorphic(d13, d22));
}

TEST_CASE("n = 2 gives z2 and the two-cycle") {
  const auto classes = enumerate_portraits(2);
  REQUIRE(classes.size() == 2);
  std::set<std::vector<std::uint8_t>> got;
  for (const auto& c : classes) got.insert(canonical_encoding(classify(derive_portrait(c))).bytes);
  CHECK(got.count(canonical_encoding(TwoComponents{{0, 1}, {0, 1}}).bytes));
  CHECK(got.count(canonical_encoding(OneCycle{1, 1}).bytes));
}

TEST_CASE("class counts match the independent count") {
  // Cumulative class counts for n = 2..7 from a separate generate-and-dedupe pass.
  const std::size_t expected[] = {2, 4, 11, 24, 51, 94};
  for (std::size_t n = 2; n <= 7; ++n) {
    CHECK_MESSAGE(enumerate_portraits(n).size() == expected[n - 2], "n = " << n);
  }
}

TEST_CASE("enumeration output is valid, portrait-only and independent of threads") {
  const auto one = enumerate_portraits(6, 1);
  const auto four = enumerate_portraits(6, 4);
  CHECK(one == four);
  for (const auto& c : one) {
    CHECK(validate_cover(c).pass());
    CHECK(derive_portrait(c).size() == c.size());
  }
}

TEST_CASE("enumerate bounds") {
  CHECK_THROWS(enumerate_portraits(11));
}

TEST_CASE("strictly pre-periodic critical points have tail at least 2") {
  for (const auto& c : enumerate_portraits(7)) {
    for (auto s : {CriticalSlot::first, CriticalSlot::second}) {
      const auto prof = orbit_profile(c, c.critical_point(s));
      CHECK((prof.tail_length == 0 || prof.tail_length >= 2));
    }
  }
}

TEST_CASE("brute force is symmetric and agrees with the propagation form") {
  const auto classes = enumerate_portraits(5);
  std::mt19937_64 rng(3);
  for (const auto& a : classes) {
    const Portrait pa = derive_portrait(a);
    const Portrait scrambled = derive_portrait(scramble(a, rng, true));
    CHECK(brute_force_isomorphism(pa, scrambled));
    CHECK(propagation_form(pa) == propagation_form(scrambled));
    for (const auto& b : classes) {
      const Portrait pb = derive_portrait(b);
      const bool ab = brute_force_isomorphism(pa, pb).has_value();
      CHECK(ab == brute_force_isomorphism(pb, pa).has_value());
      CHECK(ab == (&a == &b));
    }
  }
}

TEST_CASE("enumeration is closed under the moves") {
  const auto small = enumerate_portraits(5);
  const auto big = enumerate_portraits(6);
  std::set<std::vector<Index>> forms;
  for (const auto& c : big) forms.insert(propagation_form(derive_portrait(c)));
  for (const auto& c : small) {
    const Portrait p = derive_portrait(c);
    std::vector<MarkedCover> outs;
    if (p.component_count() == 1) {
      outs.push_back(split(c).cover);
    } else {
      for (auto j : {CriticalSlot::first, CriticalSlot::second}) {
        if (p.profile(j).tail > 0) outs.push_back(make_periodic(c, j).cover);
        else if (p.profile(other(j)).tail == 0 && p.profile(j).cycle > 1) outs.push_back(decrease_cycle(c, j).cover);
      }
    }
    for (const auto& o : outs) CHECK(forms.count(propagation_form(derive_portrait(o))) == 1);
  }
}

TEST_CASE("random covers") {
  CHECK(random_cover(5, 7) == random_cover(5, 7));
  std::size_t differing = 0;
  for (std::uint64_t s = 0; s < 20; ++s) differing += random_cover(5, s) != random_cover(5, s + 1);
  CHECK(differing > 10);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const MarkedCover c = random_cover(8, s);
    CHECK(c.size() <= 8);
    CHECK(validate_cover(c).pass());
  }
}

TEST_CASE("stray points stay out of the portrait") {
  std::mt19937_64 rng(5);
  const MarkedCover c = cover_of("A*>P P>A B*>B");
  const MarkedCover more = add_stray_points(c, 3, rng);
  CHECK(more.size() == 6);
  CHECK(derive_portrait(more) == derive_portrait(c));
}

}  // TEST_SUITE
