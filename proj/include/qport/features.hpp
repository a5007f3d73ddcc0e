#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qport/cover.hpp"

namespace qport {

/// Tail and cycle length of a component, seen from its critical point.
struct ComponentShape {
  std::uint32_t tail = 0;
  std::uint32_t cycle = 1;
  friend auto operator<=>(const ComponentShape&, const ComponentShape&) = default;
};

// One-component patterns. Lengths follow the naming used throughout the
// library: r counts the strictly pre-periodic points of a critical orbit, k is
// a cycle length or a distance along the cycle.

struct TwoComponents {
  ComponentShape first, second;
  friend auto operator<=>(const TwoComponents&, const TwoComponents&) = default;
};

/// Both critical points periodic; k1 = dist(C1 -> C2), k2 = dist(C2 -> C1).
struct OneCycle {
  std::uint32_t k1 = 1, k2 = 1;
  friend auto operator<=>(const OneCycle&, const OneCycle&) = default;
};

/// C1 strictly pre-periodic, C2 periodic. k1 is the distance from the first
/// periodic point of C1 to C2, k2 the remaining distance around the cycle.
struct OnePrePeriod {
  std::uint32_t r = 2, k1 = 0, k2 = 1;
  friend auto operator<=>(const OnePrePeriod&, const OnePrePeriod&) = default;
};

/// Two disjoint pre-periods entering the cycle at T1 and T2; k1 = dist(T1 -> T2).
struct DisjointPrePeriods {
  std::uint32_t r1 = 2, r2 = 2, k1 = 1, k2 = 1;
  friend auto operator<=>(const DisjointPrePeriods&, const DisjointPrePeriods&) = default;
};

/// Pre-periods that merge before the cycle: u1, u2 unique lengths, s shared.
struct Intersecting {
  std::uint32_t u1 = 2, u2 = 2, s = 1, k = 1;
  friend auto operator<=>(const Intersecting&, const Intersecting&) = default;
};

/// C2 lies in the pre-period of C1, q = r1 - r2 steps after it.
struct Contained {
  std::uint32_t r1 = 3, r2 = 2, q = 1, k = 1;
  friend auto operator<=>(const Contained&, const Contained&) = default;
};

using FeatureVector =
    std::variant<TwoComponents, OneCycle, OnePrePeriod, DisjointPrePeriods, Intersecting, Contained>;

/// Tag byte of the stable canonical encoding.
enum class Pattern : std::uint8_t {
  two_components = 1,
  one_cycle = 2,
  one_pre_period = 3,
  disjoint_pre_periods = 4,
  intersecting = 5,
  contained = 6,
};

Pattern pattern_of(const FeatureVector& fv) noexcept;
std::string_view pattern_name(Pattern p) noexcept;

/// Lengths in their declared serialization order.
std::vector<std::uint32_t> lengths_of(const FeatureVector& fv);

/// Inverse of pattern_name + lengths_of. Throws std::invalid_argument.
FeatureVector make_features(std::string_view pattern, const std::vector<std::uint32_t>& lengths);

/// e.g. "TwoComponents{(0,2),(0,1)}".
std::string to_string(const FeatureVector& fv);
std::ostream& operator<<(std::ostream& os, const FeatureVector& fv);

struct Classification {
  FeatureVector features;
  /// The stored slot playing the role of C1 in `features`. This is the first
  /// slot except for OnePrePeriod and Contained, whose C1 is fixed by shape.
  CriticalSlot c1 = CriticalSlot::first;
};

Classification classify_with_roles(const Portrait& portrait);
FeatureVector classify(const Portrait& portrait);

/// Stable byte encoding: one tag byte, then big-endian 32-bit lengths.
struct CanonicalFeatures {
  std::vector<std::uint8_t> bytes;
  friend auto operator<=>(const CanonicalFeatures&, const CanonicalFeatures&) = default;
};

/// Fixed serialization of one labeling, without minimizing.
CanonicalFeatures encode_labeling(const FeatureVector& fv);

/// The other critical-point labeling, when the pattern admits one.
std::optional<FeatureVector> relabeled(const FeatureVector& fv);

/// Lexicographic minimum over the admissible labelings.
CanonicalFeatures canonical_encoding(const FeatureVector& fv);

bool features_isomorphic(const Portrait& p, const Portrait& q);

}  // namespace qport
