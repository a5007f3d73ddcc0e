#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "qport/cover.hpp"
#include "qport/features.hpp"

namespace qport {

/// Vertex bijection between two portraits preserving edges, labels and the
/// critical set.
struct IsoWitness {
  std::map<PointId, PointId> bijection;
};

/// Tries both critical pairings and propagates each along the unique
/// outgoing edges. Returns the first consistent bijection.
std::optional<IsoWitness> brute_force_isomorphism(const Portrait& p, const Portrait& q);

/// Relabeling of a portrait by propagation from the critical points, minimized
/// over the two critical orderings. Two portraits get the same form iff
/// brute_force_isomorphism finds a witness.
std::vector<Index> propagation_form(const Portrait& p);

/// One cover per isomorphism class of valid portraits on 2..max_vertices
/// vertices, with the marked set equal to the portrait. Points are named
/// p0, p1, ... with (p0, p1) critical. Order is independent of `threads`.
std::vector<MarkedCover> enumerate_portraits(std::size_t max_vertices, unsigned threads = 1);

/// Rejection-sampled valid cover on at most n points (names p0, p1, ...).
/// Extra points outside the portrait are allowed.
MarkedCover random_cover(std::size_t n, std::uint64_t seed);

/// Builds a portrait-only cover realizing `fv` (names p0, p1, ...).
MarkedCover realize(const FeatureVector& fv);

/// Renames every point by a random permutation of fresh names "x<k>" and
/// optionally swaps the stored critical order.
MarkedCover scramble(const MarkedCover& cover, std::mt19937_64& rng, bool swap_critical_order);

/// Appends `count` random points outside the portrait, named s0, s1, ...
MarkedCover add_stray_points(const MarkedCover& cover, std::size_t count, std::mt19937_64& rng);

}  // namespace qport
