#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qport {

/// Name of a marked point. Tokens are drawn from [A-Za-z0-9_]+.
class PointId {
public:
  PointId() = default;
  explicit PointId(std::string name) : name_(std::move(name)) {}

  const std::string& str() const noexcept { return name_; }

  friend auto operator<=>(const PointId&, const PointId&) = default;

private:
  std::string name_;
};

std::ostream& operator<<(std::ostream& os, const PointId& id);

/// True for tokens matching [A-Za-z0-9_]+.
bool is_valid_token(std::string_view token) noexcept;

/// Names of the form d<digits> are reserved for minted points.
bool is_reserved_name(std::string_view token) noexcept;

using Index = std::uint32_t;

/// Which slot of the ordered critical pair.
enum class CriticalSlot : std::uint8_t { first = 0, second = 1 };

constexpr std::size_t slot_index(CriticalSlot s) noexcept { return static_cast<std::size_t>(s); }
constexpr CriticalSlot other(CriticalSlot s) noexcept {
  return s == CriticalSlot::first ? CriticalSlot::second : CriticalSlot::first;
}

class CoverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A finite marked set with a total self-map and an ordered critical pair.
///
/// Points are kept sorted by name, so two covers with the same points, map and
/// critical pair compare equal regardless of how they were built. Edge labels
/// are implied: the edge out of a critical point has local degree 2, every
/// other edge degree 1.
class MarkedCover {
public:
  /// Builds from (point, image) pairs. Throws CoverError when a point is listed
  /// twice, an image or critical point is not listed, or a name is not a token.
  MarkedCover(std::vector<std::pair<PointId, PointId>> map, PointId c1, PointId c2);

  /// Index-level constructor. `names` must be strictly sorted.
  MarkedCover(std::vector<PointId> names, std::vector<Index> images,
              std::array<Index, 2> critical);

  std::size_t size() const noexcept { return names_.size(); }
  std::span<const PointId> points() const noexcept { return names_; }
  std::span<const Index> images() const noexcept { return images_; }

  const PointId& name(Index i) const { return names_.at(i); }
  Index image(Index i) const { return images_.at(i); }
  const PointId& image(const PointId& p) const { return names_[images_[index_of(p)]]; }

  std::optional<Index> find(const PointId& p) const noexcept;
  /// Throws CoverError for unknown points.
  Index index_of(const PointId& p) const;
  bool contains(const PointId& p) const noexcept { return find(p).has_value(); }

  std::array<Index, 2> critical() const noexcept { return critical_; }
  Index critical(CriticalSlot s) const noexcept { return critical_[slot_index(s)]; }
  const PointId& critical_point(CriticalSlot s) const { return names_[critical(s)]; }
  bool is_critical(Index i) const noexcept { return i == critical_[0] || i == critical_[1]; }
  /// Local degree of the edge leaving `i`.
  int label(Index i) const noexcept { return is_critical(i) ? 2 : 1; }

  /// Indices reachable from either critical point, in increasing order.
  std::vector<Index> critical_orbit_indices() const;

  friend bool operator==(const MarkedCover&, const MarkedCover&) = default;

private:
  std::vector<PointId> names_;
  std::vector<Index> images_;
  std::array<Index, 2> critical_{};
};

/// Tail/cycle decomposition of a forward orbit.
struct OrbitProfile {
  std::size_t tail_length = 0;  ///< strictly pre-periodic points, the start included
  std::size_t cycle_length = 0;
  PointId first_periodic;

  friend bool operator==(const OrbitProfile&, const OrbitProfile&) = default;
};

/// Index-level rho decomposition over any total self-map.
struct Rho {
  std::size_t tail = 0;
  std::size_t cycle = 0;
  Index first_periodic = 0;
};
Rho rho_of(std::span<const Index> next, Index start);

/// Applies `next` `times` times starting from `start`.
Index iterate(std::span<const Index> next, Index start, std::size_t times);

OrbitProfile orbit_profile(const MarkedCover& cover, const PointId& p);

struct Violation {
  std::string rule;  ///< "critical-distinct", "label-sum" or "component-critical"
  std::vector<PointId> points;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool pass() const noexcept { return violations.empty(); }
};

std::ostream& operator<<(std::ostream& os, const ValidationReport& report);

/// Label-sum rule restricted to `vertices` (indices into the cover): for each
/// point, the labels of its preimages among `vertices` must sum to at most 2.
std::vector<Violation> label_sum_violations(const MarkedCover& cover,
                                            std::span<const Index> vertices);

ValidationReport validate_cover(const MarkedCover& cover);

class InvalidCoverError : public CoverError {
public:
  explicit InvalidCoverError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

private:
  ValidationReport report_;
};

/// The labeled functional digraph on the critical points and their forward
/// orbits. Vertex indices are local to the portrait; names match the cover.
class Portrait {
public:
  Portrait(std::vector<PointId> vertices, std::vector<Index> next,
           std::array<Index, 2> critical);

  std::size_t size() const noexcept { return vertices_.size(); }
  std::span<const PointId> vertices() const noexcept { return vertices_; }
  std::span<const Index> next() const noexcept { return next_; }
  Index next(Index v) const { return next_.at(v); }
  const PointId& name(Index v) const { return vertices_.at(v); }
  std::optional<Index> find(const PointId& p) const noexcept;

  std::array<Index, 2> critical() const noexcept { return critical_; }
  Index critical(CriticalSlot s) const noexcept { return critical_[slot_index(s)]; }
  bool is_critical(Index v) const noexcept { return v == critical_[0] || v == critical_[1]; }
  int label(Index v) const noexcept { return is_critical(v) ? 2 : 1; }

  Rho profile(CriticalSlot s) const { return rho_of(next_, critical(s)); }
  /// 1 or 2: the critical points share a component iff their cycles coincide.
  int component_count() const;

  friend bool operator==(const Portrait&, const Portrait&) = default;

private:
  std::vector<PointId> vertices_;
  std::vector<Index> next_;
  std::array<Index, 2> critical_{};
};

/// Throws InvalidCoverError when validate_cover fails.
Portrait derive_portrait(const MarkedCover& cover);

/// Precomposition with the transposition (a b): the new map sends x to
/// map(tau(x)) and the critical pair becomes (tau(c1), tau(c2)).
MarkedCover apply_swap(const MarkedCover& cover, const PointId& a, const PointId& b);

/// Smallest d<n> not used in `cover`.
PointId fresh_name(const MarkedCover& cover);

/// Sum of labels of portrait vertices mapping onto `p`.
int incoming_label_sum(const MarkedCover& cover, Index p);

/// Adds `fresh` with image C_j. Requires the incoming label sum at C_j to be
/// below 2 and `fresh` to be a new token.
MarkedCover mint_preimage_named(const MarkedCover& cover, CriticalSlot j, const PointId& fresh);

/// Adds a fresh point d<n> mapping to C_j and returns it alongside the cover.
std::pair<MarkedCover, PointId> mint_preimage(const MarkedCover& cover, CriticalSlot j);

}  // namespace qport

template <>
struct std::hash<qport::PointId> {
  std::size_t operator()(const qport::PointId& p) const noexcept {
    return std::hash<std::string>{}(p.str());
  }
};
