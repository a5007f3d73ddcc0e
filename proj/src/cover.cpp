#include "qport/cover.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace qport {

std::ostream& operator<<(std::ostream& os, const PointId& id) { return os << id.str(); }

bool is_valid_token(std::string_view token) noexcept {
  if (token.empty()) return false;
  return std::all_of(token.begin(), token.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool is_reserved_name(std::string_view token) noexcept {
  if (token.size() < 2 || token.front() != 'd') return false;
  return std::all_of(token.begin() + 1, token.end(), [](char c) { return c >= '0' && c <= '9'; });
}

namespace {

std::vector<PointId> sorted_names(const std::vector<std::pair<PointId, PointId>>& map) {
  std::vector<PointId> names;
  names.reserve(map.size());
  for (const auto& [p, _] : map) names.push_back(p);
  std::sort(names.begin(), names.end());
  if (auto dup = std::adjacent_find(names.begin(), names.end()); dup != names.end()) {
    throw CoverError("point '" + dup->str() + "' has more than one image");
  }
  return names;
}

Index lookup(const std::vector<PointId>& names, const PointId& p, const char* what) {
  auto it = std::lower_bound(names.begin(), names.end(), p);
  if (it == names.end() || *it != p) {
    throw CoverError(std::string(what) + " '" + p.str() + "' is not a marked point");
  }
  return static_cast<Index>(it - names.begin());
}

}  // namespace

MarkedCover::MarkedCover(std::vector<std::pair<PointId, PointId>> map, PointId c1, PointId c2)
    : names_(sorted_names(map)), images_(names_.size()) {
  for (const auto& p : names_) {
    if (!is_valid_token(p.str())) throw CoverError("invalid point name '" + p.str() + "'");
  }
  for (const auto& [p, q] : map) images_[lookup(names_, p, "point")] = lookup(names_, q, "image");
  critical_ = {lookup(names_, c1, "critical point"), lookup(names_, c2, "critical point")};
}

MarkedCover::MarkedCover(std::vector<PointId> names, std::vector<Index> images,
                         std::array<Index, 2> critical)
    : names_(std::move(names)), images_(std::move(images)), critical_(critical) {
  if (names_.size() != images_.size()) throw CoverError("map is not total");
  if (names_.empty()) throw CoverError("empty marked set");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_valid_token(names_[i].str())) throw CoverError("invalid point name '" + names_[i].str() + "'");
    if (i > 0 && !(names_[i - 1] < names_[i])) throw CoverError("point names not strictly sorted");
    if (images_[i] >= names_.size()) throw CoverError("image out of range");
  }
  if (critical_[0] >= names_.size() || critical_[1] >= names_.size()) {
    throw CoverError("critical index out of range");
  }
}

std::optional<Index> MarkedCover::find(const PointId& p) const noexcept {
  auto it = std::lower_bound(names_.begin(), names_.end(), p);
  if (it == names_.end() || *it != p) return std::nullopt;
  return static_cast<Index>(it - names_.begin());
}

Index MarkedCover::index_of(const PointId& p) const { return lookup(names_, p, "point"); }

std::vector<Index> MarkedCover::critical_orbit_indices() const {
  std::vector<bool> seen(size(), false);
  for (Index c : critical_) {
    for (Index v = c; !seen[v]; v = images_[v]) seen[v] = true;
  }
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i) {
    if (seen[i]) out.push_back(i);
  }
  return out;
}

Rho rho_of(std::span<const Index> next, Index start) {
  std::vector<std::size_t> position(next.size(), SIZE_MAX);
  std::size_t step = 0;
  Index v = start;
  while (position[v] == SIZE_MAX) {
    position[v] = step++;
    v = next[v];
  }
  return Rho{position[v], step - position[v], v};
}

Index iterate(std::span<const Index> next, Index start, std::size_t times) {
  for (; times > 0; --times) start = next[start];
  return start;
}

OrbitProfile orbit_profile(const MarkedCover& cover, const PointId& p) {
  Rho r = rho_of(cover.images(), cover.index_of(p));
  return OrbitProfile{r.tail, r.cycle, cover.name(r.first_periodic)};
}

std::ostream& operator<<(std::ostream& os, const ValidationReport& report) {
  if (report.pass()) return os << "pass";
  os << "fail";
  for (const auto& v : report.violations) {
    os << "\n  " << v.rule << ":";
    for (const auto& p : v.points) os << ' ' << p;
  }
  return os;
}

std::vector<Violation> label_sum_violations(const MarkedCover& cover,
                                            std::span<const Index> vertices) {
  std::vector<int> incoming(cover.size(), 0);
  std::vector<std::vector<Index>> preimages(cover.size());
  for (Index q : vertices) {
    incoming[cover.image(q)] += cover.label(q);
    preimages[cover.image(q)].push_back(q);
  }
  std::vector<Violation> out;
  for (Index p = 0; p < cover.size(); ++p) {
    if (incoming[p] <= 2) continue;
    Violation v{"label-sum", {cover.name(p)}};
    std::sort(preimages[p].begin(), preimages[p].end());
    for (Index q : preimages[p]) v.points.push_back(cover.name(q));
    out.push_back(std::move(v));
  }
  return out;
}

ValidationReport validate_cover(const MarkedCover& cover) {
  ValidationReport report;
  auto [c1, c2] = cover.critical();
  if (c1 == c2) report.violations.push_back({"critical-distinct", {cover.name(c1)}});

  const auto vertices = cover.critical_orbit_indices();
  auto sums = label_sum_violations(cover, vertices);
  report.violations.insert(report.violations.end(), sums.begin(), sums.end());

  // Each component's cycle must be the cycle of one of the critical points.
  auto on_cycle_of = [&](Index c, Index v) {
    Rho r = rho_of(cover.images(), c);
    Index w = r.first_periodic;
    for (std::size_t i = 0; i < r.cycle; ++i, w = cover.image(w)) {
      if (w == v) return true;
    }
    return false;
  };
  for (Index v : vertices) {
    Index t = rho_of(cover.images(), v).first_periodic;
    if (!on_cycle_of(c1, t) && !on_cycle_of(c2, t)) {
      report.violations.push_back({"component-critical", {cover.name(v)}});
    }
  }
  return report;
}

namespace {

std::string describe(const ValidationReport& report) {
  std::ostringstream os;
  os << "invalid quadratic cover: " << report;
  return os.str();
}

}  // namespace

InvalidCoverError::InvalidCoverError(ValidationReport report)
    : CoverError(describe(report)), report_(std::move(report)) {}

Portrait::Portrait(std::vector<PointId> vertices, std::vector<Index> next,
                   std::array<Index, 2> critical)
    : vertices_(std::move(vertices)), next_(std::move(next)), critical_(critical) {
  if (vertices_.size() != next_.size()) throw CoverError("portrait edge list is not total");
}

std::optional<Index> Portrait::find(const PointId& p) const noexcept {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p);
  if (it == vertices_.end() || *it != p) return std::nullopt;
  return static_cast<Index>(it - vertices_.begin());
}

int Portrait::component_count() const {
  Rho a = profile(CriticalSlot::first);
  Index t2 = profile(CriticalSlot::second).first_periodic;
  Index w = a.first_periodic;
  for (std::size_t i = 0; i < a.cycle; ++i, w = next_[w]) {
    if (w == t2) return 1;
  }
  return 2;
}

Portrait derive_portrait(const MarkedCover& cover) {
  auto report = validate_cover(cover);
  if (!report.pass()) throw InvalidCoverError(std::move(report));

  const auto keep = cover.critical_orbit_indices();
  std::vector<Index> local(cover.size(), 0);
  for (Index i = 0; i < keep.size(); ++i) local[keep[i]] = i;

  std::vector<PointId> vertices;
  std::vector<Index> next;
  vertices.reserve(keep.size());
  next.reserve(keep.size());
  for (Index i : keep) {
    vertices.push_back(cover.name(i));
    next.push_back(local[cover.image(i)]);
  }
  auto [c1, c2] = cover.critical();
  return Portrait(std::move(vertices), std::move(next), {local[c1], local[c2]});
}

MarkedCover apply_swap(const MarkedCover& cover, const PointId& a, const PointId& b) {
  if (a == b) throw CoverError("swap operands must differ: '" + a.str() + "'");
  const Index ia = cover.index_of(a);
  const Index ib = cover.index_of(b);
  auto tau = [&](Index x) { return x == ia ? ib : x == ib ? ia : x; };

  std::vector<Index> images(cover.size());
  for (Index x = 0; x < cover.size(); ++x) images[x] = cover.image(tau(x));
  auto [c1, c2] = cover.critical();
  return MarkedCover(std::vector<PointId>(cover.points().begin(), cover.points().end()),
                     std::move(images), {tau(c1), tau(c2)});
}

PointId fresh_name(const MarkedCover& cover) {
  for (std::size_t n = 0;; ++n) {
    PointId candidate("d" + std::to_string(n));
    if (!cover.contains(candidate)) return candidate;
  }
}

int incoming_label_sum(const MarkedCover& cover, Index p) {
  int sum = 0;
  for (Index q : cover.critical_orbit_indices()) {
    if (cover.image(q) == p) sum += cover.label(q);
  }
  return sum;
}

MarkedCover mint_preimage_named(const MarkedCover& cover, CriticalSlot j, const PointId& fresh) {
  const Index target = cover.critical(j);
  if (incoming_label_sum(cover, target) >= 2) {
    throw CoverError("no unmarked preimage of '" + cover.name(target).str() + "'");
  }
  if (!is_valid_token(fresh.str())) throw CoverError("invalid point name '" + fresh.str() + "'");
  if (cover.contains(fresh)) throw CoverError("minted point '" + fresh.str() + "' already exists");

  std::vector<PointId> names(cover.points().begin(), cover.points().end());
  const auto pos = static_cast<Index>(std::lower_bound(names.begin(), names.end(), fresh) - names.begin());
  names.insert(names.begin() + pos, fresh);
  auto shift = [pos](Index i) { return i >= pos ? i + 1 : i; };

  std::vector<Index> images;
  images.reserve(names.size());
  for (Index i = 0; i < cover.size(); ++i) {
    if (i == pos) images.push_back(shift(target));
    images.push_back(shift(cover.image(i)));
  }
  if (pos == cover.size()) images.push_back(shift(target));

  auto [c1, c2] = cover.critical();
  return MarkedCover(std::move(names), std::move(images), {shift(c1), shift(c2)});
}

std::pair<MarkedCover, PointId> mint_preimage(const MarkedCover& cover, CriticalSlot j) {
  PointId fresh = fresh_name(cover);
  return {mint_preimage_named(cover, j, fresh), fresh};
}

}  // namespace qport
