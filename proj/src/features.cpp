#include "qport/features.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qport {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::array<std::string_view, 6> kPatternNames = {
    "TwoComponents", "OneCycle", "OnePrePeriod", "DisjointPrePeriods", "Intersecting", "Contained"};

std::uint32_t u32(std::size_t v) { return static_cast<std::uint32_t>(v); }

// Steps from `from` to `to` along the cycle containing both.
std::uint32_t cycle_distance(const Portrait& p, Index from, Index to) {
  std::uint32_t d = 0;
  for (Index v = from; v != to; v = p.next(v)) {
    if (++d > p.size()) throw CoverError("points do not share a cycle");
  }
  return d;
}

// Position of `target` among the first `tail` points of the orbit of `start`.
std::optional<std::uint32_t> tail_position(const Portrait& p, Index start, std::size_t tail,
                                           Index target) {
  Index v = start;
  for (std::uint32_t i = 0; i < tail; ++i, v = p.next(v)) {
    if (v == target) return i;
  }
  return std::nullopt;
}

}  // namespace

Pattern pattern_of(const FeatureVector& fv) noexcept {
  return static_cast<Pattern>(fv.index() + 1);
}

std::string_view pattern_name(Pattern p) noexcept {
  return kPatternNames[static_cast<std::size_t>(p) - 1];
}

std::vector<std::uint32_t> lengths_of(const FeatureVector& fv) {
  return std::visit(
      overloaded{
          [](const TwoComponents& f) {
            return std::vector<std::uint32_t>{f.first.tail, f.first.cycle, f.second.tail, f.second.cycle};
          },
          [](const OneCycle& f) { return std::vector<std::uint32_t>{f.k1, f.k2}; },
          [](const OnePrePeriod& f) { return std::vector<std::uint32_t>{f.r, f.k1, f.k2}; },
          [](const DisjointPrePeriods& f) { return std::vector<std::uint32_t>{f.r1, f.r2, f.k1, f.k2}; },
          [](const Intersecting& f) { return std::vector<std::uint32_t>{f.u1, f.u2, f.s, f.k}; },
          [](const Contained& f) { return std::vector<std::uint32_t>{f.r1, f.r2, f.q, f.k}; },
      },
      fv);
}

FeatureVector make_features(std::string_view pattern, const std::vector<std::uint32_t>& l) {
  auto need = [&](std::size_t n) {
    if (l.size() != n) {
      throw std::invalid_argument(std::string(pattern) + " expects " + std::to_string(n) + " lengths");
    }
  };
  if (pattern == "TwoComponents") {
    need(4);
    return TwoComponents{{l[0], l[1]}, {l[2], l[3]}};
  }
  if (pattern == "OneCycle") {
    need(2);
    return OneCycle{l[0], l[1]};
  }
  if (pattern == "OnePrePeriod") {
    need(3);
    return OnePrePeriod{l[0], l[1], l[2]};
  }
  if (pattern == "DisjointPrePeriods") {
    need(4);
    return DisjointPrePeriods{l[0], l[1], l[2], l[3]};
  }
  if (pattern == "Intersecting") {
    need(4);
    return Intersecting{l[0], l[1], l[2], l[3]};
  }
  if (pattern == "Contained") {
    need(4);
    return Contained{l[0], l[1], l[2], l[3]};
  }
  throw std::invalid_argument("unknown pattern '" + std::string(pattern) + "'");
}

std::string to_string(const FeatureVector& fv) {
  std::ostringstream os;
  os << pattern_name(pattern_of(fv));
  std::visit(
      overloaded{
          [&](const TwoComponents& f) {
            os << "{(" << f.first.tail << ',' << f.first.cycle << "),(" << f.second.tail << ','
               << f.second.cycle << ")}";
          },
          [&](const OneCycle& f) { os << "{k1=" << f.k1 << ",k2=" << f.k2 << '}'; },
          [&](const OnePrePeriod& f) { os << "{r=" << f.r << ",k1=" << f.k1 << ",k2=" << f.k2 << '}'; },
          [&](const DisjointPrePeriods& f) {
            os << "{r1=" << f.r1 << ",r2=" << f.r2 << ",k1=" << f.k1 << ",k2=" << f.k2 << '}';
          },
          [&](const Intersecting& f) {
            os << "{u1=" << f.u1 << ",u2=" << f.u2 << ",s=" << f.s << ",k=" << f.k << '}';
          },
          [&](const Contained& f) {
            os << "{r1=" << f.r1 << ",r2=" << f.r2 << ",q=" << f.q << ",k=" << f.k << '}';
          },
      },
      fv);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FeatureVector& fv) { return os << to_string(fv); }

Classification classify_with_roles(const Portrait& p) {
  const Rho a = p.profile(CriticalSlot::first);
  const Rho b = p.profile(CriticalSlot::second);
  const Index c1 = p.critical(CriticalSlot::first);
  const Index c2 = p.critical(CriticalSlot::second);

  if (p.component_count() == 2) {
    return {TwoComponents{{u32(a.tail), u32(a.cycle)}, {u32(b.tail), u32(b.cycle)}}, CriticalSlot::first};
  }

  const std::uint32_t k = u32(a.cycle);
  if (a.tail == 0 && b.tail == 0) {
    return {OneCycle{cycle_distance(p, c1, c2), cycle_distance(p, c2, c1)}, CriticalSlot::first};
  }

  if (a.tail == 0 || b.tail == 0) {
    const bool first_pre = a.tail > 0;
    const Rho& pre = first_pre ? a : b;
    const Index periodic_critical = first_pre ? c2 : c1;
    const std::uint32_t k1 = cycle_distance(p, pre.first_periodic, periodic_critical);
    return {OnePrePeriod{u32(pre.tail), k1, k - k1},
            first_pre ? CriticalSlot::first : CriticalSlot::second};
  }

  if (auto q = tail_position(p, c1, a.tail, c2)) {
    return {Contained{u32(a.tail), u32(b.tail), *q, k}, CriticalSlot::first};
  }
  if (auto q = tail_position(p, c2, b.tail, c1)) {
    return {Contained{u32(b.tail), u32(a.tail), *q, k}, CriticalSlot::second};
  }

  // First point of C2's pre-period that also lies in C1's pre-period.
  Index v = c2;
  for (std::uint32_t u2 = 0; u2 < b.tail; ++u2, v = p.next(v)) {
    if (auto u1 = tail_position(p, c1, a.tail, v)) {
      return {Intersecting{*u1, u2, u32(a.tail) - *u1, k}, CriticalSlot::first};
    }
  }

  if (a.first_periodic == b.first_periodic) {
    throw CoverError("pre-periods meet on the cycle; not a quadratic portrait");
  }
  return {DisjointPrePeriods{u32(a.tail), u32(b.tail), cycle_distance(p, a.first_periodic, b.first_periodic),
                             cycle_distance(p, b.first_periodic, a.first_periodic)},
          CriticalSlot::first};
}

FeatureVector classify(const Portrait& portrait) { return classify_with_roles(portrait).features; }

CanonicalFeatures encode_labeling(const FeatureVector& fv) {
  CanonicalFeatures out;
  out.bytes.push_back(static_cast<std::uint8_t>(pattern_of(fv)));
  for (std::uint32_t v : lengths_of(fv)) {
    for (int shift = 24; shift >= 0; shift -= 8) out.bytes.push_back(static_cast<std::uint8_t>(v >> shift));
  }
  return out;
}

std::optional<FeatureVector> relabeled(const FeatureVector& fv) {
  return std::visit(
      overloaded{
          [](const TwoComponents& f) -> std::optional<FeatureVector> { return TwoComponents{f.second, f.first}; },
          [](const OneCycle& f) -> std::optional<FeatureVector> { return OneCycle{f.k2, f.k1}; },
          [](const OnePrePeriod&) -> std::optional<FeatureVector> { return std::nullopt; },
          [](const DisjointPrePeriods& f) -> std::optional<FeatureVector> {
            return DisjointPrePeriods{f.r2, f.r1, f.k2, f.k1};
          },
          [](const Intersecting& f) -> std::optional<FeatureVector> {
            return Intersecting{f.u2, f.u1, f.s, f.k};
          },
          [](const Contained&) -> std::optional<FeatureVector> { return std::nullopt; },
      },
      fv);
}

CanonicalFeatures canonical_encoding(const FeatureVector& fv) {
  CanonicalFeatures best = encode_labeling(fv);
  if (auto alt = relabeled(fv)) best = std::min(best, encode_labeling(*alt));
  return best;
}

bool features_isomorphic(const Portrait& p, const Portrait& q) {
  return canonical_encoding(classify(p)) == canonical_encoding(classify(q));
}

}  // namespace qport
