#include "qport/moves.hpp"

#include <array>
#include <stdexcept>

namespace qport {

namespace {

constexpr std::array<std::pair<FunctionTag, std::string_view>, 9> kTagNames = {{
    {FunctionTag::split_adjacent, "F1.1a"},
    {FunctionTag::split_cycle, "F1.1b"},
    {FunctionTag::split_one_pre, "F1.2"},
    {FunctionTag::split_contained, "F1.3"},
    {FunctionTag::split_contained_q1, "F1.3-boundary"},
    {FunctionTag::split_disjoint, "F1.4"},
    {FunctionTag::split_intersecting, "F1.5"},
    {FunctionTag::make_periodic, "F2"},
    {FunctionTag::decrease_cycle, "F3"},
}};

std::optional<CriticalSlot> slot_of(const MarkedCover& cover, const PointId& p) {
  if (cover.critical_point(CriticalSlot::first) == p) return CriticalSlot::first;
  if (cover.critical_point(CriticalSlot::second) == p) return CriticalSlot::second;
  return std::nullopt;
}

MoveOutcome finish(const MarkedCover& cover, Move move) {
  MarkedCover next = apply_move(cover, move);
  Portrait portrait = derive_portrait(next);
  return MoveOutcome{std::move(next), std::move(move), std::move(portrait)};
}

const PointId& nth_image(const MarkedCover& cover, CriticalSlot s, std::size_t n) {
  return cover.name(iterate(cover.images(), cover.critical(s), n));
}

// Mint a preimage of C_j and pair it with `partner` (named before minting).
MoveOutcome mint_and_swap(const MarkedCover& cover, CriticalSlot j, PointId partner, FunctionTag tag) {
  PointId fresh = fresh_name(cover);
  Move move{{fresh, std::move(partner)}, Mint{fresh, cover.critical_point(j)}, tag};
  return finish(cover, std::move(move));
}

}  // namespace

std::string_view to_string(FunctionTag tag) noexcept {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "?";
}

FunctionTag parse_function_tag(std::string_view text) {
  for (const auto& [t, name] : kTagNames) {
    if (name == text) return t;
  }
  throw std::invalid_argument("unknown function tag '" + std::string(text) + "'");
}

MarkedCover apply_move(const MarkedCover& cover, const Move& move) {
  if (!move.minted) return apply_swap(cover, move.swap.first, move.swap.second);
  if (move.inverse) throw MoveError("inverse moves cannot mint");
  const Mint& m = *move.minted;
  if (m.point != move.swap.first) throw MoveError("minted point must be the first swap operand");
  auto j = slot_of(cover, m.image);
  if (!j) throw MoveError("mint image '" + m.image.str() + "' is not a critical point");
  return apply_swap(mint_preimage_named(cover, *j, m.point), move.swap.first, move.swap.second);
}

MoveOutcome split(const MarkedCover& cover) {
  const Portrait portrait = derive_portrait(cover);
  if (portrait.component_count() != 1) throw MoveError("split needs a one-component portrait");

  const auto [features, c1_slot] = classify_with_roles(portrait);
  const CriticalSlot c2_slot = other(c1_slot);
  const PointId& c1 = cover.critical_point(c1_slot);
  const PointId& c2 = cover.critical_point(c2_slot);

  if (const auto* f = std::get_if<OneCycle>(&features)) {
    if (f->k1 == 1 || f->k2 == 1) return finish(cover, Move{{c1, c2}, std::nullopt, FunctionTag::split_adjacent});
    const std::size_t k = f->k1 + f->k2;
    return finish(cover, Move{{nth_image(cover, c1_slot, f->k1 - 1), nth_image(cover, c1_slot, k - 1)},
                              std::nullopt, FunctionTag::split_cycle});
  }
  if (const auto* f = std::get_if<OnePrePeriod>(&features)) {
    if (f->r < 2) throw MoveError("pre-period of length 1 is not quadratic");
    return mint_and_swap(cover, c1_slot, nth_image(cover, c1_slot, f->r - 1), FunctionTag::split_one_pre);
  }
  if (const auto* f = std::get_if<Contained>(&features)) {
    if (f->q == 1) return finish(cover, Move{{c1, c2}, std::nullopt, FunctionTag::split_contained_q1});
    return mint_and_swap(cover, c1_slot, nth_image(cover, c1_slot, f->q - 1), FunctionTag::split_contained);
  }
  if (const auto* f = std::get_if<DisjointPrePeriods>(&features)) {
    if (f->r1 < 2 || f->r2 < 2) throw MoveError("pre-period of length 1 is not quadratic");
    return finish(cover, Move{{nth_image(cover, c1_slot, f->r1), nth_image(cover, c2_slot, f->r2)},
                              std::nullopt, FunctionTag::split_disjoint});
  }
  if (const auto* f = std::get_if<Intersecting>(&features)) {
    if (f->u1 < 2) throw MoveError("unique pre-period of length 1 is not quadratic");
    return mint_and_swap(cover, c1_slot, nth_image(cover, c1_slot, f->u1 - 1), FunctionTag::split_intersecting);
  }
  throw MoveError("unexpected pattern for a one-component portrait");
}

MoveOutcome make_periodic(const MarkedCover& cover, CriticalSlot j) {
  const Portrait portrait = derive_portrait(cover);
  if (portrait.component_count() != 2) throw MoveError("make_periodic needs two components");
  const Rho rho = portrait.profile(j);
  if (rho.tail == 0) {
    throw MoveError("critical point '" + cover.critical_point(j).str() + "' is already periodic");
  }
  return mint_and_swap(cover, j, nth_image(cover, j, rho.tail + rho.cycle - 1), FunctionTag::make_periodic);
}

MoveOutcome decrease_cycle(const MarkedCover& cover, CriticalSlot j) {
  const Portrait portrait = derive_portrait(cover);
  if (portrait.component_count() != 2) throw MoveError("decrease_cycle needs two components");
  if (portrait.profile(CriticalSlot::first).tail != 0 || portrait.profile(CriticalSlot::second).tail != 0) {
    throw MoveError("decrease_cycle needs two cyclic components");
  }
  if (portrait.profile(j).cycle == 1) throw MoveError("cycle of length 1 cannot decrease");
  return finish(cover, Move{{nth_image(cover, j, 1), nth_image(cover, j, 2)}, std::nullopt,
                            FunctionTag::decrease_cycle});
}

}  // namespace qport
