#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "qport/cover.hpp"
#include "qport/features.hpp"

namespace qport {

/// Which portrait function (and subcase) produced a move.
enum class FunctionTag {
  split_adjacent,      ///< F1.1a: critical points adjacent on the cycle
  split_cycle,         ///< F1.1b
  split_one_pre,       ///< F1.2
  split_contained,     ///< F1.3, q >= 2
  split_contained_q1,  ///< F1.3-boundary, q = 1
  split_disjoint,      ///< F1.4
  split_intersecting,  ///< F1.5
  make_periodic,       ///< F2
  decrease_cycle,      ///< F3
};

std::string_view to_string(FunctionTag tag) noexcept;
/// Accepts the short forms "F1.1a" .. "F3". Throws std::invalid_argument.
FunctionTag parse_function_tag(std::string_view text);

struct Mint {
  PointId point;
  PointId image;
  friend bool operator==(const Mint&, const Mint&) = default;
};

/// One transposition, optionally preceded by minting its first operand.
struct Move {
  std::pair<PointId, PointId> swap;
  std::optional<Mint> minted;
  FunctionTag tag = FunctionTag::decrease_cycle;
  /// Set on moves replayed backwards; such moves never mint.
  bool inverse = false;

  friend bool operator==(const Move&, const Move&) = default;
};

class MoveError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Mint (if any) followed by the swap. Mints must name a critical point of
/// `cover` and a new token. Throws CoverError/MoveError.
MarkedCover apply_move(const MarkedCover& cover, const Move& move);

struct MoveOutcome {
  MarkedCover cover;
  Move move;
  Portrait portrait;
};

/// Function 1: one component to two.
MoveOutcome split(const MarkedCover& cover);

/// Function 2: C_j strictly pre-periodic, two components.
MoveOutcome make_periodic(const MarkedCover& cover, CriticalSlot j);

/// Function 3: two cyclic components, C_j's cycle longer than 1. Swaps f(C_j)
/// with f^2(C_j).
MoveOutcome decrease_cycle(const MarkedCover& cover, CriticalSlot j);

}  // namespace qport
