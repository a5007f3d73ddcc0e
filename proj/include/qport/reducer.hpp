#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qport/cover.hpp"
#include "qport/features.hpp"
#include "qport/moves.hpp"

namespace qport {

enum class Step : std::uint8_t { components = 1, pre_periods = 2, cycle_lengths = 3 };

std::string_view to_string(Step step) noexcept;  // "step1" .. "step3"
Step parse_step(std::string_view text);

/// One run of a step. A run without a move is a verification-only run.
struct TraceEntry {
  Step step = Step::components;
  std::optional<Move> move;
  FeatureVector after;

  bool verification() const noexcept { return !move.has_value(); }
};

using TranspositionWord = std::vector<Move>;

struct ReductionTrace {
  MarkedCover initial;
  std::vector<TraceEntry> entries;
  MarkedCover final_cover;
  std::array<std::size_t, 3> step_runs{};
  std::size_t minted_count = 0;

  TranspositionWord word() const;
};

/// Drives a valid cover to the two-fixed-critical-points portrait. Throws
/// InvalidCoverError on invalid input.
ReductionTrace reduce(const MarkedCover& cover);

struct BoundReport {
  std::size_t step1_runs = 0;
  std::size_t step2_runs = 0;
  std::size_t step3_runs = 0;
  std::size_t step3_expected = 0;  ///< k1 + k2 - 1 measured on entering step 3
  bool pass = false;
};

class TraceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Recounts runs from the entries and checks them against the run bounds.
/// Throws TraceError when the trace is malformed.
BoundReport verify_step_bounds(const ReductionTrace& trace);

/// Rebuilds a trace from its initial cover and the recorded runs by replaying
/// every move and recomputing the features.
ReductionTrace rebuild_trace(const MarkedCover& initial,
                             const std::vector<std::pair<Step, std::optional<Move>>>& runs);

}  // namespace qport
