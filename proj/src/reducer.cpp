#include "qport/reducer.hpp"

#include <stdexcept>

namespace qport {

std::string_view to_string(Step step) noexcept {
  switch (step) {
    case Step::components: return "step1";
    case Step::pre_periods: return "step2";
    case Step::cycle_lengths: return "step3";
  }
  return "?";
}

Step parse_step(std::string_view text) {
  if (text == "step1") return Step::components;
  if (text == "step2") return Step::pre_periods;
  if (text == "step3") return Step::cycle_lengths;
  throw std::invalid_argument("unknown step '" + std::string(text) + "'");
}

TranspositionWord ReductionTrace::word() const {
  TranspositionWord out;
  for (const auto& e : entries) {
    if (e.move) out.push_back(*e.move);
  }
  return out;
}

namespace {

class Recorder {
public:
  explicit Recorder(const MarkedCover& initial)
      : trace_{initial, {}, initial, {}, 0}, portrait_(derive_portrait(initial)) {}

  const MarkedCover& cover() const { return trace_.final_cover; }
  const Portrait& portrait() const { return portrait_; }

  void apply(Step step, MoveOutcome outcome) {
    if (outcome.move.minted) ++trace_.minted_count;
    ++trace_.step_runs[static_cast<std::size_t>(step) - 1];
    trace_.entries.push_back({step, outcome.move, classify(outcome.portrait)});
    trace_.final_cover = std::move(outcome.cover);
    portrait_ = std::move(outcome.portrait);
  }

  void verify(Step step) {
    ++trace_.step_runs[static_cast<std::size_t>(step) - 1];
    trace_.entries.push_back({step, std::nullopt, classify(portrait_)});
  }

  ReductionTrace take() && { return std::move(trace_); }

private:
  ReductionTrace trace_;
  Portrait portrait_;
};

}  // namespace

ReductionTrace reduce(const MarkedCover& cover) {
  Recorder rec(cover);

  if (rec.portrait().component_count() == 1) {
    rec.apply(Step::components, split(rec.cover()));
  } else {
    rec.verify(Step::components);
  }

  for (;;) {
    const auto& p = rec.portrait();
    if (p.profile(CriticalSlot::first).tail > 0) {
      rec.apply(Step::pre_periods, make_periodic(rec.cover(), CriticalSlot::first));
    } else if (p.profile(CriticalSlot::second).tail > 0) {
      rec.apply(Step::pre_periods, make_periodic(rec.cover(), CriticalSlot::second));
    } else {
      rec.verify(Step::pre_periods);
      break;
    }
  }

  for (;;) {
    const auto& p = rec.portrait();
    if (p.profile(CriticalSlot::first).cycle > 1) {
      rec.apply(Step::cycle_lengths, decrease_cycle(rec.cover(), CriticalSlot::first));
    } else if (p.profile(CriticalSlot::second).cycle > 1) {
      rec.apply(Step::cycle_lengths, decrease_cycle(rec.cover(), CriticalSlot::second));
    } else {
      rec.verify(Step::cycle_lengths);
      break;
    }
  }
  return std::move(rec).take();
}

BoundReport verify_step_bounds(const ReductionTrace& trace) {
  BoundReport report;
  std::array<std::size_t, 3> runs{};
  std::optional<FeatureVector> previous;
  std::optional<FeatureVector> entering_step3;
  Step last = Step::components;
  for (const auto& e : trace.entries) {
    if (e.step < last) throw TraceError("trace steps out of order");
    if (e.step == Step::cycle_lengths && !entering_step3) {
      if (runs[1] == 0 || !previous) throw TraceError("trace has no step 2 run before step 3");
      entering_step3 = previous;
    }
    previous = e.after;
    last = e.step;
    ++runs[static_cast<std::size_t>(e.step) - 1];
  }
  if (!entering_step3) throw TraceError("trace never reaches step 3");

  const auto* shape = std::get_if<TwoComponents>(&*entering_step3);
  if (shape == nullptr || shape->first.tail != 0 || shape->second.tail != 0) {
    throw TraceError("portrait entering step 3 is not two cycles");
  }

  report.step1_runs = runs[0];
  report.step2_runs = runs[1];
  report.step3_runs = runs[2];
  report.step3_expected = shape->first.cycle + shape->second.cycle - 1;
  report.pass = runs == trace.step_runs && report.step1_runs == 1 && report.step2_runs <= 3 &&
                report.step3_runs == report.step3_expected;
  return report;
}

ReductionTrace rebuild_trace(const MarkedCover& initial,
                             const std::vector<std::pair<Step, std::optional<Move>>>& runs) {
  ReductionTrace trace{initial, {}, initial, {}, 0};
  Portrait portrait = derive_portrait(initial);
  for (const auto& [step, move] : runs) {
    if (move) {
      trace.final_cover = apply_move(trace.final_cover, *move);
      portrait = derive_portrait(trace.final_cover);
      if (move->minted) ++trace.minted_count;
    }
    ++trace.step_runs[static_cast<std::size_t>(step) - 1];
    trace.entries.push_back({step, move, classify(portrait)});
  }
  return trace;
}

}  // namespace qport
