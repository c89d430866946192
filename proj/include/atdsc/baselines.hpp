#pragma once

#include <optional>

#include "atdsc/eval.hpp"
#include "atdsc/mdp.hpp"

namespace atdsc {

enum class GreedyKind {
  MaxPickupProbability,  // MPP
  MaxMinuteIncome,       // MNP
  MinCruiseTime,         // PCD
};

// One greedy step over admissible successors, excluding the immediate
// reversal, smallest-id tie break. Nullopt at a dead end.
std::optional<ZoneId> greedy_next(GreedyKind kind, ZoneId current, ZoneId previous,
                                  const Bucket& b, const MdpModel& model);

// Iterates greedy_next until the accumulated expected time reaches the
// budget. Deterministic.
Route run_greedy(GreedyKind kind, ZoneId start, double budget_minutes, const MdpModel& model,
                 const Bucket& start_bucket);

}  // namespace atdsc
