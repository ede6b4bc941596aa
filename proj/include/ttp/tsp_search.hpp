#pragma once

#include <chrono>
#include <vector>

#include "ttp/eval.hpp"
#include "ttp/instance.hpp"
#include "ttp/neighbors.hpp"

namespace ttp {

using Clock = std::chrono::steady_clock;
using Deadline = Clock::time_point;

inline Deadline no_deadline() { return Deadline::max(); }

enum class MoveKind { two_opt, guided };

// A candidate segment reversal, optionally with coordinated plan changes.
// `uncollect`/`collect` are the net item flips (empty for plain 2-opt).
struct MoveCandidate {
    int k1 = 0;
    int k2 = 0;
    MoveKind kind = MoveKind::two_opt;
    std::vector<int> uncollect;
    std::vector<int> collect;
    double gain_after = 0;
};

// Reusable buffers for candidate evaluation inside a sweep.
struct MoveScratch {
    std::vector<double> city_weight_delta;
    std::vector<int> dirty_cities;
    std::vector<std::uint8_t> item_flipped;
    std::vector<int> touched_items;
};

// Plain segment reversal candidate: gain of the tour with positions k1..k2
// reversed and the plan unchanged. Does not modify the solution.
MoveCandidate two_opt(const Instance& inst, const Tour& tour, const CollectionPlan& plan,
                      const EvalState& state, int k1, int k2);
MoveCandidate two_opt(const Instance& inst, const Tour& tour, const CollectionPlan& plan,
                      const EvalState& state, int k1, int k2, MoveScratch& scratch);

// Reversal with coordinated substitution. Along with reversing k1..k2,
// collected items whose ratio falls below the original prefix-minimum at
// their new position are dropped, then uncollected items whose ratio exceeds
// the original postfix-maximum at their new position are picked up
// (most-profitable-first, never adding more weight than was freed). With no
// triggered substitutions this degenerates to two_opt. Does not modify the
// solution.
MoveCandidate profit_guided_move(const Instance& inst, const Tour& tour,
                                 const CollectionPlan& plan, const EvalState& state,
                                 const ProfileIndex& profile, int k1, int k2);
MoveCandidate profit_guided_move(const Instance& inst, const Tour& tour,
                                 const CollectionPlan& plan, const EvalState& state,
                                 const ProfileIndex& profile, int k1, int k2,
                                 MoveScratch& scratch);

// Applies a candidate to the solution and refreshes the evaluation state.
void apply_move(const Instance& inst, Tour& tour, CollectionPlan& plan, EvalState& state,
                const MoveCandidate& move);

struct TspSolverStats {
    int sweeps = 0;
    long long candidates_evaluated = 0;
    int accepted_moves = 0;
    double sum_rel_len_pct = 0;  // accumulated |k2-k1+1|*100/n of accepted moves
};

// Steepest-ascent sweep loop: evaluates one candidate per (position,
// neighbor) pair, applies only the best strictly-improving move per sweep,
// and repeats while the relative gain improvement stays above `alpha`.
// `substitution` selects guided moves (false = plain 2-opt path). Returns
// best-so-far when the deadline hits.
TspSolverStats tsp_solver(const Instance& inst, Tour& tour, CollectionPlan& plan,
                          EvalState& state, const CandidateLists& candidates, double alpha,
                          bool substitution, Deadline deadline);

}  // namespace ttp
