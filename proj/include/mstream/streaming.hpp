#pragma once

#include <optional>
#include <span>

#include "mstream/kernel.hpp"
#include "mstream/local_ratio.hpp"

namespace mstream {

// Parameters of the memory-bounded pass. y == nullopt means "never delete".
// alpha = 1 is the exact variant and is only legal with infinite y.
// epsilon is the reporting parameter: the default schedule sets
// alpha = 1 + epsilon and y = min(r_1, r_2) / epsilon^2. When alpha and y are
// given directly, epsilon defaults to alpha - 1.
struct StreamParams {
    Rat alpha = Rat(1);
    std::optional<Rat> y;  // nullopt = infinite
    Rat epsilon = Rat(0);

    static StreamParams exact();
    static StreamParams from_epsilon(const Instance& inst, const Rat& epsilon);
    static StreamParams explicit_params(const Rat& alpha, std::optional<Rat> y);

    void validate() const;  // InputError on alpha <= 1 with finite y, etc.
};

struct StreamReport {
    SelectionState final_state;
    ElementSet solution = {};
    Rat solution_weight = Rat(0);  // summed selection-time values over solution
    Rat objective_value = Rat(0);  // objective evaluated on solution
    Rat g_alive = Rat(0);
    Rat g_all = Rat(0);
    std::size_t peak_stack = 0;
    std::optional<Rat> memory_bound = std::nullopt;  // nullopt = unbounded
    bool solution_certified = false;                 // kernel-verified vs heuristic
    std::optional<Rat> ratio_vs_opt = std::nullopt;
};

// r_1 + r_2 + min(r_1, r_2) * ceil(log_alpha(y / epsilon)), with the log
// taken by exact repeated multiplication. nullopt when y is infinite or
// alpha = 1. For k matroids the sum runs over all ranks and min over all.
std::optional<Rat> memory_bound(const Instance& inst, const StreamParams& params);

// The two-matroid memory-bounded pass: the alpha-slack selection test, then
// after every selection the deletion sweep "drop alive e' with
// y * g(e') < g_max unless e' sits in T_1 or T_2". Solution by kernel
// extraction over the alive stack. With y infinite this coincides with
// run_local_ratio at the same alpha, element for element.
StreamReport run_streaming(const Instance& inst, std::span<const ElementIndex> order,
                           const StreamParams& params);

// Same loop for k >= 2 matroids (k thresholds, retention set is the union of
// all T_i). For k = 2 this is literally run_streaming. For k >= 3 no kernel
// extractor exists, so the solution field holds the reverse-greedy heuristic
// and is flagged uncertified.
StreamReport run_streaming_k(const Instance& inst, std::span<const ElementIndex> order,
                             const StreamParams& params);

// Deletion sweep used by all memory-bounded passes; exposed for tests.
void deletion_sweep(SelectionState& state, const Rat& y);

// Assembles the report for a finished state: kernel extraction for k = 2
// states, reverse-greedy (uncertified) otherwise.
StreamReport finish_stream_report(SelectionState state, const StreamParams& params);

}  // namespace mstream
