#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mstream/instance.hpp"
#include "mstream/streaming.hpp"

namespace mstream {

// Guard for every exponential enumeration. MSTREAM_ORACLE_MAX overrides
// max_elements when set in the environment.
struct OracleBudget {
    std::size_t max_elements = 20;
    std::uint64_t max_subsets = std::uint64_t{1} << 20;

    static OracleBudget from_env();
    void check(std::size_t n, const char* what) const;  // BudgetError when over
};

// Exact optimum over sets independent in every matroid: maximum weight for a
// linear objective, maximum f otherwise. Depth-first enumeration with
// independence pruning and a branch-and-bound value cutoff.
std::pair<ElementSet, Rat> brute_force_intersection_opt(const Instance& inst,
                                                        const OracleBudget& budget = {});

struct ApproxRatio {
    bool infinite = false;
    Rat value;  // opt / achieved when finite
};

// opt / achieved; 1 for the empty-instance convention opt = achieved = 0;
// flagged infinite when achieved = 0 < opt.
ApproxRatio approximation_ratio(const Rat& opt_weight, const Rat& achieved);

struct ConjectureProbeReport {
    Rat opt_weight = Rat(0);
    std::size_t orders_run = 0;
    bool counterexample_found = false;
    // min over orders of k * best_subset_weight / opt (absent when opt = 0).
    std::optional<Rat> worst_scaled_ratio = std::nullopt;
    Rat worst_best_subset_weight = Rat(0);  // of the order attaining the worst ratio
};

// Runs the k-matroid pass per order, brute-forces the best common
// independent subset of each final stack, and flags a counterexample iff
// some stack's best subset falls below opt / k (exact comparison).
ConjectureProbeReport conjecture_probe(const Instance& inst,
                                       const std::vector<std::vector<ElementIndex>>& orders,
                                       const StreamParams& params,
                                       const OracleBudget& budget = {});

// True iff no subset T of the alive stack is independent in all three
// matroids with the three domination sets covering the stack. Exhaustive.
bool no_kernel_witness(const SelectionState& state, const OracleBudget& budget = {});

}  // namespace mstream
