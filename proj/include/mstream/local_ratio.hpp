#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mstream/instance.hpp"
#include "mstream/matroid.hpp"
#include "mstream/rational.hpp"

namespace mstream {

// One selected element on the stack S. weights[i] = w_i at selection time,
// which always satisfies weights[i] = threshold_i + gain and gain > 0.
struct StackEntry {
    ElementIndex element = 0;
    std::uint32_t arrival = 0;
    Rat value;  // w(e) used in the selection test (weight, or marginal value)
    Rat gain;
    std::vector<Rat> weights;
    bool alive = true;
};

struct RunStats {
    std::size_t peak_stack = 0;
    Rat total_gain_alive = 0;  // g(S)
    Rat total_gain_all = 0;    // g(S'), deleted elements included
    std::size_t deleted_count = 0;
    std::size_t selected_count = 0;
};

// The stack S together with the maintained max-weight independent sets T_i
// and run counters. Single-writer: a run is strictly sequential, but the
// state may be handed between threads between elements.
struct SelectionState {
    SelectionState() = default;  // empty placeholder; runs construct from an instance
    explicit SelectionState(const Instance& inst);

    const Instance* instance = nullptr;
    std::vector<StackEntry> entries;          // push order; compacted in place
    std::vector<ElementSet> t;                // T_i, one per matroid
    RunStats stats;
    Rat value_sum_all = 0;                    // sum of entry values ever pushed
    std::vector<ElementIndex> selected_log;   // every element ever pushed

    std::size_t matroid_k() const { return t.size(); }
    std::size_t alive_count() const { return entries.size() - dead_in_store_; }
    bool has_entry(ElementIndex e) const { return entry_of_[e] >= 0; }
    const StackEntry& entry(ElementIndex e) const;
    Rat entry_weight(ElementIndex e, std::size_t matroid) const;

    // Alive element indices in push order.
    ElementSet alive_elements() const;

    // Streams feed each element once; returns false on a repeat.
    bool mark_processed(ElementIndex e);

    void push(StackEntry entry);
    void kill(ElementIndex e);          // logical deletion + stats update
    void note_iteration_end();          // records the stack-size peak

private:
    std::vector<std::int32_t> entry_of_;  // element -> entries index, -1 = none
    std::vector<char> processed_;
    std::size_t dead_in_store_ = 0;
    void compact_if_needed();
};

struct Decision {
    bool selected = false;
    Rat gain;
    std::vector<Rat> weights;
};

// Thresholds w*_i(e) for all matroids, against the alive stack; nullopt when
// e is a loop in some matroid (such elements can never be selected).
std::optional<std::vector<Rat>> thresholds(const SelectionState& state, ElementIndex e);

// w*_i(e) for one matroid: the swap threshold against the maintained T_i.
// Throws std::invalid_argument when e is a loop in that matroid.
Rat threshold(const SelectionState& state, std::size_t matroid, ElementIndex e);

// The equivalent span formulation: max({0} + {theta : e spanned by the alive
// elements with w_i >= theta}). Used by debug assertions and property tests.
Rat threshold_span_form(const SelectionState& state, std::size_t matroid, ElementIndex e);

// Pushes e with gain g = value - sum(wstar) and updates every T_i by a
// single swap. Caller has already checked the selection test.
void commit_selection(SelectionState& state, ElementIndex e, std::uint32_t arrival,
                      const Rat& value, const std::vector<Rat>& wstar);

// One step of the selection loop: select iff value > alpha * sum_i w*_i(e).
Decision process_element(SelectionState& state, ElementIndex e, std::uint32_t arrival,
                         const Rat& value, const Rat& alpha);

// The exact (unbounded memory) two-matroid pass: every element runs through
// process_element, nothing is ever deleted.
SelectionState run_local_ratio(const Instance& inst, std::span<const ElementIndex> order,
                               const Rat& alpha = Rat(1));

// Cross-check oracle for bipartite instances encoded as two unit-capacity
// partition matroids: the vertex-potential formulation of the same pass.
struct MatchingBaselineResult {
    ElementSet selected;                     // in selection order
    std::vector<Rat> gains;                  // aligned with selected
    std::vector<std::vector<Rat>> potentials;  // per matroid, per block
};

MatchingBaselineResult run_matching_baseline(const Instance& inst,
                                             std::span<const ElementIndex> order);

// Scans alive entries newest-first and keeps what stays independent in every
// matroid. Reproduces the bad case that motivates kernel extraction; never
// used as the real extractor.
ElementSet reverse_greedy_baseline(const SelectionState& state);

}  // namespace mstream
