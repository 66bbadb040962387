#include "mstream/streaming.hpp"

#include <algorithm>

#include "mstream/errors.hpp"

namespace mstream {

StreamParams StreamParams::exact() { return StreamParams{Rat(1), std::nullopt, Rat(0)}; }

StreamParams StreamParams::from_epsilon(const Instance& inst, const Rat& epsilon) {
    if (epsilon <= 0) throw InputError("epsilon must be positive");
    StreamParams p;
    p.epsilon = epsilon;
    p.alpha = 1 + epsilon;
    std::size_t min_rank = SIZE_MAX;
    for (const auto& m : inst.matroids) {
        min_rank = std::min(min_rank, rank(m, inst.all_elements()));
    }
    if (min_rank == SIZE_MAX) min_rank = 0;
    p.y = Rat(static_cast<unsigned long>(min_rank)) / (epsilon * epsilon);
    return p;
}

StreamParams StreamParams::explicit_params(const Rat& alpha, std::optional<Rat> y) {
    StreamParams p;
    p.alpha = alpha;
    p.y = std::move(y);
    p.epsilon = alpha > 1 ? Rat(alpha - 1) : Rat(0);
    p.validate();
    return p;
}

void StreamParams::validate() const {
    if (alpha < 1) throw InputError("alpha must be >= 1");
    if (alpha == 1 && y.has_value()) {
        throw InputError("alpha = 1 (exact variant) requires y = infinity");
    }
    if (y && *y < 0) throw InputError("y must be non-negative");
}

std::optional<Rat> memory_bound(const Instance& inst, const StreamParams& params) {
    if (!params.y || params.alpha <= 1 || params.epsilon <= 0) return std::nullopt;
    Rat sum_ranks = 0;
    std::size_t min_rank = SIZE_MAX;
    for (const auto& m : inst.matroids) {
        std::size_t r = rank(m, inst.all_elements());
        sum_ranks += static_cast<unsigned long>(r);
        min_rank = std::min(min_rank, r);
    }
    if (min_rank == SIZE_MAX) min_rank = 0;
    unsigned long levels = ceil_log(params.alpha, *params.y / params.epsilon);
    return sum_ranks + Rat(static_cast<unsigned long>(min_rank)) * levels;
}

void deletion_sweep(SelectionState& state, const Rat& y) {
    if (state.alive_count() == 0) return;
    Rat g_max = 0;
    bool first = true;
    for (const auto& entry : state.entries) {
        if (!entry.alive) continue;
        if (first || entry.gain > g_max) {
            g_max = entry.gain;
            first = false;
        }
    }
    std::vector<char> retained(state.instance->size(), 0);
    for (const auto& ti : state.t) {
        for (ElementIndex e : ti) retained[e] = 1;
    }
    std::vector<ElementIndex> doomed;
    for (const auto& entry : state.entries) {
        if (!entry.alive || retained[entry.element]) continue;
        if (y * entry.gain < g_max) doomed.push_back(entry.element);
    }
    for (ElementIndex e : doomed) state.kill(e);
}

StreamReport finish_stream_report(SelectionState state, const StreamParams& params) {
    const Instance& inst = *state.instance;
    StreamReport report{.final_state = std::move(state)};
    SelectionState& st = report.final_state;
    if (st.matroid_k() == 2) {
        report.solution = extract_solution(st);
        report.solution_certified = true;
    } else {
        report.solution = reverse_greedy_baseline(st);
        report.solution_certified = false;
    }
    std::sort(report.solution.begin(), report.solution.end());
    for (ElementIndex e : report.solution) report.solution_weight += st.entry(e).value;
    std::vector<Rat> weights = inst.weights();
    report.objective_value = evaluate_objective(inst.objective, weights, report.solution);
    report.g_alive = st.stats.total_gain_alive;
    report.g_all = st.stats.total_gain_all;
    report.peak_stack = st.stats.peak_stack;
    report.memory_bound = memory_bound(inst, params);
    return report;
}

StreamReport run_streaming_k(const Instance& inst, std::span<const ElementIndex> order,
                             const StreamParams& params) {
    if (inst.matroid_count() < 2) {
        throw InputError("streaming run requires at least 2 matroids");
    }
    if (!inst.objective.is_linear()) {
        throw InputError("streaming run requires a linear objective");
    }
    params.validate();
    SelectionState state(inst);
    std::uint32_t arrival = 0;
    for (ElementIndex e : order) {
        Decision d = process_element(state, e, arrival++, inst.elements[e].weight,
                                     params.alpha);
        if (d.selected && params.y) deletion_sweep(state, *params.y);
        state.note_iteration_end();
    }
    return finish_stream_report(std::move(state), params);
}

StreamReport run_streaming(const Instance& inst, std::span<const ElementIndex> order,
                           const StreamParams& params) {
    if (inst.matroid_count() != 2) {
        throw InputError("run_streaming requires exactly 2 matroids");
    }
    return run_streaming_k(inst, order, params);
}

}  // namespace mstream
