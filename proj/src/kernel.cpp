#include "mstream/kernel.hpp"

#include <algorithm>

#include "mstream/errors.hpp"

namespace mstream {

bool dominates(const OrderedMatroid& om, const ElementSet& t, ElementIndex e) {
    if (set_contains(t, e)) return true;
    ElementSet earlier;
    for (ElementIndex c : t) {
        if (om.precedes(c, e)) earlier.push_back(c);
    }
    std::sort(earlier.begin(), earlier.end());
    return in_span(*om.matroid, earlier, e);
}

ElementSet domination_set(const OrderedMatroid& om, const ElementSet& t,
                          const ElementSet& ground) {
    ElementSet out;
    for (ElementIndex e : ground) {
        if (dominates(om, t, e)) out.push_back(e);
    }
    return out;
}

namespace {

ElementSet greedy_in_order(const OrderedMatroid& om, const ElementSet& ground) {
    return greedy_max_independent(*om.matroid, ground, om.key);
}

}  // namespace

KernelVerifyReport verify_kernel(const OrderedMatroid& om1, const OrderedMatroid& om2,
                                 const ElementSet& ground, const ElementSet& kernel) {
    KernelVerifyReport report;
    report.independent_1 = is_independent(*om1.matroid, kernel);
    report.independent_2 = is_independent(*om2.matroid, kernel);
    for (ElementIndex e : ground) {
        if (!dominates(om1, kernel, e) && !dominates(om2, kernel, e)) {
            report.undominated.push_back(e);
        }
    }
    report.ok = report.independent_1 && report.independent_2 && report.undominated.empty();
    return report;
}

KernelResult find_kernel(const OrderedMatroid& om1, const OrderedMatroid& om2,
                         const ElementSet& ground) {
    KernelResult result;
    ElementSet rejected;
    ElementSet proposal;
    while (true) {
        ++result.rounds;
        if (result.rounds > ground.size() + 1) {
            throw InvariantError("find_kernel failed to terminate");
        }
        proposal = greedy_in_order(om1, set_difference(ground, rejected));
        std::sort(proposal.begin(), proposal.end());
        ElementSet kept = greedy_in_order(om2, proposal);
        std::sort(kept.begin(), kept.end());
        if (kept == proposal) break;
        for (ElementIndex e : set_difference(proposal, kept)) {
            set_insert(rejected, e);
            result.rejected_trace.emplace_back(result.rounds, e);
        }
    }
    result.kernel = proposal;
    auto check = verify_kernel(om1, om2, ground, result.kernel);
    if (!check.ok) {
        throw InvariantError("deferred acceptance produced a non-kernel (" +
                             std::to_string(check.undominated.size()) +
                             " undominated elements)");
    }
    return result;
}

std::vector<ElementSet> brute_force_kernel(const OrderedMatroid& om1,
                                           const OrderedMatroid& om2,
                                           const ElementSet& ground) {
    if (ground.size() > 20) {
        throw BudgetError("brute_force_kernel: ground set larger than 20");
    }
    std::vector<ElementSet> kernels;
    std::uint32_t limit = 1u << ground.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        ElementSet candidate;
        for (std::size_t i = 0; i < ground.size(); ++i) {
            if (mask & (1u << i)) candidate.push_back(ground[i]);
        }
        if (verify_kernel(om1, om2, ground, candidate).ok) {
            kernels.push_back(std::move(candidate));
        }
    }
    return kernels;
}

std::vector<OrderedMatroid> ordered_matroids_from_state(const SelectionState& state) {
    const Instance& inst = *state.instance;
    std::vector<OrderedMatroid> oms(state.matroid_k());
    for (std::size_t i = 0; i < oms.size(); ++i) {
        oms[i].matroid = &inst.matroids[i];
        oms[i].key.resize(inst.size());
        for (const auto& entry : state.entries) {
            if (!entry.alive) continue;
            oms[i].key[entry.element] = OrderKey{entry.weights[i], entry.arrival};
        }
    }
    return oms;
}

ElementSet extract_solution(const SelectionState& state) {
    if (state.matroid_k() != 2) {
        throw InputError("extract_solution requires a 2-matroid state");
    }
    ElementSet ground = state.alive_elements();
    std::sort(ground.begin(), ground.end());
    if (ground.empty()) return {};
    auto oms = ordered_matroids_from_state(state);
    KernelResult kr = find_kernel(oms[0], oms[1], ground);
    Rat total = 0;
    for (ElementIndex e : kr.kernel) total += state.entry(e).value;
    if (total < state.stats.total_gain_alive) {
        throw InvariantError("extracted kernel is lighter than the alive gain");
    }
    return kr.kernel;
}

}  // namespace mstream
