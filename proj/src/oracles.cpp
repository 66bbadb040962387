#include "mstream/oracles.hpp"

#include <algorithm>
#include <cstdlib>

#include "mstream/errors.hpp"
#include "mstream/kernel.hpp"

namespace mstream {

OracleBudget OracleBudget::from_env() {
    OracleBudget budget;
    if (const char* raw = std::getenv("MSTREAM_ORACLE_MAX")) {
        char* end = nullptr;
        unsigned long parsed = std::strtoul(raw, &end, 10);
        if (end == raw || *end != '\0') {
            throw InputError("MSTREAM_ORACLE_MAX is not an integer");
        }
        budget.max_elements = parsed;
    }
    return budget;
}

void OracleBudget::check(std::size_t n, const char* what) const {
    if (n > max_elements) {
        throw BudgetError(std::string(what) + ": " + std::to_string(n) +
                          " elements exceed the oracle budget of " +
                          std::to_string(max_elements));
    }
    if (n < 64 && (std::uint64_t{1} << n) > max_subsets) {
        throw BudgetError(std::string(what) + ": subset enumeration exceeds budget");
    }
}

namespace {

struct OptSearch {
    const Instance& inst;
    const std::vector<Rat>& weights;
    std::vector<ElementIndex> scan;  // heaviest first
    ElementSet best_set;
    Rat best_value;
    ElementSet current;

    bool independent_everywhere(const ElementSet& s) const {
        for (const auto& m : inst.matroids) {
            if (!is_independent(m, s)) return false;
        }
        return true;
    }

    // Upper bound for completions of `current` using elements from position
    // idx on. Linear: plain suffix weight. Submodular: current value plus
    // the non-negative marginals against current (valid by submodularity).
    Rat upper_bound(std::size_t idx, const Rat& current_value) const {
        Rat bound = current_value;
        for (std::size_t j = idx; j < scan.size(); ++j) {
            ElementIndex e = scan[j];
            if (inst.objective.is_linear()) {
                bound += weights[e];
            } else {
                Rat marginal = marginal_value(inst.objective, weights, e, current);
                if (marginal > 0) bound += marginal;
            }
        }
        return bound;
    }

    // current_value is taken by value: best_value changes while frames are
    // live, so a reference would alias the top-level seed.
    void dfs(std::size_t idx, Rat current_value) {
        if (current_value > best_value) {
            best_value = current_value;
            best_set = current;
        }
        if (idx == scan.size()) return;
        if (upper_bound(idx, current_value) <= best_value) return;
        ElementIndex e = scan[idx];
        ElementSet extended = set_with(current, e);
        if (independent_everywhere(extended)) {
            Rat gain = inst.objective.is_linear()
                           ? weights[e]
                           : marginal_value(inst.objective, weights, e, current);
            current = std::move(extended);
            dfs(idx + 1, current_value + gain);
            current = set_without(current, e);
        }
        dfs(idx + 1, current_value);
    }
};

}  // namespace

std::pair<ElementSet, Rat> brute_force_intersection_opt(const Instance& inst,
                                                        const OracleBudget& budget) {
    budget.check(inst.size(), "brute_force_intersection_opt");
    std::vector<Rat> weights = inst.weights();
    OptSearch search{inst, weights, inst.all_elements(), {}, Rat(0), {}};
    std::sort(search.scan.begin(), search.scan.end(), [&](ElementIndex a, ElementIndex b) {
        if (weights[a] != weights[b]) return weights[a] > weights[b];
        return a < b;
    });
    search.best_value = evaluate_objective(inst.objective, weights, {});
    search.dfs(0, search.best_value);
    return {search.best_set, search.best_value};
}

ApproxRatio approximation_ratio(const Rat& opt_weight, const Rat& achieved) {
    if (achieved == 0) {
        if (opt_weight == 0) return ApproxRatio{false, Rat(1)};
        return ApproxRatio{true, Rat(0)};
    }
    if (achieved < 0) throw InputError("approximation_ratio: negative achieved value");
    Rat r = opt_weight / achieved;
    r.canonicalize();
    return ApproxRatio{false, r};
}

namespace {

// Best common-independent subset weight within a stack, by pruned DFS.
Rat best_subset_weight(const Instance& inst, const ElementSet& stack) {
    std::vector<Rat> weights = inst.weights();
    OptSearch search{inst, weights, {stack.begin(), stack.end()}, {}, Rat(0), {}};
    std::sort(search.scan.begin(), search.scan.end(), [&](ElementIndex a, ElementIndex b) {
        if (weights[a] != weights[b]) return weights[a] > weights[b];
        return a < b;
    });
    search.dfs(0, Rat(0));
    return search.best_value;
}

}  // namespace

ConjectureProbeReport conjecture_probe(const Instance& inst,
                                       const std::vector<std::vector<ElementIndex>>& orders,
                                       const StreamParams& params,
                                       const OracleBudget& budget) {
    budget.check(inst.size(), "conjecture_probe");
    auto [opt_set, opt_weight] = brute_force_intersection_opt(inst, budget);
    ConjectureProbeReport report{.opt_weight = opt_weight};
    Rat k(static_cast<unsigned long>(inst.matroid_count()));
    for (const auto& order : orders) {
        StreamReport run = run_streaming_k(inst, order, params);
        ElementSet stack = run.final_state.alive_elements();
        std::sort(stack.begin(), stack.end());
        budget.check(stack.size(), "conjecture_probe stack");
        Rat best = best_subset_weight(inst, stack);
        ++report.orders_run;
        if (opt_weight > 0) {
            if (k * best < opt_weight) report.counterexample_found = true;
            Rat scaled = k * best / opt_weight;
            scaled.canonicalize();
            if (!report.worst_scaled_ratio || scaled < *report.worst_scaled_ratio) {
                report.worst_scaled_ratio = scaled;
                report.worst_best_subset_weight = best;
            }
        }
    }
    return report;
}

bool no_kernel_witness(const SelectionState& state, const OracleBudget& budget) {
    if (state.matroid_k() != 3) {
        throw InputError("no_kernel_witness expects a 3-matroid state");
    }
    ElementSet stack = state.alive_elements();
    std::sort(stack.begin(), stack.end());
    budget.check(stack.size(), "no_kernel_witness");
    auto oms = ordered_matroids_from_state(state);
    std::uint32_t limit = 1u << stack.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        ElementSet t;
        for (std::size_t i = 0; i < stack.size(); ++i) {
            if (mask & (1u << i)) t.push_back(stack[i]);
        }
        bool independent = true;
        for (const auto& om : oms) {
            if (!is_independent(*om.matroid, t)) {
                independent = false;
                break;
            }
        }
        if (!independent) continue;
        bool covers = true;
        for (ElementIndex e : stack) {
            if (!dominates(oms[0], t, e) && !dominates(oms[1], t, e) &&
                !dominates(oms[2], t, e)) {
                covers = false;
                break;
            }
        }
        if (covers) return false;  // witness found: the generalization holds here
    }
    return true;
}

}  // namespace mstream
