#include "mstream/submodular.hpp"

#include <algorithm>

#include "mstream/errors.hpp"
#include "mstream/rng.hpp"

namespace mstream {

SubmodularParams SubmodularParams::with_schedule(const Instance& inst, const Rat& alpha,
                                                 const Rat& q, const Rat& delta,
                                                 std::uint64_t seed) {
    SubmodularParams p;
    p.alpha = alpha;
    p.q = q;
    p.delta = delta;
    p.seed = seed;
    std::size_t min_rank = SIZE_MAX;
    for (const auto& m : inst.matroids) {
        min_rank = std::min(min_rank, rank(m, inst.all_elements()));
    }
    if (min_rank == SIZE_MAX) min_rank = 0;
    p.y = Rat(static_cast<unsigned long>(min_rank)) / (delta * delta);
    p.validate();
    return p;
}

void SubmodularParams::validate() const {
    if (alpha <= 1) throw InputError("submodular run: alpha must be > 1");
    if (q <= 0 || q > 1) throw InputError("submodular run: q must lie in (0, 1]");
    if (delta <= 0) throw InputError("submodular run: delta must be positive");
    if (y && *y < 0) throw InputError("submodular run: y must be non-negative");
}

Rat monotone_alpha_preset() { return 1 + make_rat(707107, 1000000); }

Rat nonmonotone_alpha_preset() { return 1 + make_rat(866025, 1000000); }

Rat guarantee_q(const Rat& alpha) {
    Rat q = 1 / (2 * alpha + 1);
    q.canonicalize();
    return q;
}

Rat guarantee_factor(const Rat& alpha, const Rat& delta) {
    return (2 * alpha + alpha / (alpha - 1)) * (1 + delta);
}

SubmodularReport run_submodular(const Instance& inst, std::span<const ElementIndex> order,
                                const SubmodularParams& params) {
    if (inst.matroid_count() != 2) {
        throw InputError("run_submodular requires exactly 2 matroids");
    }
    params.validate();
    std::vector<Rat> weights = inst.weights();
    auto check = spot_check_submodular(inst.objective, weights, inst.all_elements(),
                                       /*trials=*/200, params.seed ^ 0x5f3759dfULL);
    if (!check.submodular) {
        throw InputError("objective failed the submodularity spot check");
    }
    if (!check.monotone_consistent) {
        throw InputError("objective is flagged monotone but has a negative marginal");
    }

    const bool deterministic = (params.q == 1);
    std::size_t skipped_by_coin = 0;
    Rng rng(params.seed);

    SelectionState state(inst);
    std::uint32_t arrival = 0;
    for (ElementIndex e : order) {
        if (!state.mark_processed(e)) {
            throw std::invalid_argument("run_submodular: element seen twice");
        }
        ElementSet alive = state.alive_elements();
        std::sort(alive.begin(), alive.end());
        Rat value = marginal_value(inst.objective, weights, e, alive);
        auto wstar = thresholds(state, e);
        if (wstar) {
            Rat sum = 0;
            for (const Rat& w : *wstar) sum += w;
            if (value > params.alpha * sum) {
                // Skip with probability 1 - q; q = 1 never touches the coin.
                bool keep = deterministic || rng.bernoulli(params.q);
                if (keep) {
                    commit_selection(state, e, arrival, value, *wstar);
                    if (params.y) deletion_sweep(state, *params.y);
                } else {
                    ++skipped_by_coin;
                }
            }
        }
        state.note_iteration_end();
        ++arrival;
    }

    // Every selection satisfied value > alpha * sum(w*), so per element
    // g(e) > (1 - 1/alpha) * value; summed over all selections:
    if (!(state.stats.total_gain_all * params.alpha >=
          (params.alpha - 1) * state.value_sum_all)) {
        throw InvariantError("per-run gain bound against selected marginals failed");
    }

    StreamParams sp;
    sp.alpha = params.alpha;
    sp.y = params.y;
    sp.epsilon = params.alpha - 1;  // the stack-size bound divides y by alpha - 1
    StreamReport report = finish_stream_report(std::move(state), sp);
    if (report.objective_value < report.g_alive) {
        throw InvariantError("f(solution) fell below the alive gain");
    }
    return SubmodularReport{std::move(report), params.seed, deterministic, skipped_by_coin};
}

}  // namespace mstream
