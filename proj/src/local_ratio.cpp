#include "mstream/local_ratio.hpp"

#include <cassert>

#include "mstream/errors.hpp"

namespace mstream {

SelectionState::SelectionState(const Instance& inst)
    : instance(&inst), t(inst.matroid_count()) {
    entry_of_.assign(inst.size(), -1);
    processed_.assign(inst.size(), 0);
}

bool SelectionState::mark_processed(ElementIndex e) {
    if (processed_[e]) return false;
    processed_[e] = 1;
    return true;
}

const StackEntry& SelectionState::entry(ElementIndex e) const {
    std::int32_t idx = entry_of_[e];
    if (idx < 0) throw InvariantError("no live stack entry for element");
    return entries[static_cast<std::size_t>(idx)];
}

Rat SelectionState::entry_weight(ElementIndex e, std::size_t matroid) const {
    return entry(e).weights[matroid];
}

ElementSet SelectionState::alive_elements() const {
    ElementSet out;
    out.reserve(alive_count());
    for (const auto& en : entries) {
        if (en.alive) out.push_back(en.element);
    }
    return out;
}

void SelectionState::push(StackEntry entry) {
    ElementIndex e = entry.element;
    stats.total_gain_alive += entry.gain;
    stats.total_gain_all += entry.gain;
    value_sum_all += entry.value;
    ++stats.selected_count;
    selected_log.push_back(e);
    entry_of_[e] = static_cast<std::int32_t>(entries.size());
    entries.push_back(std::move(entry));
}

void SelectionState::kill(ElementIndex e) {
    std::int32_t idx = entry_of_[e];
    if (idx < 0) throw InvariantError("kill: element not on the stack");
    StackEntry& en = entries[static_cast<std::size_t>(idx)];
    en.alive = false;
    stats.total_gain_alive -= en.gain;
    ++stats.deleted_count;
    ++dead_in_store_;
    entry_of_[e] = -1;
    compact_if_needed();
}

void SelectionState::compact_if_needed() {
    if (dead_in_store_ * 2 <= entries.size()) return;
    std::vector<StackEntry> live;
    live.reserve(entries.size() - dead_in_store_);
    for (auto& en : entries) {
        if (en.alive) live.push_back(std::move(en));
    }
    entries = std::move(live);
    dead_in_store_ = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        entry_of_[entries[i].element] = static_cast<std::int32_t>(i);
    }
}

void SelectionState::note_iteration_end() {
    stats.peak_stack = std::max(stats.peak_stack, alive_count());
}

namespace {

// The weakest swap candidate: minimum w_i, ties broken by earliest arrival.
// Returns (threshold weight, victim) or threshold 0 when t_i + e stays
// independent; nullopt when e is a loop in matroid i.
std::optional<std::pair<Rat, std::optional<ElementIndex>>> threshold_and_victim(
    const SelectionState& state, std::size_t matroid, ElementIndex e) {
    const MatroidDescriptor& m = state.instance->matroids[matroid];
    const ElementSet& ti = state.t[matroid];
    ElementSet extended = set_with(ti, e);
    if (is_independent(m, extended)) {
        return std::make_pair(Rat(0), std::nullopt);
    }
    bool found = false;
    Rat best;
    ElementIndex victim = 0;
    std::uint32_t victim_arrival = 0;
    for (ElementIndex f : ti) {
        if (!is_independent(m, set_without(extended, f))) continue;
        Rat wf = state.entry_weight(f, matroid);
        std::uint32_t af = state.entry(f).arrival;
        if (!found || wf < best || (wf == best && af < victim_arrival)) {
            best = wf;
            victim = f;
            victim_arrival = af;
            found = true;
        }
    }
    if (!found) return std::nullopt;  // loop
    return std::make_pair(best, std::optional<ElementIndex>(victim));
}

#ifndef NDEBUG
// Full recomputation checks for the incremental T_i maintenance and the
// threshold. Skipped beyond this stack size to keep debug runs usable.
constexpr std::size_t kDebugCheckLimit = 256;

void debug_check_state(const SelectionState& state) {
    if (state.alive_count() > kDebugCheckLimit) return;
    ElementSet alive = state.alive_elements();
    for (std::size_t i = 0; i < state.matroid_k(); ++i) {
        std::vector<OrderKey> keys(state.instance->size());
        for (ElementIndex e : alive) {
            keys[e] = OrderKey{state.entry_weight(e, i), state.entry(e).arrival};
        }
        ElementSet expect = greedy_max_independent(state.instance->matroids[i], alive, keys);
        ElementSet got = state.t[i];
        std::sort(got.begin(), got.end());
        assert(got == expect && "maintained T_i diverged from greedy recomputation");
    }
}
#endif

}  // namespace

Rat threshold(const SelectionState& state, std::size_t matroid, ElementIndex e) {
    auto result = threshold_and_victim(state, matroid, e);
    if (!result) throw std::invalid_argument("threshold: element is a loop");
#ifndef NDEBUG
    if (state.alive_count() <= kDebugCheckLimit) {
        assert(result->first == threshold_span_form(state, matroid, e) &&
               "swap threshold diverged from span formulation");
    }
#endif
    return result->first;
}

Rat threshold_span_form(const SelectionState& state, std::size_t matroid, ElementIndex e) {
    const MatroidDescriptor& m = state.instance->matroids[matroid];
    ElementSet alive = state.alive_elements();
    // Candidate thresholds are the distinct w_i values on the stack, scanned
    // from the largest down; take the first level whose prefix spans e.
    std::vector<Rat> levels;
    for (ElementIndex f : alive) levels.push_back(state.entry_weight(f, matroid));
    std::sort(levels.begin(), levels.end(), std::greater<Rat>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (const Rat& theta : levels) {
        ElementSet prefix;
        for (ElementIndex f : alive) {
            if (state.entry_weight(f, matroid) >= theta) prefix.push_back(f);
        }
        std::sort(prefix.begin(), prefix.end());
        if (in_span(m, prefix, e)) return theta;
    }
    return 0;
}

std::optional<std::vector<Rat>> thresholds(const SelectionState& state, ElementIndex e) {
    std::vector<Rat> wstar(state.matroid_k());
    for (std::size_t i = 0; i < state.matroid_k(); ++i) {
        ElementSet single{e};
        if (!is_independent(state.instance->matroids[i], single)) return std::nullopt;
        wstar[i] = threshold(state, i, e);
    }
    return wstar;
}

void commit_selection(SelectionState& state, ElementIndex e, std::uint32_t arrival,
                      const Rat& value, const std::vector<Rat>& wstar) {
    Rat sum = 0;
    for (const Rat& w : wstar) sum += w;
    StackEntry entry;
    entry.element = e;
    entry.arrival = arrival;
    entry.value = value;
    entry.gain = value - sum;
    entry.weights.reserve(wstar.size());
    for (const Rat& w : wstar) entry.weights.push_back(w + entry.gain);
    state.push(std::move(entry));

    for (std::size_t i = 0; i < state.matroid_k(); ++i) {
        auto tv = threshold_and_victim(state, i, e);
        // e was just pushed, so it is not in T_i yet; its singleton is
        // independent (checked before selection), so tv is well defined.
        if (!tv) throw InvariantError("commit_selection: loop slipped through");
        if (tv->second) {
            // The evicted element's weight is exactly w*_i(e).
            if (state.entry_weight(*tv->second, i) != wstar[i]) {
                throw InvariantError("T_i swap victim does not realize the threshold");
            }
            state.t[i] = set_without(state.t[i], *tv->second);
        }
        set_insert(state.t[i], e);
    }
#ifndef NDEBUG
    debug_check_state(state);
#endif
}

Decision process_element(SelectionState& state, ElementIndex e, std::uint32_t arrival,
                         const Rat& value, const Rat& alpha) {
    if (!state.mark_processed(e)) {
        throw std::invalid_argument("process_element: element seen twice");
    }
    auto wstar = thresholds(state, e);
    if (!wstar) return Decision{};  // loop in some matroid, never selectable
    Rat sum = 0;
    for (const Rat& w : *wstar) sum += w;
    if (!(value > alpha * sum)) return Decision{};
    commit_selection(state, e, arrival, value, *wstar);
    const StackEntry& en = state.entries.back();
    return Decision{true, en.gain, en.weights};
}

SelectionState run_local_ratio(const Instance& inst, std::span<const ElementIndex> order,
                               const Rat& alpha) {
    if (inst.matroid_count() != 2) {
        throw InputError("run_local_ratio requires exactly 2 matroids; "
                         "use the k-matroid streaming variant instead");
    }
    if (alpha < 1) throw InputError("run_local_ratio: alpha must be >= 1");
    SelectionState state(inst);
    std::uint32_t arrival = 0;
    for (ElementIndex e : order) {
        process_element(state, e, arrival++, inst.elements[e].weight, alpha);
        state.note_iteration_end();
    }
    return state;
}

namespace {

// Bipartite view: both matroids must be partition matroids whose unit
// capacity blocks cover every element. Block = vertex.
std::pair<const PartitionMatroid*, const PartitionMatroid*> bipartite_view(
    const Instance& inst) {
    if (inst.matroid_count() != 2) {
        throw InputError("matching baseline requires exactly 2 matroids");
    }
    const PartitionMatroid* sides[2];
    for (int i = 0; i < 2; ++i) {
        const MatroidDescriptor& m = inst.matroids[i];
        if (!m.is_partition()) {
            throw InputError("matching baseline: matroid is not a partition matroid");
        }
        const PartitionMatroid& p = m.as_partition();
        for (std::size_t e = 0; e < inst.size(); ++e) {
            if (p.block_of[e] < 0) {
                throw InputError("matching baseline: element outside every vertex block");
            }
        }
        for (std::uint32_t cap : p.capacities) {
            if (cap != 1) {
                throw InputError("matching baseline: vertex capacity must be 1");
            }
        }
        sides[i] = &p;
    }
    return {sides[0], sides[1]};
}

}  // namespace

MatchingBaselineResult run_matching_baseline(const Instance& inst,
                                             std::span<const ElementIndex> order) {
    auto [left, right] = bipartite_view(inst);
    MatchingBaselineResult result;
    result.potentials = {std::vector<Rat>(left->capacities.size(), Rat(0)),
                         std::vector<Rat>(right->capacities.size(), Rat(0))};
    for (ElementIndex e : order) {
        auto u = static_cast<std::size_t>(left->block_of[e]);
        auto v = static_cast<std::size_t>(right->block_of[e]);
        Rat& wu = result.potentials[0][u];
        Rat& wv = result.potentials[1][v];
        const Rat& we = inst.elements[e].weight;
        if (wu + wv < we) {
            Rat gain = we - wu - wv;
            wu += gain;
            wv += gain;
            result.selected.push_back(e);
            result.gains.push_back(gain);
        }
    }
    return result;
}

ElementSet reverse_greedy_baseline(const SelectionState& state) {
    const Instance& inst = *state.instance;
    ElementSet kept;
    for (auto it = state.entries.rbegin(); it != state.entries.rend(); ++it) {
        if (!it->alive) continue;
        ElementSet candidate = set_with(kept, it->element);
        bool ok = true;
        for (const auto& m : inst.matroids) {
            if (!is_independent(m, candidate)) {
                ok = false;
                break;
            }
        }
        if (ok) kept = std::move(candidate);
    }
    return kept;
}

}  // namespace mstream
