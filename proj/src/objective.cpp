#include "mstream/objective.hpp"

#include <stdexcept>

#include "mstream/errors.hpp"
#include "mstream/rng.hpp"

namespace mstream {

std::string Objective::type_name() const {
    if (std::holds_alternative<LinearObjective>(impl)) return "linear";
    if (std::holds_alternative<CoverageObjective>(impl)) return "coverage";
    return "cut";
}

Objective make_linear_objective() { return Objective{LinearObjective{}, true}; }

Objective make_coverage_objective(CoverageObjective cov) {
    return Objective{std::move(cov), true};
}

Objective make_cut_objective(GraphCutObjective cut) {
    return Objective{std::move(cut), false};
}

Rat evaluate_objective(const Objective& obj, std::span<const Rat> element_weights,
                       const ElementSet& s) {
    if (const auto* lin = std::get_if<LinearObjective>(&obj.impl)) {
        (void)lin;
        Rat total = 0;
        for (ElementIndex e : s) total += element_weights[e];
        return total;
    }
    if (const auto* cov = std::get_if<CoverageObjective>(&obj.impl)) {
        std::vector<char> covered(cov->item_weights.size(), 0);
        for (ElementIndex e : s) {
            for (std::uint32_t item : cov->sets[e]) covered[item] = 1;
        }
        Rat total = 0;
        for (std::size_t i = 0; i < covered.size(); ++i) {
            if (covered[i]) total += cov->item_weights[i];
        }
        return total;
    }
    const auto& cut = std::get<GraphCutObjective>(obj.impl);
    std::vector<char> side(cut.vertex_count, 0);
    for (ElementIndex e : s) {
        for (std::uint32_t v : cut.toggles[e]) side[v] ^= 1;
    }
    Rat total = 0;
    for (const auto& [u, v, w] : cut.edges) {
        if (side[u] != side[v]) total += w;
    }
    return total;
}

Rat marginal_value(const Objective& obj, std::span<const Rat> element_weights,
                   ElementIndex e, const ElementSet& s) {
    if (set_contains(s, e)) {
        throw std::invalid_argument("marginal_value: element already in set");
    }
    if (obj.is_linear()) return element_weights[e];
    return evaluate_objective(obj, element_weights, set_with(s, e)) -
           evaluate_objective(obj, element_weights, s);
}

namespace {

ElementSet mask_to_set(const ElementSet& ground, std::uint32_t mask) {
    ElementSet s;
    for (std::size_t i = 0; i < ground.size(); ++i) {
        if (mask & (1u << i)) s.push_back(ground[i]);
    }
    return s;
}

}  // namespace

SubmodularityReport spot_check_submodular(const Objective& obj,
                                          std::span<const Rat> element_weights,
                                          const ElementSet& ground,
                                          std::size_t trials, std::uint64_t seed) {
    SubmodularityReport report;
    auto record = [&](ElementIndex e, const ElementSet& a, const ElementSet& b,
                      const Rat& fa, const Rat& fb) {
        ++report.checked;
        if (obj.monotone && fa < 0 && !report.monotone_violation) {
            report.monotone_consistent = false;
            report.monotone_violation = SubmodularityViolation{e, a, b, fa, fb};
        }
        if (fa < fb && !report.violation) {
            report.submodular = false;
            report.violation = SubmodularityViolation{e, a, b, fa, fb};
        }
    };

    if (ground.size() <= 10) {
        std::size_t n = ground.size();
        std::vector<Rat> value(std::size_t{1} << n);
        for (std::uint32_t mask = 0; mask < value.size(); ++mask) {
            value[mask] = evaluate_objective(obj, element_weights, mask_to_set(ground, mask));
        }
        std::uint32_t full = static_cast<std::uint32_t>(value.size() - 1);
        for (std::uint32_t b = 0; b <= full; ++b) {
            // Proper submasks a of b, plus a == b handled below the loop body.
            for (std::uint32_t a = b;; a = (a - 1) & b) {
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint32_t bit = 1u << i;
                    if (b & bit) continue;
                    Rat fa = value[a | bit] - value[a];
                    Rat fb = value[b | bit] - value[b];
                    record(ground[i], mask_to_set(ground, a), mask_to_set(ground, b), fa, fb);
                    if (report.violation && report.monotone_violation) return report;
                    if (report.violation && !obj.monotone) return report;
                }
                if (a == 0) break;
            }
            if (b == full) break;
        }
        return report;
    }

    Rng rng(seed);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        ElementSet a, b;
        ElementIndex e = ground[rng.below(ground.size())];
        for (ElementIndex x : ground) {
            if (x == e) continue;
            std::uint64_t pick = rng.below(3);  // 0: neither, 1: B only, 2: both
            if (pick >= 1) b.push_back(x);
            if (pick == 2) a.push_back(x);
        }
        Rat fa = marginal_value(obj, element_weights, e, a);
        Rat fb = marginal_value(obj, element_weights, e, b);
        record(e, a, b, fa, fb);
        if (report.violation) return report;
    }
    return report;
}

}  // namespace mstream
