#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mstream/matroid.hpp"
#include "mstream/rational.hpp"

namespace mstream {

// f(S) = sum of element weights (the weights live on the instance elements).
struct LinearObjective {};

// Monotone weighted coverage: f(S) = total weight of universe items covered
// by the sets of the elements in S.
struct CoverageObjective {
    std::vector<std::string> item_names;
    std::vector<Rat> item_weights;
    std::vector<std::vector<std::uint32_t>> sets;  // per element: item indices
};

// Non-monotone graph cut. Each element toggles the membership of a vertex
// subset; f(S) = total weight of edges crossing the resulting vertex set.
struct GraphCutObjective {
    std::uint32_t vertex_count = 0;
    std::vector<std::vector<std::uint32_t>> toggles;  // per element
    std::vector<std::tuple<std::uint32_t, std::uint32_t, Rat>> edges;
};

struct Objective {
    std::variant<LinearObjective, CoverageObjective, GraphCutObjective> impl;
    bool monotone = true;

    bool is_linear() const { return std::holds_alternative<LinearObjective>(impl); }
    std::string type_name() const;
};

Objective make_linear_objective();
Objective make_coverage_objective(CoverageObjective cov);
Objective make_cut_objective(GraphCutObjective cut);

// f(s); element weights are needed for the linear case.
Rat evaluate_objective(const Objective& obj, std::span<const Rat> element_weights,
                       const ElementSet& s);

// f(s + e) - f(s). e must not be in s.
Rat marginal_value(const Objective& obj, std::span<const Rat> element_weights,
                   ElementIndex e, const ElementSet& s);

struct SubmodularityViolation {
    ElementIndex element;
    ElementSet smaller;  // A
    ElementSet larger;   // B, with A subset of B and element outside B
    Rat marginal_small;  // f(e|A)
    Rat marginal_large;  // f(e|B)
};

struct SubmodularityReport {
    bool submodular = true;
    bool monotone_consistent = true;
    std::size_t checked = 0;
    std::optional<SubmodularityViolation> violation;        // first f(e|A) < f(e|B)
    std::optional<SubmodularityViolation> monotone_violation;  // first f(e|A) < 0
};

// Verifies f(e|A) >= f(e|B) for A subset of B (and f(e|A) >= 0 when the
// objective is flagged monotone). Exhaustive for |ground| <= 10, otherwise
// `trials` sampled triples.
SubmodularityReport spot_check_submodular(const Objective& obj,
                                          std::span<const Rat> element_weights,
                                          const ElementSet& ground,
                                          std::size_t trials, std::uint64_t seed);

}  // namespace mstream
