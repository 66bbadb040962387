#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mstream/matroid.hpp"
#include "mstream/objective.hpp"
#include "mstream/rational.hpp"

namespace mstream {

struct Element {
    std::string id;
    Rat weight;  // linear-objective weight; unused for submodular runs
};

// A fully resolved problem instance. Immutable after construction / parse;
// all algorithm entry points take it by const reference.
struct Instance {
    std::string name;
    std::string notes;
    std::vector<Element> elements;
    std::vector<MatroidDescriptor> matroids;
    Objective objective = make_linear_objective();
    std::optional<std::vector<ElementIndex>> stream_order;

    std::size_t size() const { return elements.size(); }
    std::size_t matroid_count() const { return matroids.size(); }

    std::vector<Rat> weights() const {
        std::vector<Rat> w;
        w.reserve(elements.size());
        for (const auto& e : elements) w.push_back(e.weight);
        return w;
    }

    ElementSet all_elements() const {
        ElementSet s(elements.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<ElementIndex>(i);
        return s;
    }

    // Default stream: explicit stream_order if present, else file order.
    std::vector<ElementIndex> default_order() const {
        if (stream_order) return *stream_order;
        return all_elements();
    }
};

}  // namespace mstream
