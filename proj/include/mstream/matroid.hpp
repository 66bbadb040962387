#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mstream/rational.hpp"

namespace mstream {

// Elements are addressed by their index in the instance element list.
// Ids (strings) only exist at the I/O boundary.
using ElementIndex = std::uint32_t;

// Sorted, duplicate-free vector of element indices.
using ElementSet = std::vector<ElementIndex>;

bool set_contains(const ElementSet& s, ElementIndex e);
ElementSet set_with(const ElementSet& s, ElementIndex e);
ElementSet set_without(const ElementSet& s, ElementIndex e);
void set_insert(ElementSet& s, ElementIndex e);
ElementSet set_difference(const ElementSet& a, const ElementSet& b);

// Sort key for the canonical total order used everywhere: weight descending,
// ties broken by later arrival first.
struct OrderKey {
    Rat weight;
    std::uint32_t arrival = 0;
};

// True iff a comes strictly before b in the canonical order.
inline bool order_precedes(const OrderKey& a, const OrderKey& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.arrival > b.arrival;
}

// Blocks partition a subset of the ground set; elements outside every block
// are unconstrained. Stored as a per-element block id (-1 = free).
struct PartitionMatroid {
    std::vector<std::int32_t> block_of;  // indexed by element, -1 when free
    std::vector<std::uint32_t> capacities;
};

struct UniformMatroid {
    std::uint32_t k = 0;
};

struct GraphicMatroid {
    std::uint32_t vertex_count = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_of;  // per element
};

// Compact matroid description answering independence / rank / span queries.
// Immutable after construction and safe to share across threads.
class MatroidDescriptor {
public:
    static MatroidDescriptor partition(std::size_t n_elements,
                                       const std::vector<ElementSet>& blocks,
                                       const std::vector<std::uint32_t>& capacities);
    static MatroidDescriptor uniform(std::size_t n_elements, std::uint32_t k);
    static MatroidDescriptor graphic(
        std::size_t n_elements, std::uint32_t vertex_count,
        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

    std::size_t ground_size() const { return n_elements_; }

    bool is_partition() const { return std::holds_alternative<PartitionMatroid>(impl_); }
    bool is_uniform() const { return std::holds_alternative<UniformMatroid>(impl_); }
    bool is_graphic() const { return std::holds_alternative<GraphicMatroid>(impl_); }
    const PartitionMatroid& as_partition() const { return std::get<PartitionMatroid>(impl_); }
    const UniformMatroid& as_uniform() const { return std::get<UniformMatroid>(impl_); }
    const GraphicMatroid& as_graphic() const { return std::get<GraphicMatroid>(impl_); }

    std::string type_name() const;

private:
    MatroidDescriptor() = default;
    std::size_t n_elements_ = 0;
    std::variant<PartitionMatroid, UniformMatroid, GraphicMatroid> impl_;

    friend bool is_independent(const MatroidDescriptor&, std::span<const ElementIndex>);
    friend std::size_t rank(const MatroidDescriptor&, std::span<const ElementIndex>);
};

// s in I_m? Partition: every block within capacity. Uniform: |s| <= k.
// Graphic: the edge set is acyclic (disjoint-set union, rebuilt per query).
bool is_independent(const MatroidDescriptor& m, std::span<const ElementIndex> s);

// Closed-form rank of s.
std::size_t rank(const MatroidDescriptor& m, std::span<const ElementIndex> s);

// rank(s + e) == rank(s); trivially true when e is already in s.
bool in_span(const MatroidDescriptor& m, const ElementSet& s, ElementIndex e);

// Scans ground in the canonical order given by keys (indexed by element) and
// keeps every element that preserves independence. For a matroid this yields
// a maximum-weight independent subset, and every skipped element is spanned
// by the strictly earlier selections.
ElementSet greedy_max_independent(const MatroidDescriptor& m,
                                  std::span<const ElementIndex> ground,
                                  std::span<const OrderKey> keys);

// Convenience: keys with arrival = element index.
std::vector<OrderKey> keys_from_weights(std::span<const Rat> weights);

// 0 if t + e stays independent, otherwise the minimum wt over elements f of t
// whose removal lets e in (the cheapest member of the unique circuit of
// t + e). Preconditions: t independent, e not in t, {e} independent.
Rat swap_threshold(const MatroidDescriptor& m, const ElementSet& t, ElementIndex e,
                   const std::function<Rat(ElementIndex)>& wt);

}  // namespace mstream
