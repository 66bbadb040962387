#include "mstream/matroid.hpp"

#include <numeric>

#include "mstream/errors.hpp"

namespace mstream {

bool set_contains(const ElementSet& s, ElementIndex e) {
    return std::binary_search(s.begin(), s.end(), e);
}

ElementSet set_with(const ElementSet& s, ElementIndex e) {
    ElementSet out = s;
    set_insert(out, e);
    return out;
}

ElementSet set_without(const ElementSet& s, ElementIndex e) {
    ElementSet out;
    out.reserve(s.size());
    for (ElementIndex x : s) {
        if (x != e) out.push_back(x);
    }
    return out;
}

void set_insert(ElementSet& s, ElementIndex e) {
    auto it = std::lower_bound(s.begin(), s.end(), e);
    if (it == s.end() || *it != e) s.insert(it, e);
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

namespace {

void check_elements(const char* op, std::size_t n, std::span<const ElementIndex> s) {
    for (ElementIndex e : s) {
        if (e >= n) {
            throw InputError(std::string(op) + ": unknown element index " +
                             std::to_string(e));
        }
    }
}

// Minimal union-find for per-query graphic cycle checks.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }
    std::uint32_t find(std::uint32_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }
    // false if u and v were already connected (the edge closes a cycle).
    bool unite(std::uint32_t u, std::uint32_t v) {
        std::uint32_t ru = find(u), rv = find(v);
        if (ru == rv) return false;
        parent_[ru] = rv;
        return true;
    }

private:
    std::vector<std::uint32_t> parent_;
};

}  // namespace

MatroidDescriptor MatroidDescriptor::partition(
    std::size_t n_elements, const std::vector<ElementSet>& blocks,
    const std::vector<std::uint32_t>& capacities) {
    if (blocks.size() != capacities.size()) {
        throw InputError("partition matroid: blocks and capacities differ in length");
    }
    PartitionMatroid p;
    p.block_of.assign(n_elements, -1);
    p.capacities = capacities;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (ElementIndex e : blocks[b]) {
            if (e >= n_elements) {
                throw InputError("partition matroid: unknown element index " +
                                 std::to_string(e));
            }
            if (p.block_of[e] != -1) {
                throw InputError("partition matroid: blocks are not disjoint");
            }
            p.block_of[e] = static_cast<std::int32_t>(b);
        }
    }
    MatroidDescriptor m;
    m.n_elements_ = n_elements;
    m.impl_ = std::move(p);
    return m;
}

MatroidDescriptor MatroidDescriptor::uniform(std::size_t n_elements, std::uint32_t k) {
    MatroidDescriptor m;
    m.n_elements_ = n_elements;
    m.impl_ = UniformMatroid{k};
    return m;
}

MatroidDescriptor MatroidDescriptor::graphic(
    std::size_t n_elements, std::uint32_t vertex_count,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    if (edges.size() != n_elements) {
        throw InputError("graphic matroid: every element needs an edge");
    }
    for (const auto& [u, v] : edges) {
        if (u >= vertex_count || v >= vertex_count) {
            throw InputError("graphic matroid: edge endpoint out of range");
        }
    }
    MatroidDescriptor m;
    m.n_elements_ = n_elements;
    m.impl_ = GraphicMatroid{vertex_count, edges};
    return m;
}

std::string MatroidDescriptor::type_name() const {
    if (is_partition()) return "partition";
    if (is_uniform()) return "uniform";
    return "graphic";
}

bool is_independent(const MatroidDescriptor& m, std::span<const ElementIndex> s) {
    check_elements("is_independent", m.n_elements_, s);
    if (const auto* p = std::get_if<PartitionMatroid>(&m.impl_)) {
        std::vector<std::uint32_t> used(p->capacities.size(), 0);
        for (ElementIndex e : s) {
            std::int32_t b = p->block_of[e];
            if (b < 0) continue;
            if (++used[static_cast<std::size_t>(b)] > p->capacities[static_cast<std::size_t>(b)]) {
                return false;
            }
        }
        return true;
    }
    if (const auto* u = std::get_if<UniformMatroid>(&m.impl_)) {
        return s.size() <= u->k;
    }
    const auto& g = std::get<GraphicMatroid>(m.impl_);
    DisjointSet dsu(g.vertex_count);
    for (ElementIndex e : s) {
        const auto& [a, b] = g.edge_of[e];
        if (!dsu.unite(a, b)) return false;
    }
    return true;
}

std::size_t rank(const MatroidDescriptor& m, std::span<const ElementIndex> s) {
    check_elements("rank", m.n_elements_, s);
    if (const auto* p = std::get_if<PartitionMatroid>(&m.impl_)) {
        std::vector<std::uint32_t> used(p->capacities.size(), 0);
        std::size_t r = 0;
        for (ElementIndex e : s) {
            std::int32_t b = p->block_of[e];
            if (b < 0) {
                ++r;
            } else if (used[static_cast<std::size_t>(b)] <
                       p->capacities[static_cast<std::size_t>(b)]) {
                ++used[static_cast<std::size_t>(b)];
                ++r;
            }
        }
        return r;
    }
    if (const auto* u = std::get_if<UniformMatroid>(&m.impl_)) {
        return std::min<std::size_t>(s.size(), u->k);
    }
    const auto& g = std::get<GraphicMatroid>(m.impl_);
    DisjointSet dsu(g.vertex_count);
    std::size_t r = 0;
    for (ElementIndex e : s) {
        const auto& [a, b] = g.edge_of[e];
        if (dsu.unite(a, b)) ++r;
    }
    return r;
}

bool in_span(const MatroidDescriptor& m, const ElementSet& s, ElementIndex e) {
    if (e >= m.ground_size()) {
        throw InputError("in_span: unknown element index " + std::to_string(e));
    }
    if (set_contains(s, e)) return true;
    return rank(m, set_with(s, e)) == rank(m, s);
}

ElementSet greedy_max_independent(const MatroidDescriptor& m,
                                  std::span<const ElementIndex> ground,
                                  std::span<const OrderKey> keys) {
    std::vector<ElementIndex> scan(ground.begin(), ground.end());
    std::sort(scan.begin(), scan.end(), [&](ElementIndex a, ElementIndex b) {
        return order_precedes(keys[a], keys[b]);
    });
    ElementSet chosen;
    for (ElementIndex e : scan) {
        ElementSet candidate = set_with(chosen, e);
        if (is_independent(m, candidate)) chosen = std::move(candidate);
    }
    return chosen;
}

std::vector<OrderKey> keys_from_weights(std::span<const Rat> weights) {
    std::vector<OrderKey> keys(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        keys[i] = OrderKey{weights[i], static_cast<std::uint32_t>(i)};
    }
    return keys;
}

Rat swap_threshold(const MatroidDescriptor& m, const ElementSet& t, ElementIndex e,
                   const std::function<Rat(ElementIndex)>& wt) {
    if (set_contains(t, e)) {
        throw std::invalid_argument("swap_threshold: element already in t");
    }
    ElementSet extended = set_with(t, e);
    if (is_independent(m, extended)) return 0;
    bool found = false;
    Rat best = 0;
    for (ElementIndex f : t) {
        if (!is_independent(m, set_without(extended, f))) continue;
        Rat wf = wt(f);
        if (!found || wf < best) {
            best = wf;
            found = true;
        }
    }
    if (!found) {
        // Only possible when {e} itself is dependent (a loop).
        throw std::invalid_argument("swap_threshold: element is a loop");
    }
    return best;
}

}  // namespace mstream
