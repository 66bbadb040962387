#pragma once

// Shared helpers for the test suites: tiny instance builders, seeded random
// instance generators, and enumeration oracles kept independent of the
// library code paths they are used to check.

#include <algorithm>
#include <string>
#include <vector>

#include "mstream/instance.hpp"
#include "mstream/kernel.hpp"
#include "mstream/matroid.hpp"
#include "mstream/rng.hpp"

namespace mstream::testsupport {

inline Instance make_instance(const std::vector<std::pair<std::string, std::string>>& elements,
                              std::vector<MatroidDescriptor> matroids,
                              Objective objective = make_linear_objective()) {
    Instance inst;
    for (const auto& [id, weight] : elements) {
        inst.elements.push_back(Element{id, parse_decimal(weight)});
    }
    inst.matroids = std::move(matroids);
    inst.objective = std::move(objective);
    return inst;
}

// The counterexample ground set at a given eps: weights 1, 1+eps, 2eps, 3eps
// under "no {a,b} together" and "at most two elements".
inline Instance counterexample_instance(const Rat& eps) {
    Instance inst;
    inst.name = "counterexample";
    inst.elements = {Element{"a", Rat(1)}, Element{"b", 1 + eps},
                     Element{"c", 2 * eps}, Element{"d", 3 * eps}};
    inst.matroids.push_back(
        MatroidDescriptor::partition(4, {{0, 1}, {2}, {3}}, {1, 1, 1}));
    inst.matroids.push_back(MatroidDescriptor::uniform(4, 2));
    return inst;
}

// The 4-cycle bipartite example: e1=(a,b) w=1, e2=(b,c), e3=(c,d), e4=(a,d)
// all w=2; left vertices a,c / right vertices b,d as unit partition blocks.
inline Instance four_cycle_instance() {
    Instance inst;
    inst.name = "four_cycle";
    inst.elements = {Element{"e1", Rat(1)}, Element{"e2", Rat(2)},
                     Element{"e3", Rat(2)}, Element{"e4", Rat(2)}};
    inst.matroids.push_back(MatroidDescriptor::partition(4, {{0, 3}, {1, 2}}, {1, 1}));
    inst.matroids.push_back(MatroidDescriptor::partition(4, {{0, 1}, {2, 3}}, {1, 1}));
    return inst;
}

// ---- enumeration oracles (never call the code path under test) ----

// Rank by subset enumeration over the independence oracle.
inline std::size_t enum_rank(const MatroidDescriptor& m, const ElementSet& s) {
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << s.size()); ++mask) {
        ElementSet sub;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (mask & (1u << i)) sub.push_back(s[i]);
        }
        if (sub.size() > best && is_independent(m, sub)) best = sub.size();
    }
    return best;
}

// Max-weight independent subset by enumeration.
inline Rat enum_max_weight_independent(const MatroidDescriptor& m, const ElementSet& ground,
                                       const std::vector<Rat>& wt) {
    Rat best = 0;
    for (std::uint32_t mask = 0; mask < (1u << ground.size()); ++mask) {
        ElementSet sub;
        Rat total = 0;
        for (std::size_t i = 0; i < ground.size(); ++i) {
            if (mask & (1u << i)) {
                sub.push_back(ground[i]);
                total += wt[ground[i]];
            }
        }
        if (total > best && is_independent(m, sub)) best = total;
    }
    return best;
}

// Exact optimum of the weighted intersection by plain enumeration.
inline std::pair<ElementSet, Rat> enum_intersection_opt(const Instance& inst) {
    Rat best = 0;
    ElementSet best_set;
    std::size_t n = inst.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        ElementSet sub;
        Rat total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                sub.push_back(static_cast<ElementIndex>(i));
                total += inst.elements[i].weight;
            }
        }
        bool ok = true;
        for (const auto& m : inst.matroids) {
            if (!is_independent(m, sub)) {
                ok = false;
                break;
            }
        }
        if (ok && total > best) {
            best = total;
            best_set = sub;
        }
    }
    return {best_set, best};
}

// ---- seeded random generators ----

inline Rat random_weight(Rng& rng) {
    // decimals num / 10^d with d in {0,1,2}
    unsigned long denom = 1;
    for (std::uint64_t d = rng.below(3); d > 0; --d) denom *= 10;
    return make_rat(static_cast<long>(rng.below(400) + 1), static_cast<long>(denom));
}

inline MatroidDescriptor random_matroid(std::size_t n, Rng& rng) {
    switch (rng.below(3)) {
        case 0: {  // partition over a random share of the elements
            std::size_t nblocks = 1 + rng.below(std::max<std::size_t>(1, n / 2));
            std::vector<ElementSet> blocks(nblocks);
            std::vector<std::uint32_t> caps;
            for (std::size_t b = 0; b < nblocks; ++b) {
                caps.push_back(static_cast<std::uint32_t>(rng.below(3)));  // 0..2
            }
            for (std::size_t e = 0; e < n; ++e) {
                std::uint64_t pick = rng.below(nblocks + 1);
                if (pick < nblocks) blocks[pick].push_back(static_cast<ElementIndex>(e));
            }
            return MatroidDescriptor::partition(n, blocks, caps);
        }
        case 1:
            return MatroidDescriptor::uniform(n, static_cast<std::uint32_t>(rng.below(n + 2)));
        default: {
            std::uint32_t vertices = 2 + static_cast<std::uint32_t>(rng.below(6));
            std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
            for (std::size_t e = 0; e < n; ++e) {
                auto u = static_cast<std::uint32_t>(rng.below(vertices));
                auto v = static_cast<std::uint32_t>(rng.below(vertices));
                edges.emplace_back(u, v);  // self-loops allowed: dependent singletons
            }
            return MatroidDescriptor::graphic(n, vertices, edges);
        }
    }
}

inline Instance random_linear_instance(std::size_t n, std::size_t k, Rng& rng) {
    Instance inst;
    inst.name = "random";
    for (std::size_t i = 0; i < n; ++i) {
        inst.elements.push_back(Element{"e" + std::to_string(i), random_weight(rng)});
    }
    for (std::size_t i = 0; i < k; ++i) inst.matroids.push_back(random_matroid(n, rng));
    return inst;
}

// Bipartite matching instance: edges over random endpoint pairs, both sides
// encoded as unit-capacity partition matroids keyed by the endpoint.
inline Instance random_bipartite_instance(std::size_t left, std::size_t right,
                                          std::size_t n_edges, Rng& rng) {
    Instance inst;
    inst.name = "bipartite";
    std::vector<ElementSet> left_blocks(left), right_blocks(right);
    for (std::size_t i = 0; i < n_edges; ++i) {
        inst.elements.push_back(Element{"e" + std::to_string(i), random_weight(rng)});
        left_blocks[rng.below(left)].push_back(static_cast<ElementIndex>(i));
        right_blocks[rng.below(right)].push_back(static_cast<ElementIndex>(i));
    }
    inst.matroids.push_back(MatroidDescriptor::partition(
        n_edges, left_blocks, std::vector<std::uint32_t>(left, 1)));
    inst.matroids.push_back(MatroidDescriptor::partition(
        n_edges, right_blocks, std::vector<std::uint32_t>(right, 1)));
    return inst;
}

inline std::vector<ElementIndex> random_order(std::size_t n, Rng& rng) {
    std::vector<ElementIndex> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<ElementIndex>(i);
    fisher_yates(order, rng);
    return order;
}

inline Instance random_coverage_instance(std::size_t n, Rng& rng) {
    Instance inst;
    inst.name = "coverage";
    std::size_t items = 3 + rng.below(6);
    CoverageObjective cov;
    for (std::size_t i = 0; i < items; ++i) {
        cov.item_names.push_back("u" + std::to_string(i));
        cov.item_weights.push_back(random_weight(rng));
    }
    cov.sets.resize(n);
    for (std::size_t e = 0; e < n; ++e) {
        inst.elements.push_back(Element{"e" + std::to_string(e), Rat(0)});
        for (std::size_t i = 0; i < items; ++i) {
            if (rng.below(3) == 0) cov.sets[e].push_back(static_cast<std::uint32_t>(i));
        }
    }
    inst.matroids.push_back(random_matroid(n, rng));
    inst.matroids.push_back(random_matroid(n, rng));
    inst.objective = make_coverage_objective(std::move(cov));
    return inst;
}

// Graph-cut instance with disjoint single-vertex toggles (element e toggles
// vertex e), which keeps the objective genuinely submodular.
inline Instance random_cut_instance(std::size_t n, Rng& rng) {
    Instance inst;
    inst.name = "cut";
    GraphCutObjective cut;
    cut.vertex_count = static_cast<std::uint32_t>(n + 1 + rng.below(3));
    cut.toggles.resize(n);
    for (std::size_t e = 0; e < n; ++e) {
        inst.elements.push_back(Element{"e" + std::to_string(e), Rat(0)});
        cut.toggles[e] = {static_cast<std::uint32_t>(e)};
    }
    std::size_t n_edges = 1 + rng.below(2 * n);
    for (std::size_t i = 0; i < n_edges; ++i) {
        auto u = static_cast<std::uint32_t>(rng.below(cut.vertex_count));
        auto v = static_cast<std::uint32_t>(rng.below(cut.vertex_count));
        if (u == v) continue;
        cut.edges.emplace_back(u, v, random_weight(rng));
    }
    inst.matroids.push_back(random_matroid(n, rng));
    inst.matroids.push_back(random_matroid(n, rng));
    inst.objective = make_cut_objective(std::move(cut));
    return inst;
}

// n men x n women with full preference lists; element (m, w) has index
// m * n + w. Matroid 0 partitions by man, matroid 1 by woman, and the order
// keys encode the preference lists (more preferred = heavier).
struct MarriageMarket {
    std::size_t n;
    std::vector<std::vector<std::uint32_t>> men_pref;    // best-first woman ids
    std::vector<std::vector<std::uint32_t>> women_pref;  // best-first man ids
    Instance inst;
    OrderedMatroid om1, om2;

    MarriageMarket(std::size_t n_, Rng& rng) : n(n_) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::uint32_t> p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = static_cast<std::uint32_t>(j);
            fisher_yates(p, rng);
            men_pref.push_back(p);
            fisher_yates(p, rng);
            women_pref.push_back(p);
        }
        std::vector<ElementSet> man_blocks(n), woman_blocks(n);
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t w = 0; w < n; ++w) {
                auto e = static_cast<ElementIndex>(m * n + w);
                inst.elements.push_back(
                    Element{"m" + std::to_string(m) + "w" + std::to_string(w), Rat(0)});
                man_blocks[m].push_back(e);
                woman_blocks[w].push_back(e);
            }
        }
        inst.matroids.push_back(MatroidDescriptor::partition(
            n * n, man_blocks, std::vector<std::uint32_t>(n, 1)));
        inst.matroids.push_back(MatroidDescriptor::partition(
            n * n, woman_blocks, std::vector<std::uint32_t>(n, 1)));
        om1.matroid = &inst.matroids[0];
        om2.matroid = &inst.matroids[1];
        om1.key.resize(n * n);
        om2.key.resize(n * n);
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t r = 0; r < n; ++r) {
                auto e = static_cast<ElementIndex>(m * n + men_pref[m][r]);
                om1.key[e] = OrderKey{Rat(static_cast<unsigned long>(n - r)),
                                      static_cast<std::uint32_t>(e)};
            }
        }
        for (std::size_t w = 0; w < n; ++w) {
            for (std::size_t r = 0; r < n; ++r) {
                auto e = static_cast<ElementIndex>(women_pref[w][r] * n + w);
                om2.key[e] = OrderKey{Rat(static_cast<unsigned long>(n - r)),
                                      static_cast<std::uint32_t>(e)};
            }
        }
    }

    std::size_t man_rank(std::size_t m, std::uint32_t w) const {
        for (std::size_t r = 0; r < n; ++r) {
            if (men_pref[m][r] == w) return r;
        }
        return n;
    }
    std::size_t woman_rank(std::size_t w, std::uint32_t m) const {
        for (std::size_t r = 0; r < n; ++r) {
            if (women_pref[w][r] == m) return r;
        }
        return n;
    }

    // All stable perfect matchings, each as a woman-per-man vector.
    std::vector<std::vector<std::uint32_t>> stable_matchings() const {
        std::vector<std::uint32_t> assign(n);
        for (std::size_t i = 0; i < n; ++i) assign[i] = static_cast<std::uint32_t>(i);
        std::sort(assign.begin(), assign.end());
        std::vector<std::vector<std::uint32_t>> stable;
        do {
            bool blocked = false;
            for (std::size_t m = 0; m < n && !blocked; ++m) {
                for (std::size_t w = 0; w < n && !blocked; ++w) {
                    if (assign[m] == w) continue;
                    // blocking pair: both strictly prefer each other
                    bool man_prefers = man_rank(m, static_cast<std::uint32_t>(w)) <
                                       man_rank(m, assign[m]);
                    std::uint32_t current_partner = 0;
                    for (std::size_t m2 = 0; m2 < n; ++m2) {
                        if (assign[m2] == w) current_partner = static_cast<std::uint32_t>(m2);
                    }
                    bool woman_prefers = woman_rank(w, static_cast<std::uint32_t>(m)) <
                                         woman_rank(w, current_partner);
                    if (man_prefers && woman_prefers) blocked = true;
                }
            }
            if (!blocked) stable.push_back(assign);
        } while (std::next_permutation(assign.begin(), assign.end()));
        return stable;
    }
};

}  // namespace mstream::testsupport
