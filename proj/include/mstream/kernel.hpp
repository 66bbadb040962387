#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mstream/local_ratio.hpp"
#include "mstream/matroid.hpp"

namespace mstream {

// A matroid with the strict total order induced by per-element keys: e comes
// before f iff its weight is larger, ties broken by later arrival.
struct OrderedMatroid {
    const MatroidDescriptor* matroid = nullptr;
    std::vector<OrderKey> key;  // indexed by element

    bool precedes(ElementIndex a, ElementIndex b) const {
        return order_precedes(key[a], key[b]);
    }
};

// e is in t, or e is spanned by the strictly earlier-ordered part of t.
bool dominates(const OrderedMatroid& om, const ElementSet& t, ElementIndex e);

// All elements of ground dominated by t.
ElementSet domination_set(const OrderedMatroid& om, const ElementSet& t,
                          const ElementSet& ground);

struct KernelResult {
    ElementSet kernel;
    std::size_t rounds = 0;
    std::vector<std::pair<std::size_t, ElementIndex>> rejected_trace;
};

struct KernelVerifyReport {
    bool ok = false;
    bool independent_1 = false;
    bool independent_2 = false;
    ElementSet undominated;
};

// Checks the two defining conditions: independence in both matroids, and the
// two domination sets covering all of ground.
KernelVerifyReport verify_kernel(const OrderedMatroid& om1, const OrderedMatroid& om2,
                                 const ElementSet& ground, const ElementSet& kernel);

// Matroid deferred acceptance. Round: propose P = greedy over the
// not-yet-rejected elements in the first order; keep Q = greedy over P in the
// second order; reject P \ Q; stop when P == Q. The result is verified
// before returning (InvariantError on failure) and the loop takes at most
// |ground| rounds since the rejected set grows every non-final round.
KernelResult find_kernel(const OrderedMatroid& om1, const OrderedMatroid& om2,
                         const ElementSet& ground);

// Every kernel, by subset enumeration. Oracle for find_kernel; |ground| <= 20.
std::vector<ElementSet> brute_force_kernel(const OrderedMatroid& om1,
                                           const OrderedMatroid& om2,
                                           const ElementSet& ground);

// Ordered matroids over a finished run's alive stack, keyed by the recorded
// w_i values and arrivals.
std::vector<OrderedMatroid> ordered_matroids_from_state(const SelectionState& state);

// Solution extraction for a two-matroid stack: the kernel of the stack under
// its recorded orders. Guarantees (checked, release builds included) that the
// summed selection-time values of the result reach g(S_alive).
ElementSet extract_solution(const SelectionState& state);

}  // namespace mstream
