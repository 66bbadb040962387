#pragma once

#include <cstdint>
#include <span>

#include "mstream/streaming.hpp"

namespace mstream {

// Parameters for the submodular pass. q is the keep probability applied to
// elements that pass the threshold test; the analysis covers q = 1 and
// q = 1/(2 alpha + 1) only, other values are exploration mode.
struct SubmodularParams {
    Rat alpha;
    Rat q = Rat(1);
    std::optional<Rat> y;  // nullopt = infinite
    Rat delta = Rat(1, 10);
    std::uint64_t seed = 0;

    static SubmodularParams with_schedule(const Instance& inst, const Rat& alpha,
                                          const Rat& q, const Rat& delta,
                                          std::uint64_t seed);
    void validate() const;
};

// Rational stand-ins (within 1e-6) for the optimizing alphas 1 + 1/sqrt(2)
// (monotone) and 1 + sqrt(3)/2 (non-monotone).
Rat monotone_alpha_preset();
Rat nonmonotone_alpha_preset();

// q = 1 / (2 alpha + 1), exact.
Rat guarantee_q(const Rat& alpha);

// (2 alpha + alpha / (alpha - 1)) * (1 + delta): the deterministic factor of
// the guarantee chain.
Rat guarantee_factor(const Rat& alpha, const Rat& delta);

struct SubmodularReport {
    StreamReport stream;
    std::uint64_t seed = 0;
    bool deterministic = false;  // true when q = 1 (no coin ever flipped)
    std::size_t skipped_by_coin = 0;
};

// The two-matroid submodular pass: per element the weight is the marginal
// value against the current alive stack; elements passing the threshold test
// are kept with probability q (one draw per passing element, in arrival
// order) and the deletion sweep runs after every selection. The objective is
// spot-checked for submodularity first (InputError on violation). Checked on
// every run: g(S') >= (1 - 1/alpha) * sum of selected marginals, and
// f(solution) >= g(S_alive).
SubmodularReport run_submodular(const Instance& inst, std::span<const ElementIndex> order,
                                const SubmodularParams& params);

}  // namespace mstream
