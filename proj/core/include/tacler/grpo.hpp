#pragma once

#include <optional>
#include <vector>

#include "tacler/rollout.hpp"

namespace tacler {

// Asymmetric clipping range for the importance ratio. Defaults follow the
// clip-higher scheme (raised upper bound, fixed lower bound).
struct ClipBounds {
    double eps_low = 0.2;
    double eps_high = 0.28;
};

// The surrogate ratio can be formed per generated token or once on the whole
// sequence probability. PerToken is the default.
enum class RatioGranularity { PerToken, PerSequence };

// Group-relative advantages: (r_i - mean) / population std. A zero-variance
// group carries no learning signal and is reported as skipped (nullopt).
std::optional<std::vector<double>> advantages(const std::vector<double>& rewards);

// Fills group.advantages / group.skipped from response rewards.
void fill_advantages(RolloutGroup& group);

// min(ratio * A, clip(ratio, 1 - eps_low, 1 + eps_high) * A)
// with ratio = exp(logp_new - logp_old).
double surrogate(double logp_new, double logp_old, double advantage, ClipBounds bounds);

struct ObjectiveResult {
    double objective = 0.0;
    std::vector<double> gradient;  // w.r.t. params.theta
};

// Clipped surrogate objective, averaged over responses within each group and
// then over groups. No KL term anywhere. All groups must be non-skipped with
// advantages filled. Gradient is exact.
ObjectiveResult objective_and_grad(const PolicyParams& params,
                                   const PolicyParams& old_params,
                                   const std::vector<RolloutGroup>& groups,
                                   ClipBounds bounds, RatioGranularity granularity);

}  // namespace tacler
