#include "tacler/grpo.hpp"

#include <algorithm>
#include <cmath>

namespace tacler {

std::optional<std::vector<double>> advantages(const std::vector<double>& rewards) {
    const std::size_t n = rewards.size();
    if (n < 2) throw InputError("advantages: group size must be >= 2");
    double mean = 0.0;
    for (double r : rewards) mean += r;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double r : rewards) var += (r - mean) * (r - mean);
    var /= static_cast<double>(n);  // population variance
    if (var == 0.0) return std::nullopt;
    double std_dev = std::sqrt(var);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (rewards[i] - mean) / std_dev;
    return out;
}

void fill_advantages(RolloutGroup& group) {
    std::vector<double> rewards;
    rewards.reserve(group.responses.size());
    for (const auto& r : group.responses) rewards.push_back(r.reward);
    auto a = advantages(rewards);
    if (a) {
        group.advantages = std::move(*a);
        group.skipped = false;
    } else {
        group.advantages.clear();
        group.skipped = true;
    }
}

static double clip(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

double surrogate(double logp_new, double logp_old, double advantage, ClipBounds bounds) {
    double ratio = std::exp(logp_new - logp_old);
    if (!std::isfinite(ratio)) throw NumericError("non-finite importance ratio");
    double clipped = clip(ratio, 1.0 - bounds.eps_low, 1.0 + bounds.eps_high);
    return std::min(ratio * advantage, clipped * advantage);
}

ObjectiveResult objective_and_grad(const PolicyParams& params,
                                   const PolicyParams& old_params,
                                   const std::vector<RolloutGroup>& groups,
                                   ClipBounds bounds, RatioGranularity granularity) {
    if (groups.empty()) throw InputError("objective_and_grad: empty group list");
    const double lo = 1.0 - bounds.eps_low;
    const double hi = 1.0 + bounds.eps_high;
    if (lo <= 0.0) throw InputError("objective_and_grad: 1 - eps_low must be positive");

    ObjectiveResult res;
    res.gradient.assign(params.theta_size(), 0.0);
    const double group_w = 1.0 / static_cast<double>(groups.size());

    for (const auto& group : groups) {
        if (group.skipped || group.advantages.size() != group.responses.size())
            throw InputError("objective_and_grad: skipped or unnormalized group");
        const double resp_w = group_w / static_cast<double>(group.responses.size());

        for (std::size_t i = 0; i < group.responses.size(); ++i) {
            const Response& r = group.responses[i];
            const double adv = group.advantages[i];
            const std::size_t T = r.tokens.size();
            if (T == 0) continue;

            TokenSeq context = r.prompt;
            if (granularity == RatioGranularity::PerToken) {
                const double tok_w = resp_w / static_cast<double>(T);
                for (std::size_t t = 0; t < T; ++t) {
                    double lpn = logprob(params, context, r.tokens[t]);
                    double lpo = logprob(old_params, context, r.tokens[t]);
                    double ratio = std::exp(lpn - lpo);
                    if (!std::isfinite(ratio)) throw NumericError("non-finite ratio");
                    double clipped = clip(ratio, lo, hi);
                    res.objective += tok_w * std::min(ratio * adv, clipped * adv);
                    // gradient flows only through the unclipped branch
                    if (ratio * adv <= clipped * adv)
                        accumulate_logprob_grad(params, context, r.tokens[t],
                                                tok_w * adv * ratio, res.gradient);
                    context.push_back(r.tokens[t]);
                }
            } else {
                double lpn_sum = 0.0, lpo_sum = 0.0;
                for (std::size_t t = 0; t < T; ++t) {
                    lpn_sum += logprob(params, context, r.tokens[t]);
                    lpo_sum += logprob(old_params, context, r.tokens[t]);
                    context.push_back(r.tokens[t]);
                }
                double ratio = std::exp(lpn_sum - lpo_sum);
                if (!std::isfinite(ratio)) throw NumericError("non-finite ratio");
                double clipped = clip(ratio, lo, hi);
                res.objective += resp_w * std::min(ratio * adv, clipped * adv);
                if (ratio * adv <= clipped * adv) {
                    context.assign(r.prompt.begin(), r.prompt.end());
                    for (std::size_t t = 0; t < T; ++t) {
                        accumulate_logprob_grad(params, context, r.tokens[t],
                                                resp_w * adv * ratio, res.gradient);
                        context.push_back(r.tokens[t]);
                    }
                }
            }
        }
    }
    return res;
}

}  // namespace tacler
