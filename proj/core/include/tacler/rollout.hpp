#pragma once

#include <vector>

#include "tacler/modes.hpp"
#include "tacler/policy.hpp"
#include "tacler/reward.hpp"

namespace tacler {

// G responses for one (problem, mode) pair; the normalization unit of the
// group-relative advantage.
struct RolloutGroup {
    std::string problem_id;
    ReasoningMode mode = ReasoningMode::Thinking;
    std::vector<Response> responses;
    std::vector<double> advantages;  // filled by grpo; empty iff skipped
    bool skipped = false;            // zero reward variance
};

// G independent generate calls on substreams derived from
// (root_seed, problem id, rollout index). Rewards filled via the reward
// module; advantages left empty.
RolloutGroup rollout_group(const PolicyParams& params, const ProblemRecord& problem,
                           ReasoningMode mode, int group_size, const DecodeConfig& cfg,
                           std::uint64_t root_seed);

// Fraction of truncated responses.
double clip_ratio(const std::vector<Response>& responses);

}  // namespace tacler
