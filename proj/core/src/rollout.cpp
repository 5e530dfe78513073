#include "tacler/rollout.hpp"

namespace tacler {

RolloutGroup rollout_group(const PolicyParams& params, const ProblemRecord& problem,
                           ReasoningMode mode, int group_size, const DecodeConfig& cfg,
                           std::uint64_t root_seed) {
    if (group_size < 1) throw InputError("rollout_group: group size must be >= 1");
    RolloutGroup g;
    g.problem_id = problem.id;
    g.mode = mode;
    g.responses.reserve(group_size);
    TokenSeq prompt = render_prompt(problem, mode);
    std::uint64_t base = mix_seed(root_seed, hash_str(problem.id));
    base = mix_seed(base, mode == ReasoningMode::NoThinking ? 1 : 0);
    for (int i = 0; i < group_size; ++i) {
        Rng rng(mix_seed(base, static_cast<std::uint64_t>(i)));
        Response r = generate(params, prompt, cfg, rng);
        r.problem_id = problem.id;
        r.mode = mode;
        score(problem, r);
        g.responses.push_back(std::move(r));
    }
    return g;
}

double clip_ratio(const std::vector<Response>& responses) {
    if (responses.empty()) throw InputError("clip_ratio: empty response list");
    std::size_t truncated = 0;
    for (const auto& r : responses)
        if (r.truncated) ++truncated;
    return static_cast<double>(truncated) / static_cast<double>(responses.size());
}

}  // namespace tacler
