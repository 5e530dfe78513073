#pragma once

#include <map>
#include <string>
#include <vector>

#include "tacler/adapter.hpp"
#include "tacler/rollout.hpp"

namespace tacler {

struct GroupCounts {
    int g1 = 0;
    int g2 = 0;
    int g3 = 0;
    int total() const { return g1 + g2 + g3; }
};

// Result of a greedy categorization pass over a problem set.
struct CategorizationReport {
    struct Entry {
        DifficultyGroup group = DifficultyGroup::G2_complete_incorrect;
        int response_length = 0;
        bool truncated = false;
        bool correct = false;
    };
    std::vector<std::pair<std::string, Entry>> labels;  // corpus order
    GroupCounts counts;
    std::int64_t policy_version = 0;
    DecodeConfig decode;

    const Entry& by_id(const std::string& id) const;
};

enum class StageRule { G1_union_G2, FullDataset };

struct StageManifest {
    int stage_index = 1;  // 1 | 2 | 3
    std::vector<std::string> problem_ids;
    StageRule rule = StageRule::G1_union_G2;
};

// One greedy response per problem, labeled via reward.classify.
// Deterministic given (params, problems, cfg); cfg.greedy must be true.
CategorizationReport categorize_dataset(const PolicyParams& params,
                                        const ProblemSet& problems,
                                        const DecodeConfig& cfg);

// Adapter path: one greedy completion per problem from a generation
// endpoint; answers extracted from the last \boxed{...}. Transport failures
// are rethrown with the failing problem id.
CategorizationReport categorize_dataset(const AdapterConfig& adapter,
                                        const ProblemSet& problems,
                                        const PromptTemplates& templates,
                                        int max_new_tokens);

// Stages 1-2: all ids labeled G1 or G2, in source order; stage 3: every id.
// An empty G1 u G2 selection is an untrainable stage and a validation error.
StageManifest build_stage(const CategorizationReport& report, int stage_index,
                          const ProblemSet& full_set);

// Report file: line-delimited {id, group, response_length, truncated, correct};
// manifest file: header line {stage_index, rule, count}, then one id per line.
void write_report(const CategorizationReport& report, const std::string& path);
CategorizationReport read_report(const std::string& path);
void write_manifest(const StageManifest& manifest, const std::string& path);
StageManifest read_manifest(const std::string& path);

// Per-stage G1/G2/G3 percentage rows in the style of a data-complexity table.
std::string render_complexity_table(const std::vector<GroupCounts>& stages);

}  // namespace tacler
