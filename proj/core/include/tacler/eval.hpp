#pragma once

#include <map>
#include <string>
#include <vector>

#include "tacler/adapter.hpp"
#include "tacler/rollout.hpp"

namespace tacler {

struct ProblemEval {
    std::string id;
    int pass_count = 0;
    int sample_count = 0;
    double mean_length = 0.0;
    std::vector<bool> correct_mask;  // per sample
    std::vector<int> lengths;        // per sample
    double mean_len_correct = 0.0;   // 0 when no correct sample
    double mean_len_incorrect = 0.0; // 0 when no incorrect sample
};

struct EvalReport {
    std::vector<ProblemEval> per_problem;  // corpus order
    double accuracy = 0.0;     // mean over problems of pass_count / sample_count
    double mean_length = 0.0;  // mean response length over all samples
    ReasoningMode mode = ReasoningMode::Thinking;
    DecodeConfig decode;
    int k = 0;
};

// k sampled responses per problem on substreams derived from
// (root_seed, problem id, sample index). Length counts response tokens only.
EvalReport evaluate(const PolicyParams& params, const ProblemSet& problems,
                    ReasoningMode mode, int k, const DecodeConfig& cfg,
                    std::uint64_t root_seed);

// Adapter path: k completions per problem from a generation endpoint;
// correctness via \boxed{...} extraction, lengths from token counts.
EvalReport evaluate(const AdapterConfig& adapter, const ProblemSet& problems,
                    ReasoningMode mode, int k, const DecodeConfig& cfg,
                    const PromptTemplates& templates);

// A problem counts as solved if any sample in either report is correct.
// Always >= max of the two accuracies.
double oracle_union(const EvalReport& report_a, const EvalReport& report_b);

struct DifficultyBucket {
    int lo = 1;
    int hi = 1;
};

struct BucketRow {
    DifficultyBucket bucket;
    int problem_count = 0;
    int sample_count = 0;
    double accuracy = 0.0;
    double mean_length = 0.0;
};

// Buckets must be pairwise disjoint and cover every difficulty present.
std::vector<BucketRow> bucket_by_difficulty(const EvalReport& report,
                                            const ProblemSet& problems,
                                            const std::vector<DifficultyBucket>& buckets);

// Per-problem (mean length of correct samples, mean length of incorrect
// samples); the absent type is reported as 0.
std::vector<std::pair<double, double>> correct_incorrect_lengths(const EvalReport& report);

// Line-delimited per-problem records plus a trailing summary record.
void write_eval_report(const EvalReport& report, const std::string& path);
EvalReport read_eval_report(const std::string& path);

}  // namespace tacler
