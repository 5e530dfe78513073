#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tacler/curriculum.hpp"
#include "tacler/grpo.hpp"

namespace tacler {

struct TrainConfig {
    int batch_size = 32;
    int group_size = 8;
    double learning_rate = 1e-2;
    int steps = 100;
    ClipBounds bounds;
    RatioGranularity granularity = RatioGranularity::PerToken;
    int max_new_tokens = 16;
    double temperature = 1.0;
    double top_p = 1.0;
    double mode_mix = 0.5;  // probability a group rolls out in NoThinking mode
    std::uint64_t root_seed = 0;
};

struct MetricsRow {
    int step = 0;
    double mean_reward = 0.0;
    double clip_ratio = 0.0;
    double mean_length_thinking = 0.0;    // 0 when no Thinking group in the batch
    double mean_length_nothinking = 0.0;  // 0 when no NoThinking group in the batch
    double objective = 0.0;
    int skipped_groups = 0;
};

using MetricsSink = std::function<void(const MetricsRow&)>;

void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::string& path);
std::vector<MetricsRow> read_metrics_csv(const std::string& path);

// Single on-policy ascent step: params + lr * grad of the clipped surrogate
// objective over the non-skipped groups. Metrics cover all groups. Version
// is incremented even for a no-op (all-skipped) update.
std::pair<PolicyParams, MetricsRow> update_step(const PolicyParams& params,
                                                std::vector<RolloutGroup> batch,
                                                const TrainConfig& cfg);

// One curriculum stage: per step, sample batch_size manifest problems with
// replacement, assign each group a mode, roll out, update, emit one row.
PolicyParams train_stage(PolicyParams params, const StageManifest& manifest,
                         const ProblemSet& problems, const TrainConfig& cfg,
                         const MetricsSink& sink);

struct ScheduleResult {
    PolicyParams final_params;
    std::vector<CategorizationReport> reports;    // 2 (before stages 1 and 2)
    std::vector<StageManifest> manifests;         // 3
    std::vector<std::vector<MetricsRow>> metrics; // 3
};

// Full three-stage tailored schedule:
//   categorize -> stage 1 (G1 u G2) -> train ->
//   categorize -> stage 2 (G1 u G2) -> train ->
//   stage 3 (full dataset) -> train.
// With all_data_from_start (the Direct-Train ablation) every stage uses the
// full dataset and no categorization runs.
// When out_dir is nonempty, persists every report, manifest, metrics file,
// and checkpoint (initial + one per stage) there.
ScheduleResult run_schedule(const ProblemSet& problems,
                            const std::vector<TrainConfig>& stage_cfgs,
                            PolicyParams initial, const DecodeConfig& categorize_cfg,
                            const std::string& out_dir = "",
                            bool all_data_from_start = false);

}  // namespace tacler
