#include "tacler/trainer.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace tacler {

void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open for writing: " + path);
    out << "step,mean_reward,clip_ratio,mean_length_thinking,mean_length_nothinking,"
           "objective,skipped_groups\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.step,
                      r.mean_reward, r.clip_ratio, r.mean_length_thinking,
                      r.mean_length_nothinking, r.objective, r.skipped_groups);
        out << buf;
    }
}

std::vector<MetricsRow> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open: " + path);
    std::vector<MetricsRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        MetricsRow r;
        if (std::sscanf(line.c_str(), "%d,%lg,%lg,%lg,%lg,%lg,%d", &r.step, &r.mean_reward,
                        &r.clip_ratio, &r.mean_length_thinking, &r.mean_length_nothinking,
                        &r.objective, &r.skipped_groups) != 7)
            throw ParseError(path + ": malformed metrics row: " + line);
        rows.push_back(r);
    }
    return rows;
}

std::pair<PolicyParams, MetricsRow> update_step(const PolicyParams& params,
                                                std::vector<RolloutGroup> batch,
                                                const TrainConfig& cfg) {
    if (batch.empty()) throw InputError("update_step: empty batch");

    MetricsRow row;
    std::vector<Response> all;
    double len_think = 0.0, len_nothink = 0.0;
    int n_think = 0, n_nothink = 0;
    for (auto& g : batch) {
        fill_advantages(g);
        if (g.skipped) ++row.skipped_groups;
        for (const auto& r : g.responses) {
            row.mean_reward += r.reward;
            if (g.mode == ReasoningMode::Thinking) {
                len_think += r.length();
                ++n_think;
            } else {
                len_nothink += r.length();
                ++n_nothink;
            }
            all.push_back(r);
        }
    }
    row.mean_reward /= static_cast<double>(all.size());
    row.clip_ratio = clip_ratio(all);
    row.mean_length_thinking = n_think ? len_think / n_think : 0.0;
    row.mean_length_nothinking = n_nothink ? len_nothink / n_nothink : 0.0;

    std::vector<RolloutGroup> live;
    for (auto& g : batch)
        if (!g.skipped) live.push_back(std::move(g));

    PolicyParams next = params;
    if (!live.empty()) {
        // on-policy: the batch was generated under params, so old == new
        auto res = objective_and_grad(params, params, live, cfg.bounds, cfg.granularity);
        row.objective = res.objective;
        for (std::size_t i = 0; i < next.theta.size(); ++i)
            next.theta[i] += cfg.learning_rate * res.gradient[i];
    }
    ++next.version;
    return {std::move(next), row};
}

PolicyParams train_stage(PolicyParams params, const StageManifest& manifest,
                         const ProblemSet& problems, const TrainConfig& cfg,
                         const MetricsSink& sink) {
    if (manifest.problem_ids.empty()) throw InputError("train_stage: empty manifest");
    if (cfg.group_size < 2) throw InputError("train_stage: group size must be >= 2");
    std::unordered_map<std::string, const ProblemRecord*> index;
    for (const auto& p : problems.problems) index[p.id] = &p;
    std::vector<const ProblemRecord*> pool;
    pool.reserve(manifest.problem_ids.size());
    for (const auto& id : manifest.problem_ids) {
        auto it = index.find(id);
        if (it == index.end()) throw ValidationError("manifest id not in problem set: " + id);
        pool.push_back(it->second);
    }

    DecodeConfig dcfg;
    dcfg.max_new_tokens = cfg.max_new_tokens;
    dcfg.temperature = cfg.temperature;
    dcfg.top_p = cfg.top_p;
    dcfg.greedy = false;

    const std::uint64_t stage_seed =
        mix_seed(cfg.root_seed, static_cast<std::uint64_t>(manifest.stage_index));
    for (int step = 0; step < cfg.steps; ++step) {
        const std::uint64_t step_seed = mix_seed(stage_seed, static_cast<std::uint64_t>(step));
        Rng pick(step_seed);
        std::vector<RolloutGroup> batch;
        batch.reserve(cfg.batch_size);
        for (int b = 0; b < cfg.batch_size; ++b) {
            const ProblemRecord& prob = *pool[pick.next_below(pool.size())];
            ReasoningMode mode = pick.next_double() < cfg.mode_mix
                                     ? ReasoningMode::NoThinking
                                     : ReasoningMode::Thinking;
            batch.push_back(rollout_group(params, prob, mode, cfg.group_size, dcfg,
                                          mix_seed(step_seed, static_cast<std::uint64_t>(b))));
        }
        auto [next, row] = update_step(params, std::move(batch), cfg);
        params = std::move(next);
        row.step = step;
        if (sink) sink(row);
    }
    return params;
}

ScheduleResult run_schedule(const ProblemSet& problems,
                            const std::vector<TrainConfig>& stage_cfgs,
                            PolicyParams initial, const DecodeConfig& categorize_cfg,
                            const std::string& out_dir, bool all_data_from_start) {
    if (stage_cfgs.size() != 3) throw InputError("run_schedule: exactly 3 stage configs");
    if (!categorize_cfg.greedy) throw InputError("run_schedule: categorization must be greedy");

    namespace fs = std::filesystem;
    const bool persist = !out_dir.empty();
    if (persist) fs::create_directories(out_dir);
    auto path = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

    ScheduleResult result;
    PolicyParams params = std::move(initial);
    if (persist) save_params(params, path("checkpoint_initial.txt"));

    for (int stage = 1; stage <= 3; ++stage) {
        StageManifest manifest;
        if (stage == 3 || all_data_from_start) {
            manifest = build_stage(CategorizationReport{}, 3, problems);
            manifest.stage_index = stage;
        } else {
            CategorizationReport report = categorize_dataset(params, problems, categorize_cfg);
            if (persist)
                write_report(report, path("report_stage" + std::to_string(stage) + ".jsonl"));
            manifest = build_stage(report, stage, problems);
            result.reports.push_back(std::move(report));
        }
        if (persist)
            write_manifest(manifest, path("manifest_stage" + std::to_string(stage) + ".txt"));

        std::vector<MetricsRow> rows;
        params = train_stage(std::move(params), manifest, problems, stage_cfgs[stage - 1],
                             [&rows](const MetricsRow& r) { rows.push_back(r); });
        if (persist) {
            write_metrics_csv(rows, path("metrics_stage" + std::to_string(stage) + ".csv"));
            save_params(params, path("checkpoint_stage" + std::to_string(stage) + ".txt"));
        }
        result.manifests.push_back(std::move(manifest));
        result.metrics.push_back(std::move(rows));
    }
    result.final_params = std::move(params);
    return result;
}

}  // namespace tacler
