#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tacler/trainer.hpp"

using namespace tacler;

namespace {
std::string tmp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

TrainConfig toy_config() {
    TrainConfig t;
    t.batch_size = 4;
    t.group_size = 4;
    t.steps = 5;
    t.learning_rate = 0.05;
    t.max_new_tokens = 8;
    t.root_seed = 7;
    return t;
}

std::vector<RolloutGroup> sample_batch(const PolicyParams& params, const ProblemSet& problems,
                                       const TrainConfig& cfg, std::uint64_t seed) {
    DecodeConfig dc;
    dc.max_new_tokens = cfg.max_new_tokens;
    std::vector<RolloutGroup> batch;
    for (int b = 0; b < cfg.batch_size; ++b) {
        const auto& p = problems.problems[b % problems.problems.size()];
        batch.push_back(rollout_group(params, p, ReasoningMode::Thinking, cfg.group_size, dc,
                                      mix_seed(seed, b)));
    }
    return batch;
}
}  // namespace

TEST_CASE("all-skipped batch is a no-op update with full skip count") {
    auto params = random_params(4, 0.5, 1);
    auto cfg = toy_config();
    auto problems = synth_dataset(4, {1, 2}, 1);
    auto batch = sample_batch(params, problems, cfg, 3);
    for (auto& g : batch)
        for (auto& r : g.responses) r.reward = 1;  // zero variance everywhere
    auto [next, row] = update_step(params, batch, cfg);
    CHECK(next.theta == params.theta);
    CHECK(next.version == params.version + 1);
    CHECK(row.skipped_groups == cfg.batch_size);
    CHECK(row.mean_reward == doctest::Approx(1.0));
}

TEST_CASE("empty batch is an input error") {
    auto params = random_params(4, 0.5, 1);
    CHECK_THROWS_AS(update_step(params, {}, toy_config()), InputError);
}

TEST_CASE("single-group on-policy update equals lr * mean advantage-weighted grad") {
    // ratio = 1 branch: direction is lr * (1/G) sum_i A_i * mean_t grad log pi
    auto params = random_params(4, 0.5, 9);
    auto cfg = toy_config();
    cfg.batch_size = 1;
    auto problems = synth_dataset(1, {1, 1}, 2);
    auto batch = sample_batch(params, problems, cfg, 5);
    // force non-constant rewards
    for (std::size_t i = 0; i < batch[0].responses.size(); ++i)
        batch[0].responses[i].reward = i == 0 ? 1 : 0;

    auto expected = batch[0];
    fill_advantages(expected);
    std::vector<double> grad(params.theta_size(), 0.0);
    for (std::size_t i = 0; i < expected.responses.size(); ++i) {
        const auto& r = expected.responses[i];
        TokenSeq ctx = r.prompt;
        for (Token t : r.tokens) {
            accumulate_logprob_grad(params, ctx, t,
                                    expected.advantages[i] /
                                        (expected.responses.size() * r.tokens.size()),
                                    grad);
            ctx.push_back(t);
        }
    }

    auto [next, row] = update_step(params, batch, cfg);
    for (std::size_t i = 0; i < params.theta.size(); ++i)
        CHECK(next.theta[i] - params.theta[i] ==
              doctest::Approx(cfg.learning_rate * grad[i]).epsilon(1e-8));
    CHECK(std::abs(row.objective) < 1e-9);  // on-policy identity
}

TEST_CASE("metrics row aggregates are recomputable from the batch") {
    auto params = random_params(4, 0.5, 4);
    auto cfg = toy_config();
    auto problems = synth_dataset(6, {1, 2}, 8);
    DecodeConfig dc;
    dc.max_new_tokens = cfg.max_new_tokens;
    std::vector<RolloutGroup> batch;
    for (int b = 0; b < 6; ++b)
        batch.push_back(rollout_group(params, problems.problems[b],
                                      b % 2 ? ReasoningMode::NoThinking
                                            : ReasoningMode::Thinking,
                                      cfg.group_size, dc, mix_seed(100, b)));
    auto [next, row] = update_step(params, batch, cfg);

    double reward_sum = 0, len_t = 0, len_n = 0;
    int n = 0, trunc = 0, nt = 0, nn = 0;
    for (const auto& g : batch)
        for (const auto& r : g.responses) {
            reward_sum += r.reward;
            trunc += r.truncated;
            ++n;
            if (g.mode == ReasoningMode::Thinking) len_t += r.length(), ++nt;
            else len_n += r.length(), ++nn;
        }
    CHECK(row.mean_reward == doctest::Approx(reward_sum / n));
    CHECK(row.clip_ratio == doctest::Approx(static_cast<double>(trunc) / n));
    CHECK(row.mean_length_thinking == doctest::Approx(len_t / nt));
    CHECK(row.mean_length_nothinking == doctest::Approx(len_n / nn));
    CHECK(row.mean_reward >= 0.0);
    CHECK(row.mean_reward <= 1.0);
}

TEST_CASE("train_stage emits exactly `steps` strictly ordered rows") {
    auto problems = synth_dataset(10, {1, 2}, 3);
    StageManifest manifest;
    manifest.stage_index = 1;
    for (const auto& p : problems.problems) manifest.problem_ids.push_back(p.id);
    auto cfg = toy_config();
    cfg.steps = 7;
    std::vector<MetricsRow> rows;
    auto params = train_stage(random_params(4, 0.5, 2), manifest, problems, cfg,
                              [&rows](const MetricsRow& r) { rows.push_back(r); });
    REQUIRE(rows.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(rows[i].step == i);
    CHECK(params.version == 7);
}

TEST_CASE("mode_mix boundary values") {
    auto problems = synth_dataset(6, {1, 1}, 3);
    StageManifest manifest;
    manifest.stage_index = 1;
    for (const auto& p : problems.problems) manifest.problem_ids.push_back(p.id);
    auto cfg = toy_config();
    cfg.steps = 3;
    cfg.mode_mix = 0.0;  // all Thinking
    std::vector<MetricsRow> rows;
    train_stage(random_params(4, 0.5, 2), manifest, problems, cfg,
                [&rows](const MetricsRow& r) { rows.push_back(r); });
    for (const auto& r : rows) {
        CHECK(r.mean_length_thinking > 0.0);
        CHECK(r.mean_length_nothinking == 0.0);  // zero-count sentinel
    }
}

TEST_CASE("metrics csv round trip") {
    std::vector<MetricsRow> rows;
    for (int i = 0; i < 5; ++i)
        rows.push_back({i, 0.125 * i, 0.25, 7.5 + i, 3.25, -0.001 * i, i % 2});
    auto path = (std::filesystem::temp_directory_path() / "tacler_metrics.csv").string();
    write_metrics_csv(rows, path);
    auto back = read_metrics_csv(path);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].step == rows[i].step);
        CHECK(back[i].mean_reward == rows[i].mean_reward);
        CHECK(back[i].objective == rows[i].objective);
        CHECK(back[i].skipped_groups == rows[i].skipped_groups);
    }
}

TEST_CASE("run_schedule persists the full artifact contract") {
    auto problems = synth_dataset(16, {1, 2}, 5);
    auto cfg = toy_config();
    cfg.steps = 2;
    std::vector<TrainConfig> stages{cfg, cfg, cfg};
    DecodeConfig cat;
    cat.greedy = true;
    cat.max_new_tokens = 8;
    auto dir = tmp_dir("tacler_schedule");
    auto result = run_schedule(problems, stages, random_params(6, 0.6, 1), cat, dir);

    CHECK(result.reports.size() == 2);
    CHECK(result.manifests.size() == 3);
    CHECK(result.metrics.size() == 3);
    namespace fs = std::filesystem;
    for (const char* f :
         {"checkpoint_initial.txt", "checkpoint_stage1.txt", "checkpoint_stage2.txt",
          "checkpoint_stage3.txt", "report_stage1.jsonl", "report_stage2.jsonl",
          "manifest_stage1.txt", "manifest_stage2.txt", "manifest_stage3.txt",
          "metrics_stage1.csv", "metrics_stage2.csv", "metrics_stage3.csv"})
        CHECK_MESSAGE(fs::exists(fs::path(dir) / f), f);

    // stage 3 covers the full corpus
    CHECK(result.manifests[2].problem_ids.size() == problems.problems.size());
    CHECK(result.final_params.version == 6);  // 3 stages x 2 steps
}

TEST_CASE("direct-train ablation skips categorization and uses the full set") {
    auto problems = synth_dataset(8, {1, 1}, 5);
    auto cfg = toy_config();
    cfg.steps = 1;
    std::vector<TrainConfig> stages{cfg, cfg, cfg};
    DecodeConfig cat;
    cat.greedy = true;
    auto result = run_schedule(problems, stages, random_params(4, 0.6, 1), cat, "", true);
    CHECK(result.reports.empty());
    for (const auto& m : result.manifests) {
        CHECK(m.rule == StageRule::FullDataset);
        CHECK(m.problem_ids.size() == problems.problems.size());
    }
}

TEST_CASE("run_schedule requires exactly 3 stage configs") {
    auto problems = synth_dataset(4, {1, 1}, 5);
    DecodeConfig cat;
    cat.greedy = true;
    CHECK_THROWS_AS(
        run_schedule(problems, {toy_config()}, random_params(4, 0.5, 1), cat, ""),
        InputError);
}
