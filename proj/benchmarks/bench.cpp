#include <benchmark/benchmark.h>

#include "tacler/grpo.hpp"
#include "tacler/trainer.hpp"

using namespace tacler;

static void BM_TokenDistribution(benchmark::State& state) {
    auto params = random_params(static_cast<int>(state.range(0)), 0.5, 1);
    TokenSeq ctx{3, vocab::kPlus, 4, vocab::kThinkOpen, vocab::kFiller, vocab::kThinkClose};
    for (auto _ : state) benchmark::DoNotOptimize(token_distribution(params, ctx));
}
BENCHMARK(BM_TokenDistribution)->Arg(4)->Arg(8);

static void BM_Generate(benchmark::State& state) {
    auto params = random_params(8, 0.5, 1);
    TokenSeq prompt{3, vocab::kPlus, 4, vocab::kThinkOpen};
    DecodeConfig cfg{.max_new_tokens = static_cast<int>(state.range(0)),
                     .temperature = 1.0,
                     .top_p = 0.95};
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Rng rng(seed++);
        benchmark::DoNotOptimize(generate(params, prompt, cfg, rng));
    }
}
BENCHMARK(BM_Generate)->Arg(16)->Arg(64);

static void BM_RolloutGroup(benchmark::State& state) {
    auto params = random_params(8, 0.5, 1);
    auto problems = synth_dataset(1, {2, 2}, 3);
    DecodeConfig cfg{.max_new_tokens = 16, .temperature = 1.0, .top_p = 1.0};
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(rollout_group(params, problems.problems[0],
                                               ReasoningMode::Thinking, 8, cfg, seed++));
}
BENCHMARK(BM_RolloutGroup);

static void BM_UpdateStep(benchmark::State& state) {
    auto params = random_params(8, 0.5, 1);
    auto problems = synth_dataset(8, {1, 2}, 3);
    TrainConfig cfg;
    cfg.batch_size = static_cast<int>(state.range(0));
    cfg.group_size = 8;
    cfg.max_new_tokens = 16;
    DecodeConfig dc{.max_new_tokens = 16, .temperature = 1.0, .top_p = 1.0};
    std::vector<RolloutGroup> batch;
    for (int b = 0; b < cfg.batch_size; ++b)
        batch.push_back(rollout_group(params, problems.problems[b % 8],
                                      ReasoningMode::Thinking, cfg.group_size, dc, b));
    for (auto _ : state) benchmark::DoNotOptimize(update_step(params, batch, cfg));
}
BENCHMARK(BM_UpdateStep)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
