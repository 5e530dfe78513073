// Command-line surface for the toy TACLer pipeline: dataset synthesis,
// greedy categorization, curriculum stage construction, GRPO training, the
// full three-stage schedule, sampling-based evaluation, and analysis tables.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tacler/adapter.hpp"
#include "tacler/config.hpp"
#include "tacler/curriculum.hpp"
#include "tacler/eval.hpp"
#include "tacler/trainer.hpp"

namespace fs = std::filesystem;
using namespace tacler;

namespace {

RunConfig load_config(const std::string& path) {
    return path.empty() ? RunConfig{} : RunConfig::from_file(path);
}

// Flags override config-file values; every flag has a config-file key.
template <typename T, typename Get>
T resolve(const CLI::Option* opt, const T& flag_value, const RunConfig& cfg,
          const std::string& key, Get fallback_get) {
    if (opt && opt->count() > 0) return flag_value;
    return fallback_get(cfg, key, flag_value);
}

std::string resolve_str(const CLI::Option* opt, const std::string& v, const RunConfig& cfg,
                        const std::string& key) {
    return resolve(opt, v, cfg, key, [](const RunConfig& c, const std::string& k,
                                        const std::string& d) { return c.get_str(k, d); });
}
long resolve_int(const CLI::Option* opt, long v, const RunConfig& cfg, const std::string& key) {
    return resolve(opt, v, cfg, key, [](const RunConfig& c, const std::string& k, long d) {
        return c.get_int(k, d);
    });
}
double resolve_double(const CLI::Option* opt, double v, const RunConfig& cfg,
                      const std::string& key) {
    return resolve(opt, v, cfg, key, [](const RunConfig& c, const std::string& k, double d) {
        return c.get_double(k, d);
    });
}

std::string adapter_url_override(std::string url) {
    if (const char* env = std::getenv("TACLER_ADAPTER_URL"); env && *env) return env;
    return url;
}

TrainConfig stage_train_config(const RunConfig& cfg, int stage, std::uint64_t root_seed) {
    const std::string s = "train.stage" + std::to_string(stage) + ".";
    auto key = [&](const char* k, const char* shared) {
        // per-stage key wins over the shared [train] section
        std::string sk = s + k;
        return cfg.has(sk) ? sk : std::string("train.") + shared;
    };
    TrainConfig t;
    t.steps = static_cast<int>(cfg.get_int(key("steps", "steps"), t.steps));
    t.batch_size = static_cast<int>(cfg.get_int(key("batch_size", "batch_size"), t.batch_size));
    t.group_size = static_cast<int>(cfg.get_int(key("group_size", "group_size"), t.group_size));
    t.learning_rate = cfg.get_double(key("learning_rate", "learning_rate"), t.learning_rate);
    t.max_new_tokens =
        static_cast<int>(cfg.get_int(key("max_new_tokens", "max_new_tokens"), t.max_new_tokens));
    t.temperature = cfg.get_double(key("temperature", "temperature"), t.temperature);
    t.top_p = cfg.get_double(key("top_p", "top_p"), t.top_p);
    t.mode_mix = cfg.get_double(key("mode_mix", "mode_mix"), t.mode_mix);
    t.bounds.eps_low = cfg.get_double(key("eps_low", "eps_low"), t.bounds.eps_low);
    t.bounds.eps_high = cfg.get_double(key("eps_high", "eps_high"), t.bounds.eps_high);
    t.granularity = cfg.get_str(key("granularity", "granularity"), "per_token") == "per_sequence"
                        ? RatioGranularity::PerSequence
                        : RatioGranularity::PerToken;
    t.root_seed = root_seed;
    return t;
}

ProblemSet load_or_synth_problems(const RunConfig& cfg) {
    std::string path = cfg.get_str("dataset.path");
    if (!path.empty()) return read_problems(path);
    DifficultyRange range{static_cast<int>(cfg.get_int("dataset.difficulty_min", 1)),
                          static_cast<int>(cfg.get_int("dataset.difficulty_max", 2))};
    return synth_dataset(static_cast<int>(cfg.get_int("dataset.count", 200)), range,
                         static_cast<std::uint64_t>(cfg.get_int("dataset.seed", 1)));
}

PolicyParams load_or_init_policy(const RunConfig& cfg, std::uint64_t root_seed) {
    std::string path = cfg.get_str("policy.checkpoint");
    if (!path.empty()) return load_params(path);
    int window = static_cast<int>(cfg.get_int("policy.window", 8));
    double scale = cfg.get_double("policy.init_scale", 0.5);
    std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("policy.init_seed",
                                                                static_cast<long>(root_seed)));
    return random_params(window, scale, seed);
}

std::string timestamped_out_dir() {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "run-%Y%m%d-%H%M%S", std::localtime(&now));
    return (fs::path("out") / buf).string();
}

std::vector<DifficultyBucket> parse_buckets(const std::string& spec) {
    // "1-3,4-5" or "1,2,3"
    std::vector<DifficultyBucket> out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        auto comma = spec.find(',', pos);
        std::string part = spec.substr(pos, comma == std::string::npos ? spec.npos : comma - pos);
        DifficultyBucket b;
        auto dash = part.find('-');
        try {
            if (dash == std::string::npos) {
                b.lo = b.hi = std::stoi(part);
            } else {
                b.lo = std::stoi(part.substr(0, dash));
                b.hi = std::stoi(part.substr(dash + 1));
            }
        } catch (const std::exception&) {
            throw InputError("bad bucket spec: " + part);
        }
        out.push_back(b);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw InputError("empty bucket spec");
    return out;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"TACLer toy pipeline: curriculum GRPO with hybrid reasoning modes"};
    app.require_subcommand(1);

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "Synthesize an arithmetic-chain problem set");
    std::string sy_config, sy_out = "problems.jsonl";
    long sy_count = 200, sy_min = 1, sy_max = 2, sy_seed = 1;
    synth->add_option("--config", sy_config, "Config file");
    auto* sy_count_o = synth->add_option("--count", sy_count, "Number of problems");
    auto* sy_min_o = synth->add_option("--min-difficulty", sy_min, "Minimum operand count");
    auto* sy_max_o = synth->add_option("--max-difficulty", sy_max, "Maximum operand count");
    auto* sy_seed_o = synth->add_option("--seed", sy_seed, "Generation seed");
    auto* sy_out_o = synth->add_option("--out", sy_out, "Output problem file");
    synth->callback([&] {
        RunConfig cfg = load_config(sy_config);
        auto set = synth_dataset(
            static_cast<int>(resolve_int(sy_count_o, sy_count, cfg, "dataset.count")),
            {static_cast<int>(resolve_int(sy_min_o, sy_min, cfg, "dataset.difficulty_min")),
             static_cast<int>(resolve_int(sy_max_o, sy_max, cfg, "dataset.difficulty_max"))},
            static_cast<std::uint64_t>(resolve_int(sy_seed_o, sy_seed, cfg, "dataset.seed")));
        std::string out = resolve_str(sy_out_o, sy_out, cfg, "dataset.path");
        write_problems(set, out);
        std::cout << "wrote " << set.problems.size() << " problems to " << out << "\n";
    });

    // ---- categorize ----
    auto* cat = app.add_subcommand("categorize", "Greedy categorization into G1/G2/G3");
    std::string ct_config, ct_problems, ct_checkpoint, ct_out = "report.jsonl";
    std::string ct_adapter_url, ct_templates;
    long ct_max_new = 64;
    bool ct_greedy = true;
    cat->add_option("--config", ct_config, "Config file");
    auto* ct_problems_o = cat->add_option("--problems", ct_problems, "Problem file");
    auto* ct_ckpt_o = cat->add_option("--checkpoint", ct_checkpoint, "Policy checkpoint");
    auto* ct_max_o = cat->add_option("--max-new-tokens", ct_max_new, "Decode budget");
    auto* ct_out_o = cat->add_option("--out", ct_out, "Output report file");
    auto* ct_url_o = cat->add_option("--adapter-url", ct_adapter_url, "Generation endpoint");
    auto* ct_tpl_o = cat->add_option("--templates", ct_templates, "Prompt template file");
    cat->add_flag("--greedy,!--no-greedy", ct_greedy, "Greedy decoding (required)");
    cat->callback([&] {
        RunConfig cfg = load_config(ct_config);
        if (!ct_greedy) throw InputError("categorization requires greedy decoding");
        auto problems = read_problems(resolve_str(ct_problems_o, ct_problems, cfg, "dataset.path"));
        int max_new = static_cast<int>(
            resolve_int(ct_max_o, ct_max_new, cfg, "categorize.max_new_tokens"));
        std::string url =
            adapter_url_override(resolve_str(ct_url_o, ct_adapter_url, cfg, "adapter.url"));
        CategorizationReport report;
        if (!url.empty()) {
            AdapterConfig ac;
            ac.url = url;
            ac.timeout_ms = static_cast<int>(cfg.get_int("adapter.timeout_ms", 30000));
            std::string tpl = resolve_str(ct_tpl_o, ct_templates, cfg, "adapter.templates");
            PromptTemplates templates =
                tpl.empty() ? default_templates() : read_templates(tpl);
            report = categorize_dataset(ac, problems, templates, max_new);
        } else {
            auto params =
                load_params(resolve_str(ct_ckpt_o, ct_checkpoint, cfg, "policy.checkpoint"));
            DecodeConfig dc;
            dc.greedy = true;
            dc.max_new_tokens = max_new;
            report = categorize_dataset(params, problems, dc);
        }
        std::string out = resolve_str(ct_out_o, ct_out, cfg, "categorize.out");
        write_report(report, out);
        std::cout << render_complexity_table({report.counts});
        std::cout << "wrote " << out << "\n";
    });

    // ---- stage ----
    auto* stage = app.add_subcommand("stage", "Build a curriculum stage manifest");
    std::string st_report, st_problems, st_out = "manifest.txt";
    long st_index = 1;
    stage->add_option("--report", st_report, "Categorization report (stages 1-2)");
    stage->add_option("--problems", st_problems, "Problem file")->required();
    stage->add_option("--stage", st_index, "Stage index 1|2|3")->required();
    stage->add_option("--out", st_out, "Output manifest file");
    stage->callback([&] {
        auto problems = read_problems(st_problems);
        CategorizationReport report;
        if (st_index != 3) {
            if (st_report.empty()) throw InputError("stages 1-2 require --report");
            report = read_report(st_report);
        }
        auto manifest = build_stage(report, static_cast<int>(st_index), problems);
        write_manifest(manifest, st_out);
        std::cout << "stage " << st_index << ": " << manifest.problem_ids.size()
                  << " problems -> " << st_out << "\n";
    });

    // ---- train ----
    auto* train = app.add_subcommand("train", "GRPO training over one stage manifest");
    std::string tr_config, tr_problems, tr_manifest, tr_checkpoint, tr_out_dir = ".";
    long tr_steps = 100, tr_batch = 32, tr_group = 8, tr_max_new = 16, tr_seed = 0;
    double tr_lr = 1e-2, tr_temp = 1.0, tr_top_p = 1.0, tr_mix = 0.5;
    double tr_eps_low = 0.2, tr_eps_high = 0.28;
    std::string tr_granularity = "per_token";
    train->add_option("--config", tr_config, "Config file");
    auto* tr_problems_o = train->add_option("--problems", tr_problems, "Problem file");
    train->add_option("--manifest", tr_manifest, "Stage manifest")->required();
    auto* tr_ckpt_o = train->add_option("--checkpoint", tr_checkpoint, "Initial checkpoint");
    auto* tr_out_o = train->add_option("--out-dir", tr_out_dir, "Output directory");
    auto* tr_steps_o = train->add_option("--steps", tr_steps, "Training steps");
    auto* tr_batch_o = train->add_option("--batch-size", tr_batch, "Groups per step");
    auto* tr_group_o = train->add_option("--group-size", tr_group, "Responses per group (G)");
    auto* tr_lr_o = train->add_option("--learning-rate", tr_lr, "Ascent step size");
    auto* tr_max_o = train->add_option("--max-new-tokens", tr_max_new, "Decode budget");
    auto* tr_temp_o = train->add_option("--temperature", tr_temp, "Sampling temperature");
    auto* tr_topp_o = train->add_option("--top-p", tr_top_p, "Nucleus mass");
    auto* tr_mix_o = train->add_option("--mode-mix", tr_mix, "P(group is NoThinking)");
    auto* tr_lo_o = train->add_option("--eps-low", tr_eps_low, "Lower clip bound");
    auto* tr_hi_o = train->add_option("--eps-high", tr_eps_high, "Upper clip bound");
    auto* tr_gran_o =
        train->add_option("--granularity", tr_granularity, "per_token | per_sequence");
    auto* tr_seed_o = train->add_option("--seed", tr_seed, "Root seed");
    train->callback([&] {
        RunConfig cfg = load_config(tr_config);
        auto problems = read_problems(resolve_str(tr_problems_o, tr_problems, cfg, "dataset.path"));
        auto manifest = read_manifest(tr_manifest);
        std::string ckpt = resolve_str(tr_ckpt_o, tr_checkpoint, cfg, "policy.checkpoint");
        PolicyParams params = ckpt.empty()
                                  ? random_params(static_cast<int>(cfg.get_int("policy.window", 8)),
                                                  cfg.get_double("policy.init_scale", 0.5),
                                                  static_cast<std::uint64_t>(
                                                      cfg.get_int("policy.init_seed", 0)))
                                  : load_params(ckpt);
        TrainConfig t;
        t.steps = static_cast<int>(resolve_int(tr_steps_o, tr_steps, cfg, "train.steps"));
        t.batch_size = static_cast<int>(resolve_int(tr_batch_o, tr_batch, cfg, "train.batch_size"));
        t.group_size = static_cast<int>(resolve_int(tr_group_o, tr_group, cfg, "train.group_size"));
        t.learning_rate = resolve_double(tr_lr_o, tr_lr, cfg, "train.learning_rate");
        t.max_new_tokens =
            static_cast<int>(resolve_int(tr_max_o, tr_max_new, cfg, "train.max_new_tokens"));
        t.temperature = resolve_double(tr_temp_o, tr_temp, cfg, "train.temperature");
        t.top_p = resolve_double(tr_topp_o, tr_top_p, cfg, "train.top_p");
        t.mode_mix = resolve_double(tr_mix_o, tr_mix, cfg, "train.mode_mix");
        t.bounds.eps_low = resolve_double(tr_lo_o, tr_eps_low, cfg, "train.eps_low");
        t.bounds.eps_high = resolve_double(tr_hi_o, tr_eps_high, cfg, "train.eps_high");
        t.granularity =
            resolve_str(tr_gran_o, tr_granularity, cfg, "train.granularity") == "per_sequence"
                ? RatioGranularity::PerSequence
                : RatioGranularity::PerToken;
        t.root_seed = static_cast<std::uint64_t>(resolve_int(tr_seed_o, tr_seed, cfg,
                                                             "run.root_seed"));
        std::string out_dir = resolve_str(tr_out_o, tr_out_dir, cfg, "run.out_dir");
        fs::create_directories(out_dir);
        std::vector<MetricsRow> rows;
        params = train_stage(std::move(params), manifest, problems, t,
                             [&rows](const MetricsRow& r) { rows.push_back(r); });
        write_metrics_csv(rows, (fs::path(out_dir) / "metrics.csv").string());
        save_params(params, (fs::path(out_dir) / "checkpoint.txt").string());
        std::cout << "trained " << t.steps << " steps; final mean reward "
                  << (rows.empty() ? 0.0 : rows.back().mean_reward) << "\n";
    });

    // ---- schedule ----
    auto* sched = app.add_subcommand("schedule", "Full three-stage tailored schedule");
    std::string sc_config, sc_out;
    bool sc_direct = false;
    sched->add_option("--config", sc_config, "Config file")->required();
    auto* sc_out_o = sched->add_option("--out", sc_out, "Output directory");
    sched->add_flag("--direct-train", sc_direct, "Ablation: full dataset from step 0");
    sched->callback([&] {
        RunConfig cfg = load_config(sc_config);
        std::uint64_t root_seed = static_cast<std::uint64_t>(cfg.get_int("run.root_seed", 0));
        std::string out_dir = resolve_str(sc_out_o, sc_out, cfg, "run.out_dir");
        if (out_dir.empty()) out_dir = timestamped_out_dir();
        bool direct = sc_direct || cfg.get_bool("run.direct_train", false);

        ProblemSet problems = load_or_synth_problems(cfg);
        PolicyParams initial = load_or_init_policy(cfg, root_seed);
        std::vector<TrainConfig> stages;
        for (int s = 1; s <= 3; ++s) stages.push_back(stage_train_config(cfg, s, root_seed));
        DecodeConfig cat_cfg;
        cat_cfg.greedy = true;
        cat_cfg.max_new_tokens =
            static_cast<int>(cfg.get_int("categorize.max_new_tokens", stages[0].max_new_tokens));

        fs::create_directories(out_dir);
        RunConfig resolved = cfg;
        resolved.set("run.out_dir", out_dir);
        resolved.set("run.direct_train", direct ? "true" : "false");
        resolved.write((fs::path(out_dir) / "resolved.cfg").string());
        write_problems(problems, (fs::path(out_dir) / "problems.jsonl").string());

        auto result = run_schedule(problems, stages, std::move(initial), cat_cfg, out_dir, direct);
        std::vector<GroupCounts> counts;
        for (const auto& r : result.reports) counts.push_back(r.counts);
        if (!counts.empty()) std::cout << render_complexity_table(counts);
        std::cout << "schedule complete; artifacts in " << out_dir << "\n";
    });

    // ---- eval ----
    auto* ev = app.add_subcommand("eval", "Sampling-based evaluation for one mode");
    std::string ev_config, ev_problems, ev_checkpoint, ev_mode = "thinking";
    std::string ev_out = "eval.jsonl", ev_adapter_url, ev_templates;
    long ev_k = 16, ev_max_new = 32, ev_seed = 0;
    double ev_temp = 0.6, ev_top_p = 0.95;
    bool ev_greedy = false;
    ev->add_option("--config", ev_config, "Config file");
    auto* ev_problems_o = ev->add_option("--problems", ev_problems, "Problem file");
    auto* ev_ckpt_o = ev->add_option("--checkpoint", ev_checkpoint, "Policy checkpoint");
    auto* ev_mode_o = ev->add_option("--mode", ev_mode, "thinking | nothinking");
    auto* ev_k_o = ev->add_option("--k", ev_k, "Samples per problem");
    auto* ev_temp_o = ev->add_option("--temperature", ev_temp, "Sampling temperature");
    auto* ev_topp_o = ev->add_option("--top-p", ev_top_p, "Nucleus mass");
    auto* ev_max_o = ev->add_option("--max-new-tokens", ev_max_new, "Decode budget");
    auto* ev_seed_o = ev->add_option("--seed", ev_seed, "Root seed");
    auto* ev_out_o = ev->add_option("--out", ev_out, "Output report file");
    auto* ev_url_o = ev->add_option("--adapter-url", ev_adapter_url, "Generation endpoint");
    auto* ev_tpl_o = ev->add_option("--templates", ev_templates, "Prompt template file");
    ev->add_flag("--greedy", ev_greedy, "Greedy decoding");
    ev->callback([&] {
        RunConfig cfg = load_config(ev_config);
        auto problems = read_problems(resolve_str(ev_problems_o, ev_problems, cfg, "dataset.path"));
        ReasoningMode mode = mode_from_string(resolve_str(ev_mode_o, ev_mode, cfg, "eval.mode"));
        int k = static_cast<int>(resolve_int(ev_k_o, ev_k, cfg, "eval.k"));
        DecodeConfig dc;
        dc.max_new_tokens =
            static_cast<int>(resolve_int(ev_max_o, ev_max_new, cfg, "eval.max_new_tokens"));
        dc.temperature = resolve_double(ev_temp_o, ev_temp, cfg, "eval.temperature");
        dc.top_p = resolve_double(ev_topp_o, ev_top_p, cfg, "eval.top_p");
        dc.greedy = ev_greedy || cfg.get_bool("eval.greedy", false);
        std::string url =
            adapter_url_override(resolve_str(ev_url_o, ev_adapter_url, cfg, "adapter.url"));
        EvalReport report;
        if (!url.empty()) {
            AdapterConfig ac;
            ac.url = url;
            ac.timeout_ms = static_cast<int>(cfg.get_int("adapter.timeout_ms", 30000));
            std::string tpl = resolve_str(ev_tpl_o, ev_templates, cfg, "adapter.templates");
            report = evaluate(ac, problems, mode, k, dc,
                              tpl.empty() ? default_templates() : read_templates(tpl));
        } else {
            auto params =
                load_params(resolve_str(ev_ckpt_o, ev_checkpoint, cfg, "policy.checkpoint"));
            report = evaluate(params, problems, mode, k, dc,
                              static_cast<std::uint64_t>(
                                  resolve_int(ev_seed_o, ev_seed, cfg, "run.root_seed")));
        }
        std::string out = resolve_str(ev_out_o, ev_out, cfg, "eval.out");
        write_eval_report(report, out);
        std::printf("mode %s: accuracy %.4f, mean length %.2f -> %s\n",
                    to_string(report.mode), report.accuracy, report.mean_length, out.c_str());
    });

    // ---- report ----
    auto* rep = app.add_subcommand("report", "Analysis tables from eval/metrics artifacts");
    std::string rp_table, rp_eval, rp_eval_b, rp_problems, rp_buckets = "1-2", rp_metrics;
    std::string rp_out;
    rep->add_option("--table", rp_table, "buckets | union | lengths | curves")->required();
    rep->add_option("--eval", rp_eval, "Eval report file");
    rep->add_option("--eval-b", rp_eval_b, "Second eval report (union)");
    rep->add_option("--problems", rp_problems, "Problem file (buckets)");
    rep->add_option("--buckets", rp_buckets, "Difficulty buckets, e.g. 1-3,4-5");
    rep->add_option("--metrics", rp_metrics, "Metrics CSV (curves)");
    rep->add_option("--out", rp_out, "Optional CSV export path");
    rep->callback([&] {
        std::FILE* out = rp_out.empty() ? nullptr : std::fopen(rp_out.c_str(), "w");
        auto emit = [&](const std::string& line) {
            std::cout << line << "\n";
            if (out) std::fprintf(out, "%s\n", line.c_str());
        };
        if (rp_table == "buckets") {
            auto report = read_eval_report(rp_eval);
            auto problems = read_problems(rp_problems);
            auto rows = bucket_by_difficulty(report, problems, parse_buckets(rp_buckets));
            emit("bucket,problems,samples,accuracy,mean_length");
            char buf[160];
            for (const auto& r : rows) {
                std::snprintf(buf, sizeof(buf), "%d-%d,%d,%d,%.6f,%.4f", r.bucket.lo,
                              r.bucket.hi, r.problem_count, r.sample_count, r.accuracy,
                              r.mean_length);
                emit(buf);
            }
        } else if (rp_table == "union") {
            auto a = read_eval_report(rp_eval);
            auto b = read_eval_report(rp_eval_b);
            double u = oracle_union(a, b);
            emit("report,accuracy");
            char buf[120];
            std::snprintf(buf, sizeof(buf), "%s,%.6f", to_string(a.mode), a.accuracy);
            emit(buf);
            std::snprintf(buf, sizeof(buf), "%s,%.6f", to_string(b.mode), b.accuracy);
            emit(buf);
            std::snprintf(buf, sizeof(buf), "oracle_union,%.6f", u);
            emit(buf);
        } else if (rp_table == "lengths") {
            auto report = read_eval_report(rp_eval);
            auto lens = correct_incorrect_lengths(report);
            emit("id,mean_len_correct,mean_len_incorrect");
            char buf[160];
            for (std::size_t i = 0; i < lens.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%s,%.4f,%.4f",
                              report.per_problem[i].id.c_str(), lens[i].first,
                              lens[i].second);
                emit(buf);
            }
        } else if (rp_table == "curves") {
            auto rows = read_metrics_csv(rp_metrics);
            emit("step,mean_reward,clip_ratio,mean_length_thinking,mean_length_nothinking");
            char buf[200];
            for (const auto& r : rows) {
                std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.4f,%.4f", r.step,
                              r.mean_reward, r.clip_ratio, r.mean_length_thinking,
                              r.mean_length_nothinking);
                emit(buf);
            }
        } else {
            if (out) std::fclose(out);
            throw InputError("unknown table: " + rp_table);
        }
        if (out) std::fclose(out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << app.help() << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const TransportError& e) {
        std::cerr << "transport error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
