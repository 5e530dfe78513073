#include "tacler/eval.hpp"

#include <fstream>

#include <json.hpp>

namespace tacler {

using nlohmann::json;

EvalReport evaluate(const PolicyParams& params, const ProblemSet& problems,
                    ReasoningMode mode, int k, const DecodeConfig& cfg,
                    std::uint64_t root_seed) {
    if (k < 1) throw InputError("evaluate: k must be >= 1");
    EvalReport report;
    report.mode = mode;
    report.decode = cfg;
    report.k = k;
    double total_len = 0.0;
    std::size_t total_samples = 0;
    for (const auto& p : problems.problems) {
        TokenSeq prompt = render_prompt(p, mode);
        std::uint64_t base = mix_seed(mix_seed(root_seed, hash_str(p.id)),
                                      mode == ReasoningMode::NoThinking ? 1 : 0);
        ProblemEval pe;
        pe.id = p.id;
        pe.sample_count = k;
        double len_sum = 0.0, len_correct = 0.0, len_incorrect = 0.0;
        int n_correct = 0;
        for (int i = 0; i < k; ++i) {
            Rng rng(mix_seed(base, static_cast<std::uint64_t>(i)));
            Response r = generate(params, prompt, cfg, rng);
            r.problem_id = p.id;
            r.mode = mode;
            score(p, r);
            bool ok = r.reward == 1;
            pe.correct_mask.push_back(ok);
            pe.lengths.push_back(r.length());
            len_sum += r.length();
            if (ok) {
                ++n_correct;
                len_correct += r.length();
            } else {
                len_incorrect += r.length();
            }
        }
        pe.pass_count = n_correct;
        pe.mean_length = len_sum / k;
        pe.mean_len_correct = n_correct ? len_correct / n_correct : 0.0;
        pe.mean_len_incorrect = (k - n_correct) ? len_incorrect / (k - n_correct) : 0.0;
        report.accuracy += static_cast<double>(n_correct) / k;
        total_len += len_sum;
        total_samples += k;
        report.per_problem.push_back(std::move(pe));
    }
    if (!report.per_problem.empty()) {
        report.accuracy /= static_cast<double>(report.per_problem.size());
        report.mean_length = total_len / static_cast<double>(total_samples);
    }
    return report;
}

EvalReport evaluate(const AdapterConfig& adapter, const ProblemSet& problems,
                    ReasoningMode mode, int k, const DecodeConfig& cfg,
                    const PromptTemplates& templates) {
    if (k < 1) throw InputError("evaluate: k must be >= 1");
    EvalReport report;
    report.mode = mode;
    report.decode = cfg;
    report.k = k;
    double total_len = 0.0;
    std::size_t total_samples = 0;
    for (const auto& p : problems.problems) {
        GenerateRequest req;
        req.prompt_text = render_text_prompt(p, mode, templates);
        req.n = k;
        req.max_tokens = cfg.max_new_tokens;
        req.temperature = cfg.temperature;
        req.top_p = cfg.top_p;
        req.greedy = cfg.greedy;
        std::vector<GenerateCompletion> completions;
        try {
            completions = adapter_generate(adapter, req);
        } catch (const TransportError& e) {
            throw TransportError(e.kind, "eval failed at problem " + p.id + ": " + e.what());
        }
        ProblemEval pe;
        pe.id = p.id;
        pe.sample_count = k;
        double len_sum = 0.0, len_correct = 0.0, len_incorrect = 0.0;
        int n_correct = 0;
        for (const auto& c : completions) {
            bool ok = c.finished && verify(p, extract_boxed_answer(c.text));
            pe.correct_mask.push_back(ok);
            pe.lengths.push_back(c.token_count);
            len_sum += c.token_count;
            if (ok) {
                ++n_correct;
                len_correct += c.token_count;
            } else {
                len_incorrect += c.token_count;
            }
        }
        pe.pass_count = n_correct;
        pe.mean_length = len_sum / k;
        pe.mean_len_correct = n_correct ? len_correct / n_correct : 0.0;
        pe.mean_len_incorrect = (k - n_correct) ? len_incorrect / (k - n_correct) : 0.0;
        report.accuracy += static_cast<double>(n_correct) / k;
        total_len += len_sum;
        total_samples += k;
        report.per_problem.push_back(std::move(pe));
    }
    if (!report.per_problem.empty()) {
        report.accuracy /= static_cast<double>(report.per_problem.size());
        report.mean_length = total_len / static_cast<double>(total_samples);
    }
    return report;
}

double oracle_union(const EvalReport& report_a, const EvalReport& report_b) {
    if (report_a.per_problem.size() != report_b.per_problem.size())
        throw InputError("oracle_union: mismatched problem sets");
    if (report_a.per_problem.empty()) throw InputError("oracle_union: empty reports");
    double solved = 0.0;
    for (std::size_t i = 0; i < report_a.per_problem.size(); ++i) {
        const auto& a = report_a.per_problem[i];
        const auto& b = report_b.per_problem[i];
        if (a.id != b.id) throw InputError("oracle_union: mismatched problem sets");
        if (a.pass_count > 0 || b.pass_count > 0) solved += 1.0;
    }
    return solved / static_cast<double>(report_a.per_problem.size());
}

std::vector<BucketRow> bucket_by_difficulty(const EvalReport& report,
                                            const ProblemSet& problems,
                                            const std::vector<DifficultyBucket>& buckets) {
    for (std::size_t i = 0; i < buckets.size(); ++i) {
        if (buckets[i].lo > buckets[i].hi) throw InputError("invalid difficulty bucket");
        for (std::size_t j = i + 1; j < buckets.size(); ++j)
            if (buckets[i].lo <= buckets[j].hi && buckets[j].lo <= buckets[i].hi)
                throw InputError("overlapping difficulty buckets");
    }
    std::vector<BucketRow> rows(buckets.size());
    std::vector<double> acc_sum(buckets.size(), 0.0), len_sum(buckets.size(), 0.0);
    for (const auto& pe : report.per_problem) {
        const auto& prob = problems.by_id(pe.id);
        int which = -1;
        for (std::size_t b = 0; b < buckets.size(); ++b)
            if (prob.difficulty >= buckets[b].lo && prob.difficulty <= buckets[b].hi) {
                which = static_cast<int>(b);
                break;
            }
        if (which < 0)
            throw InputError("difficulty " + std::to_string(prob.difficulty) +
                             " not covered by any bucket");
        rows[which].bucket = buckets[which];
        rows[which].problem_count += 1;
        rows[which].sample_count += pe.sample_count;
        acc_sum[which] += static_cast<double>(pe.pass_count) / pe.sample_count;
        len_sum[which] += pe.mean_length;
    }
    for (std::size_t b = 0; b < buckets.size(); ++b) {
        rows[b].bucket = buckets[b];
        if (rows[b].problem_count > 0) {
            rows[b].accuracy = acc_sum[b] / rows[b].problem_count;
            rows[b].mean_length = len_sum[b] / rows[b].problem_count;
        }
    }
    return rows;
}

std::vector<std::pair<double, double>> correct_incorrect_lengths(const EvalReport& report) {
    std::vector<std::pair<double, double>> out;
    out.reserve(report.per_problem.size());
    for (const auto& pe : report.per_problem)
        out.emplace_back(pe.mean_len_correct, pe.mean_len_incorrect);
    return out;
}

void write_eval_report(const EvalReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open for writing: " + path);
    for (const auto& pe : report.per_problem) {
        json j{{"id", pe.id},
               {"pass_count", pe.pass_count},
               {"sample_count", pe.sample_count},
               {"mean_length", pe.mean_length},
               {"correct_mask", pe.correct_mask},
               {"lengths", pe.lengths},
               {"mean_len_correct", pe.mean_len_correct},
               {"mean_len_incorrect", pe.mean_len_incorrect}};
        out << j.dump() << "\n";
    }
    out << json{{"summary", true},
                {"accuracy", report.accuracy},
                {"mean_length", report.mean_length},
                {"mode", to_string(report.mode)},
                {"k", report.k}}
               .dump()
        << "\n";
}

EvalReport read_eval_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open: " + path);
    EvalReport report;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (j.value("summary", false)) {
            report.accuracy = j.at("accuracy").get<double>();
            report.mean_length = j.at("mean_length").get<double>();
            report.mode = mode_from_string(j.at("mode").get<std::string>());
            report.k = j.at("k").get<int>();
            continue;
        }
        ProblemEval pe;
        pe.id = j.at("id").get<std::string>();
        pe.pass_count = j.at("pass_count").get<int>();
        pe.sample_count = j.at("sample_count").get<int>();
        pe.mean_length = j.at("mean_length").get<double>();
        pe.correct_mask = j.at("correct_mask").get<std::vector<bool>>();
        pe.lengths = j.at("lengths").get<std::vector<int>>();
        pe.mean_len_correct = j.at("mean_len_correct").get<double>();
        pe.mean_len_incorrect = j.at("mean_len_incorrect").get<double>();
        report.per_problem.push_back(std::move(pe));
    }
    return report;
}

}  // namespace tacler
