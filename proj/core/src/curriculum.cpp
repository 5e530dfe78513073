#include "tacler/curriculum.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tacler {

using nlohmann::json;

const CategorizationReport::Entry& CategorizationReport::by_id(const std::string& id) const {
    for (const auto& [pid, e] : labels)
        if (pid == id) return e;
    throw InputError("no label for problem id: " + id);
}

CategorizationReport categorize_dataset(const PolicyParams& params,
                                        const ProblemSet& problems,
                                        const DecodeConfig& cfg) {
    if (!cfg.greedy) throw InputError("categorize_dataset requires greedy decoding");
    CategorizationReport report;
    report.policy_version = params.version;
    report.decode = cfg;
    report.labels.reserve(problems.problems.size());
    Rng unused(0);  // greedy path never consumes randomness
    for (const auto& p : problems.problems) {
        Response r = generate(params, render_prompt(p, ReasoningMode::Thinking), cfg, unused);
        r.problem_id = p.id;
        score(p, r);
        CategorizationReport::Entry e;
        e.group = classify(p, r);
        e.response_length = r.length();
        e.truncated = r.truncated;
        e.correct = r.reward == 1;
        switch (e.group) {
            case DifficultyGroup::G1_correct: ++report.counts.g1; break;
            case DifficultyGroup::G2_complete_incorrect: ++report.counts.g2; break;
            case DifficultyGroup::G3_truncated: ++report.counts.g3; break;
        }
        report.labels.emplace_back(p.id, e);
    }
    return report;
}

CategorizationReport categorize_dataset(const AdapterConfig& adapter,
                                        const ProblemSet& problems,
                                        const PromptTemplates& templates,
                                        int max_new_tokens) {
    CategorizationReport report;
    report.decode.greedy = true;
    report.decode.max_new_tokens = max_new_tokens;
    report.labels.reserve(problems.problems.size());
    for (const auto& p : problems.problems) {
        GenerateRequest req;
        req.prompt_text = render_text_prompt(p, ReasoningMode::Thinking, templates);
        req.n = 1;
        req.greedy = true;
        req.max_tokens = max_new_tokens;
        std::vector<GenerateCompletion> completions;
        try {
            completions = adapter_generate(adapter, req);
        } catch (const TransportError& e) {
            throw TransportError(e.kind,
                                 "categorize failed at problem " + p.id + ": " + e.what());
        }
        const auto& c = completions.front();
        CategorizationReport::Entry e;
        e.response_length = c.token_count;
        e.truncated = !c.finished;
        e.correct = c.finished && verify(p, extract_boxed_answer(c.text));
        e.group = e.truncated  ? DifficultyGroup::G3_truncated
                  : e.correct ? DifficultyGroup::G1_correct
                              : DifficultyGroup::G2_complete_incorrect;
        switch (e.group) {
            case DifficultyGroup::G1_correct: ++report.counts.g1; break;
            case DifficultyGroup::G2_complete_incorrect: ++report.counts.g2; break;
            case DifficultyGroup::G3_truncated: ++report.counts.g3; break;
        }
        report.labels.emplace_back(p.id, e);
    }
    return report;
}

StageManifest build_stage(const CategorizationReport& report, int stage_index,
                          const ProblemSet& full_set) {
    if (stage_index < 1 || stage_index > 3)
        throw InputError("stage index must be 1, 2, or 3");
    StageManifest m;
    m.stage_index = stage_index;
    if (stage_index == 3) {
        m.rule = StageRule::FullDataset;
        for (const auto& p : full_set.problems) m.problem_ids.push_back(p.id);
        return m;
    }
    m.rule = StageRule::G1_union_G2;
    for (const auto& [id, e] : report.labels)
        if (e.group != DifficultyGroup::G3_truncated) m.problem_ids.push_back(id);
    if (m.problem_ids.empty())
        throw ValidationError("stage " + std::to_string(stage_index) +
                              ": empty G1 u G2 selection, untrainable stage");
    return m;
}

void write_report(const CategorizationReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open for writing: " + path);
    out << json{{"policy_version", report.policy_version},
                {"max_new_tokens", report.decode.max_new_tokens}}
               .dump()
        << "\n";
    for (const auto& [id, e] : report.labels)
        out << json{{"id", id},
                    {"group", to_string(e.group)},
                    {"response_length", e.response_length},
                    {"truncated", e.truncated},
                    {"correct", e.correct}}
                   .dump()
            << "\n";
}

CategorizationReport read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open: " + path);
    CategorizationReport report;
    report.decode.greedy = true;
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
        if (lineno == 1 && !j.contains("id")) {
            report.policy_version = j.value("policy_version", 0);
            report.decode.max_new_tokens = j.value("max_new_tokens", 64);
            continue;
        }
        CategorizationReport::Entry e;
        e.group = group_from_string(j.at("group").get<std::string>());
        e.response_length = j.at("response_length").get<int>();
        e.truncated = j.at("truncated").get<bool>();
        e.correct = j.at("correct").get<bool>();
        switch (e.group) {
            case DifficultyGroup::G1_correct: ++report.counts.g1; break;
            case DifficultyGroup::G2_complete_incorrect: ++report.counts.g2; break;
            case DifficultyGroup::G3_truncated: ++report.counts.g3; break;
        }
        report.labels.emplace_back(j.at("id").get<std::string>(), e);
    }
    return report;
}

void write_manifest(const StageManifest& manifest, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open for writing: " + path);
    out << json{{"stage_index", manifest.stage_index},
                {"rule", manifest.rule == StageRule::FullDataset ? "full_dataset"
                                                                 : "g1_union_g2"},
                {"count", manifest.problem_ids.size()}}
               .dump()
        << "\n";
    for (const auto& id : manifest.problem_ids) out << id << "\n";
}

StageManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": missing manifest header");
    StageManifest m;
    try {
        json j = json::parse(line);
        m.stage_index = j.at("stage_index").get<int>();
        std::string rule = j.at("rule").get<std::string>();
        m.rule = rule == "full_dataset" ? StageRule::FullDataset : StageRule::G1_union_G2;
        std::size_t count = j.at("count").get<std::size_t>();
        while (std::getline(in, line))
            if (!line.empty()) m.problem_ids.push_back(line);
        if (m.problem_ids.size() != count)
            throw ValidationError(path + ": manifest id count mismatch");
    } catch (const json::exception& e) {
        throw ParseError(path + ":1: " + e.what());
    }
    return m;
}

std::string render_complexity_table(const std::vector<GroupCounts>& stages) {
    std::ostringstream os;
    os << "Stage   G1 (%)   G2 (%)   G3 (%)   Total (#)\n";
    char buf[128];
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto& c = stages[i];
        double total = std::max(c.total(), 1);
        std::snprintf(buf, sizeof(buf), "%-7zu %6.1f   %6.1f   %6.1f   %9d\n", i + 1,
                      100.0 * c.g1 / total, 100.0 * c.g2 / total, 100.0 * c.g3 / total,
                      c.total());
        os << buf;
    }
    return os.str();
}

}  // namespace tacler
