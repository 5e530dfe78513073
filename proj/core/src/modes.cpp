#include "tacler/modes.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tacler {

using nlohmann::json;

TokenSeq render_prompt(const ProblemRecord& problem, ReasoningMode mode) {
    TokenSeq seq;
    seq.reserve(problem.operands.size() * 2 + 3);
    for (std::size_t i = 0; i < problem.operands.size(); ++i) {
        if (i > 0) seq.push_back(vocab::kPlus);
        seq.push_back(problem.operands[i]);
    }
    seq.push_back(vocab::kThinkOpen);
    if (mode == ReasoningMode::NoThinking) {
        seq.push_back(vocab::kFiller);
        seq.push_back(vocab::kThinkClose);
    }
    return seq;
}

PromptTemplates default_templates() {
    PromptTemplates t;
    t.thinking =
        "Solve the following problem. Generate the detailed thinking process "
        "between <thinking> and </thinking>, then give the final answer in "
        "\\boxed{}.\nProblem: {problem}\n<thinking>";
    t.nothinking =
        "Solve the following problem and give the final answer in \\boxed{}."
        "\nProblem: {problem}\n<thinking> " +
        std::string(kNoThinkingFiller) + " </thinking>";
    return t;
}

PromptTemplates read_templates(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    PromptTemplates t;
    t.thinking = j.at("thinking").get<std::string>();
    t.nothinking = j.at("nothinking").get<std::string>();
    if (t.nothinking.find(kNoThinkingFiller) == std::string::npos)
        throw ValidationError("nothinking template does not contain the filler sentence");
    return t;
}

void write_templates(const PromptTemplates& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open for writing: " + path);
    out << json{{"thinking", t.thinking}, {"nothinking", t.nothinking}}.dump(2) << "\n";
}

static std::string statement(const ProblemRecord& p) {
    if (!p.text_prompt.empty()) return p.text_prompt;
    std::ostringstream os;
    for (std::size_t i = 0; i < p.operands.size(); ++i) {
        if (i > 0) os << " + ";
        os << p.operands[i];
    }
    os << " mod 10 = ?";
    return os.str();
}

std::string render_text_prompt(const ProblemRecord& problem, ReasoningMode mode,
                               const PromptTemplates& templates) {
    std::string tpl =
        mode == ReasoningMode::Thinking ? templates.thinking : templates.nothinking;
    const std::string key = "{problem}";
    if (auto pos = tpl.find(key); pos != std::string::npos)
        tpl.replace(pos, key.size(), statement(problem));
    return tpl;
}

}  // namespace tacler
