#include "tacler/reward.hpp"

#include <algorithm>
#include <cctype>

namespace tacler {

DifficultyGroup group_from_string(const std::string& s) {
    if (s == "G1") return DifficultyGroup::G1_correct;
    if (s == "G2") return DifficultyGroup::G2_complete_incorrect;
    if (s == "G3") return DifficultyGroup::G3_truncated;
    throw ParseError("unknown difficulty group: " + s);
}

std::optional<std::string> extract_answer(const Response& response) {
    const auto& toks = response.tokens;
    auto it = std::find(toks.rbegin(), toks.rend(), vocab::kAnswer);
    if (it == toks.rend()) return std::nullopt;
    std::size_t start = toks.size() - (it - toks.rbegin());
    std::string out;
    for (std::size_t i = start; i < toks.size(); ++i) {
        if (toks[i] == vocab::kEos) break;
        out += vocab::name(toks[i]);
    }
    return out;
}

std::optional<std::string> extract_boxed_answer(const std::string& text) {
    const std::string key = "\\boxed{";
    auto pos = text.rfind(key);
    if (pos == std::string::npos) return std::nullopt;
    std::size_t start = pos + key.size();
    int depth = 1;
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] == '{') ++depth;
        else if (text[i] == '}' && --depth == 0)
            return text.substr(start, i - start);
    }
    return std::nullopt;  // unbalanced braces
}

static std::string normalize(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string t = s.substr(b, e - b);
    // strip leading zeros of integer answers only
    bool integral = !t.empty() && std::all_of(t.begin(), t.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
    });
    if (integral) {
        std::size_t nz = t.find_first_not_of('0');
        t = nz == std::string::npos ? "0" : t.substr(nz);
    }
    return t;
}

bool verify(const ProblemRecord& problem, const std::optional<std::string>& answer) {
    if (!answer) return false;
    return normalize(*answer) == normalize(problem.answer);
}

int reward(const ProblemRecord& problem, const Response& response) {
    if (response.truncated) return 0;
    return verify(problem, extract_answer(response)) ? 1 : 0;
}

DifficultyGroup classify(const ProblemRecord& problem, const Response& response) {
    if (response.truncated) return DifficultyGroup::G3_truncated;
    return reward(problem, response) == 1 ? DifficultyGroup::G1_correct
                                          : DifficultyGroup::G2_complete_incorrect;
}

void score(const ProblemRecord& problem, Response& response) {
    response.extracted_answer = extract_answer(response);
    response.reward = reward(problem, response);
}

}  // namespace tacler
