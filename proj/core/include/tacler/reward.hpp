#pragma once

#include <optional>
#include <string>

#include "tacler/dataset.hpp"
#include "tacler/policy.hpp"

namespace tacler {

// Three-way response categorization: correct / complete-but-incorrect /
// truncated. Exhaustive over all responses.
enum class DifficultyGroup { G1_correct, G2_complete_incorrect, G3_truncated };

inline const char* to_string(DifficultyGroup g) {
    switch (g) {
        case DifficultyGroup::G1_correct: return "G1";
        case DifficultyGroup::G2_complete_incorrect: return "G2";
        default: return "G3";
    }
}

DifficultyGroup group_from_string(const std::string& s);

// Token path: decimal rendering of the tokens strictly between the last
// ANSWER marker and the following EOS; no marker -> nullopt.
std::optional<std::string> extract_answer(const Response& response);

// Text path (adapter): contents of the last \boxed{...} occurrence.
std::optional<std::string> extract_boxed_answer(const std::string& text);

// String equality after trimming whitespace and stripping leading zeros of
// integer answers. nullopt -> false.
bool verify(const ProblemRecord& problem, const std::optional<std::string>& answer);

// Binary reward: 1 iff not truncated and the extracted answer verifies.
// Truncated responses are never scored on partial text.
int reward(const ProblemRecord& problem, const Response& response);

DifficultyGroup classify(const ProblemRecord& problem, const Response& response);

// Fills extracted_answer and reward in place.
void score(const ProblemRecord& problem, Response& response);

}  // namespace tacler
