#pragma once

#include <string>

#include "tacler/dataset.hpp"
#include "tacler/types.hpp"

namespace tacler {

// Verbatim filler sentence pre-filled into the closed thinking span of a
// NoThinking prompt.
inline constexpr const char* kNoThinkingFiller = "Okay, I think I can solve it directly.";

// Token-path prompt for the built-in policy.
//   Thinking:   d1 + d2 + ... + dn <thinking>
//   NoThinking: d1 + d2 + ... + dn <thinking> <filler> </thinking>
// The NoThinking prompt strictly extends the Thinking prompt by the closed
// filler span, so the model produces only <answer> digit <eos>.
TokenSeq render_prompt(const ProblemRecord& problem, ReasoningMode mode);

// Text templates for the adapter path. `{problem}` is replaced by the
// problem statement.
struct PromptTemplates {
    std::string thinking;
    std::string nothinking;
};

PromptTemplates default_templates();

// Template file: JSON object with the two named entries "thinking" and
// "nothinking". The nothinking entry must contain the filler byte-exactly.
PromptTemplates read_templates(const std::string& path);
void write_templates(const PromptTemplates& t, const std::string& path);

std::string render_text_prompt(const ProblemRecord& problem, ReasoningMode mode,
                               const PromptTemplates& templates);

}  // namespace tacler
