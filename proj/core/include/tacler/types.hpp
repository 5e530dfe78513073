#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tacler {

using Token = int;
using TokenSeq = std::vector<Token>;

// Error taxonomy used across the pipeline. InputError / ValidationError map
// to exit code 1 in the CLI, the rest to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixed 16-token vocabulary of the toy task: digits, the operator glue,
// thinking-span markers, the answer marker, end-of-sequence, and the single
// token standing in for the whole filler sentence.
namespace vocab {
inline constexpr Token kDigit0 = 0;  // digits occupy ids 0..9
inline constexpr Token kPlus = 10;
inline constexpr Token kThinkOpen = 11;
inline constexpr Token kThinkClose = 12;
inline constexpr Token kAnswer = 13;
inline constexpr Token kEos = 14;
inline constexpr Token kFiller = 15;
inline constexpr int kSize = 16;

inline bool is_digit(Token t) { return t >= 0 && t <= 9; }

inline std::string name(Token t) {
    if (is_digit(t)) return std::string(1, static_cast<char>('0' + t));
    switch (t) {
        case kPlus: return "+";
        case kThinkOpen: return "<thinking>";
        case kThinkClose: return "</thinking>";
        case kAnswer: return "<answer>";
        case kEos: return "<eos>";
        case kFiller: return "<filler>";
        default: return "?";
    }
}
}  // namespace vocab

enum class ReasoningMode { Thinking, NoThinking };

inline const char* to_string(ReasoningMode m) {
    return m == ReasoningMode::Thinking ? "thinking" : "nothinking";
}

inline ReasoningMode mode_from_string(const std::string& s) {
    if (s == "thinking") return ReasoningMode::Thinking;
    if (s == "nothinking") return ReasoningMode::NoThinking;
    throw InputError("unknown reasoning mode: " + s);
}

}  // namespace tacler
