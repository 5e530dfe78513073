#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tacler/types.hpp"

namespace tacler {

enum class ProblemSource { Synthetic, External };

// One task instance. Synthetic records are arithmetic chains whose gold
// answer is (sum of operands) mod 10; external records carry a free-text
// prompt in `text_prompt` with difficulty supplied by metadata.
struct ProblemRecord {
    std::string id;
    std::vector<int> operands;  // each in [0, 9]
    int difficulty = 1;         // == operands.size() for synthetic records
    std::string answer;
    ProblemSource source = ProblemSource::Synthetic;
    std::string text_prompt;  // external records only

    bool operator==(const ProblemRecord&) const = default;
};

struct ProblemSet {
    std::vector<ProblemRecord> problems;
    std::uint64_t seed = 0;  // generation seed, 0 for external sets

    bool operator==(const ProblemSet&) const = default;

    const ProblemRecord& by_id(const std::string& id) const;
};

struct DifficultyRange {
    int lo = 1;
    int hi = 1;
};

// Deterministic synthesis: identical (count, range, seed) yields identical
// sets. Operand counts are uniform over the range, operands uniform in [0,9].
ProblemSet synth_dataset(int count, DifficultyRange range, std::uint64_t seed);

// Line-delimited record file, one JSON object per line with keys
// id, operands, difficulty, answer, source. Write-then-read is the identity.
void write_problems(const ProblemSet& set, const std::string& path);
ProblemSet read_problems(const std::string& path);

// Throws ValidationError on duplicate ids or malformed records.
void validate(const ProblemSet& set);

}  // namespace tacler
