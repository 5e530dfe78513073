#include "tacler/dataset.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "tacler/rng.hpp"

namespace tacler {

using nlohmann::json;

const ProblemRecord& ProblemSet::by_id(const std::string& id) const {
    for (const auto& p : problems)
        if (p.id == id) return p;
    throw InputError("unknown problem id: " + id);
}

ProblemSet synth_dataset(int count, DifficultyRange range, std::uint64_t seed) {
    if (count < 1) throw InputError("synth_dataset: count must be >= 1");
    if (range.lo < 1 || range.lo > range.hi)
        throw InputError("synth_dataset: invalid difficulty range");

    Rng rng(seed);
    ProblemSet set;
    set.seed = seed;
    set.problems.reserve(count);
    for (int i = 0; i < count; ++i) {
        ProblemRecord rec;
        rec.id = "p" + std::to_string(i);
        int n = range.lo + static_cast<int>(rng.next_below(range.hi - range.lo + 1));
        rec.operands.reserve(n);
        int sum = 0;
        for (int j = 0; j < n; ++j) {
            int d = static_cast<int>(rng.next_below(10));
            rec.operands.push_back(d);
            sum += d;
        }
        rec.difficulty = n;
        rec.answer = std::to_string(sum % 10);
        rec.source = ProblemSource::Synthetic;
        set.problems.push_back(std::move(rec));
    }
    return set;
}

void validate(const ProblemSet& set) {
    std::unordered_set<std::string> seen;
    for (const auto& p : set.problems) {
        if (p.id.empty()) throw ValidationError("problem with empty id");
        if (!seen.insert(p.id).second)
            throw ValidationError("duplicate problem id: " + p.id);
        for (int d : p.operands)
            if (d < 0 || d > 9)
                throw ValidationError("operand out of [0,9] in problem " + p.id);
        if (p.source == ProblemSource::Synthetic &&
            p.difficulty != static_cast<int>(p.operands.size()))
            throw ValidationError("difficulty != operand count in problem " + p.id);
    }
}

void write_problems(const ProblemSet& set, const std::string& path) {
    validate(set);
    std::ofstream out(path);
    if (!out) throw InputError("cannot open for writing: " + path);
    out << json{{"seed", set.seed}}.dump() << "\n";
    for (const auto& p : set.problems) {
        json j{{"id", p.id},
               {"operands", p.operands},
               {"difficulty", p.difficulty},
               {"answer", p.answer},
               {"source", p.source == ProblemSource::Synthetic ? "synthetic" : "external"}};
        if (!p.text_prompt.empty()) j["prompt"] = p.text_prompt;
        out << j.dump() << "\n";
    }
}

ProblemSet read_problems(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open: " + path);
    ProblemSet set;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        try {
            if (!have_header && j.contains("seed") && !j.contains("id")) {
                set.seed = j.at("seed").get<std::uint64_t>();
                have_header = true;
                continue;
            }
            ProblemRecord p;
            p.id = j.at("id").get<std::string>();
            p.operands = j.value("operands", std::vector<int>{});
            p.difficulty = j.at("difficulty").get<int>();
            p.answer = j.at("answer").get<std::string>();
            std::string src = j.value("source", "synthetic");
            p.source = src == "external" ? ProblemSource::External : ProblemSource::Synthetic;
            p.text_prompt = j.value("prompt", "");
            set.problems.push_back(std::move(p));
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    validate(set);
    return set;
}

}  // namespace tacler
