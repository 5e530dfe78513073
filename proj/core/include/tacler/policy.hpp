#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tacler/rng.hpp"
#include "tacler/types.hpp"

namespace tacler {

// Log-linear windowed policy. Features are the concatenated one-hots of the
// last `window` context tokens (zero-padded when the context is shorter), so
// theta has (window * vocab_size) * vocab_size entries laid out as
// theta[(slot * vocab_size + context_token) * vocab_size + target_token].
struct PolicyParams {
    std::vector<double> theta;
    int window = 4;
    int vocab_size = vocab::kSize;
    std::int64_t version = 0;

    int feature_dim() const { return window * vocab_size; }
    std::size_t theta_size() const {
        return static_cast<std::size_t>(feature_dim()) * vocab_size;
    }
};

PolicyParams zero_params(int window, int vocab_size = vocab::kSize);
// Gaussian init; a fresh policy needs non-uniform logits so greedy decoding
// does not lock onto the lowest token id.
PolicyParams random_params(int window, double scale, std::uint64_t seed,
                           int vocab_size = vocab::kSize);

void save_params(const PolicyParams& p, const std::string& path);
PolicyParams load_params(const std::string& path);

struct DecodeConfig {
    int max_new_tokens = 64;
    double temperature = 1.0;
    double top_p = 1.0;
    bool greedy = false;  // argmax with lowest-token-id tie-break
};

struct Response {
    std::string problem_id;
    ReasoningMode mode = ReasoningMode::Thinking;
    TokenSeq prompt;  // rendered prompt, kept for logprob recomputation
    TokenSeq tokens;  // generated tokens only
    std::vector<double> token_logprobs;  // untempered, same length as tokens
    bool truncated = false;
    std::optional<std::string> extracted_answer;
    int reward = 0;

    int length() const { return static_cast<int>(tokens.size()); }
};

// pi_theta(. | context): softmax over the vocabulary. Sums to 1 within 1e-12.
std::vector<double> token_distribution(const PolicyParams& params,
                                       std::span<const Token> context);

// log pi_theta(token | context) and its exact gradient w.r.t. theta
// (feature minus distribution-expected feature, scattered to theta layout).
std::pair<double, std::vector<double>> logprob_and_grad(const PolicyParams& params,
                                                        std::span<const Token> context,
                                                        Token token);

double logprob(const PolicyParams& params, std::span<const Token> context, Token token);

// Sparse version for training loops: adds coeff * d(log pi)/d(theta) into
// grad, which must have params.theta_size() entries.
void accumulate_logprob_grad(const PolicyParams& params, std::span<const Token> context,
                             Token token, double coeff, std::vector<double>& grad);

// Distribution actually sampled from: temperature applied to logits, then
// nucleus truncation at top_p with renormalization. Exposed for enumeration
// oracles. Nucleus truncation never removes the most probable token.
std::vector<double> sampling_distribution(const PolicyParams& params,
                                          std::span<const Token> context,
                                          const DecodeConfig& cfg);

// Autoregressive decoding until EOS or max_new_tokens. Recorded logprobs are
// untempered; temperature/top-p affect selection only.
Response generate(const PolicyParams& params, const TokenSeq& prompt,
                  const DecodeConfig& cfg, Rng& rng);

}  // namespace tacler
