#include "tacler/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tacler {

PolicyParams zero_params(int window, int vocab_size) {
    if (window < 1 || vocab_size < 1) throw InputError("invalid policy dimensions");
    PolicyParams p;
    p.window = window;
    p.vocab_size = vocab_size;
    p.theta.assign(p.theta_size(), 0.0);
    return p;
}

PolicyParams random_params(int window, double scale, std::uint64_t seed, int vocab_size) {
    PolicyParams p = zero_params(window, vocab_size);
    Rng rng(mix_seed(seed, hash_str("policy-init")));
    for (auto& x : p.theta) {
        // Box-Muller on our own uniform stream, for cross-platform determinism
        double u1 = rng.next_double();
        double u2 = rng.next_double();
        while (u1 <= 0.0) u1 = rng.next_double();
        x = scale * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    return p;
}

void save_params(const PolicyParams& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open for writing: " + path);
    out << "tacler-policy " << p.window << " " << p.vocab_size << " " << p.version << " "
        << p.theta.size() << "\n";
    char buf[40];
    for (double x : p.theta) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", x);
        out << buf;
    }
}

PolicyParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open: " + path);
    std::string magic;
    PolicyParams p;
    std::size_t n = 0;
    in >> magic >> p.window >> p.vocab_size >> p.version >> n;
    if (magic != "tacler-policy") throw ParseError(path + ": not a policy checkpoint");
    p.theta.resize(n);
    for (auto& x : p.theta)
        if (!(in >> x)) throw ParseError(path + ": truncated checkpoint");
    if (n != p.theta_size()) throw ParseError(path + ": inconsistent dimensions");
    return p;
}

static void check_finite(const PolicyParams& params) {
    for (double x : params.theta)
        if (!std::isfinite(x)) throw NumericError("non-finite policy parameter");
}

// Logits for the next token: one theta row per active (slot, context token)
// pair; slot 0 is the most recent token.
static std::vector<double> logits(const PolicyParams& params,
                                  std::span<const Token> context) {
    if (context.empty()) throw InputError("empty context");
    const int V = params.vocab_size;
    std::vector<double> out(V, 0.0);
    const int len = static_cast<int>(context.size());
    for (int slot = 0; slot < params.window && slot < len; ++slot) {
        Token tok = context[len - 1 - slot];
        if (tok < 0 || tok >= V) throw InputError("context token out of vocabulary");
        const double* row = params.theta.data() +
                            (static_cast<std::size_t>(slot) * V + tok) * V;
        for (int t = 0; t < V; ++t) out[t] += row[t];
    }
    return out;
}

static std::vector<double> softmax(std::vector<double> z) {
    double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (auto& x : z) {
        x = std::exp(x - m);
        sum += x;
    }
    for (auto& x : z) x /= sum;
    return z;
}

std::vector<double> token_distribution(const PolicyParams& params,
                                       std::span<const Token> context) {
    check_finite(params);
    return softmax(logits(params, context));
}

double logprob(const PolicyParams& params, std::span<const Token> context, Token token) {
    auto z = logits(params, context);
    if (token < 0 || token >= params.vocab_size) throw InputError("token out of vocabulary");
    double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double x : z) sum += std::exp(x - m);
    return z[token] - m - std::log(sum);
}

void accumulate_logprob_grad(const PolicyParams& params, std::span<const Token> context,
                             Token token, double coeff, std::vector<double>& grad) {
    const int V = params.vocab_size;
    auto p = token_distribution(params, context);
    const int len = static_cast<int>(context.size());
    for (int slot = 0; slot < params.window && slot < len; ++slot) {
        Token tok = context[len - 1 - slot];
        double* row = grad.data() + (static_cast<std::size_t>(slot) * V + tok) * V;
        for (int t = 0; t < V; ++t) row[t] -= coeff * p[t];
        row[token] += coeff;
    }
}

std::pair<double, std::vector<double>> logprob_and_grad(const PolicyParams& params,
                                                        std::span<const Token> context,
                                                        Token token) {
    std::vector<double> grad(params.theta_size(), 0.0);
    accumulate_logprob_grad(params, context, token, 1.0, grad);
    return {logprob(params, context, token), std::move(grad)};
}

static int argmax_lowest_id(const std::vector<double>& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

std::vector<double> sampling_distribution(const PolicyParams& params,
                                          std::span<const Token> context,
                                          const DecodeConfig& cfg) {
    const int V = params.vocab_size;
    if (cfg.greedy || cfg.temperature == 0.0) {
        auto z = logits(params, context);
        std::vector<double> out(V, 0.0);
        out[argmax_lowest_id(z)] = 1.0;
        return out;
    }
    if (cfg.temperature < 0.0) throw InputError("negative temperature");
    if (!(cfg.top_p > 0.0 && cfg.top_p <= 1.0)) throw InputError("top_p must be in (0,1]");
    auto z = logits(params, context);
    for (auto& x : z) x /= cfg.temperature;
    auto p = softmax(std::move(z));

    // Nucleus: keep the smallest prefix (by descending probability, ties by
    // lower token id) whose mass reaches top_p, then renormalize.
    std::vector<int> order(V);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return p[a] > p[b]; });
    std::vector<double> out(V, 0.0);
    double cum = 0.0;
    for (int idx : order) {
        out[idx] = p[idx];
        cum += p[idx];
        if (cum >= cfg.top_p - 1e-15) break;
    }
    for (auto& x : out) x /= cum;
    return out;
}

Response generate(const PolicyParams& params, const TokenSeq& prompt,
                  const DecodeConfig& cfg, Rng& rng) {
    if (prompt.empty()) throw InputError("empty prompt");
    if (cfg.max_new_tokens < 1) throw InputError("max_new_tokens must be >= 1");
    check_finite(params);

    Response r;
    r.prompt = prompt;
    TokenSeq context = prompt;
    const bool has_eos = params.vocab_size > vocab::kEos;
    for (int step = 0; step < cfg.max_new_tokens; ++step) {
        auto sample_p = sampling_distribution(params, context, cfg);
        Token tok;
        if (cfg.greedy || cfg.temperature == 0.0) {
            tok = static_cast<Token>(argmax_lowest_id(sample_p));
        } else {
            double u = rng.next_double();
            double cum = 0.0;
            tok = params.vocab_size - 1;
            for (int t = 0; t < params.vocab_size; ++t) {
                cum += sample_p[t];
                if (u < cum) {
                    tok = t;
                    break;
                }
            }
        }
        r.token_logprobs.push_back(logprob(params, context, tok));
        r.tokens.push_back(tok);
        context.push_back(tok);
        if (has_eos && tok == vocab::kEos) break;
    }
    r.truncated = r.length() == cfg.max_new_tokens &&
                  !(has_eos && r.tokens.back() == vocab::kEos);
    return r;
}

}  // namespace tacler
