#pragma once

#include <string>
#include <vector>

#include "tacler/types.hpp"

namespace tacler {

// Transport failures raised by the generation-endpoint client, distinguished
// by kind: connection failure, non-2xx after retries, response shape.
enum class TransportErrorKind { Connection, HttpStatus, SchemaMismatch };

struct TransportError : std::runtime_error {
    TransportError(TransportErrorKind k, const std::string& msg)
        : std::runtime_error(msg), kind(k) {}
    TransportErrorKind kind;
};

struct AdapterConfig {
    std::string url;         // configuration key adapter.url
    int timeout_ms = 30000;  // configuration key adapter.timeout_ms
    int max_retries = 2;     // retries on 5xx / timeout only, never on 4xx
};

struct GenerateRequest {
    std::string prompt_text;
    int n = 1;
    int max_tokens = 64;
    double temperature = 0.6;
    double top_p = 0.95;
    bool greedy = false;
};

struct GenerateCompletion {
    std::string text;
    int token_count = 0;
    bool finished = true;  // false marks truncation
};

// POST of a flat JSON body {prompt, n, max_tokens, temperature, top_p, greedy};
// the response is a JSON list of {text, token_count, finished}. Returns
// exactly n completions or throws a SchemaMismatch TransportError.
std::vector<GenerateCompletion> adapter_generate(const AdapterConfig& cfg,
                                                 const GenerateRequest& req);

}  // namespace tacler
