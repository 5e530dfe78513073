#include "tacler/adapter.hpp"

#include <httplib.h>
#include <json.hpp>

namespace tacler {

using nlohmann::json;

// Splits "http://host:port/path" into (scheme://host:port, /path).
static std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    auto path_start = url.find('/', host_start);
    if (path_start == std::string::npos) return {url, "/generate"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::vector<GenerateCompletion> adapter_generate(const AdapterConfig& cfg,
                                                 const GenerateRequest& req) {
    if (cfg.url.empty()) throw InputError("adapter url not configured");
    if (req.n < 1) throw InputError("adapter_generate: n must be >= 1");

    auto [base, path] = split_url(cfg.url);
    json body{{"prompt", req.prompt_text}, {"n", req.n},
              {"max_tokens", req.max_tokens}, {"temperature", req.temperature},
              {"top_p", req.top_p},          {"greedy", req.greedy}};
    const std::string payload = body.dump();

    std::string last_error = "no attempt made";
    TransportErrorKind last_kind = TransportErrorKind::Connection;
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        httplib::Client client(base);
        client.set_connection_timeout(0, cfg.timeout_ms * 1000LL);
        client.set_read_timeout(cfg.timeout_ms / 1000, (cfg.timeout_ms % 1000) * 1000);

        auto res = client.Post(path, payload, "application/json");
        if (!res) {
            last_error = "connection failure: " + httplib::to_string(res.error());
            last_kind = TransportErrorKind::Connection;
            continue;  // retryable
        }
        if (res->status >= 500) {
            last_error = "server error, status " + std::to_string(res->status);
            last_kind = TransportErrorKind::HttpStatus;
            continue;  // retryable
        }
        if (res->status < 200 || res->status >= 300)
            throw TransportError(TransportErrorKind::HttpStatus,
                                 "status " + std::to_string(res->status) + " from " + cfg.url);

        json parsed;
        try {
            parsed = json::parse(res->body);
        } catch (const json::exception& e) {
            throw TransportError(TransportErrorKind::SchemaMismatch,
                                 std::string("unparseable response body: ") + e.what());
        }
        if (!parsed.is_array())
            throw TransportError(TransportErrorKind::SchemaMismatch,
                                 "response is not a completion list");
        std::vector<GenerateCompletion> out;
        try {
            for (const auto& item : parsed) {
                GenerateCompletion c;
                c.text = item.at("text").get<std::string>();
                c.token_count = item.at("token_count").get<int>();
                c.finished = item.at("finished").get<bool>();
                out.push_back(std::move(c));
            }
        } catch (const json::exception& e) {
            throw TransportError(TransportErrorKind::SchemaMismatch,
                                 std::string("malformed completion item: ") + e.what());
        }
        if (static_cast<int>(out.size()) != req.n)
            throw TransportError(TransportErrorKind::SchemaMismatch,
                                 "requested " + std::to_string(req.n) + " completions, got " +
                                     std::to_string(out.size()));
        return out;
    }
    throw TransportError(last_kind,
                         cfg.url + ": " + last_error + " after " +
                             std::to_string(cfg.max_retries + 1) + " attempts");
}

}  // namespace tacler
