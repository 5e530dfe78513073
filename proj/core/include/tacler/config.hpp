#pragma once

#include <map>
#include <string>

#include "tacler/types.hpp"

namespace tacler {

// Flat-sectioned key-value configuration. Keys are addressed as
// "section.key"; sections may be dotted themselves (e.g. [train.stage1]).
class RunConfig {
  public:
    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_str(const std::string& key, const std::string& fallback = "") const;
    long get_int(const std::string& key, long fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

    static RunConfig from_file(const std::string& path);
    // Echoes the fully resolved configuration, sorted, for provenance.
    void write(const std::string& path) const;

  private:
    std::map<std::string, std::string> values_;
};

}  // namespace tacler
