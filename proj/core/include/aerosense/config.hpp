#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>

namespace aerosense {

// Flat `name = value` configuration: one pair per line, '#' comments,
// whitespace-insensitive. Loaders validate against a key schema and report
// every unknown key at once.
class KeyValueConfig {
public:
    static KeyValueConfig parse(const std::string& text);
    static KeyValueConfig load(const std::filesystem::path& path);

    bool has(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::string get_string(const std::string& key,
                           const std::string& fallback) const;

    // Throws config_error listing every key not in `known`.
    void require_known_keys(const std::set<std::string>& known) const;

    const std::map<std::string, std::string>& pairs() const { return pairs_; }

private:
    std::map<std::string, std::string> pairs_;
};

}  // namespace aerosense
