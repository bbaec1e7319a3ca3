#include "aerosense/config.hpp"

#include <fstream>
#include <sstream>

#include "aerosense/errors.hpp"

namespace aerosense {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
    KeyValueConfig config;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(line_no) +
                               ": expected `name = value`");
        const std::string key = trim(trimmed.substr(0, eq));
        const std::string value = trim(trimmed.substr(eq + 1));
        if (key.empty())
            throw config_error("config line " + std::to_string(line_no) +
                               ": empty key");
        config.pairs_[key] = value;
    }
    return config;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

bool KeyValueConfig::has(const std::string& key) const {
    return pairs_.count(key) != 0;
}

double KeyValueConfig::get_double(const std::string& key,
                                  double fallback) const {
    const auto it = pairs_.find(key);
    if (it == pairs_.end()) return fallback;
    try {
        std::size_t consumed = 0;
        const double v = std::stod(it->second, &consumed);
        if (consumed != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw config_error("config key `" + key + "`: not a number: " +
                           it->second);
    }
}

std::int64_t KeyValueConfig::get_int(const std::string& key,
                                     std::int64_t fallback) const {
    const auto it = pairs_.find(key);
    if (it == pairs_.end()) return fallback;
    try {
        std::size_t consumed = 0;
        const std::int64_t v = std::stoll(it->second, &consumed);
        if (consumed != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw config_error("config key `" + key + "`: not an integer: " +
                           it->second);
    }
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
    const auto it = pairs_.find(key);
    return it == pairs_.end() ? fallback : it->second;
}

void KeyValueConfig::require_known_keys(
    const std::set<std::string>& known) const {
    std::string unknown;
    for (const auto& [key, value] : pairs_) {
        if (!known.count(key)) {
            if (!unknown.empty()) unknown += ", ";
            unknown += key;
        }
    }
    if (!unknown.empty())
        throw config_error("unknown config keys: " + unknown);
}

}  // namespace aerosense
