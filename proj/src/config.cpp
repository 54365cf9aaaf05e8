#include "voltlab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "voltlab/errors.hpp"

namespace voltlab {

static std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

static Config parse_stream(std::istream& in, const std::string& origin) {
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        cfg.set(key, value);
    }
    return cfg;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    return parse_stream(in, path);
}

Config Config::from_string(const std::string& text) {
    std::istringstream in(text);
    return parse_stream(in, "<string>");
}

void Config::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

void Config::set_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must be key=value: " + assignment);
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

std::string Config::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

static double parse_double(const std::string& key, const std::string& raw) {
    if (raw.empty()) throw ConfigError("empty value for key: " + key);
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (end != raw.c_str() + raw.size())
        throw ConfigError("key " + key + ": not a number: '" + raw + "'");
    return v;
}

static std::int64_t parse_int(const std::string& key, const std::string& raw) {
    if (raw.empty()) throw ConfigError("empty value for key: " + key);
    char* end = nullptr;
    const long long v = std::strtoll(raw.c_str(), &end, 10);
    if (end != raw.c_str() + raw.size())
        throw ConfigError("key " + key + ": not an integer: '" + raw + "'");
    return v;
}

double Config::get_double(const std::string& key) const {
    return parse_double(key, get_string(key));
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

std::int64_t Config::get_int(const std::string& key) const {
    return parse_int(key, get_string(key));
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string raw = get_string(key);
    if (raw == "true" || raw == "1" || raw == "yes") return true;
    if (raw == "false" || raw == "0" || raw == "no") return false;
    throw ConfigError("key " + key + ": not a boolean: '" + raw + "'");
}

static std::vector<std::string> split_list(const std::string& raw) {
    std::vector<std::string> parts;
    std::string part;
    std::stringstream ss(raw);
    while (std::getline(ss, part, ',')) parts.push_back(trim(part));
    return parts;
}

std::vector<std::int64_t> Config::get_int_list(const std::string& key) const {
    std::vector<std::int64_t> out;
    for (const auto& part : split_list(get_string(key))) out.push_back(parse_int(key, part));
    if (out.empty()) throw ConfigError("empty list for key: " + key);
    return out;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& part : split_list(get_string(key))) out.push_back(parse_double(key, part));
    if (out.empty()) throw ConfigError("empty list for key: " + key);
    return out;
}

std::vector<std::string> Config::keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (auto it = values_.lower_bound(prefix); it != values_.end(); ++it) {
        if (it->first.compare(0, prefix.size(), prefix) != 0) break;
        out.push_back(it->first);
    }
    return out;
}

} // namespace voltlab
