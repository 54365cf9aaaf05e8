#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace voltlab {

// Flat key-value configuration: one `dotted.key = value` per line, `#`
// starts a comment, blank lines ignored. Later assignments (including
// command-line overrides) win.
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    // "key=value" as passed to --set.
    void set_override(const std::string& assignment);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // Comma-separated numeric lists, e.g. n_grid = 256,1024,4096.
    std::vector<std::int64_t> get_int_list(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;

    // Sorted keys beginning with `prefix` (used to enumerate jumps.<i>.*).
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

private:
    std::map<std::string, std::string> values_;
};

} // namespace voltlab
