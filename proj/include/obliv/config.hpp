#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace obliv {

// Flat key = value configuration with '#' comments. Every key a command
// reads is registered with its default, so --print-config can dump the
// effective settings and unread keys are rejected as typos.
class Config {
public:
    Config() = default;
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& def);
    double get_double(const std::string& key, double def);
    int get_int(const std::string& key, int def);
    std::uint64_t get_uint64(const std::string& key, std::uint64_t def);
    std::vector<double> get_double_list(const std::string& key, const std::vector<double>& def);

    // ConfigError listing any keys that were set but never read.
    void reject_unknown() const;

    // Effective settings (defaults overlaid with explicit values), sorted.
    std::string dump() const;

private:
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, std::string> effective_;
    mutable std::set<std::string> consumed_;
};

std::string format_double_list(const std::vector<double>& values);

} // namespace obliv
