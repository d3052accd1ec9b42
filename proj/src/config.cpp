#include "obliv/config.hpp"

#include <fstream>
#include <sstream>

#include "obliv/csv.hpp"
#include "obliv/errors.hpp"

namespace obliv {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

} // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return from_string(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::stringstream ss(text);
    std::string line;
    long lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        }
        cfg.set(key, value);
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

bool Config::has(const std::string& key) const {
    return values_.count(key) > 0;
}

std::string Config::get_string(const std::string& key, const std::string& def) {
    consumed_.insert(key);
    auto it = values_.find(key);
    std::string v = it == values_.end() ? def : it->second;
    effective_[key] = v;
    return v;
}

double Config::get_double(const std::string& key, double def) {
    std::string v = get_string(key, csv::format_double(def));
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': bad numeric value '" + v + "'");
    }
}

int Config::get_int(const std::string& key, int def) {
    std::string v = get_string(key, std::to_string(def));
    try {
        return std::stoi(v);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': bad integer value '" + v + "'");
    }
}

std::uint64_t Config::get_uint64(const std::string& key, std::uint64_t def) {
    std::string v = get_string(key, std::to_string(def));
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': bad integer value '" + v + "'");
    }
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::vector<double>& def) {
    std::string v = get_string(key, format_double_list(def));
    std::vector<double> out;
    std::stringstream ss(v);
    std::string field;
    while (std::getline(ss, field, ',')) {
        field = trim(field);
        if (field.empty()) continue;
        try {
            out.push_back(std::stod(field));
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': bad list element '" + field + "'");
        }
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

void Config::reject_unknown() const {
    std::string unknown;
    for (const auto& [key, value] : values_) {
        if (!consumed_.count(key)) {
            if (!unknown.empty()) unknown += ", ";
            unknown += key;
        }
    }
    if (!unknown.empty()) throw ConfigError("unknown config keys: " + unknown);
}

std::string Config::dump() const {
    std::string out;
    for (const auto& [key, value] : effective_) {
        out += key + " = " + value + "\n";
    }
    return out;
}

std::string format_double_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += csv::format_double(values[i]);
    }
    return out;
}

} // namespace obliv
