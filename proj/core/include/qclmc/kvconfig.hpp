#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Flat key = value configuration files ('#' starts a comment). Used for the
// rate-parameter files produced by `fit` and consumed by `bounds` and the
// study drivers.

namespace qclmc::kv {

class Config {
public:
    Config() = default;
    explicit Config(std::map<std::string, std::string> values) : values_(std::move(values)) {}

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_uint(const std::string& key) const;
    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
    /// Comma- or space-separated list of numbers.
    std::vector<double> get_list(const std::string& key) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

Config parse(const std::string& text);
Config load(const std::string& path);
std::string write(const Config& cfg);
void save(const Config& cfg, const std::string& path);

}  // namespace qclmc::kv
