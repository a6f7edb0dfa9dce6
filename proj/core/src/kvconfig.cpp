#include "qclmc/kvconfig.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qclmc::kv {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string Config::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw std::invalid_argument("config: missing key '" + key + "'");
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' is not a number: " + v);
    }
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

std::uint64_t Config::get_uint(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const unsigned long long u = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return u;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' is not an unsigned integer: " + v);
    }
}

std::uint64_t Config::get_uint(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? get_uint(key) : fallback;
}

std::vector<double> Config::get_list(const std::string& key) const {
    std::string v = get_string(key);
    for (char& c : v)
        if (c == ',') c = ' ';
    std::istringstream in(v);
    std::vector<double> out;
    double d;
    while (in >> d) out.push_back(d);
    if (!in.eof()) throw std::invalid_argument("config: key '" + key + "' is not a number list");
    return out;
}

Config parse(const std::string& text) {
    std::map<std::string, std::string> values;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) + " has no '='");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty())
            throw std::invalid_argument("config: line " + std::to_string(lineno) + " has an empty key");
        values[key] = trim(t.substr(eq + 1));
    }
    return Config(std::move(values));
}

Config load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse(text);
}

std::string write(const Config& cfg) {
    std::string out;
    for (const auto& [k, v] : cfg.values()) out += k + " = " + v + "\n";
    return out;
}

void save(const Config& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("config: cannot open " + path + " for writing");
    out << write(cfg);
    if (!out) throw std::runtime_error("config: write failed for " + path);
}

}  // namespace qclmc::kv
