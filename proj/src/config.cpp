#include "pf/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pf/error.hpp"

namespace pf {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string qualified(std::string_view section, std::string_view key) {
    return section.empty() ? std::string(key) : std::string(section) + "." + std::string(key);
}

}  // namespace

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw ConfigError(std::string(what) + ": expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return v;
}

IniConfig IniConfig::parse(std::string_view text, std::filesystem::path base_dir) {
    IniConfig cfg;
    cfg.base_dir_ = std::move(base_dir);
    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        const std::string where = "config line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) throw ConfigError(where + ": empty section name");
            cfg.values_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        std::string_view value = line.substr(eq + 1);
        if (const auto hash = value.find(" #"); hash != std::string_view::npos) value = value.substr(0, hash);
        if (key.empty()) throw ConfigError(where + ": empty key");
        auto& sec = cfg.values_[section];
        if (sec.contains(key)) throw ConfigError(where + ": duplicate key '" + qualified(section, key) + "'");
        sec.emplace(key, std::string(trim(value)));
    }
    return cfg;
}

IniConfig IniConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), std::filesystem::absolute(path).parent_path());
}

bool IniConfig::has(std::string_view section, std::string_view key) const { return get(section, key).has_value(); }

std::optional<std::string> IniConfig::get(std::string_view section, std::string_view key) const {
    const auto s = values_.find(section);
    if (s == values_.end()) return std::nullopt;
    const auto k = s->second.find(std::string(key));
    if (k == s->second.end()) return std::nullopt;
    return k->second;
}

std::string IniConfig::require(std::string_view section, std::string_view key) const {
    auto v = get(section, key);
    if (!v) throw ConfigError("missing config key '" + qualified(section, key) + "'");
    return *v;
}

void IniConfig::set(std::string_view section, std::string_view key, std::string value) {
    auto it = values_.find(section);
    if (it == values_.end()) it = values_.emplace(std::string(section), std::map<std::string, std::string>{}).first;
    it->second[std::string(key)] = std::move(value);
}

std::string IniConfig::get_string(std::string_view section, std::string_view key, std::string fallback) const {
    return get(section, key).value_or(std::move(fallback));
}

double IniConfig::get_double(std::string_view section, std::string_view key, double fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    double d = 0.0;
    const auto* end = v->data() + v->size();
    const auto [ptr, ec] = std::from_chars(v->data(), end, d);
    if (v->empty() || ec != std::errc() || ptr != end) {
        throw ConfigError(qualified(section, key) + ": expected a number, got '" + *v + "'");
    }
    return d;
}

std::uint64_t IniConfig::get_uint(std::string_view section, std::string_view key, std::uint64_t fallback) const {
    const auto v = get(section, key);
    return v ? parse_uint(*v, qualified(section, key)) : fallback;
}

bool IniConfig::get_bool(std::string_view section, std::string_view key, bool fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "yes" || *v == "1" || *v == "on") return true;
    if (*v == "false" || *v == "no" || *v == "0" || *v == "off") return false;
    throw ConfigError(qualified(section, key) + ": expected a boolean, got '" + *v + "'");
}

std::vector<std::string> IniConfig::get_list(std::string_view section, std::string_view key,
                                             std::vector<std::string> fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    std::vector<std::string> out;
    std::string_view rest = *v;
    while (true) {
        const auto comma = rest.find(',');
        const auto item = trim(rest.substr(0, comma));
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

std::optional<std::filesystem::path> IniConfig::get_path(std::string_view section, std::string_view key) const {
    const auto v = get(section, key);
    if (!v || v->empty()) return std::nullopt;
    std::filesystem::path p(*v);
    return p.is_absolute() ? p : base_dir_ / p;
}

std::filesystem::path IniConfig::require_path(std::string_view section, std::string_view key) const {
    auto p = get_path(section, key);
    if (!p) throw ConfigError("missing config key '" + qualified(section, key) + "'");
    return *p;
}

std::vector<std::string> IniConfig::sections_with_prefix(std::string_view prefix) const {
    std::vector<std::string> out;
    for (const auto& [name, _] : values_) {
        if (name.starts_with(prefix)) out.push_back(name);
    }
    return out;
}

}  // namespace pf
