#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pf {

/// Declarative key-value run configuration.
///
/// Grammar, one item per line:
///   `# comment` or `; comment`   ignored, as are blank lines
///   `[section]`                  starts a section; names may contain dots (`[encoder.bert]`)
///   `key = value`                value runs to end of line, trimmed; ` #` (space, hash) starts a comment
/// Keys before the first section belong to the section "". Repeating a key
/// in one section is an error. Relative paths resolve against the config file's directory.
class IniConfig {
public:
    static IniConfig parse(std::string_view text, std::filesystem::path base_dir = {});
    static IniConfig load(const std::filesystem::path& path);

    bool has(std::string_view section, std::string_view key) const;
    std::optional<std::string> get(std::string_view section, std::string_view key) const;
    /// Throws ConfigError naming `section.key` when absent.
    std::string require(std::string_view section, std::string_view key) const;
    void set(std::string_view section, std::string_view key, std::string value);

    std::string get_string(std::string_view section, std::string_view key, std::string fallback) const;
    double get_double(std::string_view section, std::string_view key, double fallback) const;
    std::uint64_t get_uint(std::string_view section, std::string_view key, std::uint64_t fallback) const;
    bool get_bool(std::string_view section, std::string_view key, bool fallback) const;
    /// Comma-separated list; empty items are dropped.
    std::vector<std::string> get_list(std::string_view section, std::string_view key,
                                      std::vector<std::string> fallback) const;
    std::optional<std::filesystem::path> get_path(std::string_view section, std::string_view key) const;
    std::filesystem::path require_path(std::string_view section, std::string_view key) const;

    /// Sections whose name starts with `prefix`, in sorted order.
    std::vector<std::string> sections_with_prefix(std::string_view prefix) const;
    const std::filesystem::path& base_dir() const noexcept { return base_dir_; }

private:
    std::filesystem::path base_dir_;
    std::map<std::string, std::map<std::string, std::string>, std::less<>> values_;
};

/// Parses a non-negative decimal integer; ConfigError naming `what` otherwise.
std::uint64_t parse_uint(std::string_view text, std::string_view what);

}  // namespace pf
