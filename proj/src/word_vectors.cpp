#include "pf/word_vectors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pf/error.hpp"

namespace pf {

namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t end = i;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
        if (end > i) parts.push_back(line.substr(i, end - i));
        i = end;
    }
    return parts;
}

bool parse_double(std::string_view s, double& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_size(std::string_view s, std::size_t& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void WordVectorTable::add(std::string token, std::span<const double> values) {
    if (values.size() != dim_) {
        throw ValidationError("vector for '" + token + "' has " + std::to_string(values.size()) +
                              " values, expected " + std::to_string(dim_));
    }
    if (index_.contains(token)) throw ValidationError("duplicate token '" + token + "'");
    index_.emplace(token, tokens_.size());
    tokens_.push_back(std::move(token));
    data_.insert(data_.end(), values.begin(), values.end());
}

std::optional<std::span<const double>> WordVectorTable::find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return row(it->second);
}

WordVectorTable WordVectorTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read word vectors " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("word vector file is empty", 1);
    const auto header = split_spaces(line);
    std::size_t count = 0;
    std::size_t dim = 0;
    if (header.size() != 2 || !parse_size(header[0], count) || !parse_size(header[1], dim) || dim == 0) {
        throw SchemaError("expected header 'N dim'", 1);
    }
    WordVectorTable table(dim);
    std::vector<double> values(dim);
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        const auto parts = split_spaces(line);
        if (parts.empty()) continue;
        if (parts.size() != dim + 1) {
            throw SchemaError("expected token and " + std::to_string(dim) + " values, got " +
                                  std::to_string(parts.size() - 1),
                              line_number);
        }
        for (std::size_t i = 0; i < dim; ++i) {
            if (!parse_double(parts[i + 1], values[i])) {
                throw SchemaError("bad number '" + std::string(parts[i + 1]) + "'", line_number);
            }
        }
        try {
            table.add(std::string(parts[0]), values);
        } catch (const ValidationError& e) {
            throw SchemaError(e.what(), line_number);
        }
    }
    if (table.size() != count) {
        throw SchemaError("header declares " + std::to_string(count) + " vectors, file has " +
                          std::to_string(table.size()));
    }
    return table;
}

void WordVectorTable::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << tokens_.size() << ' ' << dim_ << '\n';
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        out << tokens_[i];
        for (double v : row(i)) out << ' ' << format_double(v);
        out << '\n';
    }
}

std::vector<double> encode_text_avg(std::span<const std::string> tokens, const WordVectorTable& table) {
    std::vector<double> sum(table.dim(), 0.0);
    std::size_t known = 0;
    for (const auto& token : tokens) {
        if (auto v = table.find(token)) {
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
            ++known;
        }
    }
    if (known > 0) {
        for (auto& x : sum) x /= static_cast<double>(known);
    }
    return sum;
}

std::vector<double> encode_tweets_avg(std::span<const std::vector<std::string>> tweet_tokens,
                                      const WordVectorTable& table) {
    std::vector<double> sum(table.dim(), 0.0);
    for (const auto& tokens : tweet_tokens) {
        const auto enc = encode_text_avg(tokens, table);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += enc[i];
    }
    if (!tweet_tokens.empty()) {
        for (auto& x : sum) x /= static_cast<double>(tweet_tokens.size());
    }
    return sum;
}

EncodingMap import_external_encodings(const std::filesystem::path& path, std::size_t expected_dim) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read encodings " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("encoding file is empty", 1);
    const auto header = split_spaces(line);
    std::size_t dim = 0;
    std::size_t declared_rows = 0;
    bool has_rows = false;
    if (header.size() == 1 && parse_size(header[0], dim)) {
    } else if (header.size() == 2 && parse_size(header[0], declared_rows) && parse_size(header[1], dim)) {
        has_rows = true;
    } else {
        throw SchemaError("expected header 'dim' or 'N dim'", 1);
    }
    if (dim != expected_dim) {
        throw ValidationError(path.string() + ": declared dimension " + std::to_string(dim) + ", expected " +
                              std::to_string(expected_dim));
    }
    EncodingMap map;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        const auto parts = split_spaces(line);
        if (parts.empty()) continue;
        const std::string user(parts[0]);
        if (parts.size() - 1 != dim) {
            throw ValidationError("user '" + user + "' has " + std::to_string(parts.size() - 1) +
                                  " values, expected " + std::to_string(dim) + " (line " +
                                  std::to_string(line_number) + ")");
        }
        std::vector<double> values(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (!parse_double(parts[i + 1], values[i])) {
                throw SchemaError("bad number for user '" + user + "'", line_number);
            }
        }
        if (!map.emplace(user, std::move(values)).second) {
            throw SchemaError("duplicate user '" + user + "'", line_number);
        }
    }
    if (has_rows && map.size() != declared_rows) {
        throw SchemaError("header declares " + std::to_string(declared_rows) + " rows, file has " +
                          std::to_string(map.size()));
    }
    return map;
}

void export_encodings(const std::filesystem::path& path, const EncodingMap& encodings, std::size_t dim) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << dim << '\n';
    for (const auto& [user, values] : encodings) {
        if (values.size() != dim) throw ValidationError("user '" + user + "' encoding has wrong dimension");
        out << user;
        for (double v : values) out << ' ' << format_double(v);
        out << '\n';
    }
}

}  // namespace pf
