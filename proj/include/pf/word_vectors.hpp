#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pf {

/// Token -> dense vector table, all vectors of one dimension.
///
/// Text format: first line `N dim`, then `token v1 ... v_dim` per line,
/// space separated, UTF-8.
class WordVectorTable {
public:
    explicit WordVectorTable(std::size_t dim = 0) : dim_(dim) {}

    static WordVectorTable load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    /// Throws ValidationError on a duplicate token or wrong length.
    void add(std::string token, std::span<const double> values);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return tokens_.size(); }
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }

    std::optional<std::span<const double>> find(std::string_view token) const;
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

    bool operator==(const WordVectorTable& other) const {
        return dim_ == other.dim_ && tokens_ == other.tokens_ && data_ == other.data_;
    }

private:
    std::size_t dim_;
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<double> data_;
};

/// Mean of the vectors of in-vocabulary tokens; zero vector when none are known.
std::vector<double> encode_text_avg(std::span<const std::string> tokens, const WordVectorTable& table);

/// Mean over tweets of the per-tweet averages. Zero vector for no tweets.
std::vector<double> encode_tweets_avg(std::span<const std::vector<std::string>> tweet_tokens,
                                      const WordVectorTable& table);

using EncodingMap = std::map<std::string, std::vector<double>>;

/// Reads per-user vectors: first line declares the dimension (`dim`, or
/// `N dim`), then `user_id v1 ... v_dim` per line.
EncodingMap import_external_encodings(const std::filesystem::path& path, std::size_t expected_dim);
void export_encodings(const std::filesystem::path& path, const EncodingMap& encodings, std::size_t dim);

/// Shortest round-trip decimal form of `v`.
std::string format_double(double v);

}  // namespace pf
