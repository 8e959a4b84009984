#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace pf {

struct SparseVector {
    std::vector<std::uint32_t> indices;  // strictly increasing
    std::vector<double> values;

    double norm() const noexcept;
    std::vector<double> to_dense(std::size_t dim) const;
};

/// Fitted tf-idf vocabulary. Vocabulary is sorted; every token has
/// df / n_docs >= min_df.
class TfidfModel {
public:
    TfidfModel() = default;
    TfidfModel(std::vector<std::string> vocabulary, std::vector<std::size_t> document_frequency,
               std::size_t n_docs, double min_df);

    const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
    const std::vector<std::size_t>& document_frequency() const noexcept { return df_; }
    std::size_t n_docs() const noexcept { return n_docs_; }
    double min_df() const noexcept { return min_df_; }
    std::size_t size() const noexcept { return vocabulary_.size(); }

    std::optional<std::size_t> index_of(const std::string& token) const;

    /// ln((1 + n_docs) / (1 + df)) + 1
    double idf(std::size_t i) const;

    nlohmann::json to_json() const;
    static TfidfModel from_json(const nlohmann::json& j);

    bool operator==(const TfidfModel& o) const {
        return vocabulary_ == o.vocabulary_ && df_ == o.df_ && n_docs_ == o.n_docs_ && min_df_ == o.min_df_;
    }

private:
    std::vector<std::string> vocabulary_;
    std::vector<std::size_t> df_;
    std::size_t n_docs_ = 0;
    double min_df_ = 0.0;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Document frequency counts distinct documents. A token is kept when
/// df >= min_df * n_docs (relative slack 1e-12). Empty corpus is a ValidationError.
TfidfModel fit_tfidf(std::span<const std::vector<std::string>> docs, double min_df = 0.02);

/// Raw term count times smoothed idf, L2-normalized when nonzero.
SparseVector tfidf_transform(std::span<const std::string> doc, const TfidfModel& model);

}  // namespace pf
