#include "pf/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "pf/error.hpp"

namespace pf {

double SparseVector::norm() const noexcept {
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s);
}

std::vector<double> SparseVector::to_dense(std::size_t dim) const {
    std::vector<double> out(dim, 0.0);
    for (std::size_t k = 0; k < indices.size(); ++k) out[indices[k]] = values[k];
    return out;
}

TfidfModel::TfidfModel(std::vector<std::string> vocabulary, std::vector<std::size_t> document_frequency,
                       std::size_t n_docs, double min_df)
    : vocabulary_(std::move(vocabulary)), df_(std::move(document_frequency)), n_docs_(n_docs), min_df_(min_df) {
    if (vocabulary_.size() != df_.size()) throw ValidationError("tf-idf vocabulary and df lengths differ");
    if (!std::is_sorted(vocabulary_.begin(), vocabulary_.end())) {
        throw ValidationError("tf-idf vocabulary must be sorted");
    }
    for (std::size_t i = 0; i < vocabulary_.size(); ++i) index_.emplace(vocabulary_[i], i);
}

std::optional<std::size_t> TfidfModel::index_of(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double TfidfModel::idf(std::size_t i) const {
    return std::log((1.0 + static_cast<double>(n_docs_)) / (1.0 + static_cast<double>(df_[i]))) + 1.0;
}

nlohmann::json TfidfModel::to_json() const {
    return {{"vocabulary", vocabulary_}, {"document_frequency", df_}, {"n_docs", n_docs_}, {"min_df", min_df_}};
}

TfidfModel TfidfModel::from_json(const nlohmann::json& j) {
    return TfidfModel(j.at("vocabulary").get<std::vector<std::string>>(),
                      j.at("document_frequency").get<std::vector<std::size_t>>(), j.at("n_docs").get<std::size_t>(),
                      j.at("min_df").get<double>());
}

TfidfModel fit_tfidf(std::span<const std::vector<std::string>> docs, double min_df) {
    if (docs.empty()) throw ValidationError("fit_tfidf: empty corpus");
    if (min_df < 0.0 || min_df > 1.0) throw ValidationError("fit_tfidf: min_df must lie in [0, 1]");
    std::map<std::string, std::size_t> df;
    for (const auto& doc : docs) {
        std::set<std::string_view> distinct(doc.begin(), doc.end());
        for (auto token : distinct) ++df[std::string(token)];
    }
    const double threshold = min_df * static_cast<double>(docs.size()) * (1.0 - 1e-12);
    std::vector<std::string> vocabulary;
    std::vector<std::size_t> counts;
    for (const auto& [token, count] : df) {
        if (static_cast<double>(count) >= threshold) {
            vocabulary.push_back(token);
            counts.push_back(count);
        }
    }
    return TfidfModel(std::move(vocabulary), std::move(counts), docs.size(), min_df);
}

SparseVector tfidf_transform(std::span<const std::string> doc, const TfidfModel& model) {
    std::map<std::size_t, double> tf;
    for (const auto& token : doc) {
        if (auto i = model.index_of(token)) tf[*i] += 1.0;
    }
    SparseVector out;
    double sq = 0.0;
    for (const auto& [i, count] : tf) {
        const double w = count * model.idf(i);
        out.indices.push_back(static_cast<std::uint32_t>(i));
        out.values.push_back(w);
        sq += w * w;
    }
    if (sq > 0.0) {
        const double inv = 1.0 / std::sqrt(sq);
        for (auto& v : out.values) v *= inv;
    }
    return out;
}

}  // namespace pf
