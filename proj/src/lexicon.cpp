#include "pf/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pf/error.hpp"

namespace pf {

Lexicon::Lexicon(std::vector<Category> categories) : categories_(std::move(categories)) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < categories_.size(); ++i) {
        if (!seen.insert(categories_[i].name).second) {
            throw ValidationError("duplicate lexicon category '" + categories_[i].name + "'");
        }
        for (const auto& term : categories_[i].terms) membership_[term].push_back(i);
    }
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read lexicon " + path.string());
    std::vector<Category> categories;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) throw SchemaError("expected 'category<TAB>terms'", line_number);
        Category cat;
        cat.name = line.substr(0, tab);
        std::istringstream terms(line.substr(tab + 1));
        std::string term;
        while (terms >> term) cat.terms.insert(to_lower_ascii(term));
        categories.push_back(std::move(cat));
    }
    try {
        return Lexicon(std::move(categories));
    } catch (const ValidationError& e) {
        throw SchemaError(e.what());
    }
}

std::vector<std::string> Lexicon::names() const {
    std::vector<std::string> out;
    out.reserve(categories_.size());
    for (const auto& c : categories_) out.push_back(c.name);
    return out;
}

std::vector<double> Lexicon::score(std::span<const std::string> tokens) const {
    if (tokens.empty()) throw ValidationError("lexicon scoring needs at least one token");
    std::vector<double> counts(categories_.size(), 0.0);
    for (const auto& token : tokens) {
        auto it = membership_.find(token);
        if (it == membership_.end()) continue;
        for (std::size_t cat : it->second) counts[cat] += 1.0;
    }
    const double total = static_cast<double>(tokens.size());
    for (auto& c : counts) c /= total;
    return counts;
}

namespace {

double cosine(std::span<const double> a, std::span<const double> b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double round_significant(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    const double exponent = std::floor(std::log10(std::fabs(x)));
    const double scale = std::pow(10.0, 11.0 - exponent);
    return std::round(x * scale) / scale;
}

}  // namespace

std::set<std::string> expand_seeds(const std::set<std::string>& seeds, const WordVectorTable& vectors,
                                   std::size_t k) {
    std::vector<std::string> unknown;
    std::vector<std::span<const double>> seed_vectors;
    for (const auto& s : seeds) {
        if (auto v = vectors.find(s)) {
            seed_vectors.push_back(*v);
        } else {
            unknown.push_back(s);
        }
    }
    if (!unknown.empty()) {
        std::string list;
        for (const auto& u : unknown) list += (list.empty() ? "" : ", ") + u;
        throw ValidationError("seed terms missing from the vector table: " + list);
    }

    std::set<std::string> result = seeds;
    if (k == 0 || seeds.empty()) return result;

    std::vector<std::pair<double, const std::string*>> ranked;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const auto& token = vectors.tokens()[i];
        if (seeds.contains(token)) continue;
        double sum = 0.0;
        for (const auto& sv : seed_vectors) sum += cosine(vectors.row(i), sv);
        ranked.emplace_back(sum / static_cast<double>(seed_vectors.size()), &token);
    }
    const std::size_t take = std::min(k, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), ranked.end(),
                      [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first > b.first;
                          return *a.second < *b.second;
                      });
    for (std::size_t i = 0; i < take; ++i) result.insert(*ranked[i].second);
    return result;
}

std::array<std::vector<RankedCategory>, kNumClasses> distinct_categories(
    std::span<const std::vector<double>> per_user_scores, std::span<const PersonalityClass> classes,
    std::span<const std::string> category_names, std::size_t top_k) {
    if (per_user_scores.size() != classes.size()) {
        throw ValidationError("distinct_categories: scores and classes differ in length");
    }
    const std::size_t n_cat = category_names.size();
    std::array<std::vector<double>, kNumClasses> in_sums;
    std::array<std::vector<double>, kNumClasses> out_sums;
    std::array<std::size_t, kNumClasses> users{};
    for (auto& s : in_sums) s.assign(n_cat, 0.0);
    for (auto& s : out_sums) s.assign(n_cat, 0.0);
    for (std::size_t u = 0; u < per_user_scores.size(); ++u) {
        if (per_user_scores[u].size() != n_cat) {
            throw ValidationError("distinct_categories: score vector length differs from category count");
        }
        const std::size_t own = class_index(classes[u]);
        ++users[own];
        for (std::size_t k = 0; k < kNumClasses; ++k) {
            auto& target = (k == own) ? in_sums[k] : out_sums[k];
            for (std::size_t i = 0; i < n_cat; ++i) target[i] += per_user_scores[u][i];
        }
    }
    for (auto c : kAllClasses) {
        if (users[class_index(c)] == 0) {
            throw ValidationError("distinct_categories: class " + std::string(class_name(c)) + " has no users");
        }
    }

    std::array<std::vector<RankedCategory>, kNumClasses> out;
    const std::size_t n_users = per_user_scores.size();
    for (auto c : kAllClasses) {
        const std::size_t k = class_index(c);
        const auto n_in = static_cast<double>(users[k]);
        const auto n_out = static_cast<double>(n_users - users[k]);
        std::vector<RankedCategory> ranked;
        ranked.reserve(n_cat);
        for (std::size_t i = 0; i < n_cat; ++i) {
            RankedCategory r;
            r.name = category_names[i];
            r.mean_in_class = in_sums[k][i] / n_in;
            r.mean_outside = n_out > 0 ? out_sums[k][i] / n_out : 0.0;
            r.distinctiveness = r.mean_in_class / std::max(r.mean_outside, kDistinctivenessEpsilon);
            ranked.push_back(std::move(r));
        }
        // Ratios equal to 12 significant digits count as ties.
        std::stable_sort(ranked.begin(), ranked.end(), [](const RankedCategory& a, const RankedCategory& b) {
            const double ka = round_significant(a.distinctiveness);
            const double kb = round_significant(b.distinctiveness);
            if (ka != kb) return ka > kb;
            return a.name < b.name;
        });
        if (ranked.size() > top_k) ranked.resize(top_k);
        out[k] = std::move(ranked);
    }
    return out;
}

}  // namespace pf
