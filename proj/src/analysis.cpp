#include "pf/analysis.hpp"

#include <algorithm>
#include <map>

#include "pf/error.hpp"

namespace pf {

double TokenDistribution::probability(PersonalityClass c) const noexcept {
    return support ? static_cast<double>(class_users[class_index(c)]) / static_cast<double>(support) : 0.0;
}

std::vector<std::string> description_tokens(std::string_view description, const WordList* stopwords) {
    const auto clean = to_lower_ascii(separate_entities(description).clean_text);
    std::vector<std::string> out;
    for (auto& t : tokenize(clean)) {
        const bool has_letter = std::any_of(t.begin(), t.end(), [](unsigned char ch) {
            return (ch >= 'a' && ch <= 'z') || ch >= 0x80;
        });
        if (!has_letter || (stopwords && stopwords->contains(t))) continue;
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ProfessionAnalysis profession_scores(std::span<const std::string> descriptions,
                                     std::span<const PersonalityClass> classes, const WordList* stopwords,
                                     std::size_t min_support, std::size_t top_k) {
    if (descriptions.size() != classes.size()) {
        throw ValidationError("profession_scores: descriptions and classes differ in length");
    }
    std::map<std::string, std::array<std::size_t, kNumClasses>> counts;
    for (std::size_t u = 0; u < descriptions.size(); ++u) {
        for (auto& t : description_tokens(descriptions[u], stopwords)) ++counts[t][class_index(classes[u])];
    }

    ProfessionAnalysis result;
    result.min_support = min_support;
    result.top_k = top_k;
    for (const auto& [token, per_class] : counts) {
        TokenDistribution d{token, 0, per_class};
        for (auto n : per_class) d.support += n;
        if (d.support >= std::max<std::size_t>(min_support, 1)) result.tokens.push_back(std::move(d));
    }
    for (PersonalityClass c : kAllClasses) {
        const auto k = class_index(c);
        std::vector<const TokenDistribution*> order;
        for (const auto& d : result.tokens) {
            if (d.class_users[k] > 0) order.push_back(&d);
        }
        // Exact ratio comparison by cross-multiplication, so equal fractions tie.
        std::sort(order.begin(), order.end(), [k](const TokenDistribution* a, const TokenDistribution* b) {
            const auto lhs = static_cast<unsigned __int128>(a->class_users[k]) * b->support;
            const auto rhs = static_cast<unsigned __int128>(b->class_users[k]) * a->support;
            if (lhs != rhs) return lhs > rhs;
            if (a->support != b->support) return a->support > b->support;
            return a->token < b->token;
        });
        if (order.size() > top_k) order.resize(top_k);
        for (const auto* d : order) result.top[k].push_back({d->token, c, d->probability(c), d->support});
    }
    return result;
}

MetadataStats metadata_stats(std::span<const ProfileCounts> counts, std::span<const PersonalityClass> classes) {
    if (counts.size() != classes.size()) throw ValidationError("metadata_stats: inputs differ in length");
    MetadataStats s;
    for (std::size_t u = 0; u < counts.size(); ++u) {
        const auto k = class_index(classes[u]);
        ++s.users[k];
        const auto v = counts[u].as_vector();
        for (std::size_t f = 0; f < 6; ++f) s.means[k][f] += v[f];
    }
    for (std::size_t k = 0; k < kNumClasses; ++k) {
        if (s.users[k] == 0) continue;
        for (auto& m : s.means[k]) m /= static_cast<double>(s.users[k]);
    }
    return s;
}

ReadabilityTable readability_table(std::span<const ReadabilityScores> scores,
                                   std::span<const PersonalityClass> classes) {
    if (scores.size() != classes.size()) throw ValidationError("readability_table: inputs differ in length");
    ReadabilityTable t;
    for (std::size_t u = 0; u < scores.size(); ++u) {
        const auto k = class_index(classes[u]);
        ++t.users[k];
        const auto v = scores[u].as_array();
        for (std::size_t m = 0; m < ReadabilityScores::kSize; ++m) t.means[k][m] += v[m];
    }
    for (std::size_t k = 0; k < kNumClasses; ++k) {
        if (t.users[k] == 0) continue;
        for (auto& m : t.means[k]) m /= static_cast<double>(t.users[k]);
    }
    for (std::size_t m = 0; m < ReadabilityScores::kSize; ++m) {
        bool any = false;
        for (std::size_t k = 0; k < kNumClasses; ++k) {
            if (t.users[k] == 0) continue;
            if (!any) {
                t.min_class[m] = t.max_class[m] = k;
                any = true;
                continue;
            }
            if (t.means[k][m] < t.means[t.min_class[m]][m]) t.min_class[m] = k;
            if (t.means[k][m] > t.means[t.max_class[m]][m]) t.max_class[m] = k;
        }
    }
    return t;
}

namespace {

nlohmann::json per_class_json(auto&& fn) {
    nlohmann::json j = nlohmann::json::object();
    for (PersonalityClass c : kAllClasses) j[std::string(class_name(c))] = fn(class_index(c));
    return j;
}

template <class F>
void per_class_read(const nlohmann::json& j, F&& fn) {
    for (PersonalityClass c : kAllClasses) fn(class_index(c), j.at(std::string(class_name(c))));
}

}  // namespace

nlohmann::json AnalysisResults::to_json() const {
    nlohmann::json j = {{"seed", seed}};
    if (professions) {
        const auto& p = *professions;
        nlohmann::json tokens = nlohmann::json::array();
        for (const auto& d : p.tokens) tokens.push_back({{"token", d.token}, {"support", d.support}, {"class_users", d.class_users}});
        j["professions"] = {{"min_support", p.min_support},
                            {"top_k", p.top_k},
                            {"tokens", tokens},
                            {"top", per_class_json([&](std::size_t k) {
                                 nlohmann::json list = nlohmann::json::array();
                                 for (const auto& s : p.top[k]) {
                                     list.push_back({{"token", s.token}, {"probability", s.probability}, {"support", s.support}});
                                 }
                                 return list;
                             })}};
    }
    if (metadata) {
        j["metadata"] = {{"fields", ProfileCounts::kFieldNames},
                         {"users", per_class_json([&](std::size_t k) { return metadata->users[k]; })},
                         {"means", per_class_json([&](std::size_t k) { return metadata->means[k]; })}};
    }
    if (readability) {
        const auto& r = *readability;
        j["readability"] = {{"metrics", ReadabilityScores::kNames},
                            {"users", per_class_json([&](std::size_t k) { return r.users[k]; })},
                            {"means", per_class_json([&](std::size_t k) { return r.means[k]; })},
                            {"min_class", r.min_class},
                            {"max_class", r.max_class}};
    }
    if (empath) {
        j["empath"] = per_class_json([&](std::size_t k) {
            nlohmann::json list = nlohmann::json::array();
            for (const auto& c : (*empath)[k]) {
                list.push_back({{"category", c.name},
                                {"distinctiveness", c.distinctiveness},
                                {"mean_in_class", c.mean_in_class},
                                {"mean_outside", c.mean_outside}});
            }
            return list;
        });
    }
    return j;
}

AnalysisResults AnalysisResults::from_json(const nlohmann::json& j) {
    try {
        AnalysisResults r;
        r.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("professions")) {
            const auto& pj = j.at("professions");
            ProfessionAnalysis p;
            p.min_support = pj.at("min_support").get<std::size_t>();
            p.top_k = pj.at("top_k").get<std::size_t>();
            for (const auto& t : pj.at("tokens")) {
                p.tokens.push_back({t.at("token").get<std::string>(), t.at("support").get<std::size_t>(),
                                    t.at("class_users").get<std::array<std::size_t, kNumClasses>>()});
            }
            per_class_read(pj.at("top"), [&](std::size_t k, const nlohmann::json& list) {
                for (const auto& s : list) {
                    p.top[k].push_back({s.at("token").get<std::string>(), kAllClasses[k],
                                        s.at("probability").get<double>(), s.at("support").get<std::size_t>()});
                }
            });
            r.professions = std::move(p);
        }
        if (j.contains("metadata")) {
            MetadataStats m;
            per_class_read(j["metadata"].at("users"),
                           [&](std::size_t k, const nlohmann::json& v) { m.users[k] = v.get<std::size_t>(); });
            per_class_read(j["metadata"].at("means"), [&](std::size_t k, const nlohmann::json& v) {
                m.means[k] = v.get<std::array<double, 6>>();
            });
            r.metadata = m;
        }
        if (j.contains("readability")) {
            const auto& rj = j.at("readability");
            ReadabilityTable t;
            per_class_read(rj.at("users"),
                           [&](std::size_t k, const nlohmann::json& v) { t.users[k] = v.get<std::size_t>(); });
            per_class_read(rj.at("means"), [&](std::size_t k, const nlohmann::json& v) {
                t.means[k] = v.get<std::array<double, ReadabilityScores::kSize>>();
            });
            t.min_class = rj.at("min_class").get<std::array<std::size_t, ReadabilityScores::kSize>>();
            t.max_class = rj.at("max_class").get<std::array<std::size_t, ReadabilityScores::kSize>>();
            r.readability = t;
        }
        if (j.contains("empath")) {
            std::array<std::vector<RankedCategory>, kNumClasses> e;
            per_class_read(j.at("empath"), [&](std::size_t k, const nlohmann::json& list) {
                for (const auto& c : list) {
                    e[k].push_back({c.at("category").get<std::string>(), c.at("distinctiveness").get<double>(),
                                    c.at("mean_in_class").get<double>(), c.at("mean_outside").get<double>()});
                }
            });
            r.empath = std::move(e);
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad analysis results: ") + e.what());
    }
}

}  // namespace pf
