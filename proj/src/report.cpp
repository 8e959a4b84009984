#include "pf/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pf/error.hpp"

namespace pf {

namespace {

std::string fixed(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string cls(std::size_t k) { return std::string(class_name(kAllClasses[k])); }

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const {
        std::ostringstream out;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
            out << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return out.str();
    }

    std::string markdown() const {
        std::ostringstream out;
        auto line = [&](const std::vector<std::string>& cells) {
            out << '|';
            for (const auto& c : cells) out << ' ' << c << " |";
            out << '\n';
        };
        line(header);
        out << '|';
        for (std::size_t i = 0; i < header.size(); ++i) out << " --- |";
        out << '\n';
        for (const auto& r : rows) line(r);
        return out.str();
    }
};

// Tokens reach CSV cells verbatim; they never contain commas (tokenizer output).
Table readability_csv(const ReadabilityTable& t) {
    Table tab;
    tab.header = {"class", "users"};
    for (auto n : ReadabilityScores::kNames) tab.header.emplace_back(n);
    for (std::size_t k = 0; k < kNumClasses; ++k) {
        std::vector<std::string> row = {cls(k), std::to_string(t.users[k])};
        for (double v : t.means[k]) row.push_back(fixed(v));
        tab.rows.push_back(std::move(row));
    }
    return tab;
}

Table readability_flags(const ReadabilityTable& t) {
    Table tab{{"metric", "min_class", "max_class"}, {}};
    for (std::size_t m = 0; m < ReadabilityScores::kSize; ++m) {
        tab.rows.push_back({std::string(ReadabilityScores::kNames[m]), cls(t.min_class[m]), cls(t.max_class[m])});
    }
    return tab;
}

Table metadata_csv(const MetadataStats& s) {
    Table tab;
    tab.header = {"class", "users"};
    for (auto n : ProfileCounts::kFieldNames) tab.header.emplace_back(n);
    for (std::size_t k = 0; k < kNumClasses; ++k) {
        std::vector<std::string> row = {cls(k), std::to_string(s.users[k])};
        for (double v : s.means[k]) row.push_back(fixed(v));
        tab.rows.push_back(std::move(row));
    }
    return tab;
}

Table professions_csv(const ProfessionAnalysis& p) {
    Table tab{{"class", "rank", "token", "probability", "support"}, {}};
    for (std::size_t k = 0; k < kNumClasses; ++k) {
        for (std::size_t r = 0; r < p.top[k].size(); ++r) {
            const auto& s = p.top[k][r];
            tab.rows.push_back({cls(k), std::to_string(r + 1), s.token, fixed(s.probability), std::to_string(s.support)});
        }
    }
    return tab;
}

Table empath_csv(const std::array<std::vector<RankedCategory>, kNumClasses>& e) {
    Table tab{{"class", "rank", "category", "distinctiveness", "mean_in_class", "mean_outside"}, {}};
    for (std::size_t k = 0; k < kNumClasses; ++k) {
        for (std::size_t r = 0; r < e[k].size(); ++r) {
            const auto& c = e[k][r];
            tab.rows.push_back({cls(k), std::to_string(r + 1), c.name, fixed(c.distinctiveness),
                                fixed(c.mean_in_class, 6), fixed(c.mean_outside, 6)});
        }
    }
    return tab;
}

Table ablation_table(const AblationReport& a) {
    Table tab{{"encoder", "classifier", "config", "f1", "accuracy"}, {}};
    for (const auto& r : a.rows) {
        tab.rows.push_back({r.encoder, r.classifier, r.config, fixed(r.metrics.macro_f1), fixed(r.metrics.accuracy)});
    }
    return tab;
}

// Table 5 layout: one row per configuration, one F1/accuracy column pair per encoder and classifier.
Table ablation_grid(const AblationReport& a) {
    std::vector<std::pair<std::string, std::string>> columns;
    std::vector<std::pair<std::string, std::string>> configs;
    for (const auto& r : a.rows) {
        const std::pair col{r.encoder, r.classifier};
        if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
        const std::pair cfg{r.config, r.config_label};
        if (std::find(configs.begin(), configs.end(), cfg) == configs.end()) configs.push_back(cfg);
    }
    Table tab;
    tab.header = {"configuration"};
    for (const auto& [enc, clf] : columns) {
        tab.header.push_back(enc + "/" + clf + " F1");
        tab.header.push_back(enc + "/" + clf + " Acc");
    }
    for (const auto& [name, label] : configs) {
        std::vector<std::string> row = {label};
        for (const auto& [enc, clf] : columns) {
            const AblationRow* hit = nullptr;
            for (const auto& r : a.rows) {
                if (r.encoder == enc && r.classifier == clf && r.config == name) hit = &r;
            }
            row.push_back(hit ? fixed(100.0 * hit->metrics.macro_f1, 2) : "");
            row.push_back(hit ? fixed(100.0 * hit->metrics.accuracy, 2) : "");
        }
        tab.rows.push_back(std::move(row));
    }
    return tab;
}

nlohmann::json class_series_plot(const std::string& title, std::span<const std::string_view> names,
                                 const auto& means, const std::array<std::size_t, kNumClasses>& users) {
    nlohmann::json series = nlohmann::json::array();
    for (std::size_t f = 0; f < names.size(); ++f) {
        std::vector<double> y;
        for (std::size_t k = 0; k < kNumClasses; ++k) y.push_back(means[k][f]);
        series.push_back({{"name", names[f]}, {"y", y}});
    }
    std::vector<std::string> x;
    for (std::size_t k = 0; k < kNumClasses; ++k) x.push_back(cls(k));
    return {{"title", title}, {"x", x}, {"users", users}, {"series", series}};
}

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out.flush()) throw IoError("failed writing " + path.string());
}

std::vector<std::string> emit_report(const std::filesystem::path& out_dir, const AnalysisResults& analysis,
                                     const AblationReport* ablation) {
    std::vector<std::string> written;
    auto emit = [&](const std::string& rel, const std::string& content) {
        write_text_file(out_dir / rel, content);
        written.push_back(rel);
    };

    std::ostringstream md;
    md << "# Personality-class feature report\n\n";
    md << "Seed: " << analysis.seed << "\n\n";

    if (analysis.readability) {
        const auto& t = *analysis.readability;
        const auto tab = readability_csv(t);
        emit("tables/readability.csv", tab.csv());
        emit("tables/readability_flags.csv", readability_flags(t).csv());
        emit("plots/readability.json",
             class_series_plot("Average readability per class", ReadabilityScores::kNames, t.means, t.users).dump(2) +
                 "\n");
        Table shown = tab;
        for (std::size_t k = 0; k < kNumClasses; ++k) {
            for (std::size_t m = 0; m < ReadabilityScores::kSize; ++m) {
                auto& cell = shown.rows[k][m + 2];
                if (t.min_class[m] == k) cell = "**" + cell + "** (min)";
                else if (t.max_class[m] == k) cell = "**" + cell + "** (max)";
            }
        }
        md << "## Readability\n\nPer-class mean of per-user averaged scores. Column minimum and maximum are bold; "
              "ties go to the earlier class.\n\n"
           << shown.markdown() << '\n';
    }
    if (analysis.empath) {
        const auto tab = empath_csv(*analysis.empath);
        emit("tables/empath.csv", tab.csv());
        md << "## Most distinct lexical categories\n\nDistinctiveness = mean score in class / mean score outside "
              "the class.\n\n"
           << tab.markdown() << '\n';
    }
    if (analysis.professions) {
        const auto tab = professions_csv(*analysis.professions);
        emit("tables/professions.csv", tab.csv());
        md << "## Most distinct description tokens\n\nP(class | token) over users whose description contains the "
              "token; minimum support "
           << analysis.professions->min_support << " users.\n\n"
           << tab.markdown() << '\n';
    }
    if (analysis.metadata) {
        const auto& s = *analysis.metadata;
        const auto tab = metadata_csv(s);
        emit("tables/metadata.csv", tab.csv());
        emit("plots/metadata.json",
             class_series_plot("Mean profile counts per class", ProfileCounts::kFieldNames, s.means, s.users).dump(2) +
                 "\n");
        md << "## Profile metadata\n\n" << tab.markdown() << '\n';
    }
    if (ablation && !ablation->rows.empty()) {
        emit("tables/ablation.csv", ablation_table(*ablation).csv());
        emit("tables/ablation_grid.csv", ablation_grid(*ablation).csv());
        md << "## Ablation\n\nMacro-F1 and accuracy in percent on the held-out split (seed " << ablation->seed
           << ").\n\n"
           << ablation_grid(*ablation).markdown() << '\n';
    }
    emit("report.md", md.str());
    return written;
}

}  // namespace pf
