#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "pf/ablation.hpp"
#include "pf/error.hpp"
#include "pf/rng.hpp"
#include "synth_fixture.hpp"

namespace {

const pf::testing::SynthFeatures& fixture() {
    static const pf::testing::SynthFeatures fx(24);
    return fx;
}

pf::ClassifierParams small_params() {
    pf::ClassifierParams p;
    p.forest.n_trees = 15;
    p.gbdt.rounds = 10;
    return p;
}

}  // namespace

TEST_CASE("classifier names and cell seeds") {
    CHECK(pf::classifier_name(pf::ClassifierKind::Rfc) == "rfc");
    CHECK(pf::classifier_name(pf::ClassifierKind::Gbdt) == "gbdt");
    CHECK(pf::parse_classifier("gbdt") == pf::ClassifierKind::Gbdt);
    CHECK_THROWS_AS(pf::parse_classifier("svm"), pf::ConfigError);
    CHECK(pf::cell_seed(5, pf::ClassifierKind::Rfc) == pf::mix_seed(5, pf::stream_id("rfc")));
    CHECK(pf::cell_seed(5, pf::ClassifierKind::Rfc) != pf::cell_seed(5, pf::ClassifierKind::Gbdt));
}

TEST_CASE("a 1x1 ablation equals a direct train and evaluate") {
    const auto& fx = fixture();
    const pf::AblationInputs in{fx.train, fx.test, {fx.artifacts()}};
    const std::vector<pf::AblationConfig> configs = {pf::find_preset("wo-counts")};
    const std::vector<pf::ClassifierKind> kinds = {pf::ClassifierKind::Gbdt};
    const auto report = pf::run_ablation(in, configs, kinds, small_params(), 9);
    REQUIRE(report.rows.size() == 1);

    const auto train = pf::build_dataset(fx.train, fx.artifacts(), configs[0], 1);
    const auto test = pf::build_dataset(fx.test, fx.artifacts(), configs[0], 1);
    const auto clf = pf::Classifier::train(pf::ClassifierKind::Gbdt, train, small_params(),
                                           pf::cell_seed(9, pf::ClassifierKind::Gbdt));
    const auto direct = pf::evaluate(clf.predict(test), test.labels);
    const auto& row = report.rows[0];
    CHECK(row.metrics.macro_f1 == direct.macro_f1);
    CHECK(row.metrics.accuracy == direct.accuracy);
    CHECK(row.metrics.confusion == direct.confusion);
    CHECK(row.n_features == train.cols);
    CHECK(row.n_train == fx.train.size());
    CHECK(row.n_test == fx.test.size());
    CHECK(row.config == "wo-counts");
    CHECK(row.classifier == "gbdt");
    CHECK(row.encoder == "native");
}

TEST_CASE("9 configs x 2 classifiers give 18 rows and a matching CSV") {
    const auto& fx = fixture();
    const pf::AblationInputs in{fx.train, fx.test, {fx.artifacts()}};
    const std::vector<pf::ClassifierKind> kinds = {pf::ClassifierKind::Rfc, pf::ClassifierKind::Gbdt};
    std::size_t sunk = 0;
    const auto report = pf::run_ablation(in, pf::ablation_presets(), kinds, small_params(), 3, 2,
                                         [&](const pf::AblationRow&, const pf::Classifier&) { ++sunk; });
    REQUIRE(report.rows.size() == 18);
    CHECK(sunk == 18);
    for (const auto& r : report.rows) {
        REQUIRE(r.metrics.macro_f1 >= 0.0);
        REQUIRE(r.metrics.macro_f1 <= 1.0);
    }

    const auto csv = pf::ablation_csv(report);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "encoder,classifier,config,f1,accuracy");
    std::size_t i = 0;
    while (std::getline(lines, line)) {
        const auto& r = report.rows[i++];
        char f1[32], acc[32];
        std::snprintf(f1, sizeof f1, "%.4f", r.metrics.macro_f1);
        std::snprintf(acc, sizeof acc, "%.4f", r.metrics.accuracy);
        REQUIRE(line == r.encoder + "," + r.classifier + "," + r.config + "," + f1 + "," + acc);
    }
    CHECK(i == 18);

    const auto again = pf::run_ablation(in, pf::ablation_presets(), kinds, small_params(), 3, 1);
    CHECK(pf::ablation_csv(again) == csv);
    const auto back = pf::AblationReport::from_json(report.to_json());
    CHECK(pf::ablation_csv(back) == csv);
}

TEST_CASE("training failures name the failing cell") {
    const auto& fx = fixture();
    std::vector<pf::UserFeatures> one_class;
    for (const auto& u : fx.train) {
        if (u.personality == pf::PersonalityClass::Explorer) one_class.push_back(u);
    }
    const pf::AblationInputs in{one_class, fx.test, {fx.artifacts()}};
    const std::vector<pf::AblationConfig> configs = {pf::find_preset("only-tweets")};
    const std::vector<pf::ClassifierKind> kinds = {pf::ClassifierKind::Rfc};
    try {
        pf::run_ablation(in, configs, kinds, small_params(), 1);
        FAIL("expected a validation error");
    } catch (const pf::ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("native/only-tweets/rfc") != std::string::npos);
    }
}

TEST_CASE("users an external encoder does not cover are dropped and counted") {
    const auto& fx = fixture();
    pf::EncodingMap tweets, desc;
    pf::Rng rng(2);
    for (std::size_t i = 0; i < fx.train.size(); ++i) {
        if (i % 5 == 0) continue;
        tweets[fx.train[i].user_id] = {rng.normal(), rng.normal(), rng.normal()};
        desc[fx.train[i].user_id] = {rng.normal(), rng.normal(), rng.normal()};
    }
    for (const auto& u : fx.test) {
        tweets[u.user_id] = {0.0, 0.0, 0.0};
        desc[u.user_id] = {0.0, 0.0, 0.0};
    }
    auto art = fx.artifacts();
    art.encoder = {"ext", &tweets, &desc};
    std::size_t dropped = 0;
    const auto d = pf::build_dataset(fx.train, art, pf::find_preset("all"), 1, &dropped);
    const std::size_t expected_drop = (fx.train.size() + 4) / 5;
    CHECK(dropped == expected_drop);
    CHECK(d.rows == fx.train.size() - expected_drop);
    CHECK(d.cols == 6 + 400);

    const pf::AblationInputs in{fx.train, fx.test, {fx.artifacts(), art}};
    const std::vector<pf::AblationConfig> configs = {pf::find_preset("only-tweets")};
    const std::vector<pf::ClassifierKind> kinds = {pf::ClassifierKind::Rfc};
    const auto report = pf::run_ablation(in, configs, kinds, small_params(), 1);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.dropped_train.at("ext") == expected_drop);
    CHECK(report.dropped_test.at("ext") == 0);
    CHECK(report.dropped_train.at("native") == 0);
    CHECK(report.rows[1].encoder == "ext");
    CHECK(report.rows[1].n_features == 3);
}

TEST_CASE("classifier serialization dispatches on format") {
    const auto& fx = fixture();
    const auto d = pf::build_dataset(fx.train, fx.artifacts(), pf::find_preset("only-tweets"), 1);
    for (auto kind : {pf::ClassifierKind::Rfc, pf::ClassifierKind::Gbdt}) {
        const auto c = pf::Classifier::train(kind, d, small_params(), 4);
        const auto back = pf::Classifier::from_json(c.to_json());
        CHECK(back.kind() == kind);
        CHECK(back.predict(d) == c.predict(d));
    }
    CHECK_THROWS(pf::Classifier::from_json(nlohmann::json{{"format", "pf.svm"}}));
}
