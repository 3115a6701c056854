#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "multifact/errors.hpp"
#include "multifact/records.hpp"
#include "multifact/scoring.hpp"
#include "multifact/tokenize.hpp"
#include "multifact/topic.hpp"
#include "test_util.hpp"

using namespace multifact;

namespace {
Verdict verdict(VerdictLabel label) {
    Verdict v;
    v.label = label;
    if (label == VerdictLabel::Supported) v.evidence_passage_ids = {"p0"};
    return v;
}
}  // namespace

TEST_CASE("language codes: nine accepted, others rejected") {
    CHECK(parse_language("en") == LanguageCode::en);
    CHECK(parse_language("bn") == LanguageCode::bn);
    CHECK(to_string(parse_language("zh")) == "zh");
    CHECK_THROWS_AS(parse_language("ja"), Error);
    CHECK_THROWS_AS(parse_language(""), Error);
    CHECK_THROWS_AS(parse_language("EN"), Error);
}

TEST_CASE("factscore: ratio, identity, empty") {
    std::vector<Verdict> v;
    for (int i = 0; i < 3; ++i) v.push_back(verdict(VerdictLabel::Supported));
    for (int i = 0; i < 2; ++i) v.push_back(verdict(VerdictLabel::NotSupported));
    CHECK(factscore(v) == doctest::Approx(0.6).epsilon(1e-12));

    std::vector<Verdict> all(4, verdict(VerdictLabel::Supported));
    CHECK(factscore(all) == 1.0);

    CHECK_THROWS_AS(factscore(std::vector<Verdict>{}), EmptyFactList);
}

TEST_CASE("fact_counts: empty, mixed, uniform") {
    CHECK(fact_counts(std::vector<Verdict>{}) == std::pair{0, 0});

    std::vector<Verdict> mixed{verdict(VerdictLabel::Supported),
                               verdict(VerdictLabel::NotSupported),
                               verdict(VerdictLabel::NotSupported)};
    CHECK(fact_counts(mixed) == std::pair{1, 2});

    std::vector<Verdict> uniform(10, verdict(VerdictLabel::Supported));
    CHECK(fact_counts(uniform) == std::pair{10, 0});
}

TEST_CASE("factscore equals integer-ratio oracle on random lists") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + static_cast<int>(rng() % 200);
        std::vector<Verdict> v;
        int supported = 0;
        for (int i = 0; i < n; ++i) {
            bool s = rng() % 2 == 0;
            supported += s;
            v.push_back(verdict(s ? VerdictLabel::Supported : VerdictLabel::NotSupported));
        }
        CHECK(factscore(v) == static_cast<double>(supported) / n);
        auto [c, h] = fact_counts(v);
        CHECK(c == supported);
        CHECK(c + h == n);

        // permutation invariance
        std::shuffle(v.begin(), v.end(), rng);
        CHECK(factscore(v) == static_cast<double>(supported) / n);
    }
}

TEST_CASE("appending a verdict moves the score in the right direction") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng() % 50);
        std::vector<Verdict> v;
        for (int i = 0; i < n; ++i) {
            v.push_back(verdict(rng() % 2 ? VerdictLabel::Supported : VerdictLabel::NotSupported));
        }
        double before = factscore(v);
        auto plus = v;
        plus.push_back(verdict(VerdictLabel::Supported));
        if (before < 1.0) CHECK(factscore(plus) > before);
        auto minus = v;
        minus.push_back(verdict(VerdictLabel::NotSupported));
        if (before > 0.0) CHECK(factscore(minus) < before);
    }
}

TEST_CASE("bundled roster: 80 rows, unique ids, full language coverage") {
    auto roster = load_roster(test_util::data_dir() + "/roster.jsonl");
    REQUIRE(roster.size() == 80);

    std::set<std::string> ids;
    std::map<Continent, int> per_continent;
    for (const Topic& t : roster) {
        ids.insert(t.id);
        ++per_continent[t.geo.continent];
        CHECK(t.name_by_language.size() == 9);
        CHECK(!t.wikipedia_title.empty());
    }
    CHECK(ids.size() == 80);
    for (auto [continent, n] : per_continent) CHECK(n == 20);

    // Australia and New Zealand carry subregion "Oceania" under America.
    for (const Topic& t : roster) {
        if (t.country == "Australia" || t.country == "New Zealand") {
            CHECK(t.geo.continent == Continent::America);
            CHECK(t.geo.subregion == "Oceania");
        }
    }
}

TEST_CASE("roster parsing rejects bad rows") {
    CHECK_THROWS_AS(parse_roster_jsonl(R"({"id":"x"})"), std::exception);

    auto roster = load_roster(test_util::data_dir() + "/roster.jsonl");
    std::string dup = topic_to_json_line(roster[0]) + "\n" + topic_to_json_line(roster[0]) + "\n";
    CHECK_THROWS_AS(parse_roster_jsonl(dup), Error);
}

TEST_CASE("topic JSONL round-trips") {
    auto roster = load_roster(test_util::data_dir() + "/roster.jsonl");
    std::string body;
    for (const Topic& t : roster) body += topic_to_json_line(t) + "\n";
    auto reparsed = parse_roster_jsonl(body);
    REQUIRE(reparsed.size() == roster.size());
    for (std::size_t i = 0; i < roster.size(); ++i) {
        CHECK(reparsed[i].id == roster[i].id);
        CHECK(reparsed[i].geo == roster[i].geo);
        CHECK(reparsed[i].name_by_language == roster[i].name_by_language);
    }
}

TEST_CASE("evaluation lines: undefined score round-trips as null") {
    BiographyEvaluation e;
    e.topic_id = "united-states";
    e.language = LanguageCode::ko;
    e.refusal = true;
    std::string line = evaluation_to_json_line(e);
    CHECK(line.find("\"score\":null") != std::string::npos);
    auto back = evaluation_from_json_line(line);
    CHECK(!back.score.has_value());
    CHECK(back.refusal);
    CHECK(back.n_facts() == 0);
}

TEST_CASE("tokenize: lowercasing and punctuation stripping") {
    CHECK(tokenize("Obama, was President!") ==
          std::vector<std::string>{"obama", "was", "president"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("  a  b  ") == std::vector<std::string>{"a", "b"});
    // non-ASCII bytes pass through
    CHECK(tokenize("Côte d'Ivoire") == std::vector<std::string>{"côte", "d", "ivoire"});
}

TEST_CASE("content_tokens drops stopwords") {
    auto toks = content_tokens("The leader was born in the city.");
    CHECK(toks == std::vector<std::string>{"leader", "born", "city"});
}
