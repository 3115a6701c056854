// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via ctest or directly: ./multifact_acceptance

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "multifact/analytics/reports.hpp"
#include "multifact/errors.hpp"
#include "multifact/kb/index.hpp"
#include "multifact/mock_corpus.hpp"
#include "multifact/pipeline/runner.hpp"
#include "multifact/pipeline/stages.hpp"
#include "multifact/scoring.hpp"
#include "multifact/tokenize.hpp"
#include "test_util.hpp"

using namespace multifact;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++g_failures;
}

void skip(int number, const std::string& name, const std::string& why) {
    std::cout << "[SKIP] criterion " << number << ": " << name << " (" << why << ")" << std::endl;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// ---- criterion 1: scoring oracle ------------------------------------------

void criterion_scoring_oracle() {
    Timer timer;
    std::mt19937 rng(2024);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        int n = 1 + static_cast<int>(rng() % 200);
        std::vector<Verdict> verdicts(n);
        long supported = 0;
        for (Verdict& v : verdicts) {
            bool s = rng() % 3 != 0;
            v.label = s ? VerdictLabel::Supported : VerdictLabel::NotSupported;
            supported += s;
        }
        // integer-ratio oracle: exact division of the two counts
        double oracle = static_cast<double>(supported) / static_cast<double>(n);
        if (factscore(verdicts) != oracle) {
            ok = false;
            detail = "mismatch at trial " + std::to_string(trial);
        }
    }
    try {
        factscore(std::vector<Verdict>{});
        ok = false;
        detail = "empty list did not raise";
    } catch (const EmptyFactList&) {
    }
    double elapsed = timer.seconds();
    if (elapsed >= 1.0) {
        ok = false;
        detail = "runtime " + std::to_string(elapsed) + "s >= 1s";
    }
    report(1, "scoring oracle", ok, detail);
}

// ---- criterion 2: retrieval oracle ----------------------------------------

double reference_bm25(const std::vector<std::string>& query, const kb::Passage& p,
                      const kb::CorpusStats& stats) {
    auto tokens = tokenize(p.text);
    double score = 0.0;
    for (const auto& term : query) {
        double tf = std::count(tokens.begin(), tokens.end(), term);
        if (tf == 0) continue;
        auto it = stats.document_frequency.find(term);
        double df = it == stats.document_frequency.end() ? 0 : it->second;
        double idf = std::log((stats.n_passages - df + 0.5) / (df + 0.5) + 1.0);
        score += idf * tf * (1.2 + 1.0) /
                 (tf + 1.2 * (1.0 - 0.75 + 0.75 * tokens.size() / stats.avg_passage_length));
    }
    return score;
}

void criterion_retrieval_oracle() {
    Timer timer;
    std::mt19937 rng(7);
    std::vector<std::string> vocab;
    for (int i = 0; i < 120; ++i) vocab.push_back("w" + std::to_string(i));

    bool ok = true;
    std::string detail;
    for (int corpus = 0; corpus < 50 && ok; ++corpus) {
        int n_passages = 10 + static_cast<int>(rng() % 991);  // up to 1000
        std::vector<kb::Passage> passages;
        for (int i = 0; i < n_passages; ++i) {
            int len = 3 + static_cast<int>(rng() % 40);
            std::string text;
            for (int t = 0; t < len; ++t) {
                if (!text.empty()) text.push_back(' ');
                text += vocab[rng() % vocab.size()];
            }
            passages.push_back({{"C", i}, text, len});
        }
        auto index = kb::RetrievalIndex::build(passages);

        for (int q = 0; q < 20 && ok; ++q) {
            int n_terms = 1 + static_cast<int>(rng() % 4);
            std::string query;
            for (int t = 0; t < n_terms; ++t) {
                if (!query.empty()) query.push_back(' ');
                query += vocab[rng() % vocab.size()];
            }
            int k = 1 + static_cast<int>(rng() % 20);

            auto got = index.retrieve(query, k);

            auto terms = tokenize(query);
            std::vector<std::pair<kb::PassageId, double>> expected;
            for (const kb::Passage& p : index.passages()) {
                expected.emplace_back(p.id, reference_bm25(terms, p, index.stats()));
            }
            std::stable_sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
            });
            expected.resize(std::min<std::size_t>(k, expected.size()));

            if (got.size() != expected.size()) {
                ok = false;
                detail = "size mismatch";
                break;
            }
            for (std::size_t i = 0; i < got.size(); ++i) {
                if (got[i].first != expected[i].first ||
                    std::abs(got[i].second - expected[i].second) >= 1e-9) {
                    ok = false;
                    detail = "corpus " + std::to_string(corpus) + " query " + std::to_string(q);
                    break;
                }
            }
        }
    }
    double elapsed = timer.seconds();
    if (ok && elapsed >= 30.0) {
        ok = false;
        detail = "runtime " + std::to_string(elapsed) + "s >= 30s";
    }
    report(2, "retrieval oracle", ok, detail);
}

// ---- criteria 3 & 4: mock end-to-end closure and resumability --------------

void criterion_mock_closure_and_resume() {
    Timer timer;
    auto roster = test_util::tiny_roster();
    const int t = 3, f = 2;
    bool closure_ok = true, determinism_ok = true;
    std::string detail;

    std::map<std::string, std::string> first_bodies;
    std::string reference_evals;
    for (int run = 0; run < 2; ++run) {
        test_util::TempDir dir;
        auto config = test_util::mock_config(dir, t, f);
        std::string run_dir = dir.sub("run");
        auto summary = pipeline::run_evaluation(roster, config, run_dir);
        if (summary.units_completed != 12 || summary.units_failed != 0) {
            closure_ok = false;
            detail = "grid did not complete";
        }
        std::istringstream evals(test_util::read_file(run_dir + "/evaluations.jsonl"));
        std::string line;
        int rows = 0;
        while (std::getline(evals, line)) {
            if (line.empty()) continue;
            ++rows;
            auto e = evaluation_from_json_line(line);
            if (!e.score || *e.score != static_cast<double>(t) / (t + f) ||
                e.n_correct != t || e.n_hallucinated != f) {
                closure_ok = false;
                detail = "score != t/(t+f) for " + e.topic_id;
            }
        }
        if (rows != 12) closure_ok = false;

        for (const char* file : {"generations.jsonl", "translations.jsonl", "facts.jsonl",
                                 "verdicts.jsonl", "evaluations.jsonl"}) {
            auto body = test_util::strip_created_at(test_util::read_file(run_dir + "/" + file));
            if (run == 0) {
                first_bodies[file] = body;
            } else if (first_bodies[file] != body) {
                determinism_ok = false;
                detail = std::string("nondeterministic ") + file;
            }
        }
        if (run == 0) reference_evals = test_util::read_file(run_dir + "/evaluations.jsonl");
    }
    double elapsed = timer.seconds();
    if (elapsed >= 10.0) {
        closure_ok = false;
        detail = "runtime " + std::to_string(elapsed) + "s >= 10s";
    }
    report(3, "mock end-to-end closure and whole-run determinism", closure_ok && determinism_ok,
           detail);

    // criterion 4: stop at 50% of units, resume, compare to uninterrupted
    test_util::TempDir dir;
    auto config = test_util::mock_config(dir, t, f);
    std::string run_dir = dir.sub("run");
    pipeline::RunOptions half;
    half.max_units = 6;
    auto first = pipeline::run_evaluation(roster, config, run_dir, half);
    auto second = pipeline::run_evaluation(roster, config, run_dir);
    bool resume_ok = first.units_completed == 6 && second.units_completed == 6 &&
                     second.units_skipped == 6 &&
                     test_util::read_file(run_dir + "/evaluations.jsonl") == reference_evals;
    report(4, "resumability", resume_ok);
}

// ---- criterion 5: analytics fixtures vs arithmetic oracles -----------------

void criterion_analytics_fixtures() {
    analytics::EvalSet data;
    data.roster = load_roster(test_util::data_dir() + "/roster.jsonl");
    std::mt19937 rng(99);
    // hand-set (deterministic) scores for all 80 countries in two languages
    std::map<std::string, double> en_scores, de_scores;
    for (const Topic& t : data.roster) {
        double en = (rng() % 100) / 99.0;
        double de = (rng() % 100) / 99.0;
        en_scores[t.id] = en;
        de_scores[t.id] = de;
        BiographyEvaluation e1;
        e1.topic_id = t.id;
        e1.language = LanguageCode::en;
        e1.score = en;
        e1.n_correct = 1;
        e1.n_hallucinated = 1;
        data.evals.push_back(e1);
        e1.language = LanguageCode::de;
        e1.score = de;
        data.evals.push_back(e1);
    }

    bool ok = true;
    std::string detail;

    // continent table oracle: plain per-continent arithmetic means
    auto table = analytics::continent_table(data);
    std::map<Continent, std::vector<double>> grouped;
    for (const Topic& t : data.roster) grouped[t.geo.continent].push_back(en_scores[t.id]);
    for (const auto& [continent, scores] : grouped) {
        double sum = 0;
        for (double s : scores) sum += s;
        double mean = sum / scores.size();
        if (std::abs(table.by_continent[LanguageCode::en][continent].mean - mean) >= 1e-9) {
            ok = false;
            detail = "continent mean mismatch";
        }
    }

    // top-20 oracle: sort, count; counts must partition 20
    auto counts = analytics::topk_continent_distribution(data, LanguageCode::en, 20);
    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& [id, s] : en_scores) ranked.emplace_back(s, id);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::map<Continent, int> expected_counts;
    for (int i = 0; i < 20; ++i) {
        for (const Topic& t : data.roster) {
            if (t.id == ranked[i].second) ++expected_counts[t.geo.continent];
        }
    }
    int total = 0;
    for (const auto& [c, n] : counts) total += n;
    if (total != 20 || counts != expected_counts) {
        ok = false;
        detail = "top-20 distribution mismatch";
    }

    // singleton-subregion exclusion
    auto breakdown = analytics::subregion_breakdown(data, LanguageCode::en);
    if (breakdown.contains("Southern Africa") || breakdown.contains("Central Asia")) {
        ok = false;
        detail = "singleton subregion not excluded";
    }

    // correlation oracle from the covariance definition
    auto matrix = analytics::correlation_matrix(data);
    {
        double n = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        for (const Topic& t : data.roster) {
            double x = en_scores[t.id], y = de_scores[t.id];
            n += 1;
            sx += x;
            sy += y;
            sxx += x * x;
            syy += y * y;
            sxy += x * y;
        }
        double r = (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
        auto cell = matrix[LanguageCode::en][LanguageCode::de];
        if (!cell.r || std::abs(*cell.r - r) >= 1e-9) {
            ok = false;
            detail = "pearson mismatch";
        }
    }
    report(5, "analytics fixtures vs arithmetic oracles", ok, detail);
}

// ---- criterion 6: correlation properties -----------------------------------

void criterion_correlation_properties() {
    analytics::EvalSet data;
    data.roster = load_roster(test_util::data_dir() + "/roster.jsonl");
    // Dyadic scores arranged in pairs summing to 1 keep every mean and
    // deviation exact, so colinear pairs come out at exactly +/-1.0.
    int i = 0;
    for (const Topic& t : data.roster) {
        double base = static_cast<double>((i / 2) % 64) / 128.0;
        double x = (i % 2 == 0) ? base : 1.0 - base;
        ++i;
        for (LanguageCode lang : kAllLanguages) {
            BiographyEvaluation e;
            e.topic_id = t.id;
            e.language = lang;
            e.score = (lang == LanguageCode::fr) ? 1.0 - x : x;
            e.n_correct = 1;
            e.n_hallucinated = 1;
            data.evals.push_back(e);
        }
    }
    auto m = analytics::correlation_matrix(data);
    bool ok = true;
    std::string detail;
    for (LanguageCode a : kAllLanguages) {
        if (!m[a][a].r || *m[a][a].r != 1.0) {
            ok = false;
            detail = "diagonal != 1";
        }
        for (LanguageCode b : kAllLanguages) {
            if (a == b) continue;
            if (!m[a][b].r || !m[b][a].r || std::abs(*m[a][b].r - *m[b][a].r) > 1e-12) {
                ok = false;
                detail = "asymmetric";
            }
            double expected = ((a == LanguageCode::fr) != (b == LanguageCode::fr)) ? -1.0 : 1.0;
            if (*m[a][b].r != expected) {
                ok = false;
                detail = "colinear pair not exactly +/-1";
            }
        }
    }
    report(6, "correlation properties", ok, detail);
}

// ---- criterion 7: verification gate ----------------------------------------

void criterion_verification_gate() {
    test_util::TempDir dir;
    auto config = test_util::mock_config(dir);
    auto templates = llm::TemplateRegistry::load(config.paths.templates);
    llm::Gateway gateway(config.paths.response_cache, &templates);
    auto inner = std::make_shared<kb::SyntheticFetcher>();
    kb::CachingFetcher fetcher(config.knowledge.cache_dir, inner);
    pipeline::StageContext ctx{&config, &templates, &gateway, &fetcher};

    auto doc = fetcher.fetch("Gate Check");
    auto index = kb::RetrievalIndex::build(
        kb::chunk_document(doc, config.knowledge.window, config.knowledge.stride));

    bool ok = true;
    std::string detail;

    // fact with lexical overlap exactly 0.2: one of five content tokens hits.
    // "leader" appears in the article; the other four content words do not.
    AtomicFact low{0, "Leader sculpted quartz violins underground.", 0};
    config.verification.npm_threshold = 0.3;
    config.verification.ensemble = "judge_and_lexical";
    auto v1 = pipeline::verify_fact(low, index, ctx);
    if (std::abs(v1.lexical_score - 0.2) > 1e-12) {
        ok = false;
        detail = "overlap fixture is " + std::to_string(v1.lexical_score) + ", wanted 0.2";
    }
    if (v1.label != VerdictLabel::NotSupported) {
        ok = false;
        detail = "0.2 overlap passed the 0.3 gate";
    }

    // threshold 0.0 reduces the label to the judge decision
    config.verification.npm_threshold = 0.0;
    auto v2 = pipeline::verify_fact(low, index, ctx);
    if ((v2.label == VerdictLabel::Supported) != (v2.judge_score == 1.0)) {
        ok = false;
        detail = "threshold 0 did not defer to judge";
    }
    AtomicFact verbatim{1, mock_corpus::true_claim(0), 0};
    auto v3 = pipeline::verify_fact(verbatim, index, ctx);
    if (v3.label != VerdictLabel::Supported || v3.judge_score != 1.0) {
        ok = false;
        detail = "verbatim fact not supported at threshold 0";
    }
    report(7, "verification gate", ok, detail);
}

// ---- criterion 8: score_set_error ------------------------------------------

void criterion_score_set_error() {
    std::map<std::string, double> a;
    std::mt19937 rng(17);
    for (int i = 0; i < 40; ++i) a["id" + std::to_string(i)] = (rng() % 1000) / 999.0;
    auto [mean, std] = analytics::score_set_error(a, a);
    bool ok = mean == 0.0 && std == 0.0;
    // Documented live-replication reference: error -0.011 +/- 0.129 against
    // human annotation; informational only, not asserted here.
    report(8, "score_set_error identity", ok);
}

// ---- criterion 9: optional live smoke --------------------------------------

void criterion_live_smoke() {
    if (!std::getenv("MULTIFACT_LIVE_SMOKE")) {
        skip(9, "live smoke", "set MULTIFACT_LIVE_SMOKE=1 with backend credentials to enable");
        return;
    }
    const char* config_path = std::getenv("MULTIFACT_LIVE_CONFIG");
    if (!config_path) {
        report(9, "live smoke", false, "MULTIFACT_LIVE_CONFIG not set");
        return;
    }
    try {
        auto config = pipeline::RunConfig::load(config_path);
        config.run.languages = {LanguageCode::en, LanguageCode::ko};
        auto roster = load_roster(config.paths.roster);
        test_util::TempDir dir;
        pipeline::RunOptions options;
        options.topic_filter = {"united-states", "south-korea"};
        auto summary = pipeline::run_evaluation(roster, config, dir.sub("live"), options);

        auto data = analytics::EvalSet::load(dir.sub("live") + "/evaluations.jsonl",
                                             dir.sub("live") + "/roster.jsonl");
        auto summary_by_lang = analytics::language_summary(data);
        double en_mean = summary_by_lang.at(LanguageCode::en).score.mean;
        bool ok = summary.units_failed == 0 && en_mean >= 0.3 && en_mean <= 0.9;
        report(9, "live smoke", ok, "en mean " + std::to_string(en_mean));
    } catch (const std::exception& e) {
        report(9, "live smoke", false, e.what());
    }
}

}  // namespace

int main() {
    criterion_scoring_oracle();
    criterion_retrieval_oracle();
    criterion_mock_closure_and_resume();
    criterion_analytics_fixtures();
    criterion_correlation_properties();
    criterion_verification_gate();
    criterion_score_set_error();
    criterion_live_smoke();
    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
