#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "multifact/analytics/reports.hpp"
#include "multifact/errors.hpp"
#include "multifact/kb/document.hpp"
#include "multifact/pipeline/config.hpp"
#include "multifact/pipeline/runner.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace multifact;

namespace {

int cmd_kb_fetch(const std::string& roster_path, const std::string& cache_dir,
                 const std::string& source) {
    if (!fs::exists(roster_path)) {
        std::cerr << "error: roster file not found: " << roster_path << "\n";
        return 2;
    }
    auto roster = load_roster(roster_path);
    std::shared_ptr<kb::ArticleFetcher> inner;
    if (source == "synthetic") {
        inner = std::make_shared<kb::SyntheticFetcher>();
    } else {
        inner = std::make_shared<kb::WikipediaFetcher>();
    }
    kb::CachingFetcher fetcher(cache_dir, inner);

    int failures = 0;
    for (const Topic& topic : roster) {
        bool cached = fetcher.is_cached(topic.wikipedia_title);
        try {
            fetcher.fetch(topic.wikipedia_title);
            std::cout << (cached ? "cached " : "fetched") << "  " << topic.wikipedia_title << "\n";
        } catch (const std::exception& e) {
            std::cout << "FAILED   " << topic.wikipedia_title << ": " << e.what() << "\n";
            ++failures;
        }
    }
    std::cout << roster.size() - failures << "/" << roster.size() << " articles cached\n";
    return failures == 0 ? 0 : 1;
}

int cmd_run(const std::string& config_path, std::string run_dir, const std::string& resume_dir,
            const std::vector<std::string>& languages, const std::vector<std::string>& topics,
            int max_units, bool json_progress) {
    if (!fs::exists(config_path)) {
        std::cerr << "error: config file not found: " << config_path << "\n";
        return 2;
    }
    pipeline::RunConfig config;
    try {
        config = pipeline::RunConfig::load(config_path);
        if (!languages.empty()) {
            config.run.languages.clear();
            for (const auto& code : languages) config.run.languages.push_back(parse_language(code));
        }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    if (!resume_dir.empty()) run_dir = resume_dir;
    if (run_dir.empty()) {
        std::cerr << "error: --run-dir (or --resume) is required\n";
        return 2;
    }

    auto roster = load_roster(config.paths.roster);

    pipeline::RunOptions options;
    options.topic_filter = topics;
    options.max_units = max_units;
    options.on_unit = [&](const std::string& topic_id, LanguageCode lang, bool ok) {
        if (json_progress) {
            std::cout << json{{"topic_id", topic_id}, {"language", to_string(lang)}, {"ok", ok}}
                             .dump()
                      << "\n";
        } else {
            std::cout << (ok ? "done " : "FAIL ") << topic_id << "/" << to_string(lang) << "\n";
        }
    };

    pipeline::RunSummary summary;
    try {
        summary = pipeline::run_evaluation(roster, config, run_dir, options);
    } catch (const ConfigDrift& e) {
        std::cerr << "refusing to resume: " << e.what() << "\n";
        return 2;
    }

    std::cout << "completed " << summary.units_completed << ", skipped " << summary.units_skipped
              << ", failed " << summary.units_failed << " of " << summary.units_total
              << " units\n";

    // Per-language score summary over what the run directory now holds.
    auto data = analytics::EvalSet::load((fs::path(run_dir) / "evaluations.jsonl").string(),
                                         (fs::path(run_dir) / "roster.jsonl").string());
    for (const auto& [lang, s] : analytics::language_summary(data)) {
        std::cout << to_string(lang) << ": mean " << s.score.mean << " +/- " << s.score.std
                  << " over " << s.score.n << " biographies (" << s.excluded_n << " unscored)\n";
    }
    return summary.units_failed == 0 ? 0 : 1;
}

int cmd_report(const std::string& run_dir, const std::string& out_dir, int k) {
    fs::path evals = fs::path(run_dir) / "evaluations.jsonl";
    fs::path roster = fs::path(run_dir) / "roster.jsonl";
    fs::path manifest = fs::path(run_dir) / "manifest.json";
    if (!fs::exists(evals) || !fs::exists(roster)) {
        std::cerr << "error: " << run_dir << " is not a run directory (missing evaluations.jsonl"
                  << " or roster.jsonl)\n";
        return 2;
    }
    std::string manifest_hash = "unknown";
    if (fs::exists(manifest)) {
        std::ifstream in(manifest, std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        manifest_hash = json::parse(body.str()).value("config_hash", "unknown");
    }
    auto data = analytics::EvalSet::load(evals.string(), roster.string());
    std::vector<std::string> report_errors;
    analytics::write_reports(data, out_dir, manifest_hash, k, &report_errors);
    for (const auto& msg : report_errors) std::cerr << "note: " << msg << "\n";
    std::cout << "reports written to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multifact: multilingual biography factuality evaluation"};
    app.require_subcommand(1);

    auto* kb_cmd = app.add_subcommand("kb", "knowledge-base management");
    auto* kb_fetch = kb_cmd->add_subcommand("fetch", "fetch and cache all roster articles");
    std::string roster_path, cache_dir = "kb_cache", kb_source = "wikipedia";
    kb_fetch->add_option("--roster", roster_path, "roster JSONL file")->required();
    kb_fetch->add_option("--cache-dir", cache_dir, "article cache directory");
    kb_fetch->add_option("--source", kb_source, "wikipedia|synthetic")
        ->check(CLI::IsMember({"wikipedia", "synthetic"}));

    auto* run_cmd = app.add_subcommand("run", "evaluate the (topic x language) grid");
    std::string config_path, run_dir, resume_dir;
    std::vector<std::string> languages, topics;
    int max_units = 0;
    bool json_progress = false;
    run_cmd->add_option("--config", config_path, "run config JSON file")->required();
    run_cmd->add_option("--run-dir", run_dir, "output run directory");
    run_cmd->add_option("--resume", resume_dir, "existing run directory to resume");
    run_cmd->add_option("--languages", languages, "subset of language codes");
    run_cmd->add_option("--topics", topics, "subset of topic ids");
    run_cmd->add_option("--max-units", max_units, "stop after N completed units");
    run_cmd->add_flag("--json", json_progress, "machine-readable progress lines");

    auto* report_cmd = app.add_subcommand("report", "write analytics reports for a run");
    std::string report_run, report_out;
    int top_k = 20;
    report_cmd->add_option("--run", report_run, "run directory")->required();
    report_cmd->add_option("--out", report_out, "output directory")->required();
    report_cmd->add_option("--k", top_k, "top-K for the continental distribution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (kb_fetch->parsed()) return cmd_kb_fetch(roster_path, cache_dir, kb_source);
        if (run_cmd->parsed()) {
            return cmd_run(config_path, run_dir, resume_dir, languages, topics, max_units,
                           json_progress);
        }
        if (report_cmd->parsed()) return cmd_report(report_run, report_out, top_k);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
