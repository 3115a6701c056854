#include "multifact/pipeline/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "multifact/errors.hpp"
#include "multifact/hash.hpp"

namespace multifact::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kRunFormatVersion = 1;

std::string roster_hash(const std::vector<Topic>& roster) {
    std::string all;
    for (const Topic& t : roster) all += topic_to_json_line(t) + "\n";
    return hex64(fnv1a64(all));
}

void check_or_write_manifest(const std::string& run_dir, const RunConfig& config,
                             const std::vector<Topic>& roster,
                             const llm::TemplateRegistry& templates) {
    fs::path manifest_path = fs::path(run_dir) / "manifest.json";
    std::string config_hash = config.hash();
    if (fs::exists(manifest_path)) {
        std::ifstream in(manifest_path, std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        json j = json::parse(body.str());
        if (j.at("config_hash").get<std::string>() != config_hash) {
            throw ConfigDrift("run directory was created with a different config (manifest hash " +
                              j.at("config_hash").get<std::string>() + ", current " + config_hash +
                              ")");
        }
        return;
    }
    json j{{"format_version", kRunFormatVersion},
           {"config_hash", config_hash},
           {"roster_hash", roster_hash(roster)},
           {"template_hash", hex64(templates.content_hash())},
           {"backends",
            {{"generation", config.backends.generation.model_id},
             {"translation", config.backends.translation.model_id},
             {"decomposition", config.backends.decomposition.model_id},
             {"verification", config.backends.verification.model_id}}},
           {"created_at", std::chrono::duration_cast<std::chrono::seconds>(
                              std::chrono::system_clock::now().time_since_epoch())
                              .count()}};
    std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
    out << j.dump(2) << "\n";
}

struct RunFiles {
    std::ofstream generations, translations, facts, verdicts, evaluations, failures;
    std::mutex mutex;

    explicit RunFiles(const std::string& run_dir)
        : generations(fs::path(run_dir) / "generations.jsonl", std::ios::app),
          translations(fs::path(run_dir) / "translations.jsonl", std::ios::app),
          facts(fs::path(run_dir) / "facts.jsonl", std::ios::app),
          verdicts(fs::path(run_dir) / "verdicts.jsonl", std::ios::app),
          evaluations(fs::path(run_dir) / "evaluations.jsonl", std::ios::app),
          failures(fs::path(run_dir) / "failures.jsonl", std::ios::app) {}

    // All lines for one completed unit land together.
    void append_unit(const TopicEvaluation& r) {
        std::lock_guard lock(mutex);
        generations << generation_to_json_line(r.generation) << "\n";
        if (r.translation) translations << translation_to_json_line(*r.translation) << "\n";
        for (const AtomicFact& f : r.facts) {
            facts << fact_to_json_line(r.evaluation.topic_id, r.evaluation.language, f) << "\n";
        }
        for (const Verdict& v : r.verdicts) {
            verdicts << verdict_to_json_line(r.evaluation.topic_id, r.evaluation.language, v)
                     << "\n";
        }
        evaluations << evaluation_to_json_line(r.evaluation) << "\n";
        generations.flush();
        translations.flush();
        facts.flush();
        verdicts.flush();
        evaluations.flush();
    }

    void append_failure(const std::string& topic_id, LanguageCode lang, const std::string& what) {
        std::lock_guard lock(mutex);
        failures << json{{"topic_id", topic_id}, {"language", to_string(lang)}, {"error", what}}
                        .dump()
                 << "\n";
        failures.flush();
    }
};

}  // namespace

std::vector<std::pair<std::string, LanguageCode>> completed_units(const std::string& run_dir) {
    std::vector<std::pair<std::string, LanguageCode>> units;
    std::ifstream in(fs::path(run_dir) / "evaluations.jsonl", std::ios::binary);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        BiographyEvaluation e = evaluation_from_json_line(line);
        units.emplace_back(e.topic_id, e.language);
    }
    return units;
}

RunSummary run_evaluation(const std::vector<Topic>& roster, const RunConfig& config,
                          const std::string& run_dir, const RunOptions& options) {
    fs::create_directories(run_dir);

    llm::TemplateRegistry templates = llm::TemplateRegistry::load(config.paths.templates);
    check_or_write_manifest(run_dir, config, roster, templates);

    // Self-contained run directory: reports need the roster's geo tags.
    fs::path roster_copy = fs::path(run_dir) / "roster.jsonl";
    if (!fs::exists(roster_copy)) {
        std::ofstream out(roster_copy, std::ios::binary | std::ios::trunc);
        for (const Topic& t : roster) out << topic_to_json_line(t) << "\n";
    }

    llm::Gateway gateway(config.paths.response_cache, &templates, config.run.budget);
    std::shared_ptr<kb::ArticleFetcher> source;
    if (config.knowledge.source == "synthetic") {
        source = std::make_shared<kb::SyntheticFetcher>();
    } else {
        source = std::make_shared<kb::WikipediaFetcher>();
    }
    kb::CachingFetcher fetcher(config.knowledge.cache_dir, source);

    StageContext ctx{&config, &templates, &gateway, &fetcher};

    // Fixed grid order: roster order x configured language order.
    std::vector<std::pair<const Topic*, LanguageCode>> units;
    for (const Topic& topic : roster) {
        if (!options.topic_filter.empty() &&
            std::find(options.topic_filter.begin(), options.topic_filter.end(), topic.id) ==
                options.topic_filter.end()) {
            continue;
        }
        for (LanguageCode lang : config.run.languages) units.emplace_back(&topic, lang);
    }

    std::set<std::pair<std::string, LanguageCode>> done;
    for (auto& unit : completed_units(run_dir)) done.insert(std::move(unit));

    RunSummary summary;
    summary.units_total = static_cast<int>(units.size());

    RunFiles files(run_dir);
    std::atomic<std::size_t> next{0};
    std::atomic<int> completed{0}, skipped{0}, failed{0};
    std::atomic<bool> stop{false};

    auto worker = [&] {
        while (!stop.load()) {
            std::size_t i = next.fetch_add(1);
            if (i >= units.size()) break;
            const auto& [topic, lang] = units[i];
            if (done.contains({topic->id, lang})) {
                skipped.fetch_add(1);
                continue;
            }
            try {
                TopicEvaluation result = evaluate_topic(*topic, lang, ctx);
                files.append_unit(result);
                int n = completed.fetch_add(1) + 1;
                if (options.on_unit) options.on_unit(topic->id, lang, true);
                if (options.max_units > 0 && n >= options.max_units) stop.store(true);
            } catch (const std::exception& e) {
                files.append_failure(topic->id, lang, e.what());
                failed.fetch_add(1);
                if (options.on_unit) options.on_unit(topic->id, lang, false);
            }
        }
    };

    int n_workers = std::max(1, config.run.concurrency);
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    summary.units_completed = completed.load();
    summary.units_skipped = skipped.load();
    summary.units_failed = failed.load();
    return summary;
}

}  // namespace multifact::pipeline
