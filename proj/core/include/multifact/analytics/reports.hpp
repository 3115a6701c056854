#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multifact/geo.hpp"
#include "multifact/records.hpp"
#include "multifact/topic.hpp"

namespace multifact::analytics {

// mean/std use the population denominator n; the convention is noted in
// every report header.
struct SummaryStat {
    double mean = 0.0;
    double std = 0.0;
    int n = 0;
};

SummaryStat summarize(const std::vector<double>& values);

struct LanguageSummary {
    SummaryStat score;         // over defined country scores
    double mean_n_correct = 0.0;
    double mean_n_hallucinated = 0.0;
    int excluded_n = 0;        // undefined (refusal / zero-fact) rows
};

// Input to every report: the evaluation rows plus the roster for geo tags.
struct EvalSet {
    std::vector<BiographyEvaluation> evals;
    std::vector<Topic> roster;

    static EvalSet load(const std::string& evaluations_jsonl_path,
                        const std::string& roster_path);
    const Topic& topic(const std::string& topic_id) const;
};

std::map<LanguageCode, LanguageSummary> language_summary(const EvalSet& data);

struct ContinentTable {
    // per language: continent -> mean over that continent's countries
    std::map<LanguageCode, std::map<Continent, SummaryStat>> by_continent;
    // row mean/std over all countries, not over the four continent means
    std::map<LanguageCode, SummaryStat> overall;
};

ContinentTable continent_table(const EvalSet& data);

// Continent membership counts of the k highest-scoring countries; ties at
// the cut broken by ascending topic_id. Throws InsufficientData when the
// language has fewer than k defined scores.
std::map<Continent, int> topk_continent_distribution(const EvalSet& data, LanguageCode language,
                                                     int k = 20);

struct SubregionStats {
    double mean_n_correct = 0.0;
    double mean_n_hallucinated = 0.0;
    double mean_score = 0.0;
    int n = 0;
};

// Subregions represented by a single roster country (Southern Africa,
// Central Asia) are excluded from the breakdown.
std::map<std::string, SubregionStats> subregion_breakdown(const EvalSet& data,
                                                          LanguageCode language);

struct CorrelationCell {
    std::optional<double> r;  // absent for degenerate (zero-variance) pairs
    int n = 0;                // pairwise-complete sample size
};

// 9x9 Pearson matrix over per-country score vectors, pairwise deletion for
// undefined scores. Symmetric with unit diagonal.
std::map<LanguageCode, std::map<LanguageCode, CorrelationCell>> correlation_matrix(
    const EvalSet& data);

struct HeatmapRow {
    std::string country;
    std::string iso_code;
    std::optional<double> score;
};

// One row per roster country; undefined scores emitted as null.
std::vector<HeatmapRow> heatmap_export(const EvalSet& data, LanguageCode language);

// Statistics of (a_i - b_i) over common ids, documented as system - reference.
// Throws NoOverlap when the maps share no ids.
std::pair<double, double> score_set_error(const std::map<std::string, double>& scores_a,
                                          const std::map<std::string, double>& scores_b);

// ISO 3166-1 alpha-3 code for a roster country name; empty if unknown.
std::string iso3_code(const std::string& country);

// Writes the full report set (CSV tables + JSON distributions) into
// out_dir. Every file's header names the run manifest hash. Deterministic:
// reruns produce byte-identical files. report_errors collects per-language
// InsufficientData messages without aborting the other reports.
void write_reports(const EvalSet& data, const std::string& out_dir,
                   const std::string& manifest_hash, int top_k,
                   std::vector<std::string>* report_errors = nullptr);

}  // namespace multifact::analytics
