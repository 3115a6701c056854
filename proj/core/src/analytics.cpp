#include "multifact/analytics/reports.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "multifact/errors.hpp"

namespace multifact::analytics {

namespace fs = std::filesystem;
using nlohmann::json;

SummaryStat summarize(const std::vector<double>& values) {
    SummaryStat s;
    s.n = static_cast<int>(values.size());
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / s.n;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / s.n);
    return s;
}

EvalSet EvalSet::load(const std::string& evaluations_jsonl_path, const std::string& roster_path) {
    EvalSet data;
    data.roster = load_roster(roster_path);
    std::ifstream in(evaluations_jsonl_path, std::ios::binary);
    if (!in) throw Error("cannot open evaluations file: " + evaluations_jsonl_path);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) data.evals.push_back(evaluation_from_json_line(line));
    }
    return data;
}

const Topic& EvalSet::topic(const std::string& topic_id) const {
    for (const Topic& t : roster) {
        if (t.id == topic_id) return t;
    }
    throw Error("evaluation references unknown topic id: " + topic_id);
}

namespace {

// Last evaluation wins if a (topic, language) cell appears more than once.
std::map<std::string, const BiographyEvaluation*> cells_for(const EvalSet& data,
                                                            LanguageCode language) {
    std::map<std::string, const BiographyEvaluation*> cells;
    for (const BiographyEvaluation& e : data.evals) {
        if (e.language == language) cells[e.topic_id] = &e;
    }
    return cells;
}

}  // namespace

std::map<LanguageCode, LanguageSummary> language_summary(const EvalSet& data) {
    std::map<LanguageCode, LanguageSummary> out;
    for (LanguageCode lang : kAllLanguages) {
        auto cells = cells_for(data, lang);
        if (cells.empty()) continue;
        LanguageSummary summary;
        std::vector<double> scores;
        double sum_correct = 0, sum_hallucinated = 0;
        int defined = 0;
        for (const auto& [topic_id, e] : cells) {
            if (e->score) {
                scores.push_back(*e->score);
                sum_correct += e->n_correct;
                sum_hallucinated += e->n_hallucinated;
                ++defined;
            } else {
                ++summary.excluded_n;
            }
        }
        summary.score = summarize(scores);
        if (defined > 0) {
            summary.mean_n_correct = sum_correct / defined;
            summary.mean_n_hallucinated = sum_hallucinated / defined;
        }
        out[lang] = summary;
    }
    return out;
}

ContinentTable continent_table(const EvalSet& data) {
    ContinentTable table;
    for (LanguageCode lang : kAllLanguages) {
        auto cells = cells_for(data, lang);
        if (cells.empty()) continue;
        std::map<Continent, std::vector<double>> per_continent;
        std::vector<double> all;
        for (const auto& [topic_id, e] : cells) {
            if (!e->score) continue;
            per_continent[data.topic(topic_id).geo.continent].push_back(*e->score);
            all.push_back(*e->score);
        }
        for (const auto& [continent, scores] : per_continent) {
            table.by_continent[lang][continent] = summarize(scores);
        }
        table.overall[lang] = summarize(all);
    }
    return table;
}

std::map<Continent, int> topk_continent_distribution(const EvalSet& data, LanguageCode language,
                                                     int k) {
    auto cells = cells_for(data, language);
    std::vector<std::pair<double, std::string>> scored;
    for (const auto& [topic_id, e] : cells) {
        if (e->score) scored.emplace_back(*e->score, topic_id);
    }
    if (static_cast<int>(scored.size()) < k) {
        throw InsufficientData("language " + to_string(language) + " has " +
                               std::to_string(scored.size()) + " defined scores, need " +
                               std::to_string(k));
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::map<Continent, int> counts;
    for (int i = 0; i < k; ++i) {
        ++counts[data.topic(scored[i].second).geo.continent];
    }
    return counts;
}

std::map<std::string, SubregionStats> subregion_breakdown(const EvalSet& data,
                                                          LanguageCode language) {
    // Roster-wide country counts decide the singleton exclusion.
    std::map<std::string, int> roster_counts;
    for (const Topic& t : data.roster) ++roster_counts[t.geo.subregion];

    std::map<std::string, SubregionStats> out;
    std::map<std::string, std::vector<const BiographyEvaluation*>> grouped;
    for (const auto& [topic_id, e] : cells_for(data, language)) {
        if (!e->score) continue;
        grouped[data.topic(topic_id).geo.subregion].push_back(e);
    }
    for (const auto& [subregion, rows] : grouped) {
        if (roster_counts[subregion] <= 1) continue;
        SubregionStats stats;
        stats.n = static_cast<int>(rows.size());
        for (const BiographyEvaluation* e : rows) {
            stats.mean_n_correct += e->n_correct;
            stats.mean_n_hallucinated += e->n_hallucinated;
            stats.mean_score += *e->score;
        }
        stats.mean_n_correct /= stats.n;
        stats.mean_n_hallucinated /= stats.n;
        stats.mean_score /= stats.n;
        out[subregion] = stats;
    }
    return out;
}

std::map<LanguageCode, std::map<LanguageCode, CorrelationCell>> correlation_matrix(
    const EvalSet& data) {
    std::map<LanguageCode, std::map<std::string, double>> vectors;
    for (LanguageCode lang : kAllLanguages) {
        for (const auto& [topic_id, e] : cells_for(data, lang)) {
            if (e->score) vectors[lang][topic_id] = *e->score;
        }
    }

    std::map<LanguageCode, std::map<LanguageCode, CorrelationCell>> matrix;
    for (LanguageCode a : kAllLanguages) {
        for (LanguageCode b : kAllLanguages) {
            CorrelationCell cell;
            std::vector<double> xs, ys;
            for (const auto& [id, x] : vectors[a]) {
                auto it = vectors[b].find(id);
                if (it != vectors[b].end()) {
                    xs.push_back(x);
                    ys.push_back(it->second);
                }
            }
            cell.n = static_cast<int>(xs.size());
            if (a == b) {
                if (cell.n > 0) cell.r = 1.0;
            } else if (cell.n >= 2) {
                double mx = 0, my = 0;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    mx += xs[i];
                    my += ys[i];
                }
                mx /= cell.n;
                my /= cell.n;
                double sxy = 0, sxx = 0, syy = 0;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    sxy += (xs[i] - mx) * (ys[i] - my);
                    sxx += (xs[i] - mx) * (xs[i] - mx);
                    syy += (ys[i] - my) * (ys[i] - my);
                }
                if (sxx > 0 && syy > 0) cell.r = sxy / std::sqrt(sxx * syy);
                // zero-variance pair stays undefined (DegeneratePair)
            }
            matrix[a][b] = cell;
        }
    }
    return matrix;
}

std::vector<HeatmapRow> heatmap_export(const EvalSet& data, LanguageCode language) {
    auto cells = cells_for(data, language);
    std::vector<HeatmapRow> rows;
    for (const Topic& t : data.roster) {
        HeatmapRow row;
        row.country = t.country;
        row.iso_code = iso3_code(t.country);
        auto it = cells.find(t.id);
        if (it != cells.end() && it->second->score) row.score = *it->second->score;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::pair<double, double> score_set_error(const std::map<std::string, double>& scores_a,
                                          const std::map<std::string, double>& scores_b) {
    std::vector<double> diffs;
    for (const auto& [id, a] : scores_a) {
        auto it = scores_b.find(id);
        if (it != scores_b.end()) diffs.push_back(a - it->second);
    }
    if (diffs.empty()) throw NoOverlap();
    SummaryStat s = summarize(diffs);
    return {s.mean, s.std};
}

std::string iso3_code(const std::string& country) {
    static const std::map<std::string, std::string> kIso3 = {
        {"Ethiopia", "ETH"}, {"Tanzania", "TZA"}, {"Kenya", "KEN"}, {"Uganda", "UGA"},
        {"Mozambique", "MOZ"}, {"Madagascar", "MDG"}, {"DR Congo", "COD"}, {"Angola", "AGO"},
        {"Cameroon", "CMR"}, {"Egypt", "EGY"}, {"Algeria", "DZA"}, {"Sudan", "SDN"},
        {"Morocco", "MAR"}, {"South Africa", "ZAF"}, {"Nigeria", "NGA"}, {"Ghana", "GHA"},
        {"Côte d'Ivoire", "CIV"}, {"Niger", "NER"}, {"Burkina Faso", "BFA"}, {"Mali", "MLI"},
        {"Australia", "AUS"}, {"New Zealand", "NZL"}, {"Haiti", "HTI"}, {"Cuba", "CUB"},
        {"Dominican Republic", "DOM"}, {"Mexico", "MEX"}, {"Guatemala", "GTM"},
        {"Honduras", "HND"}, {"Nicaragua", "NIC"}, {"United States", "USA"}, {"Canada", "CAN"},
        {"Brazil", "BRA"}, {"Colombia", "COL"}, {"Argentina", "ARG"}, {"Peru", "PER"},
        {"Venezuela", "VEN"}, {"Chile", "CHL"}, {"Ecuador", "ECU"}, {"Bolivia", "BOL"},
        {"Paraguay", "PRY"}, {"Uzbekistan", "UZB"}, {"China", "CHN"}, {"Japan", "JPN"},
        {"South Korea", "KOR"}, {"Indonesia", "IDN"}, {"Philippines", "PHL"},
        {"Vietnam", "VNM"}, {"Thailand", "THA"}, {"Myanmar", "MMR"}, {"Malaysia", "MYS"},
        {"India", "IND"}, {"Pakistan", "PAK"}, {"Bangladesh", "BGD"}, {"Iran", "IRN"},
        {"Afghanistan", "AFG"}, {"Nepal", "NPL"}, {"Turkey", "TUR"}, {"Iraq", "IRQ"},
        {"Saudi Arabia", "SAU"}, {"Yemen", "YEM"}, {"Russia", "RUS"}, {"Ukraine", "UKR"},
        {"Poland", "POL"}, {"Romania", "ROU"}, {"Czech Republic", "CZE"}, {"Hungary", "HUN"},
        {"Belarus", "BLR"}, {"Bulgaria", "BGR"}, {"United Kingdom", "GBR"}, {"Sweden", "SWE"},
        {"Italy", "ITA"}, {"Spain", "ESP"}, {"Greece", "GRC"}, {"Portugal", "PRT"},
        {"Germany", "DEU"}, {"France", "FRA"}, {"Netherlands", "NLD"}, {"Belgium", "BEL"},
        {"Austria", "AUT"}, {"Switzerland", "CHE"}};
    auto it = kIso3.find(country);
    return it == kIso3.end() ? std::string{} : it->second;
}

namespace {

std::string fmt(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

std::string csv_header(const std::string& manifest_hash) {
    return "# manifest_hash=" + manifest_hash + "; std=population\n";
}

}  // namespace

void write_reports(const EvalSet& data, const std::string& out_dir,
                   const std::string& manifest_hash, int top_k,
                   std::vector<std::string>* report_errors) {
    fs::create_directories(out_dir);

    {
        std::ofstream out(fs::path(out_dir) / "language_summary.csv",
                          std::ios::binary | std::ios::trunc);
        out << csv_header(manifest_hash);
        out << "language,mean_score,std_score,n,excluded_n,mean_n_correct,mean_n_hallucinated\n";
        for (const auto& [lang, s] : language_summary(data)) {
            out << to_string(lang) << ',' << fmt(s.score.mean) << ',' << fmt(s.score.std) << ','
                << s.score.n << ',' << s.excluded_n << ',' << fmt(s.mean_n_correct) << ','
                << fmt(s.mean_n_hallucinated) << "\n";
        }
    }
    {
        std::ofstream out(fs::path(out_dir) / "continent_table.csv",
                          std::ios::binary | std::ios::trunc);
        out << csv_header(manifest_hash);
        out << "language,Africa,America,Asia,Europe,mean,std\n";
        ContinentTable table = continent_table(data);
        for (const auto& [lang, row] : table.by_continent) {
            out << to_string(lang);
            for (Continent c : {Continent::Africa, Continent::America, Continent::Asia,
                                Continent::Europe}) {
                auto it = row.find(c);
                out << ',' << (it == row.end() ? "" : fmt(it->second.mean));
            }
            const SummaryStat& overall = table.overall.at(lang);
            out << ',' << fmt(overall.mean) << ',' << fmt(overall.std) << "\n";
        }
    }
    {
        json j;
        j["manifest_hash"] = manifest_hash;
        j["k"] = top_k;
        j["distributions"] = json::object();
        for (LanguageCode lang : kAllLanguages) {
            try {
                json counts = json::object();
                for (const auto& [continent, count] : topk_continent_distribution(data, lang, top_k)) {
                    counts[to_string(continent)] = count;
                }
                j["distributions"][to_string(lang)] = std::move(counts);
            } catch (const InsufficientData& e) {
                if (report_errors) report_errors->push_back(e.what());
            }
        }
        std::ofstream out(fs::path(out_dir) / "topk_continent_distribution.json",
                          std::ios::binary | std::ios::trunc);
        out << j.dump(2) << "\n";
    }
    {
        std::ofstream out(fs::path(out_dir) / "subregion_breakdown.csv",
                          std::ios::binary | std::ios::trunc);
        out << csv_header(manifest_hash);
        out << "language,subregion,mean_n_correct,mean_n_hallucinated,mean_score,n\n";
        for (LanguageCode lang : kAllLanguages) {
            for (const auto& [subregion, s] : subregion_breakdown(data, lang)) {
                out << to_string(lang) << ",\"" << subregion << "\"," << fmt(s.mean_n_correct)
                    << ',' << fmt(s.mean_n_hallucinated) << ',' << fmt(s.mean_score) << ',' << s.n
                    << "\n";
            }
        }
    }
    {
        std::ofstream out(fs::path(out_dir) / "correlation_matrix.csv",
                          std::ios::binary | std::ios::trunc);
        out << csv_header(manifest_hash);
        out << "language_a,language_b,r,n\n";
        auto matrix = correlation_matrix(data);
        for (LanguageCode a : kAllLanguages) {
            for (LanguageCode b : kAllLanguages) {
                const CorrelationCell& cell = matrix[a][b];
                out << to_string(a) << ',' << to_string(b) << ','
                    << (cell.r ? fmt(*cell.r) : "") << ',' << cell.n << "\n";
            }
        }
    }
    {
        json j;
        j["manifest_hash"] = manifest_hash;
        j["languages"] = json::object();
        for (LanguageCode lang : kAllLanguages) {
            json rows = json::array();
            for (const HeatmapRow& row : heatmap_export(data, lang)) {
                rows.push_back({{"country", row.country},
                                {"iso_code", row.iso_code},
                                {"score", row.score ? json(*row.score) : json(nullptr)}});
            }
            j["languages"][to_string(lang)] = std::move(rows);
        }
        std::ofstream out(fs::path(out_dir) / "heatmap.json", std::ios::binary | std::ios::trunc);
        out << j.dump(2) << "\n";
    }
}

}  // namespace multifact::analytics
