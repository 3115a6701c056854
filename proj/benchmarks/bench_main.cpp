#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "multifact/kb/index.hpp"
#include "multifact/records.hpp"
#include "multifact/scoring.hpp"
#include "multifact/tokenize.hpp"

using namespace multifact;

namespace {

std::string synthetic_text(std::mt19937& rng, int words) {
    static const char* vocab[] = {"president", "minister",  "elected", "office",  "national",
                                  "served",    "country",   "party",   "born",    "university",
                                  "signed",    "treaty",    "reform",  "economy", "capital",
                                  "assembly",  "parliament", "term",    "policy",  "leader"};
    std::uniform_int_distribution<size_t> pick(0, std::size(vocab) - 1);
    std::ostringstream out;
    for (int i = 0; i < words; ++i) {
        if (i) out << ' ';
        out << vocab[pick(rng)];
    }
    return out.str();
}

kb::RetrievalIndex build_index(int docs, int words_per_doc) {
    std::mt19937 rng(17);
    std::vector<kb::Passage> passages;
    for (int d = 0; d < docs; ++d) {
        kb::KnowledgeDocument doc;
        doc.wikipedia_title = "Doc " + std::to_string(d);
        doc.plain_text = synthetic_text(rng, words_per_doc);
        auto chunks = kb::chunk_document(doc, 256, 128);
        passages.insert(passages.end(), chunks.begin(), chunks.end());
    }
    return kb::RetrievalIndex::build(passages);
}

}  // namespace

static void BM_Tokenize(benchmark::State& state) {
    std::mt19937 rng(3);
    std::string text = synthetic_text(rng, 512);
    for (auto _ : state) benchmark::DoNotOptimize(tokenize(text));
    state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_Tokenize);

static void BM_IndexBuild(benchmark::State& state) {
    std::mt19937 rng(17);
    std::vector<kb::Passage> passages;
    for (int d = 0; d < state.range(0); ++d) {
        kb::KnowledgeDocument doc;
        doc.wikipedia_title = "Doc " + std::to_string(d);
        doc.plain_text = synthetic_text(rng, 1024);
        auto chunks = kb::chunk_document(doc, 256, 128);
        passages.insert(passages.end(), chunks.begin(), chunks.end());
    }
    for (auto _ : state) benchmark::DoNotOptimize(kb::RetrievalIndex::build(passages));
}
BENCHMARK(BM_IndexBuild)->Arg(8)->Arg(64);

static void BM_Retrieve(benchmark::State& state) {
    auto index = build_index(static_cast<int>(state.range(0)), 1024);
    std::string query = "president elected national office treaty";
    for (auto _ : state) benchmark::DoNotOptimize(index.retrieve(query, 5));
}
BENCHMARK(BM_Retrieve)->Arg(8)->Arg(64);

static void BM_FactScore(benchmark::State& state) {
    std::vector<Verdict> verdicts(state.range(0));
    for (size_t i = 0; i < verdicts.size(); ++i) {
        verdicts[i].label = (i % 3 == 0) ? VerdictLabel::NotSupported : VerdictLabel::Supported;
    }
    for (auto _ : state) benchmark::DoNotOptimize(factscore(verdicts));
}
BENCHMARK(BM_FactScore)->Arg(32)->Arg(1024);

BENCHMARK_MAIN();
