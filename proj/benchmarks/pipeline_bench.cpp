#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "heaplive/pipeline.hpp"

using namespace heaplive;

namespace {

std::string load(const char* name) {
  std::ifstream in(std::string(HEAPLIVE_BENCH_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void BM_Analyze(benchmark::State& state, const char* file) {
  std::string src = load(file);
  for (auto _ : state) benchmark::DoNotOptimize(analyze_source(src));
}
BENCHMARK_CAPTURE(BM_Analyze, append, "append.hl");
BENCHMARK_CAPTURE(BM_Analyze, map_inc, "map_inc.hl");
BENCHMARK_CAPTURE(BM_Analyze, mutual_recursion, "mutual_recursion.hl");

void BM_Report(benchmark::State& state) {
  Analysis a = analyze_source(load("append.hl"));
  RunConfig cfg;
  cfg.nullify_report = true;
  cfg.check_soundness = true;
  for (auto _ : state) benchmark::DoNotOptimize(report_to_json(build_report(a, cfg)));
}
BENCHMARK(BM_Report);

}  // namespace

BENCHMARK_MAIN();
