#include <benchmark/benchmark.h>

#include <map>
#include <numeric>

#include "orgflow/mobility.hpp"
#include "orgflow/motifs.hpp"
#include "orgflow/synth.hpp"

using namespace orgflow;

namespace {

// One year of traffic scaled by range(0) RP people.
const DatasetBundle& bundle(int n_rp) {
    static std::map<int, DatasetBundle> cache;
    auto it = cache.find(n_rp);
    if (it != cache.end())
        return it->second;
    SynthConfig c;
    c.n_rp = n_rp;
    c.n_wgc = n_rp / 10;
    c.n_ad = 4;
    c.n_groups = n_rp / 20;
    c.start = Date::from_ymd(2014, 1, 1);
    c.end = Date::from_ymd(2015, 1, 1);
    const double scale = n_rp / 100.0;
    c.rates = {{{4.0 * scale, 2.0 * scale, 0.2}, {2.0 * scale, 1.0 * scale, 0.2}, {0.2, 0.2, 0.1}}};
    c.activity_sigma = 1.0;
    return cache.emplace(n_rp, synth_generate(c)).first->second;
}

const TimeWindow kYear = TimeWindow::make(Date::from_ymd(2014, 1, 1), Date::from_ymd(2015, 1, 1));

void BM_StoreBuild(benchmark::State& state) {
    const auto& b = bundle(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(EventStore::build(b.edges.events));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * b.edges.events.size()));
}
BENCHMARK(BM_StoreBuild)->Arg(100)->Arg(1000);

void BM_WindowGraph(benchmark::State& state) {
    const auto s = EventStore::build(bundle(static_cast<int>(state.range(0))).edges.events);
    for (auto _ : state)
        benchmark::DoNotOptimize(window_graph(s, kYear));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}
BENCHMARK(BM_WindowGraph)->Arg(100)->Arg(1000);

void BM_MotifsFast(benchmark::State& state) {
    const auto s = EventStore::build(bundle(static_cast<int>(state.range(0))).edges.events);
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_motifs(s, kYear, {static_cast<int>(state.range(1))}));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}
BENCHMARK(BM_MotifsFast)->Args({100, 7})->Args({100, 30})->Args({1000, 7})->Unit(benchmark::kMillisecond);

void BM_MotifsBruteForce(benchmark::State& state) {
    const auto s = EventStore::build(bundle(static_cast<int>(state.range(0))).edges.events);
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_motifs(s, kYear, {static_cast<int>(state.range(1))}));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}
BENCHMARK(BM_MotifsBruteForce)->Args({100, 7})->Unit(benchmark::kMillisecond);

void BM_Taxonomy(benchmark::State& state) {
    const auto& b = bundle(static_cast<int>(state.range(0)));
    const auto s = EventStore::build(b.edges.events);
    RoleTable table(b.roles);
    std::vector<NodeId> all(b.ids.nodes.size());
    std::iota(all.begin(), all.end(), 0);
    const auto roles = resolve_roles(table, kYear, all);
    for (auto _ : state)
        benchmark::DoNotOptimize(taxonomy(s, kYear, roles));
}
BENCHMARK(BM_Taxonomy)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
