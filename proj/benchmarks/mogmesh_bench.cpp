#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "mogmesh/association.hpp"
#include "mogmesh/overlay.hpp"
#include "mogmesh/placement.hpp"
#include "mogmesh/rng.hpp"
#include "mogmesh/simulator.hpp"
#include "mogmesh/sync.hpp"

using namespace mogmesh;

namespace {

std::vector<NodeProfile> field(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<NodeProfile> out;
  double side = 10.0 * std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    NodeProfile p;
    p.node_id = NodeId{static_cast<std::uint32_t>(i + 1)};
    p.position = {rng.uniform() * side, rng.uniform() * side};
    p.radio_range = 15.0;
    p.compute = 10 + static_cast<std::int64_t>(rng.next() % 30);
    p.battery = 1000;
    p.interfaces = {{LinkType::ShortRange, 10.0, 1.0, 1}};
    out.push_back(p);
  }
  return out;
}

Scenario bench_scenario(std::uint32_t players) {
  SplitMix64 rng(7);
  Scenario sc;
  sc.arena_width = sc.arena_height = 10.0 * std::sqrt(static_cast<double>(players)) + 20;
  for (std::uint32_t i = 1; i <= players; ++i) {
    PlayerSpec p;
    p.id = NodeId{i};
    p.position = {rng.uniform() * sc.arena_width, rng.uniform() * sc.arena_height};
    p.radio_range = 18;
    p.speed = 1.0;
    p.event_rate = 0.3;
    p.devices = {{"dev", 30, 1000000, {{LinkType::ShortRange, 10.0, 1.0, 1}}, ""}};
    sc.players.push_back(p);
  }
  sc.services = {make_service(ModuleKind::GameStateManagement, 1),
                 make_service(ModuleKind::PhysicsSystem, 1)};
  sc.energy.wireless_multicast = true;
  return sc;
}

}  // namespace

static void BM_BuildMesh(benchmark::State& state) {
  auto nodes = field(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_mesh(nodes));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildMesh)->RangeMultiplier(2)->Range(16, 256)->Complexity();

static void BM_ReconfigureMove(benchmark::State& state) {
  auto g = build_mesh(field(static_cast<std::size_t>(state.range(0)), 2));
  SplitMix64 rng(3);
  for (auto _ : state) {
    NodeId id{static_cast<std::uint32_t>(1 + rng.next() % g.size())};
    g = reconfigure(g, Move{id, {rng.uniform() * 50, rng.uniform() * 50}});
  }
}
BENCHMARK(BM_ReconfigureMove)->Arg(32)->Arg(128);

static void BM_AllocateHeuristic(benchmark::State& state) {
  auto g = build_mesh(field(64, 4));
  std::vector<ServiceSpec> svcs{make_service(ModuleKind::GameStateManagement, 3),
                                make_service(ModuleKind::ArtificialIntelligence, 1),
                                make_service(ModuleKind::FiniteStateMachine, 1)};
  ClientCounts c{{svcs[0].name, 64}, {svcs[1].name, 8}, {svcs[2].name, 8}};
  for (auto _ : state) benchmark::DoNotOptimize(allocate_heuristic(svcs, g, c));
}
BENCHMARK(BM_AllocateHeuristic);

static void BM_AllocateAuction(benchmark::State& state) {
  // Uniform 20-unit hosts: one slot each, 35 wanted against 32 offered.
  auto nodes = field(32, 5);
  for (auto& p : nodes) p.compute = 20;
  auto g = build_mesh(nodes);
  std::vector<ServiceSpec> svcs{make_service(ModuleKind::GameStateManagement, 3),
                                make_service(ModuleKind::ArtificialIntelligence, 2),
                                make_service(ModuleKind::FiniteStateMachine, 1)};
  ClientCounts c{{svcs[0].name, 220}, {svcs[1].name, 6}, {svcs[2].name, 6}};
  for (auto _ : state) benchmark::DoNotOptimize(allocate_auction(svcs, g, c, {{}, false, 1.0}));
}
BENCHMARK(BM_AllocateAuction);

static void BM_ApplyAndDigest(benchmark::State& state) {
  SplitMix64 rng(6);
  GameState s;
  for (std::uint32_t a = 1; a <= 64; ++a) s.actors[a] = {};
  std::vector<GameEvent> log;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    log.push_back({i, NodeId{static_cast<std::uint32_t>(rng.next() % 8)}, rng.next() % 50,
                   encode_payload({Action::Move, 1, -1}),
                   1 + static_cast<std::uint32_t>(rng.next() % 64)});
  }
  for (auto _ : state) {
    auto next = apply_events(s, order_events(log));
    benchmark::DoNotOptimize(state_digest(next));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(log.size()));
}
BENCHMARK(BM_ApplyAndDigest);

static void BM_SimulatorTicks(benchmark::State& state) {
  auto sc = bench_scenario(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(sc, Architecture::HybridDistributed, 1, 100));
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SimulatorTicks)->Arg(12)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
