#include <benchmark/benchmark.h>

#include <random>

#include "crossing/agents.hpp"
#include "crossing/harness.hpp"
#include "crossing/lattice.hpp"
#include "crossing/secure.hpp"
#include "crossing/solver.hpp"
#include "crossing/switching.hpp"

using namespace crossing;

static void BM_Solve(benchmark::State& st) {
  Board b = make_board(int(st.range(0)), int(st.range(1)));
  for (auto _ : st) {
    SolveResult r = solve(b, 1, 1, Player::Maker);
    benchmark::DoNotOptimize(r.nodes);
  }
  st.SetLabel("S_" + std::to_string(b.m) + "x" + std::to_string(b.n));
}
BENCHMARK(BM_Solve)->Args({4, 3})->Args({5, 3})->Args({4, 4})->Args({8, 2})->Unit(benchmark::kMillisecond);

static void BM_SolveNoSymmetry(benchmark::State& st) {
  Board b = make_board(5, 3);
  SolverOptions opt;
  opt.symmetry = false;
  for (auto _ : st) benchmark::DoNotOptimize(solve(b, 1, 1, Player::Maker, opt).nodes);
}
BENCHMARK(BM_SolveNoSymmetry)->Unit(benchmark::kMillisecond);

static void BM_EnumeratePaths(benchmark::State& st) {
  Board b = make_board(int(st.range(0)), int(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_crossing_paths(b).size());
}
BENCHMARK(BM_EnumeratePaths)->Args({4, 3})->Args({5, 4})->Args({6, 4})->Unit(benchmark::kMillisecond);

static void BM_DualityCheck(benchmark::State& st) {
  Board b = make_board(6, 5);
  auto all = edge_set(b);
  std::mt19937_64 rng(1);
  for (auto _ : st) {
    std::vector<EdgeId> e1, e2;
    for (const EdgeId& e : all) (rng() & 1 ? e1 : e2).push_back(e);
    benchmark::DoNotOptimize(has_lr_crossing(b, e1) != has_tb_dual_crossing(b, e2));
  }
}
BENCHMARK(BM_DualityCheck);

static void BM_BridgitSetup(benchmark::State& st) {
  int n = int(st.range(0));
  EdgeId first = edge_set(make_board(n + 1, n)).front();
  for (auto _ : st) benchmark::DoNotOptimize(bridgit_setup(n, first).recolored.size());
}
BENCHMARK(BM_BridgitSetup)->Arg(3)->Arg(5)->Arg(7);

static void BM_LehmanGame(benchmark::State& st) {
  MatchConfig cfg;
  cfg.board = make_board(6, 5);
  cfg.maker = {Player::Maker, "lehman"};
  cfg.breaker = {Player::Breaker, "random"};
  int i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(play_game(cfg, i++).turns);
}
BENCHMARK(BM_LehmanGame);

static void BM_SecureResponse(benchmark::State& st) {
  int n = int(st.range(0));
  std::mt19937_64 rng(3);
  SecureState s(n);
  long moves = 0;
  for (auto _ : st) {
    std::vector<EdgeId> cand;
    for (int u = 0; u <= 40; ++u)
      for (int v = 2; v <= 2 * n; ++v) {
        EdgeId e{u, v};
        if (e.valid() && s.game.board().contains(e) && s.game.claim(e) != Claim::Red && !s.game.secure_restriction(e))
          cand.push_back(e);
      }
    if (cand.empty()) {
      st.PauseTiming();
      s = SecureState(n);
      st.ResumeTiming();
      continue;
    }
    respond_secure(s, cand[rng() % cand.size()]);
    ++moves;
  }
  st.counters["moves"] = double(moves);
}
BENCHMARK(BM_SecureResponse)->Arg(2)->Arg(3)->Arg(4);

static void BM_StripGame(benchmark::State& st) {
  MatchConfig cfg;
  cfg.board = make_board(3075, 2);
  cfg.maker = {Player::Maker, "random"};
  cfg.breaker = {Player::Breaker, "strips"};
  int i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(play_game(cfg, i++).turns);
}
BENCHMARK(BM_StripGame)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
