#include <benchmark/benchmark.h>

#include <random>

#include "hanabench/engine.hpp"
#include "hanabench/transcript.hpp"

using namespace hanabench;

static void BM_NewGame(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(new_game(5, seed++));
    }
}
BENCHMARK(BM_NewGame);

static void BM_LegalActions(benchmark::State& state) {
    const GameState s = new_game(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(legal_actions(s, 0));
    }
}
BENCHMARK(BM_LegalActions)->Arg(2)->Arg(5);

static void BM_ApplyAction(benchmark::State& state) {
    const GameState s = new_game(5, 7);
    const Action discard = Action::discard(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_action(s, discard));
    }
}
BENCHMARK(BM_ApplyAction);

static void BM_RandomPlayout(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        GameState s = new_game(5, seed++);
        while (!s.terminal) {
            const auto legal = legal_actions(s, s.turn_player);
            s = apply_action(s, legal[rng() % legal.size()]).first;
        }
        benchmark::DoNotOptimize(raw_score(s));
    }
}
BENCHMARK(BM_RandomPlayout);

static void BM_StateDigest(benchmark::State& state) {
    const GameState s = new_game(5, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(state_digest(s));
    }
}
BENCHMARK(BM_StateDigest);
