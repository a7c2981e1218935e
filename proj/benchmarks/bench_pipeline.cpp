#include <benchmark/benchmark.h>

#include "hanabench/agents.hpp"
#include "hanabench/observation.hpp"
#include "hanabench/prompts.hpp"

using namespace hanabench;

static void BM_RenderView(benchmark::State& state) {
    const GameState s = new_game(5, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(render_view(s, 0).text());
    }
}
BENCHMARK(BM_RenderView);

static void BM_BuildTurnPrompt(benchmark::State& state) {
    const GameState s = new_game(5, 7);
    const ObservationView view = render_view(s, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_turn_prompt(view, 0, 5, {}));
    }
}
BENCHMARK(BM_BuildTurnPrompt);

static void BM_ParseReply(benchmark::State& state) {
    const std::string reply =
        "Thinking out loud about stacks and tokens for a while before moving on to the "
        "decision itself.\n"
        "{\"action_type\":\"HINT_RANK\",\"hint_player\":2,\"hint_rank\":1,"
        "\"rationale\":\"his rank-1 cards are playable\",\"1st_order_ToM\":\"N/A\","
        "\"2nd_order_ToM\":\"he will play one of them\"}";
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_reply(reply));
    }
}
BENCHMARK(BM_ParseReply);

static void BM_GreedyGame(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) {
        GameState s = new_game(5, seed++);
        GreedyHintAgent agent;
        ToMLedger ledger("bench", 5);
        while (!s.terminal) {
            const int p = s.turn_player;
            const auto view = render_view(s, p);
            const auto bundle = build_turn_prompt(view, p, 5, ledger.pending_for(p));
            const auto legal = legal_actions(s, p);
            const AgentTurn turn = agent.act(s, p, bundle, legal);
            if (turn.record.first_order_tom != "N/A") {
                ledger.attach_first_order(p, turn.record.first_order_tom);
            }
            if (turn.action.is_hint()) {
                ledger.record_hint(s.round, p, turn.action, turn.record.rationale,
                                   turn.record.second_order_tom);
            }
            s = apply_action(s, turn.action).first;
        }
        benchmark::DoNotOptimize(raw_score(s));
    }
}
BENCHMARK(BM_GreedyGame);

BENCHMARK_MAIN();
