#include "hanabench/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "hanabench/agents.hpp"
#include "hanabench/errors.hpp"
#include "hanabench/mock_model.hpp"
#include "hanabench/observation.hpp"
#include "hanabench/prompts.hpp"

namespace fs = std::filesystem;

namespace hanabench {

namespace {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a + 0x9e3779b97f4a7c15ull * (b + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

std::string game_file_name(int index) {
    std::ostringstream os;
    os << "game_" << std::setw(4) << std::setfill('0') << index << ".jsonl";
    return os.str();
}

SeatKind parse_seat_kind(const std::string& s) {
    if (s == "random") return SeatKind::Random;
    if (s == "greedy") return SeatKind::Greedy;
    if (s == "mock-llm" || s == "mock_llm" || s == "mock") return SeatKind::MockLlm;
    if (s == "llm") return SeatKind::Llm;
    throw ConfigError("unknown agent kind: " + s +
                      " (expected random, greedy, mock-llm, or llm)");
}

}  // namespace

std::string seat_kind_name(SeatKind k) {
    switch (k) {
        case SeatKind::Random: return "random";
        case SeatKind::Greedy: return "greedy";
        case SeatKind::MockLlm: return "mock-llm";
        case SeatKind::Llm: return "llm";
    }
    return "?";
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    c.label = j.value("label", "run");
    c.n_players = j.value("n_players", 5);
    c.n_games = j.value("n_games", 30);
    c.base_seed = j.value("base_seed", std::uint64_t{1});
    c.parallelism = j.value("parallelism", 1);
    c.output_dir = j.value("output_dir", "out");
    c.token_budget = j.value("token_budget", std::int64_t{0});
    c.action_retries = j.value("action_retries", 3);

    if (j.contains("seats")) {
        for (const auto& seat : j.at("seats")) {
            SeatSpec spec;
            spec.kind = parse_seat_kind(seat.value("agent", "random"));
            if (spec.kind == SeatKind::Llm) {
                if (!seat.contains("model")) {
                    throw ConfigError("llm seat requires a model section");
                }
                spec.model = ModelConfig::from_json(seat.at("model"));
            }
            c.seats.push_back(std::move(spec));
        }
    }
    if (j.contains("judge")) {
        const auto& judge = j.at("judge");
        if (judge.value("mock", false)) {
            c.judge_mock = true;
        } else {
            ModelConfig m = ModelConfig::from_json(judge);
            // LLM-as-judge runs deterministic unless the config says otherwise.
            if (!judge.contains("temperature")) m.temperature = 0.0;
            c.judge_model = std::move(m);
        }
    }
    c.validate();
    return c;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config file is not valid json: " + path);
    return from_json(j);
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["label"] = label;
    j["n_players"] = n_players;
    j["n_games"] = n_games;
    j["base_seed"] = base_seed;
    j["parallelism"] = parallelism;
    j["output_dir"] = output_dir;
    j["token_budget"] = token_budget;
    j["action_retries"] = action_retries;
    auto seats_json = nlohmann::ordered_json::array();
    for (const SeatSpec& seat : seats) {
        nlohmann::ordered_json s;
        s["agent"] = seat_kind_name(seat.kind);
        if (seat.kind == SeatKind::Llm) s["model"] = seat.model.to_json();
        seats_json.push_back(std::move(s));
    }
    j["seats"] = seats_json;
    if (judge_mock) {
        j["judge"] = {{"mock", true}};
    } else if (judge_model) {
        j["judge"] = judge_model->to_json();
    }
    return j;
}

void RunConfig::validate() const {
    if (n_players < 2 || n_players > 5) {
        throw ConfigError("n_players must be between 2 and 5");
    }
    if (n_games < 1) throw ConfigError("n_games must be >= 1");
    if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
    if (seats.empty()) throw ConfigError("at least one seat spec is required");
    if (seats.size() != 1 && static_cast<int>(seats.size()) != n_players) {
        throw ConfigError("seats must have 1 entry or exactly n_players entries");
    }
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

namespace {

struct Services {
    std::shared_ptr<TokenBudget> budget;
    std::shared_ptr<RateLimiter> limiter;
    std::shared_ptr<CallLog> log;
    std::shared_ptr<ChatClient> llm_client;   // Llm seats
    std::shared_ptr<MockChatClient> mock_client;  // MockLlm seats
};

std::vector<SeatSpec> expand_seats(const RunConfig& config) {
    if (static_cast<int>(config.seats.size()) == config.n_players) return config.seats;
    return std::vector<SeatSpec>(config.n_players, config.seats.front());
}

std::unique_ptr<Agent> make_agent(const SeatSpec& seat, const RunConfig& config,
                                  std::uint64_t game_seed, int seat_index,
                                  const Services& services) {
    switch (seat.kind) {
        case SeatKind::Random:
            return std::make_unique<RandomLegalAgent>(mix_seed(game_seed, seat_index));
        case SeatKind::Greedy:
            return std::make_unique<GreedyHintAgent>();
        case SeatKind::MockLlm: {
            ModelConfig mock_config;
            mock_config.model_name = "mock-model";
            return std::make_unique<LlmAgent>(services.mock_client, mock_config,
                                              config.action_retries);
        }
        case SeatKind::Llm:
            return std::make_unique<LlmAgent>(services.llm_client, seat.model,
                                              config.action_retries);
    }
    throw ConfigError("bad seat kind");
}

GameStats play_one_game(const RunConfig& config, int game_index, const Services& services) {
    const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(game_index);
    const std::string game_id = game_file_name(game_index).substr(0, 9);
    const std::string path = (fs::path(config.output_dir) / game_file_name(game_index)).string();

    const auto seats = expand_seats(config);
    std::vector<std::unique_ptr<Agent>> agents;
    bool wants_prompt_in_transcript = false;
    for (int s = 0; s < config.n_players; ++s) {
        agents.push_back(make_agent(seats[s], config, seed, s, services));
        if (seats[s].kind == SeatKind::Llm || seats[s].kind == SeatKind::MockLlm) {
            wants_prompt_in_transcript = true;
        }
    }

    GameState state = new_game(config.n_players, seed);
    ToMLedger ledger(game_id, config.n_players);
    TranscriptWriter writer(path);

    nlohmann::ordered_json header;
    header["type"] = "header";
    header["version"] = 1;
    header["game_id"] = game_id;
    header["game_index"] = game_index;
    header["seed"] = seed;
    header["label"] = config.label;
    header["n_players"] = config.n_players;
    auto seat_names = nlohmann::ordered_json::array();
    for (int s = 0; s < config.n_players; ++s) {
        seat_names.push_back(seats[s].kind == SeatKind::Llm ? seats[s].model.model_name
                                                            : seat_kind_name(seats[s].kind));
    }
    header["seats"] = seat_names;
    writer.write(header);

    while (!state.terminal) {
        const int player = state.turn_player;
        const int round = state.round;

        const ObservationView view = render_view(state, player);
        const auto pending = ledger.pending_for(player);
        const PromptBundle bundle =
            build_turn_prompt(view, player, config.n_players, pending);
        const auto legal = legal_actions(state, player);

        const AgentTurn turn = agents[player]->act(state, player, bundle, legal);

        auto [next_state, outcome] = apply_action(state, turn.action);

        if (turn.record.first_order_tom != "N/A") {
            ledger.attach_first_order(player, turn.record.first_order_tom);
        } else if (!pending.empty()) {
            ledger.expire_pending(player);
        }
        if (turn.action.is_hint()) {
            ledger.record_hint(round, player, turn.action, turn.record.rationale,
                               turn.record.second_order_tom);
        }

        nlohmann::ordered_json rec;
        rec["type"] = "turn";
        rec["round"] = round;
        rec["player"] = player;
        rec["prompt"] = wants_prompt_in_transcript ? bundle.turn_prompt : "";
        rec["raw_reply"] = turn.reply.raw_text;
        rec["parsed"] = turn.record.to_json();
        rec["action"] = action_to_json(turn.action);
        rec["outcome"] = {{"success", outcome.success},
                          {"info_delta", outcome.info_delta},
                          {"life_delta", outcome.life_delta},
                          {"terminal", outcome.terminal}};
        rec["state_digest"] = state_digest(next_state);
        rec["retries"] = turn.retries;
        rec["fallback"] = turn.fallback;
        writer.write(rec);

        state = std::move(next_state);
    }

    for (const HintEvent& event : ledger.events()) {
        writer.write(hint_event_to_json(event));
    }

    const LedgerCounts counts = ledger.counts();
    nlohmann::ordered_json final_rec;
    final_rec["type"] = "final";
    final_rec["game_id"] = game_id;
    final_rec["end_reason"] = end_reason_name(*state.end);
    final_rec["raw_score"] = raw_score(state);
    final_rec["normalized_score"] = normalized_score(state);
    final_rec["rounds"] = state.round;
    final_rec["turns"] = state.history.size();
    final_rec["state_digest"] = state_digest(state);
    final_rec["hints"] = {{"emitted", counts.emitted},
                          {"paired", counts.paired},
                          {"expired", counts.expired},
                          {"flagged", counts.flagged},
                          {"pending", counts.pending},
                          {"orphan_statements", counts.orphan_statements}};
    writer.write(final_rec);

    GameStats stats;
    stats.game_id = game_id;
    stats.raw_score = raw_score(state);
    stats.normalized_score = normalized_score(state);
    stats.rounds = state.round;
    stats.tom.game_id = game_id;
    return stats;
}

}  // namespace

RunResult run(const RunConfig& config, std::shared_ptr<ChatClient> client_override) {
    config.validate();
    fs::create_directories(config.output_dir);

    const auto seats = expand_seats(config);
    Services services;
    services.budget = std::make_shared<TokenBudget>(config.token_budget);

    bool any_llm = false;
    bool any_mock = false;
    double strictest_rate = 0.0;
    for (const SeatSpec& seat : seats) {
        if (seat.kind == SeatKind::Llm) {
            any_llm = true;
            strictest_rate = strictest_rate == 0.0
                                 ? seat.model.rate_limit_per_min
                                 : std::min(strictest_rate, seat.model.rate_limit_per_min);
        }
        if (seat.kind == SeatKind::MockLlm) any_mock = true;
    }
    if (any_llm) {
        services.limiter = std::make_shared<RateLimiter>(strictest_rate);
        services.log = std::make_shared<CallLog>();
        services.log->open_file((fs::path(config.output_dir) / "calls.jsonl").string());
        services.llm_client = client_override
                                  ? client_override
                                  : std::make_shared<HttpChatClient>(services.limiter,
                                                                     services.budget,
                                                                     services.log);
    }
    if (any_mock) {
        auto mock = std::make_shared<MockChatClient>(make_mock_player_handler());
        mock->attach_budget(services.budget);
        services.mock_client = std::move(mock);
    }

    RunResult result;
    std::mutex mutex;
    std::atomic<int> next_game{0};
    std::atomic<bool> stop{false};

    auto worker = [&]() {
        for (;;) {
            if (stop.load()) return;
            const int g = next_game.fetch_add(1);
            if (g >= config.n_games) return;

            const std::string path =
                (fs::path(config.output_dir) / game_file_name(g)).string();
            try {
                if (fs::exists(path)) {
                    const GameTranscript existing = read_transcript(path);
                    if (existing.complete()) {
                        GameStats stats = stats_from_transcript(existing);
                        std::lock_guard lock(mutex);
                        result.games.push_back(std::move(stats));
                        result.games_resumed += 1;
                        continue;
                    }
                    fs::remove(path);  // partial file from a crashed run
                }
                GameStats stats = play_one_game(config, g, services);
                std::lock_guard lock(mutex);
                result.games.push_back(std::move(stats));
                result.games_played += 1;
            } catch (const BudgetExceeded& e) {
                std::lock_guard lock(mutex);
                result.budget_exceeded = true;
                result.errors.push_back(e.what());
                stop.store(true);
                return;
            } catch (const std::exception& e) {
                std::lock_guard lock(mutex);
                result.errors.push_back(std::string(e.what()));
                stop.store(true);
                return;
            }
        }
    };

    const int n_threads = std::min(config.parallelism, config.n_games);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    std::sort(result.games.begin(), result.games.end(),
              [](const GameStats& a, const GameStats& b) { return a.game_id < b.game_id; });

    if (!result.budget_exceeded && result.errors.empty()) {
        double sum = 0.0;
        for (const GameStats& g : result.games) sum += g.normalized_score;
        nlohmann::ordered_json summary;
        summary["label"] = config.label;
        summary["n_games"] = result.games.size();
        summary["mean_normalized_score"] =
            result.games.empty() ? 0.0 : sum / result.games.size();
        summary["config"] = config.to_json();
        std::ofstream out(fs::path(config.output_dir) / "run_summary.json");
        out << summary.dump(2) << "\n";
    }
    return result;
}

HintEvent hint_event_from_json(const nlohmann::json& j) {
    HintEvent event;
    event.id = j.at("event_id").get<std::uint64_t>();
    event.game_id = j.value("game_id", "");
    event.round = j.value("round", 0);
    event.hinter = j.value("hinter", 0);
    event.recipient = j.value("recipient", 0);
    const std::string kind = j.value("hint_kind", "HINT_COLOR");
    event.kind = kind == "HINT_RANK" ? ActionKind::HintRank : ActionKind::HintColor;
    if (j.contains("hint_color") && j["hint_color"].is_string()) {
        event.hint_color = parse_color(j["hint_color"].get<std::string>());
    }
    if (j.contains("hint_rank") && j["hint_rank"].is_number_integer()) {
        event.hint_rank = j["hint_rank"].get<int>();
    }
    event.rationale = j.value("rationale", "");
    event.second_order_tom = j.value("second_order_tom", "");
    if (j.contains("first_order_tom") && j["first_order_tom"].is_string()) {
        event.first_order_tom = j["first_order_tom"].get<std::string>();
    }
    const std::string status = j.value("status", "pending");
    if (status == "paired") {
        event.status = HintStatus::Paired;
    } else if (status == "expired") {
        event.status = HintStatus::Expired;
    } else if (status == "flagged") {
        event.status = HintStatus::Flagged;
    } else {
        event.status = HintStatus::Pending;
    }
    return event;
}

GameStats stats_from_transcript(const GameTranscript& t) {
    if (!t.complete()) throw ConfigError("transcript has no final record");
    GameStats stats;
    stats.game_id = t.final_record.value("game_id", "");
    stats.raw_score = t.final_record.value("raw_score", 0);
    stats.normalized_score = t.final_record.value("normalized_score", 0.0);
    stats.rounds = t.final_record.value("rounds", 0);

    std::vector<JudgeScore> scores;
    scores.reserve(t.judge_scores.size());
    for (const auto& j : t.judge_scores) scores.push_back(judge_score_from_json(j));
    stats.tom = summarize_game(stats.game_id, scores);
    return stats;
}

ReplayVerdict replay_transcript(const std::string& path) {
    ReplayVerdict verdict;
    GameTranscript t;
    try {
        t = read_transcript(path);
    } catch (const Error& e) {
        verdict.error = e.what();
        return verdict;
    }
    if (t.header.is_null()) {
        verdict.error = "transcript has no header record";
        return verdict;
    }

    try {
        GameState state = new_game(t.header.at("n_players").get<int>(),
                                   t.header.at("seed").get<std::uint64_t>());
        for (const auto& turn : t.turns) {
            const Action action = action_from_json(turn.at("action"));
            auto [next_state, outcome] = apply_action(state, action);
            state = std::move(next_state);
            verdict.turns_checked += 1;
            const std::string expected = turn.at("state_digest").get<std::string>();
            const std::string actual = state_digest(state);
            if (expected != actual) {
                verdict.mismatches.push_back("turn " + std::to_string(verdict.turns_checked) +
                                             ": expected " + expected + " got " + actual);
            }
        }
        if (t.complete()) {
            const std::string expected = t.final_record.at("state_digest").get<std::string>();
            const std::string actual = state_digest(state);
            if (expected != actual) {
                verdict.mismatches.push_back("final: expected " + expected + " got " + actual);
            }
        }
    } catch (const Error& e) {
        verdict.error = e.what();
        return verdict;
    }
    verdict.ok = verdict.mismatches.empty();
    return verdict;
}

JudgeResult judge_phase(const std::string& run_dir, const ModelConfig& judge_config,
                        ChatClient& client) {
    JudgeResult result;
    for (const std::string& path : list_transcripts(run_dir)) {
        const GameTranscript t = read_transcript(path);
        if (!t.complete()) continue;

        std::set<std::uint64_t> scored;
        for (const auto& j : t.judge_scores) {
            scored.insert(j.at("event_id").get<std::uint64_t>());
        }

        std::optional<TranscriptWriter> writer;
        for (const auto& ej : t.hint_events) {
            const HintEvent event = hint_event_from_json(ej);
            if (!event.paired()) continue;
            if (scored.count(event.id)) {
                result.events_skipped += 1;
                continue;
            }
            try {
                const JudgeScore score = score_event(client, judge_config, event);
                if (!writer) writer.emplace(path);
                writer->write(judge_score_to_json(score));
                result.events_scored += 1;
            } catch (const JudgeParseFailure&) {
                result.events_unscorable += 1;
            }
        }
    }
    return result;
}

AnalysisOutput analyze_phase(const std::vector<std::string>& run_dirs,
                             const std::string& out_dir) {
    AnalysisOutput output;
    fs::create_directories(out_dir);

    struct AxisPoints {
        std::vector<std::pair<double, double>> per_game;
        std::vector<std::pair<double, double>> per_model;
    };
    std::map<std::string, AxisPoints> axes;

    for (const std::string& dir : run_dirs) {
        std::vector<GameStats> games;
        std::string label = fs::path(dir).filename().string();
        for (const std::string& path : list_transcripts(dir)) {
            const GameTranscript t = read_transcript(path);
            if (!t.complete()) continue;
            if (!t.header.is_null()) label = t.header.value("label", label);
            games.push_back(stats_from_transcript(t));
        }
        if (games.empty()) continue;

        const RunReport report = build_report(label, games);
        for (const GameStats& g : games) {
            if (g.tom.n_scored_events == 0) continue;
            axes["first_order"].per_game.emplace_back(g.normalized_score,
                                                      *g.tom.first_order_100());
            axes["second_order"].per_game.emplace_back(g.normalized_score,
                                                       *g.tom.second_order_100());
            axes["average"].per_game.emplace_back(g.normalized_score, *g.tom.overall_100());
        }
        if (report.mean_overall) {
            axes["first_order"].per_model.emplace_back(report.mean_score,
                                                       *report.mean_first_order);
            axes["second_order"].per_model.emplace_back(report.mean_score,
                                                        *report.mean_second_order);
            axes["average"].per_model.emplace_back(report.mean_score, *report.mean_overall);
        }
        output.reports.push_back(report);
    }

    for (auto& [axis, points] : axes) {
        try {
            const CorrelationResult r = correlate(points.per_game, axis, Granularity::PerGame);
            output.correlations.push_back(r);
            std::ofstream svg(fs::path(out_dir) / ("scatter_" + axis + ".svg"));
            svg << scatter_svg(points.per_game, r, "game score (0-100)",
                               "ToM " + axis + " (0-100)");
            std::ofstream csv(fs::path(out_dir) / ("points_" + axis + ".csv"));
            csv << points_csv(points.per_game, "game_score", "tom_" + axis);
        } catch (const DegenerateVariance&) {
            // fewer than 3 usable games or constant scores; nothing to plot
        }
        try {
            output.correlations.push_back(
                correlate(points.per_model, axis, Granularity::PerModel));
        } catch (const DegenerateVariance&) {
        }
    }

    std::ofstream report_file(fs::path(out_dir) / "report.csv");
    report_file << report_csv(output.reports);
    std::ofstream md_file(fs::path(out_dir) / "report.md");
    md_file << report_markdown(output.reports);
    std::ofstream corr_file(fs::path(out_dir) / "correlations.csv");
    corr_file << correlations_csv(output.correlations);
    return output;
}

}  // namespace hanabench
