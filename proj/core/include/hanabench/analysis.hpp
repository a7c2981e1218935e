#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hanabench/judge.hpp"

namespace hanabench {

// Per-game inputs to reporting: final score plus the game's ToM summary.
struct GameStats {
    std::string game_id;
    int raw_score = 0;
    double normalized_score = 0.0;  // raw x4, 0..100
    int rounds = 0;
    GameToMSummary tom;
};

struct RunReport {
    std::string label;
    int n_games = 0;
    double mean_score = 0.0;  // normalized, 0..100
    double std_score = 0.0;   // sample std (n-1); 0 for a single game
    double min_score = 0.0;
    double max_score = 0.0;
    double mean_rounds = 0.0;
    // 0..100 scale, averaged over games that scored at least one event.
    std::optional<double> mean_first_order;
    std::optional<double> mean_second_order;
    std::optional<double> mean_overall;
    bool low_n = false;  // fewer than 2 games
};

RunReport build_report(const std::string& label, const std::vector<GameStats>& games);

enum class Granularity { PerGame, PerModel };

struct CorrelationResult {
    std::string axis;  // "first_order" | "second_order" | "average"
    Granularity granularity = Granularity::PerGame;
    double pearson_r = 0.0;
    double slope = 0.0;      // least-squares fit y = slope*x + intercept
    double intercept = 0.0;
    int n = 0;
};

// Pearson r and least-squares line over (game score, tom score) points.
// Requires >= 3 points with nonzero variance on both axes.
CorrelationResult correlate(const std::vector<std::pair<double, double>>& points,
                            const std::string& axis, Granularity granularity);

// Table-1-style emission.
std::string report_csv(const std::vector<RunReport>& reports);
std::string report_markdown(const std::vector<RunReport>& reports);
std::string correlations_csv(const std::vector<CorrelationResult>& results);

// Minimal inline-SVG scatter with the fitted line.
std::string scatter_svg(const std::vector<std::pair<double, double>>& points,
                        const CorrelationResult& fit, const std::string& x_label,
                        const std::string& y_label);

std::string points_csv(const std::vector<std::pair<double, double>>& points,
                       const std::string& x_label, const std::string& y_label);

}  // namespace hanabench
