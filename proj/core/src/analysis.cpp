#include "hanabench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "hanabench/errors.hpp"

namespace hanabench {

namespace {

std::string fmt(double v, int precision = 2) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << v;
    return os.str();
}

std::string fmt_opt(const std::optional<double>& v, int precision = 2) {
    return v ? fmt(*v, precision) : "-";
}

}  // namespace

RunReport build_report(const std::string& label, const std::vector<GameStats>& games) {
    if (games.empty()) throw DegenerateVariance("build_report requires at least one game");

    RunReport report;
    report.label = label;
    report.n_games = static_cast<int>(games.size());
    report.low_n = games.size() < 2;

    double sum = 0.0;
    double rounds = 0.0;
    report.min_score = games.front().normalized_score;
    report.max_score = games.front().normalized_score;
    for (const GameStats& g : games) {
        sum += g.normalized_score;
        rounds += g.rounds;
        report.min_score = std::min(report.min_score, g.normalized_score);
        report.max_score = std::max(report.max_score, g.normalized_score);
    }
    report.mean_score = sum / games.size();
    report.mean_rounds = rounds / games.size();

    if (games.size() >= 2) {
        double ss = 0.0;
        for (const GameStats& g : games) {
            const double d = g.normalized_score - report.mean_score;
            ss += d * d;
        }
        report.std_score = std::sqrt(ss / (games.size() - 1));
    }

    double first = 0.0;
    double second = 0.0;
    double overall = 0.0;
    int scored_games = 0;
    for (const GameStats& g : games) {
        if (g.tom.n_scored_events == 0) continue;
        first += *g.tom.first_order_100();
        second += *g.tom.second_order_100();
        overall += *g.tom.overall_100();
        scored_games += 1;
    }
    if (scored_games > 0) {
        report.mean_first_order = first / scored_games;
        report.mean_second_order = second / scored_games;
        report.mean_overall = overall / scored_games;
    }
    return report;
}

CorrelationResult correlate(const std::vector<std::pair<double, double>>& points,
                            const std::string& axis, Granularity granularity) {
    const int n = static_cast<int>(points.size());
    if (n < 3) throw DegenerateVariance("correlation requires at least 3 points");

    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;

    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw DegenerateVariance("zero variance on one of the axes");
    }

    CorrelationResult result;
    result.axis = axis;
    result.granularity = granularity;
    result.n = n;
    result.pearson_r = sxy / std::sqrt(sxx * syy);
    result.slope = sxy / sxx;
    result.intercept = my - result.slope * mx;
    return result;
}

std::string report_csv(const std::vector<RunReport>& reports) {
    std::ostringstream os;
    os << "model,n_games,score_mean,score_std,score_min,score_max,rounds_mean,"
          "tom_first_order,tom_second_order,tom_average\n";
    for (const RunReport& r : reports) {
        os << r.label << ',' << r.n_games << ',' << fmt(r.mean_score) << ','
           << fmt(r.std_score) << ',' << fmt(r.min_score) << ',' << fmt(r.max_score) << ','
           << fmt(r.mean_rounds, 1) << ',' << fmt_opt(r.mean_first_order) << ','
           << fmt_opt(r.mean_second_order) << ',' << fmt_opt(r.mean_overall) << "\n";
    }
    return os.str();
}

std::string report_markdown(const std::vector<RunReport>& reports) {
    std::ostringstream os;
    os << "| Model | Score (Std.) | Min/Max | #Rounds | 1st-order | 2nd-order | Average |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const RunReport& r : reports) {
        os << "| " << r.label << " | " << fmt(r.mean_score) << " (" << fmt(r.std_score)
           << ") | " << fmt(r.min_score, 0) << "-" << fmt(r.max_score, 0) << " | "
           << fmt(r.mean_rounds, 0) << " | " << fmt_opt(r.mean_first_order) << " | "
           << fmt_opt(r.mean_second_order) << " | " << fmt_opt(r.mean_overall) << " |\n";
    }
    return os.str();
}

std::string correlations_csv(const std::vector<CorrelationResult>& results) {
    std::ostringstream os;
    os << "axis,granularity,pearson_r,slope,intercept,n\n";
    for (const CorrelationResult& c : results) {
        os << c.axis << ','
           << (c.granularity == Granularity::PerGame ? "per_game" : "per_model") << ','
           << fmt(c.pearson_r, 6) << ',' << fmt(c.slope, 6) << ',' << fmt(c.intercept, 6)
           << ',' << c.n << "\n";
    }
    return os.str();
}

std::string points_csv(const std::vector<std::pair<double, double>>& points,
                       const std::string& x_label, const std::string& y_label) {
    std::ostringstream os;
    os << x_label << ',' << y_label << "\n";
    for (const auto& [x, y] : points) {
        os << fmt(x, 6) << ',' << fmt(y, 6) << "\n";
    }
    return os.str();
}

std::string scatter_svg(const std::vector<std::pair<double, double>>& points,
                        const CorrelationResult& fit, const std::string& x_label,
                        const std::string& y_label) {
    constexpr int kWidth = 640;
    constexpr int kHeight = 480;
    constexpr int kMargin = 60;

    double xmin = points.front().first, xmax = xmin;
    double ymin = points.front().second, ymax = ymin;
    for (const auto& [x, y] : points) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    const double xpad = (xmax - xmin) * 0.05 + 1e-9;
    const double ypad = (ymax - ymin) * 0.05 + 1e-9;
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    auto sx = [&](double x) {
        return kMargin + (x - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin);
    };
    auto sy = [&](double y) {
        return kHeight - kMargin - (y - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "  <line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
       << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "  <line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
       << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "  <text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
       << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
    os << "  <text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"14\""
       << " transform=\"rotate(-90 16 " << kHeight / 2 << ")\">" << y_label << "</text>\n";

    for (const auto& [x, y] : points) {
        os << "  <circle cx=\"" << fmt(sx(x), 1) << "\" cy=\"" << fmt(sy(y), 1)
           << "\" r=\"3.5\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n";
    }

    const double y0 = fit.slope * xmin + fit.intercept;
    const double y1 = fit.slope * xmax + fit.intercept;
    os << "  <line x1=\"" << fmt(sx(xmin), 1) << "\" y1=\"" << fmt(sy(y0), 1) << "\" x2=\""
       << fmt(sx(xmax), 1) << "\" y2=\"" << fmt(sy(y1), 1)
       << "\" stroke=\"firebrick\" stroke-width=\"2\"/>\n";
    os << "  <text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin - 12
       << "\" text-anchor=\"end\" font-size=\"14\">r = " << fmt(fit.pearson_r, 3)
       << " (n = " << fit.n << ")</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace hanabench
