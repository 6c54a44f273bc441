#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "icrlab/experiments.hpp"

using namespace icrlab;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST_CASE("trial seeds are stable and collision-free over a campaign") {
    CHECK(trial_seed(42, 0) == trial_seed(42, 0));
    std::set<std::uint64_t> seen;
    for (int t = 0; t < 10000; ++t) {
        seen.insert(trial_seed(42, t));
    }
    CHECK(seen.size() == 10000);
}

TEST_CASE("config validation") {
    ExperimentConfig config;
    config.users = 1;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.users = 3;
    config.trials = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.trials = 5;
    config.snr_exponents = {30, 30};
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.snr_exponents = {30, 35, 40};
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("config round-trips through JSON") {
    const std::string text = R"({
        "K": 4, "trials": 7, "seed": 99,
        "snr_exponents": [30, 40, 50],
        "noise": true, "output_path": "out.csv"
    })";
    const ExperimentConfig config = ExperimentConfig::from_json_text(text);
    CHECK(config.users == 4);
    CHECK(config.trials == 7);
    CHECK(config.seed == 99);
    CHECK(config.snr_exponents == std::vector<int>{30, 40, 50});
    CHECK(config.noise);
    CHECK(config.output_path == "out.csv");
    CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"K": 1})"), std::invalid_argument);
}

TEST_CASE("monte carlo campaigns decode every trial") {
    for (const int users : {2, 3}) {
        ExperimentConfig config;
        config.users = users;
        config.trials = 200;
        config.seed = 7;
        const MonteCarloSummary summary = monte_carlo_decode(config);
        CHECK(summary.success_rate == 1.0);
        CHECK(summary.successes == 200);
        CHECK(summary.max_decode_error < 1e-6);
        CHECK(summary.min_sv_min > 0.0);
        CHECK(summary.min_sv_mean >= summary.min_sv_min);
        CHECK(summary.min_sv_max >= summary.min_sv_mean);
        CHECK(summary.trial_diags.size() == 200);
    }
}

TEST_CASE("monte carlo JSON carries the per-trial records on request") {
    ExperimentConfig config;
    config.users = 2;
    config.trials = 3;
    config.seed = 11;
    const MonteCarloSummary summary = monte_carlo_decode(config);
    const std::string summary_only = monte_carlo_json(summary, false);
    CHECK(summary_only.find("\"success_rate\"") != std::string::npos);
    CHECK(summary_only.find("\"records\"") == std::string::npos);
    const std::string with_records = monte_carlo_json(summary, true);
    CHECK(with_records.find("\"records\"") != std::string::npos);
    CHECK(with_records.find("\"symbols\": 4") != std::string::npos);
    CHECK(monte_carlo_json(summary, true) == with_records);  // deterministic
}

TEST_CASE("slope estimate lands on the sum DoF") {
    ExperimentConfig config;
    config.noise = true;
    config.trials = 10;
    config.seed = 3;
    config.snr_exponents = {30, 35, 40};
    for (const int users : {2, 3}) {
        config.users = users;
        const SlopeEstimate estimate = dof_slope_estimate(config);
        const double expected = to_double(achievable_dof(users));
        CHECK(std::abs(estimate.slope - expected) / expected < 0.02);
        CHECK(estimate.r_squared > 0.999);
        CHECK(estimate.point_rates.size() == 3);
        // sum rates grow with power
        CHECK(estimate.point_rates[0].second < estimate.point_rates[2].second);
    }
    config.snr_exponents = {30, 35};
    CHECK_THROWS_AS(dof_slope_estimate(config), std::invalid_argument);
}

TEST_CASE("slope estimates are monotone non-decreasing in K") {
    ExperimentConfig config;
    config.noise = true;
    config.trials = 10;
    config.seed = 5;
    config.snr_exponents = {30, 35, 40};
    double previous = 0.0;
    for (int users = 2; users <= 6; ++users) {
        config.users = users;
        const SlopeEstimate estimate = dof_slope_estimate(config);
        CHECK(estimate.slope >= previous);
        CHECK(estimate.r_squared >= 0.0);
        CHECK(estimate.r_squared <= 1.0);
        previous = estimate.slope;
    }
}

TEST_CASE("slope csv layout") {
    ExperimentConfig config;
    config.users = 2;
    config.noise = true;
    config.trials = 4;
    config.snr_exponents = {30, 35, 40};
    const SlopeEstimate estimate = dof_slope_estimate(config);
    std::ostringstream out;
    write_slope_csv(estimate, out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "snr_exponent,mean_sum_rate_per_slot");
    CHECK(lines[4].rfind("# slope,", 0) == 0);
}

TEST_CASE("figure 2 data matches the closed forms") {
    std::ostringstream out;
    export_figure_data(FigureId::Fig2, FigureParams{12}, out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 13);
    CHECK(lines[0] == "K,icr_dof,mat_dof");
    CHECK(lines[3] == "3,9/5,18/11");
    for (int k = 1; k <= 12; ++k) {
        std::ostringstream row;
        row << k << ',' << to_string(achievable_dof(k)) << ',' << to_string(mat_dof(k));
        CHECK(lines[k] == row.str());
    }
}

TEST_CASE("figure 3 data matches the bounds") {
    std::ostringstream out;
    export_figure_data(FigureId::Fig3, FigureParams{8}, out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 8);
    CHECK(lines[0] == "K,achievable,upper_bound_scheme_gammas,upper_bound_gamma_1");
    for (int k = 2; k <= 8; ++k) {
        std::ostringstream row;
        const CsitPattern pattern = icr_pattern(k);
        RegionSpec spec{k, {}};
        for (int i = 0; i < k; ++i) {
            spec.gamma.push_back(pattern.per_user_perfect_fraction(i));
        }
        row << k << ',' << to_string(achievable_dof(k)) << ','
            << to_string(upper_bound_total(spec)) << ',' << k;
        CHECK(lines[k - 1] == row.str());
    }
}

TEST_CASE("figure 4 data carries the region, the achieved point and the optimum") {
    std::ostringstream out;
    export_figure_data(FigureId::Fig4, FigureParams{}, out);
    const std::string text = out.str();
    CHECK(text.find("kind,d1,d2,d3\n") == 0);
    CHECK(text.find("achieved_icr,3/5,3/5,3/5\n") != std::string::npos);
    CHECK(text.find("lp_optimum,21/25,16/25,16/25\n") != std::string::npos);
    CHECK(lines_of(text).size() > 5);  // several vertices
}

TEST_CASE("table exports") {
    std::ostringstream t1;
    export_table1(t1);
    const auto rows = lines_of(t1.str());
    CHECK(rows[0] == "kind,s1,s2,s3,s4,s5");
    int groups = 0, sequences = 0;
    for (const std::string& row : rows) {
        if (row.rfind("group,", 0) == 0) ++groups;
        if (row.rfind("sequence,", 0) == 0) ++sequences;
    }
    CHECK(groups == 6);
    CHECK(sequences == 36);
    CHECK(t1.str().find("group,NDD,DND,DDN,PPN,PNP") != std::string::npos);
    CHECK(t1.str().find("sequence,NDD,DND,DDN,PPN,PNP") != std::string::npos);

    std::ostringstream t2;
    export_table2(t2);
    const auto rows2 = lines_of(t2.str());
    REQUIRE(rows2.size() == 9);
    CHECK(rows2[0] == "gamma1,gamma2,gamma3,d1,d2,d3,scheme");
    CHECK(t2.str().find("2/5,1/5,1/5,3/5,3/5,3/5,ICR") != std::string::npos);
    CHECK(t2.str().find("1,0,0,1,0,0,\n") != std::string::npos);
}

TEST_CASE("exports are byte-stable") {
    for (const FigureId id : {FigureId::Fig2, FigureId::Fig3, FigureId::Fig4}) {
        std::ostringstream a, b;
        export_figure_data(id, FigureParams{6}, a);
        export_figure_data(id, FigureParams{6}, b);
        CHECK(a.str() == b.str());
    }
    CHECK_THROWS_AS(figure_id_from_string("fig9"), std::invalid_argument);
    CHECK(figure_id_from_string("fig4") == FigureId::Fig4);
}
