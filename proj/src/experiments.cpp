#include "icrlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "icrlab/channel.hpp"

namespace icrlab {

using OrderedJson = nlohmann::ordered_json;

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    OrderedJson parsed;
    try {
        parsed = OrderedJson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig config;
    if (parsed.contains("K")) config.users = parsed.at("K").get<int>();
    if (parsed.contains("trials")) config.trials = parsed.at("trials").get<int>();
    if (parsed.contains("seed")) config.seed = parsed.at("seed").get<std::uint64_t>();
    if (parsed.contains("snr_exponents")) {
        config.snr_exponents = parsed.at("snr_exponents").get<std::vector<int>>();
    }
    if (parsed.contains("noise")) config.noise = parsed.at("noise").get<bool>();
    if (parsed.contains("output_path")) {
        config.output_path = parsed.at("output_path").get<std::string>();
    }
    config.validate();
    return config;
}

void ExperimentConfig::validate() const {
    if (users < 2) {
        throw std::invalid_argument("config needs K >= 2");
    }
    if (trials < 1) {
        throw std::invalid_argument("config needs at least one trial");
    }
    for (size_t i = 1; i < snr_exponents.size(); ++i) {
        if (snr_exponents[i] <= snr_exponents[i - 1]) {
            throw std::invalid_argument("snr exponents must be strictly increasing");
        }
    }
}

std::uint64_t trial_seed(std::uint64_t base, int trial_index) {
    std::uint64_t state = static_cast<std::uint64_t>(trial_index);
    return base ^ rng::splitmix64(state);
}

MonteCarloSummary monte_carlo_decode(const ExperimentConfig& config) {
    config.validate();
    MonteCarloSummary summary;
    summary.users = config.users;
    summary.trials = config.trials;
    summary.seed = config.seed;
    summary.min_sv_min = std::numeric_limits<double>::infinity();
    double sv_sum = 0.0;
    int sv_count = 0;
    for (int t = 0; t < config.trials; ++t) {
        const std::uint64_t seed = trial_seed(config.seed, t);
        try {
            IcrRun run = run_icr(config.users, seed, config.users, /*noise=*/false);
            summary.trial_diags.push_back(run.diag);
            if (run.diag.success) {
                ++summary.successes;
            }
            summary.max_decode_error =
                std::max(summary.max_decode_error, run.diag.decode_max_error);
            for (double sv : run.diag.min_singular_values) {
                summary.min_sv_min = std::min(summary.min_sv_min, sv);
                summary.min_sv_max = std::max(summary.min_sv_max, sv);
                sv_sum += sv;
                ++sv_count;
            }
        } catch (const std::exception& e) {
            IcrDiagnostics failed;
            failed.users = config.users;
            failed.seed = seed;
            failed.success = false;
            failed.failure = e.what();
            summary.trial_diags.push_back(failed);
        }
    }
    summary.success_rate =
        static_cast<double>(summary.successes) / static_cast<double>(config.trials);
    if (sv_count > 0) {
        summary.min_sv_mean = sv_sum / sv_count;
    } else {
        summary.min_sv_min = 0.0;
    }
    return summary;
}

namespace {

OrderedJson diag_to_json(const IcrDiagnostics& diag) {
    OrderedJson record;
    record["K"] = diag.users;
    record["seed"] = diag.seed;
    record["min_singular_value"] = diag.min_singular_values;
    record["decode_max_error"] = diag.decode_max_error;
    record["slots"] = diag.slots;
    record["symbols"] = diag.symbols;
    record["success"] = diag.success;
    if (!diag.failure.empty()) {
        record["failure"] = diag.failure;
    }
    return record;
}

}  // namespace

std::string monte_carlo_json(const MonteCarloSummary& summary, bool per_trial) {
    OrderedJson doc;
    doc["K"] = summary.users;
    doc["trials"] = summary.trials;
    doc["seed"] = summary.seed;
    doc["success_rate"] = summary.success_rate;
    doc["max_decode_error"] = summary.max_decode_error;
    doc["min_singular_value"] = {{"min", summary.min_sv_min},
                                 {"mean", summary.min_sv_mean},
                                 {"max", summary.min_sv_max}};
    if (per_trial) {
        OrderedJson records = OrderedJson::array();
        for (const IcrDiagnostics& diag : summary.trial_diags) {
            records.push_back(diag_to_json(diag));
        }
        doc["records"] = std::move(records);
    }
    return doc.dump(2) + "\n";
}

SlopeEstimate dof_slope_estimate(const ExperimentConfig& config) {
    config.validate();
    if (config.snr_exponents.size() < 3) {
        throw std::invalid_argument("slope estimation needs at least three SNR points");
    }
    const int slots = 2 * config.users - 1;
    // The normalized decoding systems are power-independent, so each trial is
    // simulated once and rated at every SNR point.
    std::vector<DecodingSystem> systems;
    systems.reserve(config.trials);
    for (int t = 0; t < config.trials; ++t) {
        IcrRun run = run_icr(config.users, trial_seed(config.seed, t),
                             /*power=*/config.users, config.noise);
        systems.push_back(std::move(run.system));
    }
    SlopeEstimate estimate;
    for (int exponent : config.snr_exponents) {
        const double power = std::ldexp(1.0, exponent);
        double mean_rate = 0.0;
        for (const DecodingSystem& system : systems) {
            double sum_rate = 0.0;
            for (const ReceiverSystem& rx : system.rx) {
                sum_rate += logdet_rate(rx.g, rx.noise_cov, power);
            }
            mean_rate += sum_rate / slots;
        }
        mean_rate /= static_cast<double>(systems.size());
        estimate.point_rates.emplace_back(exponent, mean_rate);
    }
    const double n = static_cast<double>(estimate.point_rates.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [e, rate] : estimate.point_rates) {
        sx += e;
        sy += rate;
        sxx += static_cast<double>(e) * e;
        sxy += e * rate;
    }
    estimate.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    estimate.intercept = (sy - estimate.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_y = sy / n;
    for (const auto& [e, rate] : estimate.point_rates) {
        const double fit = estimate.slope * e + estimate.intercept;
        ss_res += (rate - fit) * (rate - fit);
        ss_tot += (rate - mean_y) * (rate - mean_y);
    }
    estimate.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    return estimate;
}

void write_slope_csv(const SlopeEstimate& estimate, std::ostream& out) {
    out << "snr_exponent,mean_sum_rate_per_slot\n";
    for (const auto& [e, rate] : estimate.point_rates) {
        out << e << ',' << format_double(rate) << '\n';
    }
    out << "# slope," << format_double(estimate.slope) << '\n';
    out << "# intercept," << format_double(estimate.intercept) << '\n';
    out << "# r_squared," << format_double(estimate.r_squared) << '\n';
}

FigureId figure_id_from_string(const std::string& name) {
    if (name == "fig2") return FigureId::Fig2;
    if (name == "fig3") return FigureId::Fig3;
    if (name == "fig4") return FigureId::Fig4;
    throw std::invalid_argument("unknown figure id \"" + name + "\" (expected fig2|fig3|fig4)");
}

namespace {

void export_fig2(int kmax, std::ostream& out) {
    out << "K,icr_dof,mat_dof\n";
    for (int k = 1; k <= kmax; ++k) {
        out << k << ',' << to_string(achievable_dof(k)) << ',' << to_string(mat_dof(k))
            << '\n';
    }
}

void export_fig3(int kmax, std::ostream& out) {
    out << "K,achievable,upper_bound_scheme_gammas,upper_bound_gamma_1\n";
    for (int k = 2; k <= kmax; ++k) {
        const CsitPattern pattern = icr_pattern(k);
        RegionSpec scheme_spec{k, {}};
        for (int i = 0; i < k; ++i) {
            scheme_spec.gamma.push_back(pattern.per_user_perfect_fraction(i));
        }
        const RegionSpec full_spec{k, std::vector<Rational>(k, Rational(1))};
        out << k << ',' << to_string(achievable_dof(k)) << ','
            << to_string(upper_bound_total(scheme_spec)) << ','
            << to_string(upper_bound_total(full_spec)) << '\n';
    }
}

void export_fig4(std::ostream& out) {
    const CsitPattern pattern = icr_pattern(3);
    const Rational g1 = pattern.per_user_perfect_fraction(0);
    const Rational g2 = pattern.per_user_perfect_fraction(1);
    const Rational g3 = pattern.per_user_perfect_fraction(2);
    out << "kind,d1,d2,d3\n";
    for (const DofPoint& vertex : region_vertices(g1, g2, g3)) {
        out << "vertex," << to_string(vertex.d[0]) << ',' << to_string(vertex.d[1]) << ','
            << to_string(vertex.d[2]) << '\n';
    }
    const Rational per_user = achievable_dof(3) / 3;
    out << "achieved_icr," << to_string(per_user) << ',' << to_string(per_user) << ','
        << to_string(per_user) << '\n';
    const DofPoint optimum = dof_region_lp(g1, g2, g3);
    out << "lp_optimum," << to_string(optimum.d[0]) << ',' << to_string(optimum.d[1]) << ','
        << to_string(optimum.d[2]) << '\n';
}

}  // namespace

void export_figure_data(FigureId figure, const FigureParams& params, std::ostream& out) {
    if (params.kmax < 2) {
        throw std::invalid_argument("kmax must be at least 2");
    }
    switch (figure) {
        case FigureId::Fig2: export_fig2(params.kmax, out); return;
        case FigureId::Fig3: export_fig3(params.kmax, out); return;
        case FigureId::Fig4: export_fig4(out); return;
    }
    throw std::invalid_argument("unknown figure id");
}

void export_table1(std::ostream& out) {
    out << "kind,s1,s2,s3,s4,s5\n";
    // Grouped rows: one canonical resurrection pair per creation permutation,
    // blind users taken from the last two creation slots in reverse order.
    std::vector<int> perm{0, 1, 2};
    std::vector<std::string> groups;
    do {
        CsitPattern pattern(3, 5, CsitState::Delayed);
        for (int t = 0; t < 3; ++t) {
            pattern.set_state(perm[t], t, CsitState::None);
        }
        for (int u = 0; u < 3; ++u) {
            pattern.set_state(u, 3, u == perm[2] ? CsitState::None : CsitState::Perfect);
            pattern.set_state(u, 4, u == perm[1] ? CsitState::None : CsitState::Perfect);
        }
        groups.push_back(pattern.to_string());
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(groups.begin(), groups.end());
    for (const std::string& row : groups) {
        out << "group," << row << '\n';
    }
    for (const CsitPattern& pattern : enumerate_synergistic_patterns(3)) {
        out << "sequence," << pattern.to_string() << '\n';
    }
}

void export_table2(std::ostream& out) {
    struct Row {
        const char* gamma[3];
        const char* d[3];
        const char* scheme;
    };
    static constexpr Row kRows[] = {
        {{"1", "0", "0"}, {"1", "0", "0"}, ""},
        {{"0", "1", "0"}, {"0", "1", "0"}, ""},
        {{"0", "0", "1"}, {"0", "0", "1"}, ""},
        {{"1/3", "1/3", "1/3"}, {"1/3", "1/3", "1/3"}, "time sharing"},
        {{"2/5", "1/5", "1/5"}, {"3/5", "3/5", "3/5"}, "ICR"},
        {{"1/5", "2/5", "1/5"}, {"3/5", "3/5", "3/5"}, "ICR"},
        {{"1/5", "1/5", "2/5"}, {"3/5", "3/5", "3/5"}, "ICR"},
        {{"1", "1", "1"}, {"1", "1", "1"}, "conventional"},
    };
    out << "gamma1,gamma2,gamma3,d1,d2,d3,scheme\n";
    for (const Row& row : kRows) {
        out << row.gamma[0] << ',' << row.gamma[1] << ',' << row.gamma[2] << ',' << row.d[0]
            << ',' << row.d[1] << ',' << row.d[2] << ',' << row.scheme << '\n';
    }
}

}  // namespace icrlab
