// Command-line front end: decodability campaigns, DoF slope estimation,
// region solving, bound evaluation, pattern enumeration and data export.
//
// Exit codes: 0 success, 2 argument error, 3 experiment failure.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "icrlab/channel.hpp"
#include "icrlab/csit.hpp"
#include "icrlab/dof.hpp"
#include "icrlab/experiments.hpp"
#include "icrlab/rational.hpp"

namespace {

using namespace icrlab;

void write_output(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("cannot open output file " + path);
    }
    writer(file);
}

std::array<Rational, 3> parse_gamma(const std::string& text) {
    std::array<Rational, 3> gamma;
    std::stringstream stream(text);
    std::string part;
    int count = 0;
    while (std::getline(stream, part, ',')) {
        if (count >= 3) {
            throw std::invalid_argument("--gamma expects exactly three fractions");
        }
        gamma[count++] = parse_rational(part);
    }
    if (count != 3) {
        throw std::invalid_argument("--gamma expects exactly three fractions");
    }
    return gamma;
}

std::string csv_quote(const std::string& text) {
    return '"' + text + '"';
}

std::string gamma_string(const CsitPattern& pattern) {
    std::string out;
    for (int u = 0; u < pattern.users(); ++u) {
        if (u > 0) {
            out.push_back(',');
        }
        out += to_string(pattern.per_user_perfect_fraction(u));
    }
    return out;
}

void write_pattern_row(const CsitPattern& pattern, std::ostream& out) {
    const auto fractions = pattern.state_fractions();
    out << csv_quote(pattern.to_string()) << ',' << to_string(fractions[0]) << ','
        << to_string(fractions[1]) << ',' << to_string(fractions[2]) << ','
        << csv_quote(gamma_string(pattern)) << '\n';
}

int run_simulate(const ExperimentConfig& config, bool records) {
    const MonteCarloSummary summary = monte_carlo_decode(config);
    const std::string doc = monte_carlo_json(summary, records);
    write_output(config.output_path, [&](std::ostream& out) { out << doc; });
    if (!config.output_path.empty()) {
        std::cout << "success_rate=" << format_double(summary.success_rate)
                  << " max_decode_error=" << format_double(summary.max_decode_error) << '\n';
    }
    return summary.success_rate < 1.0 ? 3 : 0;
}

int run_slope(const ExperimentConfig& config) {
    const SlopeEstimate estimate = dof_slope_estimate(config);
    write_output(config.output_path,
                 [&](std::ostream& out) { write_slope_csv(estimate, out); });
    const Rational expected = achievable_dof(config.users);
    std::cout << "slope=" << format_double(estimate.slope) << " expected="
              << to_string(expected) << " (" << format_double(to_double(expected))
              << ") r_squared=" << format_double(estimate.r_squared) << '\n';
    return 0;
}

int run_region(const std::array<Rational, 3>& gamma, const std::string& out_path) {
    write_output(out_path, [&](std::ostream& out) {
        out << "kind,d1,d2,d3,sum\n";
        const DofPoint optimum = dof_region_lp(gamma[0], gamma[1], gamma[2]);
        out << "lp_optimum," << to_string(optimum.d[0]) << ',' << to_string(optimum.d[1])
            << ',' << to_string(optimum.d[2]) << ',' << to_string(optimum.sum()) << '\n';
        try {
            const DofPoint closed = closed_form_region(gamma[0], gamma[1], gamma[2]);
            out << "closed_form," << to_string(closed.d[0]) << ',' << to_string(closed.d[1])
                << ',' << to_string(closed.d[2]) << ',' << to_string(closed.sum()) << '\n';
        } catch (const ActiveSetViolation&) {
            // box facet active: only the LP answer applies
        }
        for (const DofPoint& vertex : region_vertices(gamma[0], gamma[1], gamma[2])) {
            out << "vertex," << to_string(vertex.d[0]) << ',' << to_string(vertex.d[1])
                << ',' << to_string(vertex.d[2]) << ',' << to_string(vertex.sum()) << '\n';
        }
    });
    return 0;
}

int run_bounds(int users, int antennas, const std::string& gamma_text,
               const std::string& out_path) {
    write_output(out_path, [&](std::ostream& out) {
        out << "quantity,value\n";
        out << "achievable_dof," << to_string(achievable_dof(users)) << '\n';
        out << "mat_dof," << to_string(mat_dof(users)) << '\n';
        out << "tandon_bound," << to_string(tandon_bound(antennas, users)) << '\n';
        if (users >= 2) {
            const auto distribution = icr_state_distribution(users);
            out << "lambda_P," << to_string(distribution[0]) << '\n';
            out << "lambda_D," << to_string(distribution[1]) << '\n';
            out << "lambda_N," << to_string(distribution[2]) << '\n';
        }
        if (!gamma_text.empty()) {
            std::stringstream stream(gamma_text);
            std::string part;
            RegionSpec spec{users, {}};
            while (std::getline(stream, part, ',')) {
                spec.gamma.push_back(parse_rational(part));
            }
            out << "upper_bound_total," << to_string(upper_bound_total(spec)) << '\n';
        }
    });
    return 0;
}

int run_patterns(int users, bool enumerate, const std::string& out_path) {
    write_output(out_path, [&](std::ostream& out) {
        out << "pattern,lambda_P,lambda_D,lambda_N,gamma\n";
        if (enumerate) {
            for (const CsitPattern& pattern : enumerate_synergistic_patterns(users)) {
                write_pattern_row(pattern, out);
            }
        } else {
            write_pattern_row(icr_pattern(users), out);
        }
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"K-user MISO broadcast channel laboratory: interference"
                 " creation-resurrection under alternating CSIT"};
    app.require_subcommand(1);

    std::function<int()> action;

    int users = 3;
    int trials = 100;
    std::uint64_t seed = 1;
    std::vector<int> snr_exponents{30, 35, 40, 45, 50};
    std::string out_path;
    std::string config_path;
    std::string gamma_text = "2/5,1/5,1/5";
    bool records = false;

    auto used = [](CLI::App* cmd, const std::string& name) {
        const CLI::Option* option = cmd->get_option_no_throw(name);
        return option != nullptr && option->count() > 0;
    };
    auto make_config = [&](CLI::App* cmd, bool noise, int default_trials) {
        ExperimentConfig config;
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            if (!file) {
                throw std::invalid_argument("cannot read config file " + config_path);
            }
            std::stringstream buffer;
            buffer << file.rdbuf();
            config = ExperimentConfig::from_json_text(buffer.str());
        } else {
            config.noise = noise;
            config.snr_exponents = snr_exponents;
            config.trials = default_trials;
        }
        if (used(cmd, "--k")) config.users = users;
        if (used(cmd, "--trials")) config.trials = trials;
        if (used(cmd, "--seed")) config.seed = seed;
        if (used(cmd, "--snr-exp")) config.snr_exponents = snr_exponents;
        if (used(cmd, "--out")) config.output_path = out_path;
        config.validate();
        return config;
    };

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Noiseless Monte Carlo decodability campaign");
    simulate->add_option("--k", users, "number of users / transmit antennas");
    simulate->add_option("--trials", trials, "number of independent trials (default 1000)");
    simulate->add_option("--seed", seed, "campaign seed");
    simulate->add_option("--out", out_path, "write the JSON summary here");
    simulate->add_option("--config", config_path, "JSON experiment config");
    simulate->add_flag("--records", records, "include per-trial records");
    simulate->callback([&] {
        action = [&, simulate] { return run_simulate(make_config(simulate, false, 1000), records); };
    });

    CLI::App* slope = app.add_subcommand(
        "slope", "Estimate the total DoF from the sum-rate slope");
    slope->add_option("--k", users, "number of users / transmit antennas");
    slope->add_option("--trials", trials, "channel realizations per SNR point (default 50)");
    slope->add_option("--seed", seed, "campaign seed");
    slope->add_option("--snr-exp", snr_exponents, "power exponents, P = 2^e")
        ->delimiter(',');
    slope->add_option("--out", out_path, "write the per-point CSV here");
    slope->add_option("--config", config_path, "JSON experiment config");
    slope->callback([&] {
        action = [&, slope] { return run_slope(make_config(slope, true, 50)); };
    });

    CLI::App* region = app.add_subcommand(
        "region", "3-user DoF region: LP optimum, closed form, vertices");
    region->add_option("--gamma", gamma_text, "per-user perfect-CSIT fractions a,b,c");
    region->add_option("--out", out_path, "write the CSV here");
    region->callback([&] {
        action = [&] { return run_region(parse_gamma(gamma_text), out_path); };
    });

    int antennas = 0;
    std::string bounds_gamma;
    CLI::App* bounds = app.add_subcommand("bounds", "Closed-form DoF values and bounds");
    bounds->add_option("--k", users, "number of users");
    bounds->add_option("--m", antennas, "transmit antennas (defaults to K)");
    bounds->add_option("--gamma", bounds_gamma, "fractions for the total upper bound");
    bounds->add_option("--out", out_path, "write the CSV here");
    bounds->callback([&, bounds] {
        action = [&, bounds] {
            const int m = bounds->count("--m") ? antennas : users;
            return run_bounds(users, m, bounds_gamma, out_path);
        };
    });

    bool enumerate = false;
    CLI::App* patterns = app.add_subcommand("patterns", "CSIT patterns and their fractions");
    patterns->add_option("--k", users, "number of users");
    patterns->add_flag("--enumerate", enumerate,
                       "list every synergistic 5-slot pattern (3 users)");
    patterns->add_option("--out", out_path, "write the CSV here");
    patterns->callback([&] {
        action = [&] { return run_patterns(users, enumerate, out_path); };
    });

    std::string figure;
    int kmax = 10;
    bool tables = false;
    bool channel = false;
    int slots = 0;
    std::string out_dir = ".";
    CLI::App* exporter = app.add_subcommand("export", "Figure, table and channel data");
    exporter->add_option("--figure", figure, "fig2 | fig3 | fig4");
    exporter->add_flag("--tables", tables, "write table1.csv and table2.csv");
    exporter->add_flag("--channel", channel, "write a channel realization CSV");
    exporter->add_option("--k", users, "users (fig sweeps ignore this)");
    exporter->add_option("--kmax", kmax, "largest K for fig2/fig3 sweeps");
    exporter->add_option("--slots", slots, "slots for --channel (default 2K-1)");
    exporter->add_option("--seed", seed, "seed for --channel");
    exporter->add_option("--out", out_path, "output file");
    exporter->add_option("--out-dir", out_dir, "output directory for --tables");
    exporter->callback([&, exporter] {
        action = [&, exporter] {
            const int selected = (figure.empty() ? 0 : 1) + (tables ? 1 : 0) + (channel ? 1 : 0);
            if (selected != 1) {
                throw std::invalid_argument(
                    "export needs exactly one of --figure, --tables, --channel");
            }
            if (!figure.empty()) {
                const FigureId id = figure_id_from_string(figure);
                write_output(out_path, [&](std::ostream& out) {
                    export_figure_data(id, FigureParams{kmax}, out);
                });
            } else if (tables) {
                std::ofstream t1(out_dir + "/table1.csv", std::ios::binary);
                std::ofstream t2(out_dir + "/table2.csv", std::ios::binary);
                if (!t1 || !t2) {
                    throw std::invalid_argument("cannot write tables into " + out_dir);
                }
                export_table1(t1);
                export_table2(t2);
            } else {
                const int n = exporter->count("--slots") ? slots : 2 * users - 1;
                const ChannelRealization realization = sample_channel(users, n, seed);
                write_output(out_path, [&](std::ostream& out) {
                    write_channel_csv(realization, out);
                });
            }
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
