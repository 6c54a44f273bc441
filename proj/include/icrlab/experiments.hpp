#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "icrlab/dof.hpp"
#include "icrlab/scheme.hpp"

namespace icrlab {

struct ExperimentConfig {
    int users = 3;
    int trials = 100;
    std::uint64_t seed = 1;
    std::vector<int> snr_exponents;  // transmit power P = 2^e per point
    bool noise = false;
    std::string output_path;

    static ExperimentConfig from_json_text(const std::string& text);
    void validate() const;
};

// Stable per-trial seed: base xor hash(trial index), so campaigns are
// insensitive to execution order.
std::uint64_t trial_seed(std::uint64_t base, int trial_index);

struct MonteCarloSummary {
    int users = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    int successes = 0;
    double success_rate = 0.0;
    double max_decode_error = 0.0;
    double min_sv_min = 0.0;
    double min_sv_mean = 0.0;
    double min_sv_max = 0.0;
    std::vector<IcrDiagnostics> trial_diags;
};

// Noiseless decodability campaign over config.trials independent seeds.
// Trial failures are counted, never fatal.
MonteCarloSummary monte_carlo_decode(const ExperimentConfig& config);

std::string monte_carlo_json(const MonteCarloSummary& summary, bool per_trial);

struct SlopeEstimate {
    double slope = 0.0;  // bits per log2(P): the estimated total DoF
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<int, double>> point_rates;  // (exponent, mean sum rate per slot)
};

// Sum-rate slope against log2 P across config.snr_exponents, averaged over
// config.trials channel realizations per point.
SlopeEstimate dof_slope_estimate(const ExperimentConfig& config);

void write_slope_csv(const SlopeEstimate& estimate, std::ostream& out);

enum class FigureId { Fig2, Fig3, Fig4 };
FigureId figure_id_from_string(const std::string& name);

struct FigureParams {
    int kmax = 10;  // fig2/fig3 sweep upper bound
};

void export_figure_data(FigureId figure, const FigureParams& params, std::ostream& out);

void export_table1(std::ostream& out);
void export_table2(std::ostream& out);

// %.12g, shared by the CSV writers.
std::string format_double(double value);

}  // namespace icrlab
