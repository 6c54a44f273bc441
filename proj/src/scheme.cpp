#include "icrlab/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace icrlab {

namespace {

// L_i^j labels cover desired and mixed observations; I_i^j labels the rest.
bool same_label_family(ObsKind a, ObsKind b) {
    return (a == ObsKind::Interference) == (b == ObsKind::Interference);
}

}  // namespace

SymbolBlock SymbolBlock::random(int users, std::uint64_t seed) {
    if (users < 1) {
        throw std::invalid_argument("symbol block needs at least one user");
    }
    SymbolBlock block;
    block.symbols = ComplexMatrix(users, users);
    for (int u = 0; u < users; ++u) {
        rng::GaussianStream stream(
            rng::mix_key({seed, rng::kTagSymbols, static_cast<std::uint64_t>(u)}));
        for (int k = 0; k < users; ++k) {
            block.symbols(u, k) = stream.next();
        }
    }
    return block;
}

IcrSimulation::IcrSimulation(const CsitPattern& pattern, ChannelRealization channel,
                             SymbolBlock symbols, double power, bool noise,
                             std::uint64_t noise_seed)
    : schedule_(schedule_from_pattern(pattern)),
      channel_(std::move(channel)),
      symbols_(std::move(symbols)),
      power_(power),
      symbol_scale_(std::sqrt(power / pattern.users())),
      noise_seed_(noise_seed) {
    const int users = schedule_.users;
    if (channel_.users != users || channel_.slots < pattern.slots()) {
        throw std::invalid_argument("channel realization does not cover the pattern");
    }
    if (symbols_.symbols.rows() != users || symbols_.symbols.cols() != users) {
        throw std::invalid_argument("symbol block must be K x K");
    }
    if (!(power > 0.0) || !std::isfinite(power)) {
        throw std::invalid_argument("transmit power must be positive and finite");
    }
    record_.users = users;
    record_.power = power;
    record_.noise_enabled = noise;
    record_.slots.resize(pattern.slots());
    record_.obs.assign(users, std::vector<Observation>(pattern.slots()));
}

void IcrSimulation::receive(int slot) {
    const SlotRecord& tx = record_.slots[slot];
    const int users = record_.users;
    const int slots = static_cast<int>(record_.slots.size());
    for (int i = 0; i < users; ++i) {
        Observation& o = record_.obs[i][slot];
        o.coeff = ComplexMatrix::Zero(users, users);
        const ComplexRowVector h = channel_.row(i, slot);
        for (const auto& [user, map] : tx.tx_map) {
            o.coeff.row(user) += h * map;
        }
        o.noise_coeff = ComplexRowVector::Zero(slots);
        o.noise_coeff(slot) = 1.0;
        o.value = (h * tx.x)(0);
        if (record_.noise_enabled) {
            rng::GaussianStream stream(rng::mix_key({noise_seed_, rng::kTagNoise,
                                                     static_cast<std::uint64_t>(i),
                                                     static_cast<std::uint64_t>(slot)}));
            o.value += stream.next();
        }
    }
}

void IcrSimulation::phase1_transmit() {
    const int users = record_.users;
    for (int t = 0; t < users; ++t) {
        const int served = schedule_.phase1_user[t];
        SlotRecord& slot = record_.slots[t];
        slot.slot = t;
        slot.resurrection = false;
        ComplexMatrix map = symbol_scale_ * ComplexMatrix::Identity(users, users);
        slot.x = map * symbols_.symbols.row(served).transpose();
        slot.expected_power = map.squaredNorm();
        slot.tx_map.emplace_back(served, std::move(map));
        receive(t);
        ++slots_transmitted_;
        Observation& desired = record_.obs[served][t];
        desired.kind = ObsKind::Desired;
        for (int i = 0; i < users; ++i) {
            Observation& o = record_.obs[i][t];
            o.symbol_user = served;
            if (i != served) {
                o.kind = ObsKind::Interference;
            }
            o.ordinal = 1 + static_cast<int>(std::count_if(
                record_.obs[i].begin(), record_.obs[i].begin() + t,
                [&](const Observation& prior) { return same_label_family(prior.kind, o.kind); }));
        }
    }
}

const SlotRecord& IcrSimulation::phase2_beamform(int m) {
    const int users = record_.users;
    if (slots_transmitted_ < users) {
        throw std::logic_error("resurrection requested before the creation phase finished");
    }
    if (m < 0 || m >= static_cast<int>(schedule_.phase2.size())) {
        throw std::invalid_argument("resurrection slot index out of range");
    }
    const auto& plan = schedule_.phase2[m];
    if (plan.slot != slots_transmitted_) {
        throw std::logic_error("resurrection slots must be transmitted in order");
    }
    const int blind = plan.n_user;
    SlotRecord& slot = record_.slots[plan.slot];
    slot.slot = plan.slot;
    slot.resurrection = true;
    slot.x = ComplexVector::Zero(users);

    // One term per visible user i: the interference the blind user overheard
    // about i's symbols, steered into the null space of every other visible
    // user's current channel row. The final term resurrects the source
    // observer's interference in the blind user's own symbols, invisible to
    // every visible user.
    struct TermSpec {
        int observer;
        int symbol_user;
    };
    std::vector<TermSpec> terms;
    for (int i = 0; i < users; ++i) {
        if (i != blind) {
            terms.push_back({blind, i});
        }
    }
    terms.push_back({plan.source_user, blind});

    for (const TermSpec& spec : terms) {
        BeamTerm term;
        term.observer = spec.observer;
        term.symbol_user = spec.symbol_user;
        term.source_slot = schedule_.serving_slot(spec.symbol_user);
        for (int j = 0; j < users; ++j) {
            if (j != blind && j != spec.symbol_user) {
                term.nulled_at.push_back(j);
            }
        }
        std::vector<ComplexRowVector> null_rows;
        null_rows.reserve(term.nulled_at.size());
        for (int j : term.nulled_at) {
            null_rows.push_back(channel_.row(j, plan.slot));
        }
        const ComplexMatrix projector = null_space_projector(null_rows, users);
        ComplexVector direction;
        for (int column = 0; column < users; ++column) {
            try {
                direction = beam_column(projector, column);
                break;
            } catch (const DegenerateBeam&) {
                if (column + 1 == users) {
                    throw;
                }
            }
        }
        direction.normalize();

        const ComplexRowVector source_row = channel_.row(spec.observer, term.source_slot);
        // Equal power split: every term carries expected power P/K.
        term.beam = direction / source_row.norm();
        term.value = symbol_scale_ *
                     (source_row * symbols_.symbols.row(spec.symbol_user).transpose())(0);
        slot.x += term.beam * term.value;
        ComplexMatrix map = term.beam * (symbol_scale_ * source_row);
        slot.tx_map.emplace_back(spec.symbol_user, std::move(map));
        slot.beams.push_back(std::move(term));
    }
    slot.expected_power = 0.0;
    for (const auto& [user, map] : slot.tx_map) {
        slot.expected_power += map.squaredNorm();
    }
    receive(plan.slot);
    ++slots_transmitted_;
    for (int i = 0; i < users; ++i) {
        Observation& o = record_.obs[i][plan.slot];
        o.kind = i == blind ? ObsKind::Mixed : ObsKind::Desired;
        o.symbol_user = i == blind ? -1 : i;
        o.ordinal = 1 + static_cast<int>(std::count_if(
            record_.obs[i].begin(), record_.obs[i].begin() + plan.slot,
            [&](const Observation& prior) { return same_label_family(prior.kind, o.kind); }));
    }
    return slot;
}

CancelledCombination IcrSimulation::cancel_interference(int m) const {
    if (m < 0 || m >= static_cast<int>(schedule_.phase2.size())) {
        throw std::invalid_argument("resurrection slot index out of range");
    }
    const auto& plan = schedule_.phase2[m];
    if (slots_transmitted_ <= plan.slot) {
        throw std::logic_error("cancellation requested before the slot was transmitted");
    }
    const int blind = plan.n_user;
    const SlotRecord& slot = record_.slots[plan.slot];
    const Observation& heard = record_.obs[blind][plan.slot];
    CancelledCombination out;
    out.value = heard.value;
    out.coeff = heard.coeff;
    out.noise_coeff = heard.noise_coeff;
    const ComplexRowVector h = channel_.row(blind, plan.slot);
    for (const BeamTerm& term : slot.beams) {
        if (term.observer != blind) {
            continue;  // the fresh term, not re-heard interference
        }
        const Complex scalar = (h * term.beam)(0);
        const Observation& stored = record_.obs[blind][term.source_slot];
        out.value -= scalar * stored.value;
        out.coeff -= scalar * stored.coeff;
        out.noise_coeff -= scalar * stored.noise_coeff;
        out.cancel_coeffs.emplace_back(term.source_slot, scalar);
    }
    return out;
}

DecodingSystem IcrSimulation::assemble() const {
    const int users = record_.users;
    const int slots = static_cast<int>(record_.slots.size());
    if (slots_transmitted_ < slots) {
        throw std::logic_error("assemble requires the full transmission");
    }
    DecodingSystem system;
    system.users = users;
    system.power = power_;
    system.rx.resize(users);
    for (int i = 0; i < users; ++i) {
        ReceiverSystem& rx = system.rx[i];
        rx.g = ComplexMatrix(users, users);
        rx.values = ComplexVector(users);
        ComplexMatrix noise_rows(users, slots);
        rx.expected_row_user.assign(users, -1);

        const int own_slot = schedule_.serving_slot(i);
        const Observation& own = record_.obs[i][own_slot];
        rx.g.row(0) = own.coeff.row(i) / symbol_scale_;
        rx.values(0) = own.value;
        noise_rows.row(0) = own.noise_coeff;
        rx.expected_row_user[0] = i;

        for (int m = 0; m < static_cast<int>(schedule_.phase2.size()); ++m) {
            const auto& plan = schedule_.phase2[m];
            if (i != plan.n_user) {
                const Observation& o = record_.obs[i][plan.slot];
                rx.g.row(1 + m) = o.coeff.row(i) / symbol_scale_;
                rx.values(1 + m) = o.value;
                noise_rows.row(1 + m) = o.noise_coeff;
                rx.expected_row_user[1 + m] = plan.n_user;
            } else {
                const CancelledCombination cc = cancel_interference(m);
                rx.g.row(1 + m) = cc.coeff.row(i) / symbol_scale_;
                rx.values(1 + m) = cc.value;
                noise_rows.row(1 + m) = cc.noise_coeff;
                rx.expected_row_user[1 + m] = plan.source_user;
                rx.cancel_coeffs = cc.cancel_coeffs;
            }
        }
        rx.noise_cov = noise_rows * noise_rows.adjoint();
        Eigen::JacobiSVD<ComplexMatrix> svd(rx.g);
        rx.min_singular_value = svd.singularValues().minCoeff();
    }
    return system;
}

ComplexMatrix IcrSimulation::decode(const DecodingSystem& system) const {
    const int users = record_.users;
    ComplexMatrix decoded(users, users);
    for (int i = 0; i < users; ++i) {
        const ComplexMatrix physical = symbol_scale_ * system.rx[i].g;
        decoded.row(i) = solve(physical, system.rx[i].values).transpose();
    }
    return decoded;
}

namespace {

struct RowFit {
    Complex scale{};
    double residual = std::numeric_limits<double>::infinity();
};

RowFit fit_row(const ComplexRowVector& row, const ComplexRowVector& reference) {
    RowFit fit;
    const double row_norm = row.norm();
    const double ref_sq = reference.squaredNorm();
    if (row_norm == 0.0 || ref_sq == 0.0) {
        return fit;
    }
    fit.scale = (row * reference.adjoint())(0) / ref_sq;
    fit.residual = (row - fit.scale * reference).norm() / row_norm;
    return fit;
}

}  // namespace

std::vector<RowMatch> effective_decoding_matrix(const IcrRun& run, int user) {
    const int users = run.system.users;
    if (user < 0 || user >= users) {
        throw std::invalid_argument("user index out of range");
    }
    const int own_slot = run.schedule.serving_slot(user);
    const ReceiverSystem& rx = run.system.rx[user];
    std::vector<RowMatch> matches;
    for (int m = 0; m < users; ++m) {
        RowMatch best;
        for (int j = 0; j < users; ++j) {
            const RowFit fit = fit_row(rx.g.row(m), run.channel.row(j, own_slot));
            if (fit.residual < best.residual || best.channel_user < 0) {
                best = {j, fit.scale, fit.residual};
            }
        }
        if (!(best.residual < 1e-8)) {
            throw StructuralViolation("combination row " + std::to_string(m) +
                                      " of receiver " + std::to_string(user) +
                                      " matches no channel row");
        }
        matches.push_back(best);
    }
    return matches;
}

namespace {

IcrDiagnostics build_diagnostics(const IcrRun& run, const IcrSimulation& sim,
                                 std::uint64_t seed) {
    IcrDiagnostics diag;
    diag.users = run.system.users;
    diag.seed = seed;
    diag.slots = run.pattern.slots();
    diag.symbols = diag.users * diag.users;

    const double scale = sim.symbol_scale();
    const double sqrt_power = std::sqrt(run.record.power);
    for (const SlotRecord& slot : run.record.slots) {
        if (!slot.resurrection) {
            continue;
        }
        for (const BeamTerm& term : slot.beams) {
            for (int u : term.nulled_at) {
                const Complex leak = (run.channel.row(u, slot.slot) * term.beam)(0) * term.value;
                diag.nulling_max_leakage =
                    std::max(diag.nulling_max_leakage, std::abs(leak) / sqrt_power);
            }
        }
    }
    for (int m = 0; m < static_cast<int>(run.schedule.phase2.size()); ++m) {
        const CancelledCombination cc = sim.cancel_interference(m);
        const int blind = run.schedule.phase2[m].n_user;
        for (int u = 0; u < diag.users; ++u) {
            if (u == blind) {
                continue;
            }
            diag.foreign_residual = std::max(
                diag.foreign_residual, cc.coeff.row(u).cwiseAbs().maxCoeff() / scale);
        }
    }
    for (int i = 0; i < diag.users; ++i) {
        diag.min_singular_values.push_back(run.system.rx[i].min_singular_value);
        const int own_slot = run.schedule.serving_slot(i);
        for (int m = 0; m < diag.users; ++m) {
            const int expected = run.system.rx[i].expected_row_user[m];
            const RowFit fit =
                fit_row(run.system.rx[i].g.row(m), run.channel.row(expected, own_slot));
            diag.structural_max_residual = std::max(diag.structural_max_residual, fit.residual);
        }
    }
    return diag;
}

}  // namespace

IcrRun run_icr_on_pattern(const CsitPattern& pattern, std::uint64_t seed, double power,
                          bool noise) {
    const int users = pattern.users();
    ChannelRealization channel = sample_channel(users, pattern.slots(), seed);
    SymbolBlock symbols = SymbolBlock::random(users, seed);
    IcrSimulation sim(pattern, std::move(channel), std::move(symbols), power, noise, seed);
    sim.phase1_transmit();
    for (int m = 0; m < static_cast<int>(sim.schedule().phase2.size()); ++m) {
        sim.phase2_beamform(m);
    }
    IcrRun run{pattern,      sim.schedule(), sim.channel(), sim.symbols(),
               sim.record(), sim.assemble(), {},            {}};
    run.diag = build_diagnostics(run, sim, seed);
    try {
        run.decoded = sim.decode(run.system);
        run.diag.decode_max_error =
            (run.decoded - run.sent.symbols).cwiseAbs().maxCoeff();
        run.diag.success = noise || run.diag.decode_max_error < 1e-6;
        if (!run.diag.success) {
            run.diag.failure = "decode error above 1e-6";
        }
    } catch (const SingularSystem& e) {
        run.decoded = ComplexMatrix::Zero(users, users);
        run.diag.success = false;
        run.diag.decode_max_error = std::numeric_limits<double>::infinity();
        run.diag.failure = e.what();
    }
    return run;
}

IcrRun run_icr(int users, std::uint64_t seed, double power, bool noise) {
    return run_icr_on_pattern(icr_pattern(users), seed, power, noise);
}

}  // namespace icrlab
