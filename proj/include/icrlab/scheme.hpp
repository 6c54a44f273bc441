#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "icrlab/channel.hpp"
#include "icrlab/csit.hpp"
#include "icrlab/linalg.hpp"

namespace icrlab {

// K data symbols per receiver, unit average power each; row i belongs to
// receiver i.
struct SymbolBlock {
    ComplexMatrix symbols;

    static SymbolBlock random(int users, std::uint64_t seed);
};

enum class ObsKind { Desired, Interference, Mixed };

// One received value together with its exact expansion in the K^2 transmitted
// symbols and in the receiver's per-slot noise samples. The expansions make
// power accounting, cancellation and the decoding systems exact bookkeeping
// rather than estimation.
struct Observation {
    Complex value{};
    ObsKind kind = ObsKind::Interference;
    int symbol_user = -1;  // owner of the symbols heard here; -1 when mixed
    int ordinal = 0;       // j in the L_i^j / I_i^j labelling, per kind
    ComplexMatrix coeff;   // coeff(u, k): weight of symbol k of receiver u
    ComplexRowVector noise_coeff;
};

// One beamformed term of a resurrection slot.
struct BeamTerm {
    int observer = -1;     // receiver whose overheard interference is re-sent
    int source_slot = -1;  // creation slot that produced it
    int symbol_user = -1;  // receiver whose symbols the term carries
    std::vector<int> nulled_at;
    ComplexVector beam;  // power-weighted transmit direction
    Complex value{};     // interference value the transmitter reconstructs
};

struct SlotRecord {
    int slot = 0;
    bool resurrection = false;
    ComplexVector x;  // realized transmit vector
    // Exact symbol -> signal map, one K x K block per contributing receiver.
    std::vector<std::pair<int, ComplexMatrix>> tx_map;
    std::vector<BeamTerm> beams;
    double expected_power = 0.0;  // E ||X||^2 over unit-power symbols
};

struct TransmissionRecord {
    int users = 0;
    double power = 0.0;
    bool noise_enabled = false;
    std::vector<SlotRecord> slots;
    std::vector<std::vector<Observation>> obs;  // obs[receiver][slot]
};

// Result of subtracting the known creation-slot observations from a blind
// user's resurrection-slot observation.
struct CancelledCombination {
    Complex value{};
    ComplexMatrix coeff;  // residual K x K symbol expansion
    ComplexRowVector noise_coeff;
    std::vector<std::pair<int, Complex>> cancel_coeffs;  // (creation slot, scalar)
};

// Receiver i's assembled K x K system. g is normalized by sqrt(P/K) so it is
// independent of the transmit power; the physical combination values satisfy
// values = sqrt(P/K) g s_i + noise with covariance noise_cov.
struct ReceiverSystem {
    ComplexMatrix g;
    ComplexVector values;
    ComplexMatrix noise_cov;
    std::vector<int> expected_row_user;  // structural identity prediction per row
    std::vector<std::pair<int, Complex>> cancel_coeffs;
    double min_singular_value = 0.0;
};

struct DecodingSystem {
    int users = 0;
    double power = 0.0;
    std::vector<ReceiverSystem> rx;
};

// Per-row factorization row = scale * H_{channel_user}(serving slot).
struct RowMatch {
    int channel_user = -1;
    Complex scale{};
    double residual = 0.0;
};

struct IcrDiagnostics {
    int users = 0;
    std::uint64_t seed = 0;
    int slots = 0;
    int symbols = 0;
    bool success = false;
    double decode_max_error = 0.0;
    double structural_max_residual = 0.0;
    double nulling_max_leakage = 0.0;   // |H x beam term| / sqrt(P) at nulled users
    double foreign_residual = 0.0;      // cancelled combos, power-normalized
    std::vector<double> min_singular_values;
    std::string failure;
};

struct IcrRun {
    CsitPattern pattern;
    IcrSchedule schedule;
    ChannelRealization channel;
    SymbolBlock sent;
    TransmissionRecord record;
    DecodingSystem system;
    ComplexMatrix decoded;
    IcrDiagnostics diag;
};

// Drives one transmission: K creation slots, K-1 resurrection slots, receiver
// cancellation and decoding. The schedule is taken from the pattern; slots
// are strictly ordered (creation first).
class IcrSimulation {
  public:
    IcrSimulation(const CsitPattern& pattern, ChannelRealization channel, SymbolBlock symbols,
                  double power, bool noise, std::uint64_t noise_seed);

    // Creation phase: slot t sends sqrt(P/K) times the served user's symbols.
    void phase1_transmit();

    // Builds and transmits resurrection slot m (0-based). Requires phase 1.
    const SlotRecord& phase2_beamform(int m);

    // Physical-network-coding step for slot m's blind user.
    CancelledCombination cancel_interference(int m) const;

    DecodingSystem assemble() const;

    // Zero-forcing decode; throws SingularSystem on a rank-deficient system.
    ComplexMatrix decode(const DecodingSystem& system) const;

    const TransmissionRecord& record() const { return record_; }
    const IcrSchedule& schedule() const { return schedule_; }
    const ChannelRealization& channel() const { return channel_; }
    const SymbolBlock& symbols() const { return symbols_; }
    double symbol_scale() const { return symbol_scale_; }

  private:
    void receive(int slot);

    IcrSchedule schedule_;
    ChannelRealization channel_;
    SymbolBlock symbols_;
    double power_;
    double symbol_scale_;  // sqrt(P/K)
    std::uint64_t noise_seed_;
    TransmissionRecord record_;
    int slots_transmitted_ = 0;
};

// Full run under icr_pattern(users); channel, symbols and noise all derive
// from the seed.
IcrRun run_icr(int users, std::uint64_t seed, double power, bool noise);

// Same, under any pattern accepted by schedule_from_pattern.
IcrRun run_icr_on_pattern(const CsitPattern& pattern, std::uint64_t seed, double power,
                          bool noise);

// Factors each row of receiver `user`'s decoding matrix as a scalar multiple
// of one of the channel rows at that receiver's creation slot. Throws
// StructuralViolation when a row matches nothing within 1e-8.
std::vector<RowMatch> effective_decoding_matrix(const IcrRun& run, int user);

}  // namespace icrlab
