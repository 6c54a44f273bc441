#pragma once

#include <array>
#include <string>
#include <vector>

#include "icrlab/errors.hpp"
#include "icrlab/rational.hpp"

namespace icrlab {

// CSIT availability states, ordered P < D < N for canonical serialization.
enum class CsitState : unsigned char { Perfect = 0, Delayed = 1, None = 2 };

char to_char(CsitState state);
CsitState csit_state_from_char(char c);

// A users x slots grid of CSIT states. Serialized as comma-separated per-slot
// strings over {P, D, N}, e.g. "NDD,DND,DDN,PPN,PNP" (character u of a slot
// string is user u's state).
class CsitPattern {
  public:
    CsitPattern(int users, int slots, CsitState fill = CsitState::Delayed);

    static CsitPattern parse(const std::string& text);

    int users() const { return users_; }
    int slots() const { return slots_; }

    CsitState state(int user, int slot) const;
    void set_state(int user, int slot, CsitState state);

    std::string to_string() const;

    // (lambda_P, lambda_D, lambda_N) over the nK grid cells; sums to 1 exactly.
    std::array<Rational, 3> state_fractions() const;

    // gamma_i: fraction of slots where user i's CSIT is perfect.
    Rational per_user_perfect_fraction(int user) const;

    int count(CsitState state) const;

    bool operator==(const CsitPattern& other) const = default;

  private:
    int users_;
    int slots_;
    std::vector<CsitState> grid_;  // user-major
};

// The (2K-1)-slot creation/resurrection pattern. Creation slot t has N for
// user t and D elsewhere; resurrection slot K+m has N for user K-1-m (0-based,
// descending K-1 .. 1) and P elsewhere. K = 3 gives NDD,DND,DDN,PPN,PNP.
CsitPattern icr_pattern(int users);

// Transmission schedule extracted from a two-phase pattern: which user each
// creation slot serves, and for each resurrection slot its blind (N) user and
// the observer whose stored interference supplies that user's fresh
// combination. Throws PatternError when the pattern lacks the structure.
struct IcrSchedule {
    int users = 0;
    std::vector<int> phase1_user;  // creation slot t -> served (N) user
    struct Phase2Slot {
        int slot = 0;         // absolute slot index
        int n_user = 0;       // blind user r
        int source_user = 0;  // observer q supplying r's combination
    };
    std::vector<Phase2Slot> phase2;

    int serving_slot(int user) const;  // inverse of phase1_user
};

IcrSchedule schedule_from_pattern(const CsitPattern& pattern);

// Almost-sure decodability under continuous fading: every receiver must end
// up with K combination rows drawn from K distinct channel rows.
bool structurally_decodable(const IcrSchedule& schedule);

// All 5-slot alternation patterns for the 3-user channel built from a
// creation-phase permutation (one N per slot and per user, D elsewhere) and a
// resurrection pair (one N per slot, P elsewhere) that the scheme can decode.
// Returns 36 patterns in canonical (string) order.
std::vector<CsitPattern> enumerate_synergistic_patterns(int users);

}  // namespace icrlab
