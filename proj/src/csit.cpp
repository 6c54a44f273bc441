#include "icrlab/csit.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace icrlab {

char to_char(CsitState state) {
    switch (state) {
        case CsitState::Perfect: return 'P';
        case CsitState::Delayed: return 'D';
        case CsitState::None: return 'N';
    }
    throw std::invalid_argument("invalid CsitState");
}

CsitState csit_state_from_char(char c) {
    switch (c) {
        case 'P': return CsitState::Perfect;
        case 'D': return CsitState::Delayed;
        case 'N': return CsitState::None;
        default:
            throw std::invalid_argument(std::string("invalid CSIT state character '") + c + "'");
    }
}

CsitPattern::CsitPattern(int users, int slots, CsitState fill) : users_(users), slots_(slots) {
    if (users < 1 || slots < 1) {
        throw std::invalid_argument("pattern needs at least one user and one slot");
    }
    grid_.assign(static_cast<size_t>(users) * slots, fill);
}

CsitPattern CsitPattern::parse(const std::string& text) {
    std::vector<std::string> slot_strings;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            slot_strings.push_back(current);
            current.clear();
        } else if (c != ' ') {
            current.push_back(c);
        }
    }
    slot_strings.push_back(current);
    if (slot_strings.empty() || slot_strings.front().empty()) {
        throw std::invalid_argument("empty pattern text");
    }
    const int users = static_cast<int>(slot_strings.front().size());
    CsitPattern pattern(users, static_cast<int>(slot_strings.size()));
    for (int t = 0; t < pattern.slots(); ++t) {
        if (static_cast<int>(slot_strings[t].size()) != users) {
            throw std::invalid_argument("slot strings have inconsistent lengths");
        }
        for (int u = 0; u < users; ++u) {
            pattern.set_state(u, t, csit_state_from_char(slot_strings[t][u]));
        }
    }
    return pattern;
}

CsitState CsitPattern::state(int user, int slot) const {
    if (user < 0 || user >= users_ || slot < 0 || slot >= slots_) {
        throw std::invalid_argument("pattern index out of range");
    }
    return grid_[static_cast<size_t>(user) * slots_ + slot];
}

void CsitPattern::set_state(int user, int slot, CsitState state) {
    if (user < 0 || user >= users_ || slot < 0 || slot >= slots_) {
        throw std::invalid_argument("pattern index out of range");
    }
    grid_[static_cast<size_t>(user) * slots_ + slot] = state;
}

std::string CsitPattern::to_string() const {
    std::string out;
    out.reserve(static_cast<size_t>(slots_) * (users_ + 1));
    for (int t = 0; t < slots_; ++t) {
        if (t > 0) {
            out.push_back(',');
        }
        for (int u = 0; u < users_; ++u) {
            out.push_back(to_char(state(u, t)));
        }
    }
    return out;
}

std::array<Rational, 3> CsitPattern::state_fractions() const {
    const Rational cells(static_cast<long>(users_) * slots_);
    return {Rational(count(CsitState::Perfect)) / cells,
            Rational(count(CsitState::Delayed)) / cells,
            Rational(count(CsitState::None)) / cells};
}

Rational CsitPattern::per_user_perfect_fraction(int user) const {
    if (user < 0 || user >= users_) {
        throw std::invalid_argument("user index out of range");
    }
    int perfect = 0;
    for (int t = 0; t < slots_; ++t) {
        if (state(user, t) == CsitState::Perfect) {
            ++perfect;
        }
    }
    return Rational(perfect) / Rational(slots_);
}

int CsitPattern::count(CsitState state) const {
    return static_cast<int>(std::count(grid_.begin(), grid_.end(), state));
}

CsitPattern icr_pattern(int users) {
    if (users < 2) {
        throw std::invalid_argument("the scheme needs at least two users");
    }
    const int slots = 2 * users - 1;
    CsitPattern pattern(users, slots, CsitState::Delayed);
    for (int t = 0; t < users; ++t) {
        pattern.set_state(t, t, CsitState::None);
    }
    for (int m = 0; m < users - 1; ++m) {
        const int slot = users + m;
        const int blind = users - 1 - m;  // descending K-1 .. 1
        for (int u = 0; u < users; ++u) {
            pattern.set_state(u, slot, u == blind ? CsitState::None : CsitState::Perfect);
        }
    }
    return pattern;
}

namespace {

// Classification of one slot column: exactly one N, and the rest all D
// (creation) or all P (resurrection).
struct SlotShape {
    bool creation = false;
    bool resurrection = false;
    int n_user = -1;
};

SlotShape classify_slot(const CsitPattern& pattern, int slot) {
    SlotShape shape;
    int n_count = 0, d_count = 0, p_count = 0;
    for (int u = 0; u < pattern.users(); ++u) {
        switch (pattern.state(u, slot)) {
            case CsitState::None:
                ++n_count;
                shape.n_user = u;
                break;
            case CsitState::Delayed: ++d_count; break;
            case CsitState::Perfect: ++p_count; break;
        }
    }
    if (n_count == 1 && d_count == pattern.users() - 1) {
        shape.creation = true;
    }
    if (n_count == 1 && p_count == pattern.users() - 1) {
        shape.resurrection = true;
    }
    return shape;
}

}  // namespace

int IcrSchedule::serving_slot(int user) const {
    for (int t = 0; t < static_cast<int>(phase1_user.size()); ++t) {
        if (phase1_user[t] == user) {
            return t;
        }
    }
    throw std::invalid_argument("user is not served in phase 1");
}

IcrSchedule schedule_from_pattern(const CsitPattern& pattern) {
    const int users = pattern.users();
    if (users < 2) {
        throw PatternError("schedule needs at least two users");
    }
    if (pattern.slots() != 2 * users - 1) {
        throw PatternError("expected " + std::to_string(2 * users - 1) + " slots, got " +
                           std::to_string(pattern.slots()));
    }
    IcrSchedule schedule;
    schedule.users = users;
    std::vector<bool> served(users, false);
    for (int t = 0; t < users; ++t) {
        const SlotShape shape = classify_slot(pattern, t);
        if (!shape.creation) {
            throw PatternError("slot " + std::to_string(t) +
                               " is not a creation slot (one N, D elsewhere)");
        }
        if (served[shape.n_user]) {
            throw PatternError("user " + std::to_string(shape.n_user) +
                               " is blind in two creation slots");
        }
        served[shape.n_user] = true;
        schedule.phase1_user.push_back(shape.n_user);
    }
    // One user must stay visible (state P) through every resurrection slot to
    // source the blind users' fresh combinations.
    std::vector<bool> always_perfect(users, true);
    for (int m = 0; m < users - 1; ++m) {
        const int slot = users + m;
        const SlotShape shape = classify_slot(pattern, slot);
        if (!shape.resurrection) {
            throw PatternError("slot " + std::to_string(slot) +
                               " is not a resurrection slot (one N, P elsewhere)");
        }
        schedule.phase2.push_back({slot, shape.n_user, -1});
        for (int u = 0; u < users; ++u) {
            if (pattern.state(u, slot) != CsitState::Perfect) {
                always_perfect[u] = false;
            }
        }
    }
    int source = -1;
    for (int u = 0; u < users; ++u) {
        if (always_perfect[u]) {
            source = u;
            break;
        }
    }
    if (source < 0) {
        throw PatternError("no user has perfect CSIT through every resurrection slot");
    }
    for (auto& slot : schedule.phase2) {
        slot.source_user = source;
    }
    return schedule;
}

bool structurally_decodable(const IcrSchedule& schedule) {
    for (int i = 0; i < schedule.users; ++i) {
        std::set<int> row_users{i};  // creation-phase combination uses H_i
        for (const auto& slot : schedule.phase2) {
            row_users.insert(i == slot.n_user ? slot.source_user : slot.n_user);
        }
        if (static_cast<int>(row_users.size()) != schedule.users) {
            return false;
        }
    }
    return true;
}

std::vector<CsitPattern> enumerate_synergistic_patterns(int users) {
    if (users != 3) {
        throw std::invalid_argument("exhaustive pattern search is only defined for 3 users");
    }
    std::vector<int> perm{0, 1, 2};
    std::vector<CsitPattern> found;
    std::sort(perm.begin(), perm.end());
    do {
        for (int a = 0; a < users; ++a) {
            for (int b = 0; b < users; ++b) {
                CsitPattern pattern(users, 2 * users - 1, CsitState::Delayed);
                for (int t = 0; t < users; ++t) {
                    pattern.set_state(perm[t], t, CsitState::None);
                }
                for (int u = 0; u < users; ++u) {
                    pattern.set_state(u, 3, u == a ? CsitState::None : CsitState::Perfect);
                    pattern.set_state(u, 4, u == b ? CsitState::None : CsitState::Perfect);
                }
                try {
                    if (structurally_decodable(schedule_from_pattern(pattern))) {
                        found.push_back(pattern);
                    }
                } catch (const PatternError&) {
                    // candidate without the required two-phase structure
                }
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(found.begin(), found.end(), [](const CsitPattern& x, const CsitPattern& y) {
        return x.to_string() < y.to_string();
    });
    return found;
}

}  // namespace icrlab
