#include "icrlab/dof.hpp"

#include <algorithm>
#include <numeric>

namespace icrlab {

Rational DofPoint::sum() const {
    return std::accumulate(d.begin(), d.end(), Rational(0));
}

Rational achievable_dof(int users) {
    if (users < 1) {
        throw std::invalid_argument("need at least one user");
    }
    return Rational(static_cast<long>(users) * users, 2 * users - 1);
}

std::array<Rational, 3> icr_state_distribution(int users) {
    if (users < 2) {
        throw std::invalid_argument("distribution defined for two or more users");
    }
    const long k = users;
    return {Rational((k - 1) * (k - 1), 2 * k * k - k), Rational(k - 1, 2 * k - 1),
            Rational(1, k)};
}

Rational mat_dof(int users) {
    if (users < 1) {
        throw std::invalid_argument("need at least one user");
    }
    Rational harmonic(0);
    for (int k = 1; k <= users; ++k) {
        harmonic += Rational(1, k);
    }
    return Rational(users) / harmonic;
}

Rational tandon_bound(int antennas, int users) {
    if (antennas < 1 || users < 1) {
        throw std::invalid_argument("need at least one antenna and one user");
    }
    const long m = antennas;
    const long k = users;
    const long active = std::min(m, k);
    const Rational lambda(active, k);
    return Rational(k) * (Rational(m) + Rational(active - 1) * lambda) / Rational(m + k - 1);
}

Rational upper_bound_total(const RegionSpec& spec) {
    if (spec.users < 1 || static_cast<int>(spec.gamma.size()) != spec.users) {
        throw std::invalid_argument("region spec needs one gamma per user");
    }
    Rational gamma_sum(0);
    for (const Rational& g : spec.gamma) {
        if (g < 0 || g > 1) {
            throw std::invalid_argument("gamma fractions must lie in [0, 1]");
        }
        gamma_sum += g;
    }
    const long k = spec.users;
    return (Rational(k * k) + Rational(k - 1) * gamma_sum) / Rational(2 * k - 1);
}

namespace {

struct Halfspace {
    std::array<Rational, 3> normal;
    Rational rhs;
};

// 3 weighted-sum constraints plus the 6 unit-box facets.
std::vector<Halfspace> region_halfspaces(const std::array<Rational, 3>& gamma) {
    std::vector<Halfspace> planes;
    for (int i = 0; i < 3; ++i) {
        Halfspace sum{{Rational(1), Rational(1), Rational(1)}, Rational(3) + 2 * gamma[i]};
        sum.normal[i] = Rational(3);
        planes.push_back(sum);
    }
    for (int i = 0; i < 3; ++i) {
        Halfspace upper{{Rational(0), Rational(0), Rational(0)}, Rational(1)};
        upper.normal[i] = Rational(1);
        planes.push_back(upper);
        Halfspace lower{{Rational(0), Rational(0), Rational(0)}, Rational(0)};
        lower.normal[i] = Rational(-1);
        planes.push_back(lower);
    }
    return planes;
}

Rational det3(const std::array<std::array<Rational, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

bool feasible(const std::vector<Halfspace>& planes, const std::array<Rational, 3>& point) {
    for (const Halfspace& plane : planes) {
        Rational lhs(0);
        for (int i = 0; i < 3; ++i) {
            lhs += plane.normal[i] * point[i];
        }
        if (lhs > plane.rhs) {
            return false;
        }
    }
    return true;
}

std::array<Rational, 3> check_gammas(const Rational& g1, const Rational& g2,
                                     const Rational& g3) {
    const std::array<Rational, 3> gamma{g1, g2, g3};
    for (const Rational& g : gamma) {
        if (g < 0 || g > 1) {
            throw std::invalid_argument("gamma fractions must lie in [0, 1]");
        }
    }
    return gamma;
}

std::vector<std::array<Rational, 3>> enumerate_vertices(const std::array<Rational, 3>& gamma) {
    const std::vector<Halfspace> planes = region_halfspaces(gamma);
    std::vector<std::array<Rational, 3>> vertices;
    const int n = static_cast<int>(planes.size());
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                const std::array<std::array<Rational, 3>, 3> m{planes[a].normal,
                                                               planes[b].normal,
                                                               planes[c].normal};
                const Rational det = det3(m);
                if (det == 0) {
                    continue;
                }
                // Cramer's rule, column-substituted determinants.
                const std::array<Rational, 3> rhs{planes[a].rhs, planes[b].rhs, planes[c].rhs};
                std::array<Rational, 3> point;
                for (int col = 0; col < 3; ++col) {
                    auto sub = m;
                    for (int row = 0; row < 3; ++row) {
                        sub[row][col] = rhs[row];
                    }
                    point[col] = det3(sub) / det;
                }
                if (feasible(planes, point) &&
                    std::find(vertices.begin(), vertices.end(), point) == vertices.end()) {
                    vertices.push_back(point);
                }
            }
        }
    }
    std::sort(vertices.begin(), vertices.end(),
              [](const auto& x, const auto& y) { return y < x; });
    return vertices;
}

}  // namespace

std::vector<DofPoint> region_vertices(const Rational& g1, const Rational& g2,
                                      const Rational& g3) {
    std::vector<DofPoint> points;
    for (auto& vertex : enumerate_vertices(check_gammas(g1, g2, g3))) {
        points.push_back(DofPoint{{vertex[0], vertex[1], vertex[2]}});
    }
    return points;
}

DofPoint dof_region_lp(const Rational& g1, const Rational& g2, const Rational& g3) {
    const auto vertices = enumerate_vertices(check_gammas(g1, g2, g3));
    // The origin is always feasible, so the vertex list is never empty.
    std::array<Rational, 3> best = vertices.front();
    Rational best_sum = best[0] + best[1] + best[2];
    for (const auto& vertex : vertices) {
        const Rational sum = vertex[0] + vertex[1] + vertex[2];
        // Vertices are sorted lex-descending, so the first optimal one is the
        // lexicographically largest.
        if (sum > best_sum) {
            best = vertex;
            best_sum = sum;
        }
    }
    return DofPoint{{best[0], best[1], best[2]}};
}

DofPoint closed_form_region(const Rational& g1, const Rational& g2, const Rational& g3) {
    const auto gamma = check_gammas(g1, g2, g3);
    const Rational total = gamma[0] + gamma[1] + gamma[2];
    DofPoint point;
    for (int i = 0; i < 3; ++i) {
        const Rational di = (Rational(3) + 4 * gamma[i] - (total - gamma[i])) / 5;
        if (di < 0 || di > 1) {
            throw ActiveSetViolation("closed-form coordinate d_" + std::to_string(i + 1) +
                                     " = " + to_string(di) + " leaves [0, 1]");
        }
        point.d.push_back(di);
    }
    return point;
}

}  // namespace icrlab
