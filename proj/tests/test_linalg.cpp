#include <doctest.h>

#include <complex>
#include <vector>

#include "icrlab/channel.hpp"
#include "icrlab/linalg.hpp"

using namespace icrlab;

namespace {

ComplexRowVector random_row(rng::GaussianStream& stream, int dim) {
    ComplexRowVector row(dim);
    for (int i = 0; i < dim; ++i) {
        row(i) = stream.next();
    }
    return row;
}

}  // namespace

TEST_CASE("empty constraint set yields the identity projector") {
    const ComplexMatrix q = null_space_projector({}, 3);
    CHECK((q - ComplexMatrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("axis-aligned null space") {
    ComplexRowVector e1(2);
    e1 << 1.0, 0.0;
    const ComplexMatrix q = null_space_projector({e1}, 2);
    ComplexMatrix expected(2, 2);
    expected << 0.0, 0.0, 0.0, 1.0;
    CHECK((q - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("two random rows in C^3 leave a rank-1 projector that annihilates them") {
    rng::GaussianStream stream(rng::mix_key({7, 1}));
    const ComplexRowVector a = random_row(stream, 3);
    const ComplexRowVector b = random_row(stream, 3);
    const ComplexMatrix q = null_space_projector({a, b}, 3);
    CHECK(rank(q) == 1);
    CHECK((a * q).norm() < 1e-10 * a.norm());
    CHECK((b * q).norm() < 1e-10 * b.norm());
    // eigenvalue count: a projector of rank 1 has exactly one eigenvalue near 1
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(q);
    int near_one = 0;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(eig.eigenvalues()(i) - 1.0) < 1e-10) {
            ++near_one;
        }
    }
    CHECK(near_one == 1);
}

TEST_CASE("projector invariants over random constraint sets") {
    for (int dim = 2; dim <= 6; ++dim) {
        for (int count = 0; count < dim; ++count) {
            for (int trial = 0; trial < 20; ++trial) {
                rng::GaussianStream stream(rng::mix_key(
                    {static_cast<std::uint64_t>(dim), static_cast<std::uint64_t>(count),
                     static_cast<std::uint64_t>(trial)}));
                std::vector<ComplexRowVector> rows;
                for (int r = 0; r < count; ++r) {
                    rows.push_back(random_row(stream, dim));
                }
                const ComplexMatrix q = null_space_projector(rows, dim);
                CHECK(idempotence_defect(q) < 1e-10);
                CHECK(hermitian_defect(q) < 1e-12);
                for (const auto& row : rows) {
                    CHECK((row * q).norm() < 1e-10 * row.norm());
                }
                ComplexMatrix stacked(count, dim);
                for (int r = 0; r < count; ++r) {
                    stacked.row(r) = rows[r];
                }
                const int stacked_rank = count == 0 ? 0 : rank(stacked);
                CHECK(rank(q) + stacked_rank == dim);
            }
        }
    }
}

TEST_CASE("dependent constraint rows enlarge the null space") {
    rng::GaussianStream stream(rng::mix_key({11, 4}));
    const ComplexRowVector a = random_row(stream, 4);
    const ComplexRowVector doubled = 2.0 * a;
    const ComplexMatrix q = null_space_projector({a, doubled}, 4);
    CHECK(rank(q) == 3);
    CHECK((a * q).norm() < 1e-10 * a.norm());
}

TEST_CASE("projector argument errors") {
    rng::GaussianStream stream(rng::mix_key({3, 9}));
    std::vector<ComplexRowVector> rows{random_row(stream, 3), random_row(stream, 3),
                                       random_row(stream, 3)};
    CHECK_THROWS_AS(null_space_projector(rows, 3), InfeasibleNulling);
    CHECK_THROWS_AS(null_space_projector({random_row(stream, 2)}, 3), std::invalid_argument);
}

TEST_CASE("first beam column conventions") {
    const ComplexMatrix identity = ComplexMatrix::Identity(3, 3);
    const ComplexVector beam = first_beam_column(identity);
    CHECK(beam(0) == Complex(1.0, 0.0));
    CHECK(beam.tail(2).norm() == 0.0);

    ComplexMatrix degenerate = ComplexMatrix::Zero(2, 2);
    degenerate(1, 1) = 1.0;
    CHECK_THROWS_AS(first_beam_column(degenerate), DegenerateBeam);
    // the retry column is available
    CHECK(beam_column(degenerate, 1)(1) == Complex(1.0, 0.0));
}

TEST_CASE("random rank-1 projectors in C^3 never have a vanishing first column") {
    int failures = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        rng::GaussianStream stream(rng::mix_key({21, static_cast<std::uint64_t>(trial)}));
        const ComplexMatrix q =
            null_space_projector({random_row(stream, 3), random_row(stream, 3)}, 3);
        if (q.col(0).norm() < 1e-12) {
            ++failures;
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("rank basics") {
    CHECK(rank(ComplexMatrix::Identity(5, 5)) == 5);
    CHECK(rank(ComplexMatrix::Ones(4, 4)) == 1);
    CHECK(rank(ComplexMatrix::Zero(3, 3)) == 0);
}

TEST_CASE("stacked channel rows at one slot are full rank almost surely") {
    for (int trial = 0; trial < 1000; ++trial) {
        const ChannelRealization channel = sample_channel(3, 1, 1000 + trial);
        CHECK(rank(channel.slot_matrix(0)) == 3);
    }
}

TEST_CASE("solve basics and residual oracle") {
    ComplexVector b(2);
    b << Complex(2.0, 1.0), Complex(-4.0, 0.5);
    CHECK((solve(ComplexMatrix::Identity(2, 2), b) - b).norm() == 0.0);

    ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
    diag(0, 0) = 2.0;
    diag(1, 1) = 4.0;
    ComplexVector rhs(2);
    rhs << 2.0, 4.0;
    const ComplexVector x = solve(diag, rhs);
    CHECK(std::abs(x(0) - Complex(1.0)) < 1e-14);
    CHECK(std::abs(x(1) - Complex(1.0)) < 1e-14);

    for (int trial = 0; trial < 50; ++trial) {
        rng::GaussianStream stream(rng::mix_key({50, static_cast<std::uint64_t>(trial)}));
        ComplexMatrix a(3, 3);
        for (int r = 0; r < 3; ++r) {
            a.row(r) = random_row(stream, 3);
        }
        const ComplexVector rhs3 = random_row(stream, 3).transpose();
        const ComplexVector sol = solve(a, rhs3);
        CHECK((a * sol - rhs3).norm() / rhs3.norm() < 1e-10);
    }

    ComplexMatrix singular = ComplexMatrix::Ones(3, 3);
    ComplexVector ones = ComplexVector::Ones(3);
    CHECK_THROWS_AS(solve(singular, ones), SingularSystem);
    CHECK_THROWS_AS(solve(ComplexMatrix::Identity(3, 3), ComplexVector::Ones(2)),
                    std::invalid_argument);
}

TEST_CASE("logdet rate in scalars") {
    ComplexMatrix g(1, 1);
    g << 1.0;
    ComplexMatrix cov(1, 1);
    cov << 1.0;
    // P equal to the stream count makes the scaled SNR exactly one
    CHECK(logdet_rate(g, cov, 1.0) == doctest::Approx(1.0));
    CHECK(logdet_rate(ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2), 1e9) == 0.0);
}

TEST_CASE("quadrupling the power adds two bits per spatial dimension") {
    rng::GaussianStream stream(rng::mix_key({77}));
    ComplexMatrix g(3, 3);
    for (int r = 0; r < 3; ++r) {
        g.row(r) = random_row(stream, 3);
    }
    const ComplexMatrix cov = ComplexMatrix::Identity(3, 3);
    const double low = logdet_rate(g, cov, std::ldexp(1.0, 30));
    const double high = logdet_rate(g, cov, std::ldexp(1.0, 32));
    CHECK(high - low == doctest::Approx(2.0 * rank(g)).epsilon(1e-6));
}

TEST_CASE("logdet rate rejects bad covariances") {
    ComplexMatrix g(2, 2);
    g << 1.0, 0.0, 0.0, 1.0;
    ComplexMatrix not_pd(2, 2);
    not_pd << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(logdet_rate(g, not_pd, 1.0), std::invalid_argument);
    ComplexMatrix not_hermitian(2, 2);
    not_hermitian << 1.0, Complex(0.5, 0.5), 0.0, 1.0;
    CHECK_THROWS_AS(logdet_rate(g, not_hermitian, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(logdet_rate(g, ComplexMatrix::Identity(3, 3), 1.0),
                    std::invalid_argument);
}
