#include "crham/perturbation.hpp"

#include "crham/exact_blockdiag.hpp"

#include <doctest.h>

#include <random>

using namespace crham;

namespace {

Matrix random_hermitian(int n, std::mt19937& rng, double scale = 1.0) {
    std::normal_distribution<double> dist(0.0, scale);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    }
    return 0.5 * (m + m.adjoint().eval());
}

// Polynomial in lambda with matrix coefficients, truncated at a fixed degree.
// Test-only oracle for the order-by-order expansion of e^{iS} H e^{-iS}.
struct PolyMat {
    std::vector<Matrix> c;  // c[k] multiplies lambda^k

    static PolyMat zero(int degree, int n) {
        PolyMat p;
        p.c.assign(degree + 1, Matrix::Zero(n, n));
        return p;
    }
};

PolyMat poly_mul(const PolyMat& a, const PolyMat& b) {
    const int degree = static_cast<int>(a.c.size()) - 1;
    PolyMat out = PolyMat::zero(degree, static_cast<int>(a.c[0].rows()));
    for (int i = 0; i <= degree; ++i) {
        for (int j = 0; i + j <= degree; ++j) out.c[i + j] += a.c[i] * b.c[j];
    }
    return out;
}

PolyMat poly_commutator(const PolyMat& a, const PolyMat& b) {
    const PolyMat ab = poly_mul(a, b), ba = poly_mul(b, a);
    PolyMat out = ab;
    for (std::size_t k = 0; k < out.c.size(); ++k) out.c[k] -= ba.c[k];
    return out;
}

// e^{iS} H e^{-iS} = sum_n (i^n/n!) ad_S^n(H), truncated in both the
// commutator depth and the lambda degree
PolyMat bch_conjugate(const PolyMat& s, const PolyMat& h, int depth) {
    PolyMat acc = h;
    PolyMat out = h;
    Complex coeff(1.0, 0.0);
    for (int n = 1; n <= depth; ++n) {
        acc = poly_commutator(s, acc);
        coeff *= Complex(0.0, 1.0) / static_cast<double>(n);
        for (std::size_t k = 0; k < out.c.size(); ++k) out.c[k] += coeff * acc.c[k];
    }
    return out;
}

}  // namespace

TEST_CASE("compositions") {
    CHECK(compositions(1) == std::vector<std::vector<int>>{{1}});
    CHECK(compositions(3) ==
          std::vector<std::vector<int>>{{3}, {2, 1}, {1, 2}, {1, 1, 1}});

    SUBCASE("fifth order matches the explicit listing") {
        const auto c5 = compositions(5);
        CHECK(c5.size() == 16);
        CHECK(c5.front() == std::vector<int>{5});
        CHECK(c5.back() == std::vector<int>{1, 1, 1, 1, 1});
        // every tuple sums to 5 with positive parts
        for (const auto& parts : c5) {
            int sum = 0;
            for (int p : parts) {
                CHECK(p >= 1);
                sum += p;
            }
            CHECK(sum == 5);
        }
    }

    SUBCASE("count is 2^(k-1)") {
        for (int k = 1; k <= 10; ++k) {
            CHECK(compositions(k).size() == (1u << (k - 1)));
        }
    }
}

TEST_CASE("nested commutator terms") {
    std::mt19937 rng(3);
    const Matrix h0 = random_hermitian(4, rng);
    const std::vector<Matrix> gens = {random_hermitian(4, rng), random_hermitian(4, rng)};
    const Complex i(0.0, 1.0);

    const Matrix t1 = nested_commutator_term({1}, gens, h0);
    CHECK((t1 - i * (gens[0] * h0 - h0 * gens[0])).cwiseAbs().maxCoeff() < 1e-13);

    const Matrix inner = gens[0] * h0 - h0 * gens[0];
    const Matrix t11 = nested_commutator_term({1, 1}, gens, h0);
    CHECK((t11 + 0.5 * (gens[0] * inner - inner * gens[0])).cwiseAbs().maxCoeff() < 1e-13);

    CHECK(nested_commutator_term({2, 1}, gens, Matrix::Zero(4, 4)).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS(nested_commutator_term({3}, gens, h0));
}

TEST_CASE("f_j matches the direct exponential expansion") {
    std::mt19937 rng(19);
    const Complex i(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix h0 = random_hermitian(4, rng);
        std::vector<Matrix> gens;
        for (int k = 0; k < 5; ++k) gens.push_back(random_hermitian(4, rng));

        CHECK((f_j(gens, h0, 1) - i * (gens[0] * h0 - h0 * gens[0])).cwiseAbs().maxCoeff() <
              1e-12);
        const Matrix inner = gens[0] * h0 - h0 * gens[0];
        const Matrix f2_expected =
            i * (gens[1] * h0 - h0 * gens[1]) - 0.5 * (gens[0] * inner - inner * gens[0]);
        CHECK((f_j(gens, h0, 2) - f2_expected).cwiseAbs().maxCoeff() < 1e-12);

        // oracle: truncated polynomial conjugation with 12 nested commutators
        const int degree = 5;
        PolyMat s = PolyMat::zero(degree, 4);
        for (int k = 1; k <= 5; ++k) s.c[k] = gens[k - 1];
        PolyMat h = PolyMat::zero(degree, 4);
        h.c[0] = h0;
        const PolyMat conj = bch_conjugate(s, h, 12);
        for (int j = 1; j <= 5; ++j) {
            CHECK((f_j(gens, h0, j) - conj.c[j]).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("generator solve") {
    SUBCASE("diagonal shortcut") {
        const double Delta = 0.37, v = 0.21;
        Matrix h0 = Matrix::Zero(2, 2);
        h0(1, 1) = Delta;
        Matrix hx = Matrix::Zero(2, 2);
        hx(0, 1) = v;
        hx(1, 0) = v;
        const Matrix s = solve_generator(h0, hx, BlockPartition::singletons(2));
        CHECK(std::abs(s(0, 1) - Complex(0.0, -1.0) * v / (0.0 - Delta)) < 1e-14);
        CHECK(std::abs(s(0, 1) - std::conj(s(1, 0))) < 1e-14);
    }

    SUBCASE("block-diagonal Hx needs no generator") {
        std::mt19937 rng(2);
        const BlockPartition part({{0, 1}, {2, 3}}, 4);
        Matrix h0 = part.block_diagonal_part(random_hermitian(4, rng)) +
                    10.0 * Matrix(Vector::LinSpaced(4, 0.0, 3.0).asDiagonal());
        const Matrix hx = Matrix::Zero(4, 4);
        CHECK(solve_generator(h0, hx, part).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("sylvester residual on random 6x6 three-block problem") {
        std::mt19937 rng(23);
        const BlockPartition part({{0, 1}, {2, 3}, {4, 5}}, 6);
        const Matrix h0 = part.block_diagonal_part(random_hermitian(6, rng)) +
                          7.0 * Matrix(Vector::LinSpaced(6, 0.0, 5.0).asDiagonal());
        const Matrix hx = part.off_block_part(random_hermitian(6, rng));
        const Matrix s = solve_generator(h0, hx, part);
        CHECK(part.block_diagonal_part(s).cwiseAbs().maxCoeff() == 0.0);
        // H0 S - S H0 = -i Hx on the off-block entries
        const Matrix resid = h0 * s - s * h0 + Complex(0.0, 1.0) * hx;
        CHECK(part.off_block_part(resid).cwiseAbs().maxCoeff() < 1e-11);
    }

    SUBCASE("small denominator error") {
        Matrix h0 = Matrix::Zero(2, 2);  // degenerate across singleton blocks
        Matrix hx = Matrix::Zero(2, 2);
        hx(0, 1) = hx(1, 0) = 1.0;
        CHECK_THROWS_AS(solve_generator(h0, hx, BlockPartition::singletons(2)),
                        SmallDenominatorError);
    }
}

TEST_CASE("series construction") {
    std::mt19937 rng(31);

    SUBCASE("no perturbation leaves H0") {
        const BlockPartition part({{0, 1}, {2, 3}}, 4);
        PerturbationProblem problem;
        problem.H0 = HermitianOp::make(Matrix(Vector::LinSpaced(4, 0.0, 3.0).asDiagonal()));
        problem.H1 = HermitianOp::make(Matrix::Zero(4, 4));
        problem.lambda = 0.1;
        problem.partition = part;
        problem.max_order = 4;
        const PerturbationSeries series = build_series(problem);
        for (const auto& s : series.generators) CHECK(s.cwiseAbs().maxCoeff() == 0.0);
        CHECK((series.H_eff_at(4) - problem.H0.entries).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("2x2 full diagonalization vs exact eigenvalues") {
        const double Delta = 0.8;
        Matrix h0 = Matrix::Zero(2, 2);
        h0(1, 1) = Delta;
        Matrix sx(2, 2);
        sx << 0, 1, 1, 0;
        PerturbationProblem problem;
        problem.H0 = HermitianOp::make(h0);
        problem.H1 = HermitianOp::make(sx);
        problem.partition = BlockPartition::singletons(2);
        problem.max_order = 4;

        double prev_err = 0.0;
        for (const double lambda : {0.02, 0.01}) {
            problem.lambda = lambda;
            const PerturbationSeries series = build_series(problem);
            const double exact_ground =
                0.5 * (Delta - std::sqrt(Delta * Delta + 4.0 * lambda * lambda));
            const Matrix h_eff = series.H_eff_at(4);
            const double err = std::abs(h_eff(0, 0).real() - exact_ground);
            CHECK(err < 1e-7);
            if (prev_err > 0.0) {
                // fifth-order error shrinks ~2^5 per lambda halving (even orders
                // vanish here, so the true remainder at order 4 is O(lambda^5))
                CHECK(prev_err / err > 16.0);
            }
            prev_err = err;
        }
    }

    SUBCASE("three-level Lambda-system second-order shifts") {
        // two low levels coupled through a far-detuned third level
        const double E2 = 1.0, g = 1.0, lambda = 0.01;
        Matrix h0 = Matrix::Zero(3, 3);
        h0(2, 2) = E2;
        Matrix h1 = Matrix::Zero(3, 3);
        h1(0, 2) = h1(2, 0) = g;
        h1(1, 2) = h1(2, 1) = g;
        PerturbationProblem problem;
        problem.H0 = HermitianOp::make(h0);
        problem.H1 = HermitianOp::make(h1);
        problem.lambda = lambda;
        problem.partition = BlockPartition({{0, 1}, {2}}, 3);
        problem.max_order = 2;
        const Matrix h_eff = build_series(problem).H_eff_at(2);
        // standard Schrieffer-Wolff: shift -g^2/E2 and equal low-level coupling
        const double shift = -lambda * lambda * g * g / E2;
        CHECK(h_eff(0, 0).real() == doctest::Approx(shift).epsilon(1e-10));
        CHECK(h_eff(1, 1).real() == doctest::Approx(shift).epsilon(1e-10));
        CHECK(h_eff(0, 1).real() == doctest::Approx(shift).epsilon(1e-10));
        CHECK(h_eff(2, 2).real() == doctest::Approx(E2 - 2.0 * shift).epsilon(1e-6));
    }

    SUBCASE("block-diagonality and generator structure at every order") {
        const BlockPartition part({{0, 1, 2}, {3, 4}, {5, 6, 7}}, 8);
        PerturbationProblem problem;
        problem.H0 = HermitianOp::make(
            part.block_diagonal_part(random_hermitian(8, rng)) +
            9.0 * Matrix(Vector::LinSpaced(8, 0.0, 7.0).asDiagonal()));
        problem.H1 = HermitianOp::make(random_hermitian(8, rng));
        problem.lambda = 0.05;
        problem.partition = part;
        problem.max_order = 5;
        const PerturbationSeries series = build_series(problem);
        for (const auto& term : series.terms) {
            CHECK(part.max_off_block(term) < 1e-12);
        }
        for (const auto& s : series.generators) {
            CHECK(part.block_diagonal_part(s).cwiseAbs().maxCoeff() == 0.0);
            CHECK((s - s.adjoint().eval()).cwiseAbs().maxCoeff() < 1e-10);
        }
    }

    SUBCASE("two-block agreement with least action as lambda -> 0") {
        // the direct rotation and the composed series coincide through
        // lambda^2 but differ at lambda^3 by a block-diagonal reparametrization
        const BlockPartition part({{0, 1, 2, 3}, {4, 5, 6, 7}}, 8);
        const Matrix h0_mat = part.block_diagonal_part(random_hermitian(8, rng)) +
                              11.0 * Matrix(Vector::LinSpaced(8, 0.0, 7.0).asDiagonal());
        const Matrix h1_mat = random_hermitian(8, rng);
        auto series_at = [&](double lambda, int max_order) {
            PerturbationProblem problem;
            problem.H0 = HermitianOp::make(h0_mat);
            problem.H1 = HermitianOp::make(h1_mat);
            problem.lambda = lambda;
            problem.partition = part;
            problem.max_order = max_order;
            return build_series(problem);
        };
        auto exact_at = [&](double lambda) {
            return least_action_blockdiag(HermitianOp::make(h0_mat + lambda * h1_mat), part)
                .H_eff.entries;
        };
        for (const int order : {1, 2}) {
            std::vector<double> errs;
            for (const double lambda : {0.02, 0.01}) {
                errs.push_back(
                    (series_at(lambda, order).H_eff_at(order) - exact_at(lambda)).norm());
            }
            const double expected_ratio = std::pow(2.0, order + 1);
            CHECK(errs[0] / errs[1] > expected_ratio / 1.4);
            CHECK(errs[0] / errs[1] < expected_ratio * 1.4);
        }
        // at third order, measure against the converged series instead
        std::vector<double> errs;
        for (const double lambda : {0.02, 0.01}) {
            const PerturbationSeries s = series_at(lambda, 6);
            errs.push_back((s.H_eff_at(3) - s.H_eff_at(6)).norm());
        }
        CHECK(errs[0] / errs[1] > 16.0 / 1.4);
        CHECK(errs[0] / errs[1] < 16.0 * 1.4);
    }
}
