#include "crham/exact_blockdiag.hpp"

#include "crham/operators.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
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

Matrix random_block_unitary(const BlockPartition& part, std::mt19937& rng, double eps) {
    Matrix g = Matrix::Zero(part.dim, part.dim);
    std::normal_distribution<double> dist(0.0, eps);
    for (const auto& block : part.blocks) {
        for (int i : block) {
            for (int j : block) {
                if (i < j) {
                    const Complex v(dist(rng), dist(rng));
                    g(i, j) = v;
                    g(j, i) = std::conj(v);
                } else if (i == j) {
                    g(i, i) = dist(rng);
                }
            }
        }
    }
    // exp(iG) via the spectral decomposition
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    Vector phases(part.dim);
    for (int k = 0; k < part.dim; ++k) phases(k) = std::exp(Complex(0.0, es.eigenvalues()(k)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// 4x4 rotating-frame qubit Hamiltonian, basis {00,01,10,11}
Matrix qubit_h_r(double J, double Delta, double Omega) {
    Matrix h = Matrix::Zero(4, 4);
    h(0, 2) = h(2, 0) = 0.5 * Omega;
    h(1, 3) = h(3, 1) = 0.5 * Omega;
    h(1, 2) = h(2, 1) = J;
    h(2, 2) = h(3, 3) = Delta;
    return h;
}

Matrix block_diag_hermitian(const BlockPartition& part, std::mt19937& rng) {
    Matrix full = random_hermitian(part.dim, rng);
    return part.block_diagonal_part(full);
}

}  // namespace

TEST_CASE("eigenvector assignment") {
    std::mt19937 rng(5);
    const BlockPartition part({{0, 1}, {2, 3, 4}}, 5);

    SUBCASE("block-diagonal H assigns with full overlap") {
        const HermitianOp h = HermitianOp::make(block_diag_hermitian(part, rng));
        const EigvecAssignment asg = assign_eigenvectors(h, part);
        CHECK(asg.min_overlap == doctest::Approx(1.0));
        CHECK(asg.block_of_column == std::vector<int>{0, 0, 1, 1, 1});
        // columns sorted by energy within each block
        CHECK(asg.energies(0) <= asg.energies(1));
        CHECK(asg.energies(2) <= asg.energies(3));
    }

    SUBCASE("sigma-x with singleton blocks is degenerate") {
        Matrix sx(2, 2);
        sx << 0, 1, 1, 0;
        CHECK_THROWS_AS(
            assign_eigenvectors(HermitianOp::make(sx), BlockPartition::singletons(2)),
            DegenerateAssignmentError);
    }

    SUBCASE("qubit CR Hamiltonian assigns cleanly") {
        const HermitianOp h = HermitianOp::make(qubit_h_r(3.8e-3, 0.2, 0.02));
        const EigvecAssignment asg = assign_eigenvectors(h, BlockPartition({{0, 1}, {2, 3}}, 4));
        CHECK(asg.min_overlap > 0.99);
    }
}

TEST_CASE("least action block diagonalization") {
    std::mt19937 rng(17);

    SUBCASE("already block-diagonal gives T = identity") {
        const BlockPartition part({{0, 1, 2}, {3, 4}, {5}}, 6);
        const HermitianOp h = HermitianOp::make(block_diag_hermitian(part, rng));
        const BlockDiagResult res = least_action_blockdiag(h, part);
        CHECK((res.T - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((res.H_eff.entries - h.entries).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(res.I_metric == doctest::Approx(1.0));
    }

    SUBCASE("single full block has metric exactly 1") {
        const HermitianOp h = HermitianOp::make(random_hermitian(5, rng));
        const BlockDiagResult res = least_action_blockdiag(h, BlockPartition::single_block(5));
        CHECK(res.I_metric == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("spectrum preservation and unitarity on random problems") {
        for (int trial = 0; trial < 25; ++trial) {
            const int n = 4 + static_cast<int>(rng() % 5);
            std::vector<std::vector<int>> blocks;
            std::vector<int> shuffled(n);
            std::iota(shuffled.begin(), shuffled.end(), 0);
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            for (int i = 0; i < n;) {
                const int len = std::min<int>(1 + static_cast<int>(rng() % 3), n - i);
                blocks.emplace_back(shuffled.begin() + i, shuffled.begin() + i + len);
                i += len;
            }
            const BlockPartition part(blocks, n);
            // strong block-diagonal with a weak mixing part keeps assignment clean
            const Matrix h_mat =
                part.block_diagonal_part(random_hermitian(n, rng, 2.0)) +
                5.0 * Matrix(RealVector::LinSpaced(n, 0.0, n - 1.0)
                                 .cast<Complex>()
                                 .asDiagonal()) +
                random_hermitian(n, rng, 0.05);
            const HermitianOp h = HermitianOp::make(h_mat);
            const BlockDiagResult res = least_action_blockdiag(h, part);

            CHECK((res.T.adjoint() * res.T - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <
                  1e-10);
            Eigen::SelfAdjointEigenSolver<Matrix> ea(h.entries), eb(res.H_eff.entries);
            const double range = std::max(1.0, ea.eigenvalues().cwiseAbs().maxCoeff());
            CHECK((ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10 * range);
            CHECK(res.residual <= 1e-10 * h.entries.norm());
            CHECK(res.I_metric >= 0.0);
            CHECK(res.I_metric <= 1.0 + 1e-12);
        }
    }

    SUBCASE("least-action optimality against perturbed block rotations") {
        const BlockPartition part({{0, 1}, {2, 3}}, 4);
        const HermitianOp h = HermitianOp::make(qubit_h_r(3.8e-3, 0.2, 0.06));
        const BlockDiagResult res = least_action_blockdiag(h, part);
        const double base = (res.T - Matrix::Identity(4, 4)).norm();
        for (int k = 0; k < 100; ++k) {
            const Matrix w = random_block_unitary(part, rng, 0.05);
            const double perturbed = (res.T * w - Matrix::Identity(4, 4)).norm();
            CHECK(perturbed >= base - 1e-9);
        }
    }

    SUBCASE("idempotence") {
        const BlockPartition part({{0, 1}, {2, 3}}, 4);
        const HermitianOp h = HermitianOp::make(qubit_h_r(3.8e-3, 0.2, 0.04));
        const BlockDiagResult first = least_action_blockdiag(h, part);
        const BlockDiagResult second = least_action_blockdiag(first.H_eff, part);
        CHECK((second.T - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
    }

    SUBCASE("H_eff invariant under within-block column conventions") {
        // permuting indices inside a block relabels the basis consistently
        const HermitianOp h = HermitianOp::make(qubit_h_r(3.8e-3, 0.2, 0.03));
        const BlockDiagResult a = least_action_blockdiag(h, BlockPartition({{0, 1}, {2, 3}}, 4));
        const BlockDiagResult b = least_action_blockdiag(h, BlockPartition({{1, 0}, {3, 2}}, 4));
        CHECK((a.H_eff.entries - b.H_eff.entries).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("qubit model closed form") {
    // ZX of the block-diagonalized 4x4 matches -J Omega / sqrt(Delta^2+Omega^2)
    const double J = 3.8e-3, Delta = 0.2, Omega = 0.02;
    const HermitianOp h = HermitianOp::make(qubit_h_r(J, Delta, Omega));
    const BlockDiagResult res = least_action_blockdiag(h, BlockPartition({{0, 1}, {2, 3}}, 4));
    const double zx = pauli_coefficient(res.H_eff.entries, "ZX");
    const double expected = -J * Omega / std::sqrt(Delta * Delta + Omega * Omega);
    CHECK(std::abs(zx - expected) < 1e-5);
}

TEST_CASE("effectiveness metric") {
    CHECK(effectiveness_metric(Matrix::Zero(4, 4)) == doctest::Approx(0.0));
    CHECK(effectiveness_metric(Matrix::Identity(4, 4)) == doctest::Approx(1.0));
}
