#include "crham/perturbation.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crham {

std::vector<std::vector<int>> compositions(int k) {
    if (k < 1) throw DomainError("compositions: k must be >= 1");
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    // enumerate recursively, then fix the order below
    auto recurse = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            out.push_back(current);
            return;
        }
        for (int first = rest; first >= 1; --first) {
            current.push_back(first);
            self(self, rest - first);
            current.pop_back();
        }
    };
    recurse(recurse, k);
    std::sort(out.begin(), out.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a > b; });
    return out;
}

Matrix nested_commutator_term(const std::vector<int>& parts,
                              const std::vector<Matrix>& generators, const Matrix& a) {
    Matrix acc = a;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        const int j = *it;
        if (j < 1 || j > static_cast<int>(generators.size())) {
            throw Error("nested_commutator_term: generator S_" + std::to_string(j) +
                        " not available");
        }
        const Matrix& s = generators[j - 1];
        acc = s * acc - acc * s;
    }
    const int b = static_cast<int>(parts.size());
    double fact = 1.0;
    for (int i = 2; i <= b; ++i) fact *= i;
    return (std::pow(Complex(0.0, 1.0), b) / fact) * acc;
}

Matrix f_j(const std::vector<Matrix>& generators, const Matrix& a, int j) {
    if (j == 0) return a;
    Matrix sum = Matrix::Zero(a.rows(), a.cols());
    for (const auto& parts : compositions(j)) {
        sum += nested_commutator_term(parts, generators, a);
    }
    return sum;
}

namespace {

struct BlockEigen {
    std::vector<Matrix> vectors;
    std::vector<RealVector> values;
};

BlockEigen eigendecompose_blocks(const Matrix& h0, const BlockPartition& partition) {
    BlockEigen out;
    for (const auto& block : partition.blocks) {
        const int m = static_cast<int>(block.size());
        Matrix sub(m, m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) sub(i, j) = h0(block[i], block[j]);
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(sub);
        out.vectors.push_back(es.eigenvectors());
        out.values.push_back(es.eigenvalues());
    }
    return out;
}

}  // namespace

Matrix solve_generator(const Matrix& h0, const Matrix& hx_offblock,
                       const BlockPartition& partition, double gap_tol) {
    const int n = partition.dim;
    const BlockEigen eig = eigendecompose_blocks(h0, partition);
    Matrix s = Matrix::Zero(n, n);
    const int nblocks = static_cast<int>(partition.blocks.size());
    for (int a = 0; a < nblocks; ++a) {
        for (int b = 0; b < nblocks; ++b) {
            if (a == b) continue;
            const auto& rows = partition.blocks[a];
            const auto& cols = partition.blocks[b];
            const int ma = static_cast<int>(rows.size());
            const int mb = static_cast<int>(cols.size());
            Matrix d(ma, mb);
            for (int i = 0; i < ma; ++i) {
                for (int j = 0; j < mb; ++j) d(i, j) = Complex(0, -1) * hx_offblock(rows[i], cols[j]);
            }
            // H0_a S_ab - S_ab H0_b = D, solved in the block eigenbases
            Matrix dt = eig.vectors[a].adjoint() * d * eig.vectors[b];
            for (int p = 0; p < ma; ++p) {
                for (int q = 0; q < mb; ++q) {
                    const double gap = eig.values[a](p) - eig.values[b](q);
                    if (std::abs(gap) <= gap_tol) {
                        std::ostringstream os;
                        os << "small denominator between blocks " << a << " and " << b
                           << ": E_p = " << eig.values[a](p) << ", E_q = " << eig.values[b](q);
                        throw SmallDenominatorError(os.str(), rows[p], cols[q],
                                                    eig.values[a](p), eig.values[b](q));
                    }
                    dt(p, q) /= gap;
                }
            }
            Matrix s_ab = eig.vectors[a] * dt * eig.vectors[b].adjoint();
            for (int i = 0; i < ma; ++i) {
                for (int j = 0; j < mb; ++j) s(rows[i], cols[j]) = s_ab(i, j);
            }
        }
    }
    const double defect = (s - s.adjoint().eval()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    if (defect > 1e-10 * scale) {
        throw Error("solve_generator: generator is not Hermitian; Hx was inconsistent");
    }
    return 0.5 * (s + s.adjoint().eval());
}

Matrix PerturbationSeries::H_eff_at(int m) const {
    if (m < 0 || m >= static_cast<int>(terms.size())) {
        throw DomainError("H_eff_at: order out of range");
    }
    Matrix sum = terms[0];
    double lam = 1.0;
    for (int k = 1; k <= m; ++k) {
        lam *= lambda;
        sum += lam * terms[k];
    }
    return sum;
}

PerturbationSeries build_series(const PerturbationProblem& problem) {
    const BlockPartition& part = problem.partition;
    if (problem.H0.dim != part.dim || problem.H1.dim != part.dim) {
        throw DimensionError("build_series: dimension mismatch");
    }
    if (part.max_off_block(problem.H0.entries) != 0.0) {
        throw Error("build_series: H0 must be exactly block-diagonal");
    }
    const Matrix& h0 = problem.H0.entries;
    const Matrix& h1 = problem.H1.entries;

    PerturbationSeries series;
    series.lambda = problem.lambda;
    series.terms.push_back(h0);

    for (int m = 1; m <= problem.max_order; ++m) {
        // H_x^(m): every composition term of order m except the lone i[S_m,H0]
        Matrix hx = f_j(series.generators, h1, m - 1);
        for (const auto& parts : compositions(m)) {
            if (parts.size() == 1) continue;  // the i[S_m,H0] term, S_m unknown yet
            hx += nested_commutator_term(parts, series.generators, h0);
        }
        series.terms.push_back(part.block_diagonal_part(hx));
        series.generators.push_back(
            solve_generator(h0, part.off_block_part(hx), part, problem.gap_tol));
    }
    return series;
}

}  // namespace crham
