#include "crham/exact_blockdiag.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace crham {

namespace {

double block_weight(const Matrix& x, int col, const std::vector<int>& block) {
    double w = 0.0;
    for (int i : block) w += std::norm(x(i, col));
    return w;
}

// Rotate eigenvectors within each (near-)degenerate eigenvalue cluster so
// they concentrate on individual blocks. Diagonalizing a block-weighted
// projector sum inside the cluster resolves the gauge freedom; genuinely
// straddling clusters still show mixed weights and fail the assignment below.
void resolve_degenerate_clusters(Matrix& x, const RealVector& evals,
                                 const BlockPartition& partition) {
    const int n = static_cast<int>(evals.size());
    const double spread = std::max(1.0, evals(n - 1) - evals(0));
    const double tol = 1e-10 * spread;
    int start = 0;
    while (start < n) {
        int stop = start + 1;
        while (stop < n && evals(stop) - evals(stop - 1) <= tol) ++stop;
        const int m = stop - start;
        if (m > 1) {
            Matrix v = x.middleCols(start, m);
            Matrix weight = Matrix::Zero(m, m);
            for (std::size_t a = 0; a < partition.blocks.size(); ++a) {
                Matrix pv = Matrix::Zero(v.rows(), m);
                for (int i : partition.blocks[a]) pv.row(i) = v.row(i);
                weight += static_cast<double>(a + 1) * (v.adjoint() * pv);
            }
            Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (weight + weight.adjoint()));
            x.middleCols(start, m) = v * es.eigenvectors();
        }
        start = stop;
    }
}

}  // namespace

EigvecAssignment assign_eigenvectors(const HermitianOp& h, const BlockPartition& partition) {
    if (h.dim != partition.dim) {
        throw DimensionError("assign_eigenvectors: partition dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries);
    Matrix x = es.eigenvectors();
    const RealVector evals = es.eigenvalues();
    resolve_degenerate_clusters(x, evals, partition);

    const int n = h.dim;
    const int nblocks = static_cast<int>(partition.blocks.size());

    // overlap table w(j, a) = ||P_a s_j||^2
    Eigen::MatrixXd w(n, nblocks);
    for (int j = 0; j < n; ++j) {
        for (int a = 0; a < nblocks; ++a) w(j, a) = block_weight(x, j, partition.blocks[a]);
    }

    // greedy maximal-overlap assignment, exactly |block a| columns per block
    std::vector<std::tuple<double, int, int>> entries;
    entries.reserve(static_cast<std::size_t>(n) * nblocks);
    for (int j = 0; j < n; ++j) {
        for (int a = 0; a < nblocks; ++a) entries.emplace_back(w(j, a), j, a);
    }
    std::sort(entries.begin(), entries.end(), [](const auto& lhs, const auto& rhs) {
        if (std::get<0>(lhs) != std::get<0>(rhs)) return std::get<0>(lhs) > std::get<0>(rhs);
        if (std::get<1>(lhs) != std::get<1>(rhs)) return std::get<1>(lhs) < std::get<1>(rhs);
        return std::get<2>(lhs) < std::get<2>(rhs);
    });

    std::vector<int> assigned(n, -1);
    std::vector<int> remaining(nblocks);
    for (int a = 0; a < nblocks; ++a) remaining[a] = static_cast<int>(partition.blocks[a].size());
    double min_overlap = 1.0;

    for (const auto& [weight, j, a] : entries) {
        if (assigned[j] != -1 || remaining[a] == 0) continue;
        if (remaining[a] == 1) {
            // last slot: reject near-ties between competing eigenvectors
            for (int jj = 0; jj < n; ++jj) {
                if (jj != j && assigned[jj] == -1 && std::abs(w(jj, a) - weight) < 1e-6) {
                    std::ostringstream os;
                    os << "degenerate assignment: eigenvectors " << j << " and " << jj
                       << " compete for block " << a << " with overlaps " << weight << " and "
                       << w(jj, a);
                    throw DegenerateAssignmentError(os.str());
                }
            }
        }
        assigned[j] = a;
        --remaining[a];
        min_overlap = std::min(min_overlap, weight);
    }

    // group columns by block, ascending eigenvalue within each block
    std::vector<int> perm;
    perm.reserve(n);
    for (int a = 0; a < nblocks; ++a) {
        for (int j = 0; j < n; ++j) {
            if (assigned[j] == a) perm.push_back(j);
        }
    }

    EigvecAssignment out;
    out.X.resize(n, n);
    out.energies.resize(n);
    out.block_of_column.resize(n);
    for (int c = 0; c < n; ++c) {
        const int j = perm[c];
        Vector col = x.col(j);
        // phase convention: largest component inside the assigned block real positive
        const std::vector<int>& block = partition.blocks[assigned[j]];
        int imax = block[0];
        for (int i : block) {
            if (std::abs(col(i)) > std::abs(col(imax))) imax = i;
        }
        if (std::abs(col(imax)) > 0.0) col *= std::abs(col(imax)) / col(imax);
        out.X.col(c) = col;
        out.energies(c) = evals(j);
        out.block_of_column[c] = assigned[j];
    }
    out.min_overlap = min_overlap;
    return out;
}

namespace {

Matrix block_restrict(const Matrix& x, const std::vector<int>& block_of_column,
                      const BlockPartition& partition) {
    Matrix x_bd = Matrix::Zero(x.rows(), x.cols());
    for (int c = 0; c < x.cols(); ++c) {
        for (int i : partition.blocks[block_of_column[c]]) x_bd(i, c) = x(i, c);
    }
    return x_bd;
}

}  // namespace

BlockDiagResult least_action_blockdiag(const HermitianOp& h, const BlockPartition& partition) {
    const EigvecAssignment asg = assign_eigenvectors(h, partition);
    const Matrix x_bd = block_restrict(asg.X, asg.block_of_column, partition);

    Eigen::JacobiSVD<Matrix> svd(x_bd);
    const double smin = svd.singularValues().minCoeff();
    if (smin <= 1e-8) {
        std::ostringstream os;
        os << "ill-conditioned partition: min singular value of X_BD is " << smin;
        throw IllConditionedPartitionError(os.str());
    }

    // principal inverse square root of X_P = X_BD X_BD^dag (Hermitian PSD)
    const Matrix x_p = x_bd * x_bd.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(x_p);
    if (es.eigenvalues().minCoeff() < 1e-12) {
        throw IllConditionedPartitionError("X_P is numerically singular");
    }
    const Matrix xp_inv_sqrt = es.eigenvectors() *
                               es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                               es.eigenvectors().adjoint();

    BlockDiagResult res;
    res.T = asg.X * x_bd.adjoint() * xp_inv_sqrt;
    Matrix h_eff = res.T.adjoint() * h.entries * res.T;
    res.residual = partition.max_off_block(h_eff);
    res.H_eff = HermitianOp::make(h_eff, h.ordering);
    res.I_metric = effectiveness_metric(x_bd);
    return res;
}

double effectiveness_metric(const Matrix& x_bd) {
    return x_bd.squaredNorm() / static_cast<double>(x_bd.rows());
}

double effectiveness_metric(const HermitianOp& h, const BlockPartition& partition) {
    const EigvecAssignment asg = assign_eigenvectors(h, partition);
    return effectiveness_metric(block_restrict(asg.X, asg.block_of_column, partition));
}

}  // namespace crham
