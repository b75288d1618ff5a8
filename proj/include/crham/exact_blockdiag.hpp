#ifndef CRHAM_EXACT_BLOCKDIAG_HPP
#define CRHAM_EXACT_BLOCKDIAG_HPP

#include "crham/types.hpp"

namespace crham {

// Eigenvectors of H grouped by block. Column j of X is assigned to the block
// on which its projected weight is maximal; exactly |block| columns land in
// each block, ordered by ascending eigenvalue within the block. Phases are
// fixed so the largest component inside the assigned block is real positive.
struct EigvecAssignment {
    Matrix X;                    // orthonormal eigenvector columns, grouped by block
    RealVector energies;         // eigenvalue of each column of X
    std::vector<int> block_of_column;
    double min_overlap = 0.0;    // smallest winning overlap across columns
};

EigvecAssignment assign_eigenvectors(const HermitianOp& h, const BlockPartition& partition);

struct BlockDiagResult {
    HermitianOp H_eff;   // T^dag H T, block-diagonal up to the residual
    Matrix T;            // least-action unitary X X_BD^dag X_P^{-1/2}
    double I_metric = 0.0;
    double residual = 0.0;  // max off-block magnitude of T^dag H T
};

// Exact block-diagonalization under the principle of least action.
BlockDiagResult least_action_blockdiag(const HermitianOp& h, const BlockPartition& partition);

// I(H_eff) = tr(X_BD X_BD^dag)/dim = ||X_BD||_F^2 / dim, in [0,1].
double effectiveness_metric(const Matrix& x_bd);

// I(H_eff) without forming T; cheap path for sweeps.
double effectiveness_metric(const HermitianOp& h, const BlockPartition& partition);

}  // namespace crham

#endif
