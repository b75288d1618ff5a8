#ifndef CRHAM_PERTURBATION_HPP
#define CRHAM_PERTURBATION_HPP

#include "crham/types.hpp"

#include <vector>

namespace crham {

// All 2^(k-1) ordered compositions of k into positive parts, in descending
// lexicographic order: (3),(2,1),(1,2),(1,1,1).
std::vector<std::vector<int>> compositions(int k);

// (i^b / b!) [S_{j1}, [S_{j2}, ..., [S_{jb}, A]...]] for parts = (j1,...,jb).
// generators[m-1] holds S_m.
Matrix nested_commutator_term(const std::vector<int>& parts,
                              const std::vector<Matrix>& generators, const Matrix& a);

// f_j(A) = sum over compositions(j) of the nested commutator terms; f_0 = A.
Matrix f_j(const std::vector<Matrix>& generators, const Matrix& a, int j);

// Solve H0_j S - S H0_k = -i Hx_{j,k} for every off-block pair, returning the
// Hermitian off-block generator. H0 must be block-diagonal; spectra of
// distinct blocks may not collide within gap_tol.
Matrix solve_generator(const Matrix& h0, const Matrix& hx_offblock,
                       const BlockPartition& partition, double gap_tol = 1e-9);

struct PerturbationProblem {
    HermitianOp H0;            // block-diagonal w.r.t. partition
    HermitianOp H1;            // perturbation, norm of order 1
    double lambda = 0.0;
    BlockPartition partition;
    int max_order = 3;
    double gap_tol = 1e-9;
};

struct PerturbationSeries {
    std::vector<Matrix> terms;       // H^(0) ... H^(max_order), each block-diagonal
    std::vector<Matrix> generators;  // S_1 ... S_max_order, Hermitian off-block
    double lambda = 0.0;

    // partial sum sum_{k<=m} lambda^k H^(k)
    Matrix H_eff_at(int m) const;
};

// Order-by-order canonical transformation with block-diagonality enforced at
// each order: H^(m) = blockdiag(H_x^(m)), S_m cancels the off-block part.
PerturbationSeries build_series(const PerturbationProblem& problem);

}  // namespace crham

#endif
