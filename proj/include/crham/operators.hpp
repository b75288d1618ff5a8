#ifndef CRHAM_OPERATORS_HPP
#define CRHAM_OPERATORS_HPP

#include "crham/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace crham {

Matrix kron(const Matrix& a, const Matrix& b);

// Bosonic annihilation operator truncated to d levels: b[k-1,k] = sqrt(k).
Matrix annihilation(int d);

// b^dag b = diag(0,1,...,d-1)
Matrix number_op(int d);

// Duffing oscillator: diag entry k = k*omega + delta/2 * k(k-1).
HermitianOp duffing(double omega, double delta, int d);

// Lowest-order exchange coupling mediated by the bus,
// J = g1 g2 (w1 + w2 - 2wr) / (2 (w1-wr)(w2-wr)).
double exchange_J(const DeviceParams& params);

// duffing(w1) (x) 1 + 1 (x) duffing(w2) + J (b^dag (x) b + b (x) b^dag),
// kron ordering, dimension d^2.
HermitianOp two_transmon_hamiltonian(const DeviceParams& params);

// Ladder ordering: sort two-transmon states (i1,i2) by total excitation
// i1+i2, then by increasing i1. ladder_order(d)[p] is the kron index of the
// state at ladder position p.
std::vector<int> ladder_order(int d);

// Permutation matrix F with (F v)[p] = v[ladder_order(d)[p]], i.e. the
// ladder-ordered matrix is F M F^dag.
Matrix ladder_permutation(int d);

// Ladder positions of the computational states {00,01,10,11}.
std::array<int, 4> computational_ladder_indices(int d);

// The 16 two-qubit Pauli labels in lexicographic order I < X < Y < Z.
const std::array<std::string, 16>& pauli_labels();

// P1 (x) P2 for a two-letter label.
Matrix pauli_matrix(const std::string& label);

// tr(H * (P1 (x) P2) / 2) for a 4x4 computational-subspace projection in the
// order {00,01,10,11}. The set {P/2} is trace-orthonormal, so
// H = sum_P coeff_P * P/2.
double pauli_coefficient(const Matrix& h4, const std::string& label);

}  // namespace crham

#endif
