#include "crham/rwa_frames.hpp"

#include "crham/exact_blockdiag.hpp"

#include <cmath>

namespace crham {

DressedSystem dress(const HermitianOp& hsys0, const Matrix& b1x, const Matrix& b2x) {
    const int dim = hsys0.dim;
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
    if (d * d != dim) throw DimensionError("dress: expected a two-transmon (d^2) Hamiltonian");

    // exact diagonalization with maximal-overlap labeling to the bare states
    const BlockDiagResult diag = least_action_blockdiag(hsys0, BlockPartition::singletons(dim));

    DressedSystem out;
    out.d = d;
    out.U = diag.T;
    out.energies = diag.H_eff.entries.diagonal().real();
    out.B1 = diag.T.adjoint() * b1x * diag.T;
    out.B2 = diag.T.adjoint() * b2x * diag.T;
    return out;
}

double xi_static(double J, double delta1, double delta2, double Delta) {
    const double den = (Delta + delta1) * (delta2 - Delta);
    if (den == 0.0) throw PoleError("xi_static: pole at Delta = -delta1 or Delta = delta2");
    return -2.0 * J * J * (delta1 + delta2) / den;
}

double J_from_xi(double xi, double delta1, double delta2, double Delta) {
    const double den = (Delta + delta1) * (delta2 - Delta);
    if (den == 0.0) throw PoleError("J_from_xi: pole at Delta = -delta1 or Delta = delta2");
    if (delta1 + delta2 == 0.0) throw DomainError("J_from_xi: delta1 + delta2 = 0");
    const double j_sq = -xi * den / (2.0 * (delta1 + delta2));
    if (j_sq < 0.0) throw DomainError("J_from_xi: sign-incompatible inputs (negative J^2)");
    return std::sqrt(j_sq);
}

Matrix rwa_drive(const DressedSystem& dressed, const DriveSpec& drive) {
    const int d = dressed.d;
    const int dim = d * d;
    const Complex amp1_raise(0.5 * drive.OmegaX1, -0.5 * drive.OmegaY1);
    const Complex amp2_raise(0.5 * drive.OmegaX2, -0.5 * drive.OmegaY2);
    Matrix out = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const int exc_i = i / d + i % d;
        for (int j = 0; j < dim; ++j) {
            const int diff = exc_i - (j / d + j % d);
            if (diff == 1) {
                out(i, j) = amp1_raise * dressed.B1(i, j) + amp2_raise * dressed.B2(i, j);
            } else if (diff == -1) {
                out(i, j) = std::conj(amp1_raise) * dressed.B1(i, j) +
                            std::conj(amp2_raise) * dressed.B2(i, j);
            }
        }
    }
    return out;
}

Matrix rotating_frame_drift(const DressedSystem& dressed, double omega_d) {
    const int d = dressed.d;
    const int dim = d * d;
    Matrix out = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        out(i, i) = dressed.energies(i) - omega_d * (i / d + i % d);
    }
    return out;
}

DriveFrequencies drive_frequency(const DressedSystem& dressed) {
    const int d = dressed.d;
    const double e00 = dressed.energies(0);
    const double e01 = dressed.energies(1);
    const double e10 = dressed.energies(d);
    const double e11 = dressed.energies(d + 1);
    DriveFrequencies out;
    out.omega_d = 0.5 * ((e11 - e10) + (e01 - e00));
    out.omega_d1 = 0.5 * ((e11 - e01) + (e10 - e00));
    return out;
}

}  // namespace crham
