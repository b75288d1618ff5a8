#ifndef CRHAM_RWA_FRAMES_HPP
#define CRHAM_RWA_FRAMES_HPP

#include "crham/types.hpp"

namespace crham {

// Static system diagonalized with maximal-overlap labeling: dressed state
// |jk> has maximal overlap with bare |jk> and keeps its kron index.
struct DressedSystem {
    int d = 0;            // levels per transmon
    Matrix U;             // dressing unitary
    RealVector energies;  // diagonal of U^dag Hsys0 U, kron-labeled
    Matrix B1;            // U^dag (b1^dag + b1) U
    Matrix B2;            // U^dag (b2^dag + b2) U
};

DressedSystem dress(const HermitianOp& hsys0, const Matrix& b1x, const Matrix& b2x);

// Static ZZ rate, factor-2 form: xi = -2 J^2 (d1+d2) / ((Delta+d1)(d2-Delta)).
double xi_static(double J, double delta1, double delta2, double Delta);

// Positive-root inversion of xi_static for J.
double J_from_xi(double xi, double delta1, double delta2, double Delta);

// RWA drive in the dressed rotating frame: entries survive only between
// states whose total excitation differs by exactly one.
Matrix rwa_drive(const DressedSystem& dressed, const DriveSpec& drive);

// H_tilde - omega_d (N1 + N2) in the dressed kron-ordered basis.
Matrix rotating_frame_drift(const DressedSystem& dressed, double omega_d);

struct DriveFrequencies {
    double omega_d = 0.0;   // target transition, averaged over control states
    double omega_d1 = 0.0;  // control transition, averaged over target states
};

DriveFrequencies drive_frequency(const DressedSystem& dressed);

}  // namespace crham

#endif
