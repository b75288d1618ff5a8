#ifndef CRHAM_CR_PIPELINE_HPP
#define CRHAM_CR_PIPELINE_HPP

#include "crham/types.hpp"

#include <array>
#include <string>

namespace crham {

enum class Method { exact, perturbative };

std::string method_name(Method m);

// Coefficients of the two-qubit Pauli basis (coefficient of P/2, GHz),
// indexed like pauli_labels().
struct PauliTable {
    std::array<double, 16> coeff{};
    std::string method;
    int order = 0;      // perturbative order, 0 otherwise
    double Omega = 0.0; // control drive amplitude (GHz)
    double Delta = 0.0; // omega1 - omega2 (GHz)
    double I_metric = 1.0;

    double operator[](const std::string& label) const;
    void set(const std::string& label, double value);

    // reassemble the 4x4 projection from the coefficients
    Matrix reconstruct() const;
};

// End-to-end CR effective Hamiltonian: dress, calibrate omega_d, rotating
// frame + RWA, ladder reorder, block-diagonalize with {00,01},{10,11},{rest},
// restore the physical frame, project onto the computational states.
PauliTable effective_cr(const DeviceParams& params, const DriveSpec& drive,
                        Method method, int order = 3, double gap_tol = 1e-9);

// Closed-form qubit model: ZI = Delta - sqrt(Delta^2+Omega^2),
// ZX = -J Omega / sqrt(Delta^2+Omega^2), all others zero.
PauliTable qubit_analytic(double J, double Delta, double Omega);

// Third-order closed forms for all seven nonzero coefficients (IY = ZY = 0).
PauliTable third_order_coefficients(double J, double Delta, double delta1,
                                    double delta2, double Omega);

// effective_cr with the cross-talk drive parameterization: control amplitude
// Omega at phase phi_c, target amplitude A*Omega at phase phi_t.
PauliTable crosstalk_fit_eval(const DeviceParams& params, double Omega, double A,
                              double phi_c, double phi_t, Method method, int order = 3);

}  // namespace crham

#endif
