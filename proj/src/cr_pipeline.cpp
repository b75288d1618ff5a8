#include "crham/cr_pipeline.hpp"

#include "crham/exact_blockdiag.hpp"
#include "crham/operators.hpp"
#include "crham/perturbation.hpp"
#include "crham/rwa_frames.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crham {

std::string method_name(Method m) {
    return m == Method::exact ? "exact" : "perturbative";
}

namespace {

int label_index(const std::string& label) {
    const auto& labels = pauli_labels();
    for (int i = 0; i < 16; ++i) {
        if (labels[i] == label) return i;
    }
    throw Error("unknown Pauli label: " + label);
}

}  // namespace

double PauliTable::operator[](const std::string& label) const {
    return coeff[label_index(label)];
}

void PauliTable::set(const std::string& label, double value) {
    coeff[label_index(label)] = value;
}

Matrix PauliTable::reconstruct() const {
    Matrix h = Matrix::Zero(4, 4);
    for (int i = 0; i < 16; ++i) {
        h += coeff[i] * 0.5 * pauli_matrix(pauli_labels()[i]);
    }
    return h;
}

namespace {

// listed perturbative poles of the third-order expressions
void check_perturbative_poles(double Delta, double delta1, double gap_tol) {
    const double poles[] = {0.0, -0.5 * delta1, -delta1, -1.5 * delta1};
    for (double p : poles) {
        if (std::abs(Delta - p) <= gap_tol) {
            std::ostringstream os;
            os << "perturbative pole: Delta = " << Delta << " within " << gap_tol
               << " of resonance at " << p;
            throw PoleError(os.str());
        }
    }
}

}  // namespace

PauliTable effective_cr(const DeviceParams& params, const DriveSpec& drive, Method method,
                        int order, double gap_tol) {
    params.validate();
    const int d = params.d;
    const int dim = d * d;
    const double Delta = params.omega1 - params.omega2;

    const Matrix id = Matrix::Identity(d, d);
    const Matrix b = annihilation(d);
    const Matrix quad = b + b.adjoint().eval();
    const HermitianOp hsys0 = two_transmon_hamiltonian(params);
    const DressedSystem dressed = dress(hsys0, kron(quad, id), kron(id, quad));

    const DriveFrequencies freqs = drive_frequency(dressed);
    DriveSpec drv = drive;
    if (drv.omega_d == 0.0) drv.omega_d = freqs.omega_d;

    const Matrix h_rwa =
        rotating_frame_drift(dressed, drv.omega_d) + rwa_drive(dressed, drv);

    // ladder reorder and the {00,01},{10,11},{rest} partition
    const Matrix f = ladder_permutation(d);
    const HermitianOp h_l = HermitianOp::make(f * h_rwa * f.adjoint(), Ordering::ladder);
    const std::array<int, 4> comp = computational_ladder_indices(d);
    std::vector<int> rest;
    for (int i = 0; i < dim; ++i) {
        if (i != comp[0] && i != comp[1] && i != comp[2] && i != comp[3]) rest.push_back(i);
    }
    std::vector<std::vector<int>> blocks = {{comp[0], comp[1]}, {comp[2], comp[3]}};
    if (!rest.empty()) blocks.push_back(rest);
    const BlockPartition partition(blocks, dim);

    Matrix h_eff;
    double i_metric;
    const double omega = drv.amplitude();
    if (method == Method::exact) {
        const BlockDiagResult res = least_action_blockdiag(h_l, partition);
        h_eff = res.H_eff.entries;
        i_metric = res.I_metric;
    } else {
        check_perturbative_poles(Delta, params.delta1, gap_tol);
        if (omega == 0.0) {
            h_eff = h_l.entries;  // no drive: H_RWA is already diagonal
        } else {
            PerturbationProblem problem;
            problem.H0 = HermitianOp::make(Matrix(h_l.entries.diagonal().asDiagonal()),
                                           Ordering::ladder);
            problem.H1 = HermitianOp::make((h_l.entries - problem.H0.entries) / omega,
                                           Ordering::ladder);
            problem.lambda = omega;
            problem.partition = partition;
            problem.max_order = order;
            problem.gap_tol = gap_tol;
            h_eff = build_series(problem).H_eff_at(order);
        }
        i_metric = effectiveness_metric(h_l, partition);
    }

    // restore the physical frame of the control transmon
    const Matrix n1_ladder = f * kron(number_op(d), id) * f.adjoint();
    h_eff += (drv.omega_d - freqs.omega_d1) * n1_ladder;

    Matrix h4(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) h4(i, j) = h_eff(comp[i], comp[j]);
    }

    PauliTable table;
    table.method = method_name(method);
    table.order = (method == Method::perturbative) ? order : 0;
    table.Omega = std::hypot(drive.OmegaX1, drive.OmegaY1);
    table.Delta = Delta;
    table.I_metric = i_metric;
    for (int i = 0; i < 16; ++i) {
        table.coeff[i] = pauli_coefficient(h4, pauli_labels()[i]);
    }
    return table;
}

PauliTable qubit_analytic(double J, double Delta, double Omega) {
    PauliTable table;
    table.method = "analytic_qubit";
    table.Omega = Omega;
    table.Delta = Delta;
    const double root = std::sqrt(Delta * Delta + Omega * Omega);
    table.set("ZI", Delta - root);
    if (root > 0.0) table.set("ZX", -J * Omega / root);
    return table;
}

PauliTable third_order_coefficients(double J, double Delta, double delta1, double delta2,
                                    double Omega) {
    struct Denominator {
        const char* name;
        double value;
    };
    const Denominator dens[] = {
        {"Delta", Delta},
        {"delta1", delta1},
        {"delta2", delta2},
        {"delta1 + Delta", delta1 + Delta},
        {"2 delta1 + Delta", 2.0 * delta1 + Delta},
        {"delta1 + 2 Delta", delta1 + 2.0 * Delta},
        {"3 delta1 + 2 Delta", 3.0 * delta1 + 2.0 * Delta},
        {"Delta - delta2", Delta - delta2},
        {"delta1 + Delta - delta2", delta1 + Delta - delta2},
    };
    for (const auto& den : dens) {
        if (den.value == 0.0) {
            throw PoleError(std::string("third_order_coefficients: resonance at ") + den.name +
                            " = 0");
        }
    }

    const double D = Delta, d1 = delta1, d2 = delta2;
    const double D2 = D * D, D3 = D2 * D;
    const double s = d1 + D;  // recurring pole factor

    PauliTable table;
    table.method = "analytic_third_order";
    table.Omega = Omega;
    table.Delta = Delta;

    table.set("IX", -J * Omega / s +
                        D * d1 * J * std::pow(Omega, 3) /
                            (std::pow(s, 3) * (2.0 * D + d1) * (2.0 * D + 3.0 * d1)));

    table.set("IZ",
              0.5 * J * J * Omega * Omega *
                  ((std::pow(d1, 3) - 2.0 * d1 * D2 - 2.0 * D3) /
                       (d1 * D2 * s * s * (D - d2)) +
                   (d1 * d1 + D2) / (D2 * d2 * s * s) +
                   (6.0 * std::pow(d1, 5) + 4.0 * std::pow(d1, 4) * D -
                    6.0 * std::pow(d1, 3) * D2 + 7.0 * d1 * d1 * D3 +
                    12.0 * d1 * D2 * D2 + 4.0 * D3 * D2) /
                       (D2 * s * s * std::pow(2.0 * d1 + D, 2) * (d1 + 2.0 * D) *
                        (3.0 * d1 + 2.0 * D)) +
                   2.0 / (d1 * s * (d1 + D - d2)) +
                   2.0 / (s * std::pow(d1 + D - d2, 2)) +
                   1.0 / (D * std::pow(D - d2, 2))));

    table.set("ZI",
              -d1 * Omega * Omega / (2.0 * D * s) +
                  J * J * Omega * Omega / (2.0 * std::pow(s, 3)) *
                      (2.0 * (d1 * d1 + d1 * D + D2) * s / (d1 * D * (d2 - D)) +
                       0.5 * d1 *
                           (4.0 * d1 * d1 / D3 + 11.0 * d1 / D2 +
                            3.0 * d1 / std::pow(2.0 * d1 + D, 2) - 2.0 / (d1 + 2.0 * D) -
                            6.0 / (3.0 * d1 + 2.0 * D) + 12.0 / D) +
                       2.0 * s * s / (d1 * (d1 + D - d2)) +
                       2.0 * s * s / std::pow(d1 + D - d2, 2) -
                       2.0 * d1 * s / (D * d2)));

    table.set("ZX", -(J * Omega / D) * (d1 / s) +
                        J * std::pow(Omega, 3) * d1 * d1 *
                            (3.0 * std::pow(d1, 3) + 11.0 * d1 * d1 * D + 15.0 * d1 * D2 +
                             9.0 * D3) /
                            (2.0 * D3 * std::pow(s, 3) * (d1 + 2.0 * D) *
                             (3.0 * d1 + 2.0 * D)));

    table.set("ZZ",
              J * J / (2.0 * s * s) *
                  (Omega * Omega *
                       ((std::pow(d1, 3) - 2.0 * d1 * D2 - 2.0 * D3) /
                            (d1 * D2 * (d2 - D)) +
                        0.5 * (4.0 * (3.0 * d1 + D) * (d1 * d1 + d1 * D + D2) /
                                   (D2 * std::pow(2.0 * d1 + D, 2)) -
                               16.0 * D /
                                   (3.0 * d1 * d1 + 8.0 * d1 * D + 4.0 * D2)) +
                        2.0 * d1 / (D * d2) - 2.0 * s / std::pow(d1 + D - d2, 2) -
                        2.0 * s / (d1 * (d1 + D - d2))) +
                   2.0 * s * (d1 + d2) / (D - d2)));

    // IY and ZY vanish identically without cross-talk
    return table;
}

PauliTable crosstalk_fit_eval(const DeviceParams& params, double Omega, double A, double phi_c,
                              double phi_t, Method method, int order) {
    return effective_cr(params, DriveSpec::cr_drive(Omega, A, phi_c, phi_t), method, order);
}

}  // namespace crham
