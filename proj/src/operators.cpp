#include "crham/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace crham {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix annihilation(int d) {
    if (d < 2) throw DimensionError("annihilation: d must be >= 2");
    Matrix b = Matrix::Zero(d, d);
    for (int k = 1; k < d; ++k) b(k - 1, k) = std::sqrt(static_cast<double>(k));
    return b;
}

Matrix number_op(int d) {
    if (d < 2) throw DimensionError("number_op: d must be >= 2");
    Matrix n = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

HermitianOp duffing(double omega, double delta, int d) {
    if (d < 2) throw DimensionError("duffing: d must be >= 2");
    Matrix h = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        h(k, k) = k * omega + 0.5 * delta * k * (k - 1);
    }
    return HermitianOp::make(h);
}

double exchange_J(const DeviceParams& params) {
    const double d1 = params.omega1 - params.omega_r;
    const double d2 = params.omega2 - params.omega_r;
    if (d1 == 0.0 || d2 == 0.0) {
        throw PoleError("exchange_J: transmon resonant with the bus");
    }
    return params.g1 * params.g2 * (params.omega1 + params.omega2 - 2.0 * params.omega_r) /
           (2.0 * d1 * d2);
}

HermitianOp two_transmon_hamiltonian(const DeviceParams& params) {
    params.validate();
    const int d = params.d;
    const Matrix id = Matrix::Identity(d, d);
    const Matrix b = annihilation(d);
    Matrix h = kron(duffing(params.omega1, params.delta1, d).entries, id) +
               kron(id, duffing(params.omega2, params.delta2, d).entries) +
               params.J * (kron(b.adjoint(), b) + kron(b, b.adjoint()));
    return HermitianOp::make(h);
}

std::vector<int> ladder_order(int d) {
    if (d < 2) throw DimensionError("ladder_order: d must be >= 2");
    std::vector<int> order(d * d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [d](int a, int b) {
        const int a1 = a / d, a2 = a % d, b1 = b / d, b2 = b % d;
        if (a1 + a2 != b1 + b2) return a1 + a2 < b1 + b2;
        return a1 < b1;
    });
    return order;
}

Matrix ladder_permutation(int d) {
    const std::vector<int> order = ladder_order(d);
    const int dim = d * d;
    Matrix f = Matrix::Zero(dim, dim);
    for (int p = 0; p < dim; ++p) f(p, order[p]) = 1.0;
    return f;
}

std::array<int, 4> computational_ladder_indices(int d) {
    const std::vector<int> order = ladder_order(d);
    std::array<int, 4> out{};
    const std::array<int, 4> kron_idx = {0, 1, d, d + 1};  // 00, 01, 10, 11
    for (int s = 0; s < 4; ++s) {
        for (int p = 0; p < static_cast<int>(order.size()); ++p) {
            if (order[p] == kron_idx[s]) {
                out[s] = p;
                break;
            }
        }
    }
    return out;
}

const std::array<std::string, 16>& pauli_labels() {
    static const std::array<std::string, 16> labels = {
        "II", "IX", "IY", "IZ", "XI", "XX", "XY", "XZ",
        "YI", "YX", "YY", "YZ", "ZI", "ZX", "ZY", "ZZ"};
    return labels;
}

namespace {

Matrix pauli1(char c) {
    Matrix p(2, 2);
    switch (c) {
        case 'I': p << 1, 0, 0, 1; break;
        case 'X': p << 0, 1, 1, 0; break;
        case 'Y': p << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 'Z': p << 1, 0, 0, -1; break;
        default: throw Error(std::string("unknown Pauli letter: ") + c);
    }
    return p;
}

}  // namespace

Matrix pauli_matrix(const std::string& label) {
    if (label.size() != 2) throw Error("Pauli label must have two letters");
    return kron(pauli1(label[0]), pauli1(label[1]));
}

double pauli_coefficient(const Matrix& h4, const std::string& label) {
    if (h4.rows() != 4 || h4.cols() != 4) {
        throw DimensionError("pauli_coefficient: expected a 4x4 qubit projection");
    }
    const Complex tr = (h4 * (0.5 * pauli_matrix(label))).trace();
    return tr.real();
}

}  // namespace crham
