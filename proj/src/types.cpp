#include "crham/types.hpp"

#include <cmath>
#include <sstream>

namespace crham {

HermitianOp HermitianOp::make(const Matrix& m, Ordering ord) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DimensionError("HermitianOp requires a square matrix");
    }
    const double scale = m.cwiseAbs().maxCoeff();
    const double defect = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && defect > 1e-12 * scale) {
        std::ostringstream os;
        os << "matrix is not Hermitian: defect " << defect << " vs scale " << scale;
        throw Error(os.str());
    }
    HermitianOp op;
    op.dim = static_cast<int>(m.rows());
    op.entries = 0.5 * (m + m.adjoint().eval());
    op.ordering = ord;
    op.hermiticity_defect = defect;
    return op;
}

BlockPartition::BlockPartition(std::vector<std::vector<int>> blocks_, int dim_)
    : blocks(std::move(blocks_)), dim(dim_) {
    block_of_.assign(dim, -1);
    int covered = 0;
    for (std::size_t a = 0; a < blocks.size(); ++a) {
        if (blocks[a].empty()) throw Error("BlockPartition: empty block");
        for (int idx : blocks[a]) {
            if (idx < 0 || idx >= dim) throw Error("BlockPartition: index out of range");
            if (block_of_[idx] != -1) throw Error("BlockPartition: blocks overlap");
            block_of_[idx] = static_cast<int>(a);
            ++covered;
        }
    }
    if (covered != dim) throw Error("BlockPartition: blocks do not cover the space");
}

BlockPartition BlockPartition::singletons(int dim) {
    std::vector<std::vector<int>> blocks(dim);
    for (int i = 0; i < dim; ++i) blocks[i] = {i};
    return BlockPartition(std::move(blocks), dim);
}

BlockPartition BlockPartition::single_block(int dim) {
    std::vector<int> all(dim);
    for (int i = 0; i < dim; ++i) all[i] = i;
    return BlockPartition({all}, dim);
}

Matrix BlockPartition::block_diagonal_part(const Matrix& m) const {
    Matrix out = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            if (block_of_[i] == block_of_[j]) out(i, j) = m(i, j);
        }
    }
    return out;
}

Matrix BlockPartition::off_block_part(const Matrix& m) const {
    return m - block_diagonal_part(m);
}

double BlockPartition::max_off_block(const Matrix& m) const {
    double mx = 0.0;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            if (block_of_[i] != block_of_[j]) mx = std::max(mx, std::abs(m(i, j)));
        }
    }
    return mx;
}

void DeviceParams::validate() const {
    if (d < 2) throw DimensionError("DeviceParams: d must be >= 2");
    for (double v : {omega1, omega2, delta1, delta2, g1, g2, omega_r, J}) {
        if (!std::isfinite(v)) throw Error("DeviceParams: non-finite parameter");
    }
}

double DeviceParams::dispersive_ratio() const {
    double r1 = (omega1 != omega_r) ? std::abs(g1 / (omega1 - omega_r)) : INFINITY;
    double r2 = (omega2 != omega_r) ? std::abs(g2 / (omega2 - omega_r)) : INFINITY;
    return std::max(r1, r2);
}

DriveSpec DriveSpec::cr_drive(double Omega, double A, double phi_c, double phi_t) {
    if (A < 0.0 || A > 1.0) throw DomainError("crosstalk scale A must be in [0,1]");
    DriveSpec spec;
    spec.OmegaX1 = Omega * std::cos(phi_c);
    spec.OmegaY1 = -Omega * std::sin(phi_c);
    spec.OmegaX2 = A * Omega * std::cos(phi_t);
    spec.OmegaY2 = -A * Omega * std::sin(phi_t);
    spec.crosstalk_A = A;
    spec.phi_c = phi_c;
    spec.phi_t = phi_t;
    return spec;
}

double DriveSpec::amplitude() const {
    return std::max(std::hypot(OmegaX1, OmegaY1), std::hypot(OmegaX2, OmegaY2));
}

}  // namespace crham
