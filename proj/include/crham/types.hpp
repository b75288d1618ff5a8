#ifndef CRHAM_TYPES_HPP
#define CRHAM_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace crham {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct PoleError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// Two eigenvectors compete for the last slot of a block with nearly equal
// overlap; carries the offending overlap values in the message.
struct DegenerateAssignmentError : Error {
    using Error::Error;
};

struct IllConditionedPartitionError : Error {
    using Error::Error;
};

struct SmallDenominatorError : Error {
    SmallDenominatorError(const std::string& msg, int p_, int q_, double Ep_, double Eq_)
        : Error(msg), p(p_), q(q_), Ep(Ep_), Eq(Eq_) {}
    int p, q;
    double Ep, Eq;
};

enum class Ordering { kron, ladder };

// Dense complex Hermitian matrix. Construction symmetrizes (M+M^dag)/2 and
// rejects inputs whose Hermiticity defect exceeds 1e-12 relative.
struct HermitianOp {
    int dim = 0;
    Matrix entries;
    Ordering ordering = Ordering::kron;
    double hermiticity_defect = 0.0;  // max|M - M^dag| before symmetrization

    static HermitianOp make(const Matrix& m, Ordering ord = Ordering::kron);
};

// Ordered list of disjoint index sets covering {0,...,dim-1}.
struct BlockPartition {
    std::vector<std::vector<int>> blocks;
    int dim = 0;

    BlockPartition() = default;
    BlockPartition(std::vector<std::vector<int>> blocks_, int dim_);

    // block index for each basis state
    const std::vector<int>& block_of() const { return block_of_; }

    static BlockPartition singletons(int dim);
    static BlockPartition single_block(int dim);

    bool same_block(int i, int j) const { return block_of_[i] == block_of_[j]; }

    Matrix block_diagonal_part(const Matrix& m) const;
    Matrix off_block_part(const Matrix& m) const;
    double max_off_block(const Matrix& m) const;

  private:
    std::vector<int> block_of_;
};

// Physical parameters of the two-transmon + bus system. All frequencies are
// cyclic (omega/2pi) in GHz; anharmonicities are typically negative.
struct DeviceParams {
    double omega1 = 0.0;   // control 01 frequency
    double omega2 = 0.0;   // target 01 frequency
    double delta1 = 0.0;   // control anharmonicity
    double delta2 = 0.0;   // target anharmonicity
    double g1 = 0.0;       // control-bus coupling
    double g2 = 0.0;       // target-bus coupling
    double omega_r = 0.0;  // bus resonator frequency
    double J = 0.0;        // exchange coupling (user-supplied or exchange_J)
    int d = 5;             // levels kept per transmon

    void validate() const;
    // max_j |g_j / (omega_j - omega_r)|; should be << 1 in the dispersive regime
    double dispersive_ratio() const;
};

// Constant-amplitude drive at a common frequency, with optional classical
// cross-talk on the target (scale A, phase phi_t).
struct DriveSpec {
    double OmegaX1 = 0.0;
    double OmegaY1 = 0.0;
    double OmegaX2 = 0.0;
    double OmegaY2 = 0.0;
    double omega_d = 0.0;  // 0 selects the calibrated drive frequency
    double crosstalk_A = 0.0;
    double phi_c = 0.0;
    double phi_t = 0.0;

    // Fold a control drive of amplitude Omega with phase phi_c, plus a
    // cross-talk drive A*Omega with phase phi_t, into quadrature amplitudes.
    static DriveSpec cr_drive(double Omega, double A = 0.0, double phi_c = 0.0,
                              double phi_t = 0.0);

    // largest drive amplitude, used as the perturbative order parameter
    double amplitude() const;
};

constexpr const char* kVersion = "0.1.0";

}  // namespace crham

#endif
