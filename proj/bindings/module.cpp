#include "crham/cr_pipeline.hpp"
#include "crham/exact_blockdiag.hpp"
#include "crham/operators.hpp"
#include "crham/perturbation.hpp"
#include "crham/rwa_frames.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace crham;

namespace {

py::dict table_to_dict(const PauliTable& table) {
    py::dict out;
    py::dict coeff;
    for (int i = 0; i < 16; ++i) {
        coeff[py::str(pauli_labels()[i])] = table.coeff[i];
    }
    out["coeff"] = coeff;
    out["method"] = table.method;
    out["order"] = table.order;
    out["Omega"] = table.Omega;
    out["Delta"] = table.Delta;
    out["I_metric"] = table.I_metric;
    return out;
}

BlockPartition make_partition(const std::vector<std::vector<int>>& blocks, int dim) {
    return BlockPartition(blocks, dim);
}

}  // namespace

PYBIND11_MODULE(_crham, m) {
    m.doc() = "Effective cross-resonance Hamiltonian construction";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "CrhamError");

    py::class_<DeviceParams>(m, "DeviceParams")
        .def(py::init<>())
        .def_readwrite("omega1", &DeviceParams::omega1)
        .def_readwrite("omega2", &DeviceParams::omega2)
        .def_readwrite("delta1", &DeviceParams::delta1)
        .def_readwrite("delta2", &DeviceParams::delta2)
        .def_readwrite("g1", &DeviceParams::g1)
        .def_readwrite("g2", &DeviceParams::g2)
        .def_readwrite("omega_r", &DeviceParams::omega_r)
        .def_readwrite("J", &DeviceParams::J)
        .def_readwrite("d", &DeviceParams::d)
        .def("validate", &DeviceParams::validate)
        .def("dispersive_ratio", &DeviceParams::dispersive_ratio);

    py::class_<DriveSpec>(m, "DriveSpec")
        .def(py::init<>())
        .def_readwrite("OmegaX1", &DriveSpec::OmegaX1)
        .def_readwrite("OmegaY1", &DriveSpec::OmegaY1)
        .def_readwrite("OmegaX2", &DriveSpec::OmegaX2)
        .def_readwrite("OmegaY2", &DriveSpec::OmegaY2)
        .def_readwrite("omega_d", &DriveSpec::omega_d)
        .def_static("cr_drive", &DriveSpec::cr_drive, py::arg("Omega"), py::arg("A") = 0.0,
                    py::arg("phi_c") = 0.0, py::arg("phi_t") = 0.0)
        .def("amplitude", &DriveSpec::amplitude);

    py::enum_<Method>(m, "Method")
        .value("exact", Method::exact)
        .value("perturbative", Method::perturbative);

    m.def(
        "effective_cr",
        [](const DeviceParams& params, const DriveSpec& drive, Method method, int order,
           double gap_tol) {
            return table_to_dict(effective_cr(params, drive, method, order, gap_tol));
        },
        py::arg("params"), py::arg("drive"), py::arg("method") = Method::exact,
        py::arg("order") = 3, py::arg("gap_tol") = 1e-9);

    m.def(
        "qubit_analytic",
        [](double J, double Delta, double Omega) {
            return table_to_dict(qubit_analytic(J, Delta, Omega));
        },
        py::arg("J"), py::arg("Delta"), py::arg("Omega"));

    m.def(
        "third_order_coefficients",
        [](double J, double Delta, double delta1, double delta2, double Omega) {
            return table_to_dict(third_order_coefficients(J, Delta, delta1, delta2, Omega));
        },
        py::arg("J"), py::arg("Delta"), py::arg("delta1"), py::arg("delta2"), py::arg("Omega"));

    m.def("xi_static", &xi_static, py::arg("J"), py::arg("delta1"), py::arg("delta2"),
          py::arg("Delta"));
    m.def("J_from_xi", &J_from_xi, py::arg("xi"), py::arg("delta1"), py::arg("delta2"),
          py::arg("Delta"));
    m.def("exchange_J", &exchange_J, py::arg("params"));
    m.def("compositions", &compositions, py::arg("k"));
    m.def("pauli_labels", [] {
        return std::vector<std::string>(pauli_labels().begin(), pauli_labels().end());
    });

    m.def(
        "least_action_blockdiag",
        [](const Matrix& h, const std::vector<std::vector<int>>& blocks) {
            const BlockDiagResult res = least_action_blockdiag(
                HermitianOp::make(h), make_partition(blocks, static_cast<int>(h.rows())));
            py::dict out;
            out["T"] = res.T;
            out["H_eff"] = res.H_eff.entries;
            out["I_metric"] = res.I_metric;
            out["residual"] = res.residual;
            return out;
        },
        py::arg("h"), py::arg("blocks"),
        "Least-action block diagonalization of a Hermitian matrix");
}
