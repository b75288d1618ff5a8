#include "crham/cr_pipeline.hpp"
#include "crham/exact_blockdiag.hpp"
#include "crham/operators.hpp"
#include "crham/perturbation.hpp"
#include "crham/rwa_frames.hpp"
#include "crham/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>

namespace {

using namespace crham;

DeviceParams paper_device() {
    DeviceParams device;
    device.omega1 = 5.114;
    device.omega2 = 4.914;
    device.delta1 = -0.330;
    device.delta2 = -0.330;
    device.g1 = 0.098;
    device.g2 = 0.083;
    device.omega_r = 6.31;
    device.J = J_from_xi(277e-6, device.delta1, device.delta2, device.omega1 - device.omega2);
    device.d = 5;
    return device;
}

Method parse_method(const std::string& name) {
    if (name == "exact") return Method::exact;
    if (name == "pert" || name == "perturbative") return Method::perturbative;
    throw ConfigError("method must be exact or pert");
}

void print_table(const PauliTable& table) {
    std::printf("method=%s order=%d Delta=%.6g GHz Omega=%.6g GHz I=%.9g\n",
                table.method.c_str(), table.order, table.Delta, table.Omega, table.I_metric);
    for (int i = 0; i < 16; ++i) {
        std::printf("  %s  %+12.6f MHz\n", pauli_labels()[i].c_str(), 1000.0 * table.coeff[i]);
    }
}

struct Check {
    int passed = 0;
    int failed = 0;
    void report(const std::string& name, bool ok, const std::string& detail = "") {
        std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                    detail.empty() ? "" : ": ", detail.c_str());
        (ok ? passed : failed) += 1;
    }
};

// 4x4 rotating-frame qubit Hamiltonian, basis {00,01,10,11}
Matrix qubit_h_r(double J, double Delta, double Omega) {
    Matrix h = Matrix::Zero(4, 4);
    h(0, 2) = h(2, 0) = 0.5 * Omega;
    h(1, 3) = h(3, 1) = 0.5 * Omega;
    h(1, 2) = h(2, 1) = J;
    h(2, 2) = h(3, 3) = Delta;
    return h;
}

int run_validate() {
    Check check;
    char buf[256];

    // xi <-> J calibration against the quoted 3.8 MHz
    {
        const double J = J_from_xi(277e-6, -0.330, -0.330, 0.200);
        std::snprintf(buf, sizeof(buf), "J = %.6g GHz", J);
        check.report("jcal: J_from_xi(277 kHz) ~ 3.80 MHz", std::abs(J - 3.80e-3) < 2e-5, buf);
    }

    // composition count at fifth order
    check.report("compositions(5) has 16 tuples", compositions(5).size() == 16);

    // qubit model: least action on H_R vs the closed form
    {
        const double J = 3.8e-3, Delta = 0.2, Omega = 0.02;
        const BlockPartition part({{0, 1}, {2, 3}}, 4);
        const auto res = least_action_blockdiag(HermitianOp::make(qubit_h_r(J, Delta, Omega)), part);
        Matrix h4 = res.H_eff.entries;
        for (int i = 2; i < 4; ++i) h4(i, i) -= Delta;  // back to the physical frame
        const PauliTable ref = qubit_analytic(J, Delta, Omega);
        const double zx_err = std::abs(pauli_coefficient(h4, "ZX") - ref["ZX"]);
        const double zi_err = std::abs(pauli_coefficient(h4, "ZI") - ref["ZI"]);
        std::snprintf(buf, sizeof(buf), "|dZX| = %.3g, |dZI| = %.3g GHz", zx_err, zi_err);
        check.report("qubit model matches closed form to O(J^2/Delta)",
                     zx_err < 5 * J * J / Delta && zi_err < 5 * J * J / Delta, buf);
    }

    // third-order closed forms vs the numeric perturbation engine
    {
        DeviceParams device = paper_device();
        const double Omega = 0.020;
        const PauliTable numeric =
            effective_cr(device, DriveSpec::cr_drive(Omega), Method::perturbative, 3);
        const PauliTable closed = third_order_coefficients(
            device.J, device.omega1 - device.omega2, device.delta1, device.delta2, Omega);
        double worst = 0.0;
        std::string worst_label;
        for (const std::string label : {"IX", "ZX", "ZI", "IZ", "ZZ"}) {
            const double diff = std::abs(numeric[label] - closed[label]);
            if (diff > worst) {
                worst = diff;
                worst_label = label;
            }
        }
        std::snprintf(buf, sizeof(buf), "worst %s: %.3g GHz", worst_label.c_str(), worst);
        // the closed forms keep the lowest orders in J, so a higher-J residue
        // of a few kHz remains relative to the J-exact numeric series
        check.report("closed-form coefficients match perturbative engine (< 10 kHz)",
                     worst < 1e-5, buf);
    }

    // selection rule: no IY/ZY without cross-talk
    {
        const PauliTable table = effective_cr(paper_device(), DriveSpec::cr_drive(0.040),
                                              Method::exact);
        const double iy = std::abs(table["IY"]), zy = std::abs(table["ZY"]);
        std::snprintf(buf, sizeof(buf), "|IY| = %.3g, |ZY| = %.3g GHz", iy, zy);
        check.report("IY = ZY = 0 without cross-talk", iy < 1e-9 && zy < 1e-9, buf);
    }

    std::printf("%d passed, %d failed\n", check.passed, check.failed);
    return check.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Effective cross-resonance Hamiltonian models for two coupled transmons"};
    app.require_subcommand(1);

    std::string config_path, method_str, out_path, format_str;
    int order = -1, levels = -1, threads = -1;
    bool strict = false;

    auto* sweep_cmd = app.add_subcommand("sweep", "run a 1-D or 2-D parameter sweep");
    sweep_cmd->add_option("--config", config_path, "sweep config file")->required();
    sweep_cmd->add_option("--method", method_str, "exact|pert");
    sweep_cmd->add_option("--order", order, "perturbative order");
    sweep_cmd->add_option("--levels", levels, "levels per transmon");
    sweep_cmd->add_option("--out", out_path, "output path");
    sweep_cmd->add_option("--format", format_str, "csv|json");
    sweep_cmd->add_option("--threads", threads, "worker threads");
    sweep_cmd->add_flag("--strict", strict, "exit 3 if any row has non-ok status");

    double pt_omega = 0.020, pt_A = 0.0, pt_phi_c = 0.0, pt_phi_t = 0.0;
    std::string pt_method = "exact";
    auto* point_cmd = app.add_subcommand("point", "effective Hamiltonian at a single point");
    point_cmd->add_option("--config", config_path, "config file for device parameters");
    point_cmd->add_option("--Omega", pt_omega, "drive amplitude (GHz)");
    point_cmd->add_option("--A", pt_A, "cross-talk scale");
    point_cmd->add_option("--phi-c", pt_phi_c, "control drive phase (rad)");
    point_cmd->add_option("--phi-t", pt_phi_t, "target drive phase (rad)");
    point_cmd->add_option("--method", pt_method, "exact|pert");
    point_cmd->add_option("--order", order, "perturbative order");
    point_cmd->add_option("--levels", levels, "levels per transmon");

    auto* validate_cmd = app.add_subcommand("validate", "run the analytic-oracle suite");

    double xi = 277e-6, jc_d1 = -0.330, jc_d2 = -0.330, jc_Delta = 0.200;
    auto* jcal_cmd = app.add_subcommand("jcal", "invert the static ZZ rate for J");
    jcal_cmd->add_option("--xi", xi, "static ZZ rate (GHz)");
    jcal_cmd->add_option("--delta1", jc_d1, "control anharmonicity (GHz)");
    jcal_cmd->add_option("--delta2", jc_d2, "target anharmonicity (GHz)");
    jcal_cmd->add_option("--delta", jc_Delta, "qubit-qubit detuning (GHz)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_cmd->parsed()) {
            crham::SweepConfig config = crham::parse_config_file(config_path);
            if (!method_str.empty()) config.method = parse_method(method_str);
            if (order > 0) config.order = order;
            if (levels > 0) config.device.d = levels;
            if (!out_path.empty()) config.out_path = out_path;
            if (!format_str.empty()) config.format = format_str;
            if (threads > 0) config.threads = threads;
            if (config.out_path.empty()) {
                throw crham::ConfigError("no output path (output.path or --out)");
            }
            const auto rows = crham::run_sweep(config);
            crham::emit(config, rows);
            int bad = 0;
            for (const auto& row : rows) {
                if (row.status != "ok") ++bad;
            }
            std::printf("wrote %zu rows (%d non-ok) to %s\n", rows.size(), bad,
                        config.out_path.c_str());
            if (strict && bad > 0) return 3;
        } else if (point_cmd->parsed()) {
            crham::DeviceParams device = config_path.empty()
                                             ? paper_device()
                                             : crham::parse_config_file(config_path).device;
            if (levels > 0) device.d = levels;
            print_table(crham::crosstalk_fit_eval(device, pt_omega, pt_A, pt_phi_c, pt_phi_t,
                                                  parse_method(pt_method),
                                                  order > 0 ? order : 3));
        } else if (validate_cmd->parsed()) {
            return run_validate();
        } else if (jcal_cmd->parsed()) {
            const double J = crham::J_from_xi(xi, jc_d1, jc_d2, jc_Delta);
            std::printf("J = %.9g GHz (%.6g MHz)\n", J, 1000.0 * J);
        }
    } catch (const crham::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
