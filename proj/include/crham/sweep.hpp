#ifndef CRHAM_SWEEP_HPP
#define CRHAM_SWEEP_HPP

#include "crham/cr_pipeline.hpp"
#include "crham/types.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace crham {

struct SweepAxis {
    std::string name;  // Omega | Delta | omega1
    double start = 0.0;
    double stop = 0.0;
    int points = 0;

    void validate() const;
    double value_at(int i) const;
};

struct SweepConfig {
    DeviceParams device;
    double Omega = 0.0;  // default drive amplitude (GHz)
    Method method = Method::exact;
    int order = 3;
    double gap_tol = 1e-9;
    double crosstalk_A = 0.0;
    double phi_c = 0.0;
    double phi_t = 0.0;
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    std::string out_path;
    std::string format = "csv";  // csv | json
    int threads = 1;

    void validate() const;
};

struct SweepRow {
    double delta_ghz = 0.0;
    double omega_ghz = 0.0;
    std::string method;
    int order = 0;
    std::array<double, 16> coeff_mhz{};  // pauli_labels() order
    double I_metric = 0.0;
    std::string status = "ok";  // ok | pole | degenerate | error
};

// One row per grid point, deterministic grid order, never aborts on pole or
// degenerate points. Parallel over grid points up to config.threads.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void emit_json(const SweepConfig& config, const std::vector<SweepRow>& rows, std::ostream& out);
void emit(const SweepConfig& config, const std::vector<SweepRow>& rows);

// Flat "section.key = value" config file; '#' starts a comment.
SweepConfig parse_config_file(const std::string& path);
SweepConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

}  // namespace crham

#endif
