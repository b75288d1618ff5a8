#include "crham/sweep.hpp"

#include "crham/operators.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace crham {

void SweepAxis::validate() const {
    if (name != "Omega" && name != "Delta" && name != "omega1") {
        throw ConfigError("sweep axis name must be Omega, Delta, or omega1; got '" + name + "'");
    }
    if (points < 2) throw ConfigError("sweep axis needs at least 2 points");
    if (!(start < stop)) throw ConfigError("sweep axis requires start < stop");
}

double SweepAxis::value_at(int i) const {
    return start + (stop - start) * static_cast<double>(i) / (points - 1);
}

void SweepConfig::validate() const {
    device.validate();
    axis1.validate();
    if (axis2) axis2->validate();
    if (format != "csv" && format != "json") {
        throw ConfigError("output format must be csv or json; got '" + format + "'");
    }
    if (order < 1) throw ConfigError("perturbative order must be >= 1");
    if (threads < 1) throw ConfigError("threads must be >= 1");
}

namespace {

struct GridPoint {
    double Omega;
    double omega1;
};

void apply_axis(const SweepAxis& axis, double value, GridPoint& point,
                const DeviceParams& device) {
    if (axis.name == "Omega") {
        point.Omega = value;
    } else if (axis.name == "Delta") {
        point.omega1 = device.omega2 + value;
    } else {
        point.omega1 = value;
    }
}

SweepRow compute_row(const SweepConfig& config, const GridPoint& point) {
    DeviceParams device = config.device;
    device.omega1 = point.omega1;

    SweepRow row;
    row.method = method_name(config.method);
    row.order = (config.method == Method::perturbative) ? config.order : 0;
    row.delta_ghz = device.omega1 - device.omega2;
    row.omega_ghz = point.Omega;
    try {
        const PauliTable table =
            crosstalk_fit_eval(device, point.Omega, config.crosstalk_A, config.phi_c,
                               config.phi_t, config.method, config.order);
        bool finite = std::isfinite(table.I_metric);
        for (double c : table.coeff) finite = finite && std::isfinite(c);
        if (!finite) {
            row.status = "error";
            return row;
        }
        for (int i = 0; i < 16; ++i) row.coeff_mhz[i] = 1000.0 * table.coeff[i];
        row.I_metric = table.I_metric;
    } catch (const PoleError&) {
        row.status = "pole";
    } catch (const SmallDenominatorError&) {
        row.status = "pole";
    } catch (const DegenerateAssignmentError&) {
        row.status = "degenerate";
    } catch (const IllConditionedPartitionError&) {
        row.status = "degenerate";
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    config.validate();
    const int n1 = config.axis1.points;
    const int n2 = config.axis2 ? config.axis2->points : 1;
    const int total = n1 * n2;

    std::vector<GridPoint> grid(total);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            GridPoint point{config.Omega, config.device.omega1};
            apply_axis(config.axis1, config.axis1.value_at(i), point, config.device);
            if (config.axis2) {
                apply_axis(*config.axis2, config.axis2->value_at(j), point, config.device);
            }
            grid[i * n2 + j] = point;
        }
    }

    std::vector<SweepRow> rows(total);
    const int nthreads = std::min(config.threads, total);
    if (nthreads <= 1) {
        for (int k = 0; k < total; ++k) rows[k] = compute_row(config, grid[k]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                for (int k = t; k < total; k += nthreads) {
                    rows[k] = compute_row(config, grid[k]);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return rows;
}

namespace {

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "delta_ghz,omega_ghz,method,order";
    for (const auto& label : pauli_labels()) out << ',' << label;
    out << ",I_metric,status\n";
    for (const auto& row : rows) {
        out << fmt9(row.delta_ghz) << ',' << fmt9(row.omega_ghz) << ',' << row.method << ','
            << row.order;
        for (double c : row.coeff_mhz) out << ',' << fmt9(c);
        out << ',' << fmt9(row.I_metric) << ',' << row.status << '\n';
    }
}

void emit_json(const SweepConfig& config, const std::vector<SweepRow>& rows, std::ostream& out) {
    using json = nlohmann::ordered_json;
    json meta;
    meta["version"] = kVersion;
    meta["levels"] = config.device.d;
    json dev;
    dev["omega1"] = config.device.omega1;
    dev["omega2"] = config.device.omega2;
    dev["delta1"] = config.device.delta1;
    dev["delta2"] = config.device.delta2;
    dev["g1"] = config.device.g1;
    dev["g2"] = config.device.g2;
    dev["omega_r"] = config.device.omega_r;
    dev["J"] = config.device.J;
    dev["d"] = config.device.d;
    meta["device"] = dev;
    json drive;
    drive["Omega"] = config.Omega;
    drive["A"] = config.crosstalk_A;
    drive["phi_c"] = config.phi_c;
    drive["phi_t"] = config.phi_t;
    meta["drive"] = drive;
    meta["method"] = method_name(config.method);
    meta["order"] = config.order;
    auto axis_json = [](const SweepAxis& axis) {
        json a;
        a["name"] = axis.name;
        a["start"] = axis.start;
        a["stop"] = axis.stop;
        a["points"] = axis.points;
        return a;
    };
    meta["axis1"] = axis_json(config.axis1);
    if (config.axis2) meta["axis2"] = axis_json(*config.axis2);

    json records = json::array();
    for (const auto& row : rows) {
        json r;
        r["delta_ghz"] = row.delta_ghz;
        r["omega_ghz"] = row.omega_ghz;
        r["method"] = row.method;
        r["order"] = row.order;
        for (int i = 0; i < 16; ++i) r[pauli_labels()[i]] = row.coeff_mhz[i];
        r["I_metric"] = row.I_metric;
        r["status"] = row.status;
        records.push_back(std::move(r));
    }
    json doc;
    doc["metadata"] = std::move(meta);
    doc["rows"] = std::move(records);
    out << doc.dump(2) << '\n';
}

void emit(const SweepConfig& config, const std::vector<SweepRow>& rows) {
    std::ofstream out(config.out_path);
    if (!out) throw Error("cannot open output file: " + config.out_path);
    if (config.format == "json") {
        emit_json(config, rows, out);
    } else {
        emit_csv(rows, out);
    }
    out.flush();
    if (!out) throw Error("write failed: " + config.out_path);
}

namespace {

double parse_double(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": field '" + key +
                          "' expects a number, got '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value, int line) {
    const double v = parse_double(key, value, line);
    if (v != std::floor(v)) {
        throw ConfigError("line " + std::to_string(line) + ": field '" + key +
                          "' expects an integer, got '" + value + "'");
    }
    return static_cast<int>(v);
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

SweepConfig parse_config_text(const std::string& text, const std::string& origin) {
    SweepConfig config;
    bool have_axis2 = false;
    SweepAxis axis2;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ": line " + std::to_string(lineno) +
                              ": expected 'section.key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "device.omega1") config.device.omega1 = parse_double(key, value, lineno);
        else if (key == "device.omega2") config.device.omega2 = parse_double(key, value, lineno);
        else if (key == "device.delta1") config.device.delta1 = parse_double(key, value, lineno);
        else if (key == "device.delta2") config.device.delta2 = parse_double(key, value, lineno);
        else if (key == "device.g1") config.device.g1 = parse_double(key, value, lineno);
        else if (key == "device.g2") config.device.g2 = parse_double(key, value, lineno);
        else if (key == "device.omega_r") config.device.omega_r = parse_double(key, value, lineno);
        else if (key == "device.J") config.device.J = parse_double(key, value, lineno);
        else if (key == "device.d") config.device.d = parse_int(key, value, lineno);
        else if (key == "drive.Omega") config.Omega = parse_double(key, value, lineno);
        else if (key == "drive.A") config.crosstalk_A = parse_double(key, value, lineno);
        else if (key == "drive.phi_c") config.phi_c = parse_double(key, value, lineno);
        else if (key == "drive.phi_t") config.phi_t = parse_double(key, value, lineno);
        else if (key == "sweep.method") {
            if (value == "exact") config.method = Method::exact;
            else if (value == "pert" || value == "perturbative") config.method = Method::perturbative;
            else throw ConfigError(origin + ": line " + std::to_string(lineno) +
                                   ": method must be exact or pert");
        }
        else if (key == "sweep.order") config.order = parse_int(key, value, lineno);
        else if (key == "sweep.gap_tol") config.gap_tol = parse_double(key, value, lineno);
        else if (key == "axis1.name") config.axis1.name = value;
        else if (key == "axis1.start") config.axis1.start = parse_double(key, value, lineno);
        else if (key == "axis1.stop") config.axis1.stop = parse_double(key, value, lineno);
        else if (key == "axis1.points") config.axis1.points = parse_int(key, value, lineno);
        else if (key == "axis2.name") { axis2.name = value; have_axis2 = true; }
        else if (key == "axis2.start") { axis2.start = parse_double(key, value, lineno); have_axis2 = true; }
        else if (key == "axis2.stop") { axis2.stop = parse_double(key, value, lineno); have_axis2 = true; }
        else if (key == "axis2.points") { axis2.points = parse_int(key, value, lineno); have_axis2 = true; }
        else if (key == "output.path") config.out_path = value;
        else if (key == "output.format") config.format = value;
        else if (key == "run.threads") config.threads = parse_int(key, value, lineno);
        else {
            throw ConfigError(origin + ": line " + std::to_string(lineno) + ": unknown field '" +
                              key + "'");
        }
    }
    if (have_axis2) config.axis2 = axis2;
    return config;
}

SweepConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace crham
