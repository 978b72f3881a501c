// Command-line front end for the quantum-shuffling library. Subcommands:
//   zeno scales        derived time scales + regime for a configuration
//   zeno run           trace CSV + summary JSON for one experiment
//   zeno sweep         one summary row per value along an axis
//   zeno oracle-check  grid-propagation cross-validation report
//
// Exit codes: 0 success, 1 validation error, 2 tolerance failure
// (oracle-check), 3 I/O error.

#include <zeno/zeno.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitTolerance = 2;
constexpr int kExitIo = 3;

struct CliError {
    int exit_code;
    std::string code;
    std::string message;
};

[[noreturn]] void fail(int exit_code, const std::string& code,
                       const std::string& message) {
    throw CliError{exit_code, code, message};
}

std::string format_double(double v) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, result.ptr);
}

struct Config {
    double hbar = 1.0;
    double mass = 0.1;
    double sigma0 = 0.5;
    double x0 = 0.0;
    double p0 = 0.0;
    double delta_t = 0.01;
    double total_time = 5.0;
    double sample_dt = 1e-4;
    std::optional<double> fit_lo;
    std::optional<double> fit_hi;
    std::vector<std::string> outputs = {"trace", "envelope", "fit", "delta",
                                        "summary"};
    std::string out_dir = ".";
    int workers = 1;

    // sweep
    std::string axis;
    std::vector<double> sweep_values;
    bool emit_traces = false;

    // oracle
    int grid_points = 4096;
    double pad_sigmas = 10.0;
    double horizon = 1.0;
    int compare_points = 101;

    double fit_window_lo() const { return fit_lo.value_or(0.0); }
    double fit_window_hi() const { return fit_hi.value_or(total_time); }
};

double json_number(const json& node, const std::string& field) {
    if (!node.is_number()) fail(kExitValidation, "validation", field + ": expected a number");
    return node.get<double>();
}

void load_config_file(Config& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(kExitIo, "io", "cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& err) {
        fail(kExitValidation, "validation",
             std::string("config is not valid JSON: ") + err.what());
    }
    if (!doc.is_object()) fail(kExitValidation, "validation", "config root must be an object");

    if (doc.contains("params")) {
        const auto& p = doc["params"];
        if (p.contains("hbar")) config.hbar = json_number(p["hbar"], "params.hbar");
        if (p.contains("mass")) config.mass = json_number(p["mass"], "params.mass");
        if (p.contains("sigma0")) config.sigma0 = json_number(p["sigma0"], "params.sigma0");
        if (p.contains("x0")) config.x0 = json_number(p["x0"], "params.x0");
        if (p.contains("p0")) config.p0 = json_number(p["p0"], "params.p0");
    }
    if (doc.contains("schedule")) {
        const auto& s = doc["schedule"];
        if (s.contains("delta_t")) config.delta_t = json_number(s["delta_t"], "schedule.delta_t");
        if (s.contains("total_time")) {
            config.total_time = json_number(s["total_time"], "schedule.total_time");
        }
        if (s.contains("sample_dt")) {
            config.sample_dt = json_number(s["sample_dt"], "schedule.sample_dt");
        }
    }
    if (doc.contains("fit_window")) {
        const auto& w = doc["fit_window"];
        if (!w.is_array() || w.size() != 2) {
            fail(kExitValidation, "validation", "fit_window: expected [lo, hi]");
        }
        config.fit_lo = json_number(w[0], "fit_window[0]");
        config.fit_hi = json_number(w[1], "fit_window[1]");
    }
    if (doc.contains("outputs")) {
        const auto& o = doc["outputs"];
        if (!o.is_array()) fail(kExitValidation, "validation", "outputs: expected an array");
        config.outputs.clear();
        for (const auto& item : o) {
            if (!item.is_string()) {
                fail(kExitValidation, "validation", "outputs: expected strings");
            }
            config.outputs.push_back(item.get<std::string>());
        }
    }
    if (doc.contains("sweep")) {
        const auto& s = doc["sweep"];
        if (s.contains("axis")) {
            if (!s["axis"].is_string()) {
                fail(kExitValidation, "validation", "sweep.axis: expected a string");
            }
            config.axis = s["axis"].get<std::string>();
        }
        if (s.contains("values")) {
            if (!s["values"].is_array()) {
                fail(kExitValidation, "validation", "sweep.values: expected an array");
            }
            config.sweep_values.clear();
            for (const auto& v : s["values"]) {
                config.sweep_values.push_back(json_number(v, "sweep.values[]"));
            }
        } else if (s.contains("lo") && s.contains("hi") && s.contains("count")) {
            const double lo = json_number(s["lo"], "sweep.lo");
            const double hi = json_number(s["hi"], "sweep.hi");
            const auto count = s["count"].get<int>();
            const bool log_scale = s.value("scale", "linear") == std::string("log");
            if (count < 2) fail(kExitValidation, "validation", "sweep.count: must be >= 2");
            config.sweep_values.clear();
            for (int i = 0; i < count; ++i) {
                const double f = static_cast<double>(i) / (count - 1);
                config.sweep_values.push_back(
                    log_scale ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
            }
        }
    }
    if (doc.contains("oracle")) {
        const auto& o = doc["oracle"];
        if (o.contains("n_points")) config.grid_points = o["n_points"].get<int>();
        if (o.contains("pad_sigmas")) {
            config.pad_sigmas = json_number(o["pad_sigmas"], "oracle.pad_sigmas");
        }
        if (o.contains("horizon")) config.horizon = json_number(o["horizon"], "oracle.horizon");
        if (o.contains("compare_points")) {
            config.compare_points = o["compare_points"].get<int>();
        }
    }
}

std::vector<double> parse_double_list(const std::string& text, const std::string& field) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            fail(kExitValidation, "validation", field + ": cannot parse '" + item + "'");
        }
    }
    return values;
}

// RAII wrappers for the C handles.
struct ParamsHandle {
    zeno_params* ptr = nullptr;
    ~ParamsHandle() { zeno_params_free(ptr); }
};

struct ScheduleHandle {
    zeno_schedule* ptr = nullptr;
    ~ScheduleHandle() { zeno_schedule_free(ptr); }
};

struct RunHandle {
    zeno_run* ptr = nullptr;
    ~RunHandle() { zeno_run_free(ptr); }
};

void check(zeno_status status, const std::string& context) {
    if (status == ZENO_OK) return;
    const std::string message = context + ": " + zeno_last_error();
    if (status == ZENO_ERR_INVALID_ARGUMENT || status == ZENO_ERR_GRID) {
        fail(kExitValidation, "validation", message);
    }
    fail(kExitValidation, "error", message);
}

void make_handles(const Config& config, ParamsHandle& params, ScheduleHandle& schedule) {
    check(zeno_params_create(config.hbar, config.mass, config.sigma0, config.x0,
                             config.p0, &params.ptr),
          "params");
    check(zeno_schedule_create(config.delta_t, config.total_time, config.sample_dt,
                               &schedule.ptr),
          "schedule");
}

void validate_run_config(const Config& config) {
    if (config.outputs.empty()) {
        fail(kExitValidation, "validation", "outputs: must not be empty");
    }
    for (const auto& name : config.outputs) {
        if (name != "trace" && name != "envelope" && name != "fit" &&
            name != "delta" && name != "summary") {
            fail(kExitValidation, "validation", "outputs: unknown entry '" + name + "'");
        }
    }
    if (config.fit_window_lo() < 0.0 || config.fit_window_hi() > config.total_time ||
        config.fit_window_lo() > config.fit_window_hi()) {
        fail(kExitValidation, "validation",
             "fit_window: must lie inside [0, total_time]");
    }
    if (config.workers < 1) {
        fail(kExitValidation, "validation", "workers: must be >= 1");
    }
}

bool wants(const Config& config, const std::string& name) {
    for (const auto& entry : config.outputs) {
        if (entry == name) return true;
    }
    return false;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(kExitIo, "io", "cannot write " + path.string());
    return out;
}

json summary_json(const zeno_run_summary& summary, const zeno_run* run) {
    json doc;
    doc["schema"] = 1;
    doc["gamma_est"] = summary.gamma_est;
    doc["gamma_prime_est"] = summary.gamma_prime_est;
    if (summary.fit_ok) {
        doc["gamma_prime_fit"] = summary.gamma_prime_fit;
        doc["max_abs_delta"] = summary.max_abs_delta;
    } else {
        doc["gamma_prime_fit"] = nullptr;
        doc["max_abs_delta"] = nullptr;
        doc["fit_error"] = zeno_run_fit_message(run);
    }
    if (summary.has_crossing) {
        doc["crossing_time"] = summary.crossing_time;
    } else {
        doc["crossing_time"] = nullptr;
    }
    doc["regime"] = zeno_shuffle_regime_name(summary.regime);
    return doc;
}

void write_trace_csv(const Config& config, const zeno_run* run,
                     const std::filesystem::path& path) {
    const size_t n = zeno_run_sample_count(run);
    const double* times = zeno_run_times(run);
    const double* unperturbed = zeno_run_unperturbed(run);
    const double* perturbed = zeno_run_perturbed(run);
    const double* envelope = zeno_run_envelope(run);
    const double* fit = zeno_run_fit(run);
    const double* delta = zeno_run_delta(run);

    const bool col_trace = wants(config, "trace");
    const bool col_envelope = wants(config, "envelope");
    const bool col_fit = wants(config, "fit") && fit != nullptr;
    const bool col_delta = wants(config, "delta") && delta != nullptr;

    auto out = open_output(path);
    out << "t";
    if (col_trace) out << ",c_unperturbed,c_perturbed";
    if (col_envelope) out << ",envelope";
    if (col_fit) out << ",fit";
    if (col_delta) out << ",delta";
    out << "\n";
    for (size_t i = 0; i < n; ++i) {
        out << format_double(times[i]);
        if (col_trace) {
            out << ',' << format_double(unperturbed[i]) << ','
                << format_double(perturbed[i]);
        }
        if (col_envelope) out << ',' << format_double(envelope[i]);
        if (col_fit) out << ',' << format_double(fit[i]);
        if (col_delta) out << ',' << format_double(delta[i]);
        out << "\n";
    }
    if (!out) fail(kExitIo, "io", "failed while writing " + path.string());
}

int cmd_scales(const Config& config) {
    ParamsHandle params;
    ScheduleHandle schedule;
    make_handles(config, params, schedule);

    zeno_scales scales{};
    check(zeno_params_scales(params.ptr, &scales), "scales");
    double gamma = 0.0;
    double gamma_prime = 0.0;
    check(zeno_envelope_rates(params.ptr, config.delta_t, &gamma, &gamma_prime),
          "rates");
    zeno_shuffle_regime regime{};
    check(zeno_classify_regime(params.ptr, config.delta_t, &regime), "regime");
    int overlap_ok = 0;
    check(zeno_overlap_condition(params.ptr, &overlap_ok), "overlap condition");

    json doc;
    doc["schema"] = 1;
    doc["tau"] = scales.tau;
    doc["tau_zeno"] = scales.tau_zeno;
    doc["tau_inflx"] = scales.tau_inflx;
    doc["p_spread"] = scales.p_spread;
    doc["e0"] = scales.e0;
    doc["mean_h"] = scales.mean_h;
    doc["delta_e"] = scales.delta_e;
    doc["momentum_ratio"] = scales.momentum_ratio;
    doc["delta_t"] = config.delta_t;
    doc["gamma"] = gamma;
    doc["gamma_prime"] = gamma_prime;
    doc["regime"] = zeno_shuffle_regime_name(regime);
    doc["overlap_condition_ok"] = overlap_ok != 0;
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int cmd_run(const Config& config) {
    validate_run_config(config);
    ParamsHandle params;
    ScheduleHandle schedule;
    make_handles(config, params, schedule);

    RunHandle run;
    check(zeno_run_create(params.ptr, schedule.ptr, config.fit_window_lo(),
                          config.fit_window_hi(), &run.ptr),
          "run");

    const std::filesystem::path out_dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) fail(kExitIo, "io", "cannot create output directory " + out_dir.string());

    const bool any_csv = wants(config, "trace") || wants(config, "envelope") ||
                         wants(config, "fit") || wants(config, "delta");
    if (any_csv) {
        const auto path = out_dir / "trace.csv";
        write_trace_csv(config, run.ptr, path);
        std::cout << path.string() << "\n";
    }
    if (wants(config, "summary")) {
        zeno_run_summary summary{};
        check(zeno_run_get_summary(run.ptr, &summary), "summary");
        const auto path = out_dir / "summary.json";
        auto out = open_output(path);
        out << summary_json(summary, run.ptr).dump(2) << "\n";
        if (!out) fail(kExitIo, "io", "failed while writing " + path.string());
        std::cout << path.string() << "\n";
    }
    return kExitOk;
}

struct SweepRow {
    double value = 0.0;
    bool ok = false;
    std::string error;
    zeno_run_summary summary{};
    std::string fit_message;
    int overlap_ok = 0;
};

// Error text lands in a CSV cell.
std::string csv_safe(std::string text) {
    for (auto& c : text) {
        if (c == ',' || c == '\n') c = ';';
    }
    return text;
}

int cmd_sweep(const Config& config) {
    validate_run_config(config);
    if (config.axis != "delta_t" && config.axis != "p0" && config.axis != "sigma0") {
        fail(kExitValidation, "validation",
             "sweep.axis: must be one of delta_t, p0, sigma0");
    }
    const auto& values = config.sweep_values;
    if (values.empty()) fail(kExitValidation, "validation", "sweep.values: must not be empty");
    for (std::size_t i = 1; i < values.size(); ++i) {
        const bool increasing = values[1] > values[0];
        if ((increasing && values[i] <= values[i - 1]) ||
            (!increasing && values[i] >= values[i - 1])) {
            fail(kExitValidation, "validation", "sweep.values: must be strictly monotone");
        }
    }

    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> cursor{0};
    const std::filesystem::path out_dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) fail(kExitIo, "io", "cannot create output directory " + out_dir.string());

    auto run_point = [&](std::size_t index) {
        SweepRow& row = rows[index];
        row.value = values[index];
        Config point = config;
        if (config.axis == "delta_t") point.delta_t = row.value;
        if (config.axis == "p0") point.p0 = row.value;
        if (config.axis == "sigma0") point.sigma0 = row.value;
        if (!point.fit_hi) point.fit_hi = point.total_time;

        ParamsHandle params;
        ScheduleHandle schedule;
        if (zeno_params_create(point.hbar, point.mass, point.sigma0, point.x0,
                               point.p0, &params.ptr) != ZENO_OK) {
            row.error = zeno_last_error();
            return;
        }
        if (zeno_schedule_create(point.delta_t, point.total_time, point.sample_dt,
                                 &schedule.ptr) != ZENO_OK) {
            row.error = zeno_last_error();
            return;
        }
        RunHandle run;
        if (zeno_run_create(params.ptr, schedule.ptr, point.fit_window_lo(),
                            point.fit_window_hi(), &run.ptr) != ZENO_OK) {
            row.error = zeno_last_error();
            return;
        }
        zeno_run_get_summary(run.ptr, &row.summary);
        row.fit_message = zeno_run_fit_message(run.ptr);
        zeno_overlap_condition(params.ptr, &row.overlap_ok);
        row.ok = true;
        if (config.emit_traces) {
            std::ostringstream name;
            name << "run_" << index << ".csv";
            write_trace_csv(point, run.ptr, out_dir / name.str());
        }
    };

    const std::size_t worker_count =
        std::min<std::size_t>(static_cast<std::size_t>(config.workers), values.size());
    if (worker_count <= 1) {
        for (std::size_t i = 0; i < values.size(); ++i) run_point(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (std::size_t w = 0; w < worker_count; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t index = cursor.fetch_add(1);
                    if (index >= values.size()) return;
                    run_point(index);
                }
            });
        }
        for (auto& thread : pool) thread.join();
    }

    const auto path = out_dir / "sweep.csv";
    auto out = open_output(path);
    out << config.axis
        << ",gamma_est,gamma_prime_est,gamma_prime_fit,max_abs_delta,"
           "crossing_time,regime,overlap_condition_ok,error\n";
    for (const auto& row : rows) {
        out << format_double(row.value) << ',';
        if (row.ok) {
            out << format_double(row.summary.gamma_est) << ','
                << format_double(row.summary.gamma_prime_est) << ',';
            if (row.summary.fit_ok) {
                out << format_double(row.summary.gamma_prime_fit) << ','
                    << format_double(row.summary.max_abs_delta) << ',';
            } else {
                out << ",,";
            }
            if (row.summary.has_crossing) {
                out << format_double(row.summary.crossing_time);
            }
            out << ',' << zeno_shuffle_regime_name(row.summary.regime) << ','
                << (row.overlap_ok ? "true" : "false") << ','
                << (row.summary.fit_ok ? "" : csv_safe(row.fit_message)) << "\n";
        } else {
            out << ",,,,,,," << csv_safe(row.error) << "\n";
        }
    }
    if (!out) fail(kExitIo, "io", "failed while writing " + path.string());
    std::cout << path.string() << "\n";
    return kExitOk;
}

int cmd_oracle_check(const Config& config) {
    ParamsHandle params;
    ScheduleHandle schedule;
    make_handles(config, params, schedule);

    zeno_oracle_options options{};
    options.n_points = config.grid_points;
    options.pad_sigmas = config.pad_sigmas;
    options.horizon = config.horizon;
    options.compare_points = config.compare_points;

    zeno_oracle_report report{};
    check(zeno_oracle_check(params.ptr, schedule.ptr, &options, &report),
          "oracle-check");

    json doc;
    doc["schema"] = 1;
    doc["n_points"] = config.grid_points;
    doc["horizon"] = config.horizon;
    doc["norm_error"] = report.norm_error;
    doc["x_mean_error"] = report.x_mean_error;
    doc["p_mean_error"] = report.p_mean_error;
    doc["mean_h_rel_error"] = report.mean_h_rel_error;
    doc["delta_e_rel_error"] = report.delta_e_rel_error;
    doc["correlation_max_error"] = report.correlation_max_error;
    doc["phase_max_error"] = report.phase_max_error;
    doc["shuffle_max_error"] = report.shuffle_max_error;
    doc["pass"] = report.pass != 0;
    std::cout << doc.dump(2) << "\n";
    return report.pass ? kExitOk : kExitTolerance;
}

void add_common_options(CLI::App* cmd, Config& config, std::string& config_path,
                        std::string& fit_window_text) {
    cmd->add_option("--config", config_path, "JSON configuration file");
    cmd->add_option("--hbar", config.hbar, "Planck constant (natural units: 1)");
    cmd->add_option("--mass", config.mass, "particle mass");
    cmd->add_option("--sigma0", config.sigma0, "initial spreading");
    cmd->add_option("--x0", config.x0, "initial centroid position");
    cmd->add_option("--p0", config.p0, "initial centroid momentum");
    cmd->add_option("--delta-t", config.delta_t, "measurement interval");
    cmd->add_option("--total-time", config.total_time, "monitoring horizon");
    cmd->add_option("--sample-dt", config.sample_dt, "trace sampling step");
    cmd->add_option("--fit-window", fit_window_text, "fit window as lo,hi");
    cmd->add_option("--out", config.out_dir, "output directory");
    cmd->add_option("--workers", config.workers, "sweep worker threads");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum shuffling: Zeno / anti-Zeno dynamics of a free Gaussian "
                 "wave packet under periodic measurements"};
    app.require_subcommand(1);

    Config config;
    std::string config_path;
    std::string fit_window_text;
    std::string outputs_text;
    std::string values_text;
    std::string range_text;

    auto* scales = app.add_subcommand("scales", "derived scales and regime");
    auto* run = app.add_subcommand("run", "trace + summary for one experiment");
    auto* sweep = app.add_subcommand("sweep", "summary row per axis value");
    auto* oracle = app.add_subcommand("oracle-check", "grid-oracle cross validation");

    for (auto* cmd : {scales, run, sweep, oracle}) {
        add_common_options(cmd, config, config_path, fit_window_text);
    }
    run->add_option("--outputs", outputs_text,
                    "comma list from trace,envelope,fit,delta,summary");
    sweep->add_option("--axis", config.axis, "sweep axis: delta_t, p0 or sigma0");
    sweep->add_option("--values", values_text, "comma list of axis values");
    sweep->add_option("--range", range_text, "lo,hi,count,linear|log");
    sweep->add_flag("--emit-traces", config.emit_traces,
                    "write run_<i>.csv per sweep point");
    oracle->add_option("--grid-points", config.grid_points,
                       "oracle grid size (power of two)");
    oracle->add_option("--pad-sigmas", config.pad_sigmas,
                       "domain clearance in units of sigma_T");
    oracle->add_option("--horizon", config.horizon, "comparison horizon");
    oracle->add_option("--compare-points", config.compare_points,
                       "correlation comparison samples");

    CLI11_PARSE(app, argc, argv);

    try {
        // Config file first, then explicitly passed flags override it.
        if (!config_path.empty()) {
            CLI::App* active = app.get_subcommands().front();
            auto passed = [&](const std::string& name) {
                const auto* option = active->get_option_no_throw(name);
                return option != nullptr && option->count() > 0;
            };
            Config from_file;
            load_config_file(from_file, config_path);
            const Config flag_values = config;
            config = from_file;
            if (passed("--hbar")) config.hbar = flag_values.hbar;
            if (passed("--mass")) config.mass = flag_values.mass;
            if (passed("--sigma0")) config.sigma0 = flag_values.sigma0;
            if (passed("--x0")) config.x0 = flag_values.x0;
            if (passed("--p0")) config.p0 = flag_values.p0;
            if (passed("--delta-t")) config.delta_t = flag_values.delta_t;
            if (passed("--total-time")) config.total_time = flag_values.total_time;
            if (passed("--sample-dt")) config.sample_dt = flag_values.sample_dt;
            if (passed("--out")) config.out_dir = flag_values.out_dir;
            if (passed("--workers")) config.workers = flag_values.workers;
            if (passed("--axis")) config.axis = flag_values.axis;
            if (passed("--emit-traces")) config.emit_traces = flag_values.emit_traces;
            if (passed("--grid-points")) config.grid_points = flag_values.grid_points;
            if (passed("--pad-sigmas")) config.pad_sigmas = flag_values.pad_sigmas;
            if (passed("--horizon")) config.horizon = flag_values.horizon;
            if (passed("--compare-points")) {
                config.compare_points = flag_values.compare_points;
            }
        }
        if (!fit_window_text.empty()) {
            const auto parts = parse_double_list(fit_window_text, "fit-window");
            if (parts.size() != 2) {
                fail(kExitValidation, "validation", "fit-window: expected lo,hi");
            }
            config.fit_lo = parts[0];
            config.fit_hi = parts[1];
        }
        if (!outputs_text.empty()) {
            config.outputs.clear();
            std::stringstream stream(outputs_text);
            std::string item;
            while (std::getline(stream, item, ',')) config.outputs.push_back(item);
        }
        if (!values_text.empty()) {
            config.sweep_values = parse_double_list(values_text, "values");
        }
        if (!range_text.empty()) {
            std::vector<std::string> parts;
            std::stringstream stream(range_text);
            std::string item;
            while (std::getline(stream, item, ',')) parts.push_back(item);
            if (parts.size() != 4) {
                fail(kExitValidation, "validation", "range: expected lo,hi,count,scale");
            }
            const double lo = std::stod(parts[0]);
            const double hi = std::stod(parts[1]);
            const int count = std::stoi(parts[2]);
            const bool log_scale = parts[3] == "log";
            if (!log_scale && parts[3] != "linear") {
                fail(kExitValidation, "validation", "range: scale must be linear or log");
            }
            if (count < 2) fail(kExitValidation, "validation", "range: count must be >= 2");
            config.sweep_values.clear();
            for (int i = 0; i < count; ++i) {
                const double f = static_cast<double>(i) / (count - 1);
                config.sweep_values.push_back(
                    log_scale ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
            }
        }

        if (scales->parsed()) return cmd_scales(config);
        if (run->parsed()) return cmd_run(config);
        if (sweep->parsed()) return cmd_sweep(config);
        if (oracle->parsed()) return cmd_oracle_check(config);
        return kExitValidation;
    } catch (const CliError& err) {
        json doc;
        doc["schema"] = 1;
        doc["error"] = {{"code", err.code}, {"message", err.message}};
        std::cerr << doc.dump(2) << "\n";
        return err.exit_code;
    } catch (const std::exception& err) {
        json doc;
        doc["schema"] = 1;
        doc["error"] = {{"code", "error"}, {"message", err.what()}};
        std::cerr << doc.dump(2) << "\n";
        return kExitValidation;
    }
}
