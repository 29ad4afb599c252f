// cli.cpp

#include "qfiunruh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qfiunruh/errors.hpp"
#include "qfiunruh/estimation.hpp"
#include "qfiunruh/metrology.hpp"

namespace qfiunruh::cli {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, end);
}

void write_csv(std::ostream& os, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        os << (c ? "," : "") << table.columns[c];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "") << format_double(row[c]);
        }
        os << '\n';
    }
}

namespace {

unsigned threads_from_env() {
    const char* env = std::getenv(kThreadsEnv);
    if (env == nullptr || *env == '\0') return 0;
    const std::string_view text(env);
    unsigned n = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ValidationError(std::string(kThreadsEnv) + " must be a non-negative integer");
    }
    return n;
}

struct RawOptions {
    std::string field{"em"};
    std::vector<std::string> axes;
    std::string format;
    std::optional<unsigned> threads;
};

void add_common(CLI::App* sub, RunConfig& cfg, RawOptions& raw) {
    sub->add_option("--field", raw.field, "Vacuum field model: em|scalar")->capture_default_str();
    sub->add_option("-o,--output", cfg.output, "Output file (default: standard output)");
    sub->add_option("--format", raw.format, "Output format: csv|json");
    sub->add_option("--threads", raw.threads, "Worker threads, 0 = auto (fallback: QFIUNRUH_THREADS)");
}

void add_point(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--a", cfg.a, "Dimensionless acceleration a/(c omega0)")->capture_default_str();
    sub->add_option("--tau", cfg.tau, "Proper time in units of 1/gamma0")->capture_default_str();
    sub->add_option("--theta", cfg.theta, "Polar angle of the initial state")->capture_default_str();
}

json to_json(const Table& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
        rows.push_back(std::move(obj));
    }
    return rows;
}

std::string render(const json& j) {
    return j.dump(2) + "\n";
}

std::string render(const Table& table, OutputFormat format) {
    if (format == OutputFormat::Json) return render(to_json(table));
    std::ostringstream os;
    write_csv(os, table);
    return os.str();
}

}  // namespace

std::optional<RunConfig> parse(int argc, const char* const* argv, std::ostream& out) {
    RunConfig cfg;
    RawOptions raw;

    CLI::App app{"Quantum Fisher information of acceleration for a uniformly accelerated two-level atom",
                 "qfiunruh"};
    app.require_subcommand(1);

    auto* eval = app.add_subcommand("eval", "QFI at a single point");
    add_point(eval, cfg);
    eval->add_option("--phi", cfg.phi, "Azimuth of the initial state")->capture_default_str();
    eval->add_option("--omega-ratio", cfg.omega_ratio, "Omega/gamma0 (precession only)")->capture_default_str();
    add_common(eval, cfg, raw);

    auto* scan_cmd = app.add_subcommand("scan", "QFI over a one- or two-axis grid");
    add_point(scan_cmd, cfg);
    scan_cmd->add_option("--axis", raw.axes, "Axis name:min:max:npoints (tau|a|theta), up to twice")
        ->required()
        ->expected(1, 2)
        ->take_all();
    add_common(scan_cmd, cfg, raw);

    auto* peaks = app.add_subcommand("peaks", "Local extrema of the QFI along one axis");
    add_point(peaks, cfg);
    peaks->add_option("--axis", raw.axes, "Axis name:min:max:npoints")->required()->expected(1);
    peaks->add_option("--refine-tol", cfg.refine_tol, "Golden-section location tolerance")->capture_default_str();
    add_common(peaks, cfg, raw);

    auto* fmax = app.add_subcommand("fmax", "Maximum of the QFI over a, as a function of tau");
    fmax->add_option("--theta", cfg.theta, "Polar angle of the initial state")->capture_default_str();
    fmax->add_option("--axis", raw.axes, "Tau grid, tau:min:max:npoints")->required()->expected(1);
    fmax->add_option("--a-min", cfg.a_min, "Lower end of the a search range")->capture_default_str();
    fmax->add_option("--a-max", cfg.a_max, "Upper end of the a search range")->capture_default_str();
    fmax->add_option("--a-points", cfg.a_points, "Coarse a-grid size (>= 400)")->capture_default_str();
    fmax->add_option("--refine-tol", cfg.refine_tol, "Golden-section location tolerance")->capture_default_str();
    add_common(fmax, cfg, raw);

    auto* crlb = app.add_subcommand("crlb", "Monte Carlo Cramer-Rao check with a maximum-likelihood estimator");
    add_point(crlb, cfg);
    crlb->add_option("--shots", cfg.shots, "Measurements per trial (>= 1000)")->capture_default_str();
    crlb->add_option("--trials", cfg.trials, "Independent trials (>= 100)")->capture_default_str();
    crlb->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    add_common(crlb, cfg, raw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    }

    if (eval->parsed()) cfg.subcommand = Subcommand::Eval;
    if (scan_cmd->parsed()) cfg.subcommand = Subcommand::Scan;
    if (peaks->parsed()) cfg.subcommand = Subcommand::Peaks;
    if (fmax->parsed()) cfg.subcommand = Subcommand::Fmax;
    if (crlb->parsed()) cfg.subcommand = Subcommand::Crlb;

    cfg.field = parse_field_model(raw.field);
    for (const auto& spec : raw.axes) cfg.axes.push_back(parse_axis(spec));
    if (raw.format.empty()) {
        cfg.format = cfg.subcommand == Subcommand::Crlb ? OutputFormat::Json : OutputFormat::Csv;
    } else if (raw.format == "csv") {
        cfg.format = OutputFormat::Csv;
    } else if (raw.format == "json") {
        cfg.format = OutputFormat::Json;
    } else {
        throw ValidationError("unknown format '" + raw.format + "' (expected csv|json)");
    }
    cfg.threads = raw.threads ? *raw.threads : threads_from_env();

    if (cfg.subcommand == Subcommand::Fmax && cfg.axes.front().name != AxisName::Tau) {
        throw ValidationError("fmax expects a tau axis");
    }
    return cfg;
}

std::string execute(const RunConfig& cfg) {
    switch (cfg.subcommand) {
        case Subcommand::Eval: {
            const InitialState init{cfg.theta, cfg.phi};
            const EvolutionParams params{cfg.tau, cfg.a, cfg.field, cfg.omega_ratio};
            const QfiResult r = qfi(init, params);
            if (cfg.format == OutputFormat::Json) {
                return render(json{{"a", cfg.a},
                                   {"tau", cfg.tau},
                                   {"theta", cfg.theta},
                                   {"phi", cfg.phi},
                                   {"field", to_string(cfg.field)},
                                   {"value", r.value},
                                   {"branch", to_string(r.branch)},
                                   {"bloch_norm", r.bloch_norm}});
            }
            Table t{{"a", "tau", "theta", "F", "bloch_norm"}, {{cfg.a, cfg.tau, cfg.theta, r.value, r.bloch_norm}}};
            return render(t, cfg.format);
        }
        case Subcommand::Scan: {
            ScanGrid grid{cfg.axes, cfg.tau, cfg.a, cfg.theta, cfg.field, cfg.threads};
            return render(scan(grid), cfg.format);
        }
        case Subcommand::Peaks: {
            ScanGrid grid{cfg.axes, cfg.tau, cfg.a, cfg.theta, cfg.field, cfg.threads};
            const PeakReport report = find_extrema(grid, scan(grid), cfg.refine_tol);
            if (cfg.format == OutputFormat::Json) {
                json extrema = json::array();
                for (const Extremum& e : report.extrema) {
                    extrema.push_back({{"location", e.location}, {"value", e.value}, {"kind", to_string(e.kind)}});
                }
                return render(json{{"axis", to_string(grid.axes.front().name)},
                                   {"extrema", extrema},
                                   {"n_local_maxima", report.n_local_maxima},
                                   {"global_max", {{"location", report.global_max.x},
                                                   {"value", report.global_max.value}}}});
            }
            std::ostringstream os;
            os << "location,value,kind\n";
            for (const Extremum& e : report.extrema) {
                os << format_double(e.location) << ',' << format_double(e.value) << ',' << to_string(e.kind) << '\n';
            }
            return os.str();
        }
        case Subcommand::Fmax: {
            const std::vector<double> taus = cfg.axes.front().values();
            const FmaxOptions opt{cfg.a_min, cfg.a_max, cfg.a_points, cfg.refine_tol, cfg.threads};
            return render(fmax_curve(taus, cfg.theta, cfg.field, opt), cfg.format);
        }
        case Subcommand::Crlb: {
            const EstimationConfig ec{cfg.a,     cfg.tau,    cfg.theta, cfg.field,
                                      cfg.shots, cfg.trials, cfg.seed,  cfg.threads};
            const EstimationReport r = simulate_estimation(ec);
            if (cfg.format == OutputFormat::Json) {
                return render(json{{"a_true", r.a_true},
                                   {"a_hat_mean", r.a_hat_mean},
                                   {"a_hat_var", r.a_hat_var},
                                   {"n_shots", r.n_shots},
                                   {"n_trials", r.n_trials},
                                   {"qfi", r.qfi},
                                   {"crb_product", r.crb_product},
                                   {"boundary_hits", r.boundary_hits},
                                   {"search_lo", r.search_lo},
                                   {"search_hi", r.search_hi},
                                   {"seed", cfg.seed}});
            }
            Table t{{"a_true", "a_hat_mean", "a_hat_var", "n_shots", "n_trials", "qfi", "crb_product"},
                    {{r.a_true, r.a_hat_mean, r.a_hat_var, static_cast<double>(r.n_shots),
                      static_cast<double>(r.n_trials), r.qfi, r.crb_product}}};
            return render(t, OutputFormat::Csv);
        }
    }
    return {};
}

namespace {

std::string one_line(std::string msg) {
    for (char& c : msg) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    return msg;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::string payload;
    RunConfig cfg;
    try {
        auto parsed = parse(argc, argv, out);
        if (!parsed) return kExitOk;
        cfg = std::move(*parsed);
        payload = execute(cfg);
    } catch (const CLI::ParseError& e) {
        err << "qfiunruh: error: " << one_line(e.what()) << '\n';
        return kExitValidation;
    } catch (const Error& e) {
        err << "qfiunruh: error: " << one_line(e.what()) << '\n';
        return kExitValidation;
    }

    if (cfg.output.empty()) {
        out << payload;
        return kExitOk;
    }
    std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
    if (!file || !(file << payload) || !file.flush()) {
        err << "qfiunruh: error: cannot write output file '" << cfg.output << "'\n";
        return kExitOutput;
    }
    return kExitOk;
}

}  // namespace qfiunruh::cli
