// cli.hpp: command-line front end (eval, scan, peaks, fmax, crlb)

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qfiunruh/analysis.hpp"
#include "qfiunruh/spectral.hpp"

namespace qfiunruh::cli {

enum class Subcommand { Eval, Scan, Peaks, Fmax, Crlb };
enum class OutputFormat { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitOutput = 3;

/// Environment variable consulted when --threads is absent.
inline constexpr const char* kThreadsEnv = "QFIUNRUH_THREADS";

struct RunConfig {
    Subcommand subcommand{Subcommand::Eval};
    FieldModel field{FieldModel::Electromagnetic};
    std::vector<Axis> axes;
    double a{1.0};
    double tau{0.0};
    double theta{0.0};
    double phi{0.0};
    double omega_ratio{100.0};
    double refine_tol{1e-8};
    double a_min{kMinScanAcceleration};
    double a_max{6.0};
    std::size_t a_points{400};
    std::uint64_t shots{100'000};
    std::uint64_t trials{200};
    std::uint64_t seed{42};
    std::string output;  // empty: standard output
    OutputFormat format{OutputFormat::Csv};
    unsigned threads{0};  // 0: hardware concurrency
};

/// Formats with 17 significant digits, locale-independent ("%.17g").
std::string format_double(double v);

/// CSV with a header row, LF line endings.
void write_csv(std::ostream& os, const Table& table);

/// Parses argv (argv[0] is the program name). Returns nullopt when help was
/// requested (the help text goes to `out`). Throws ValidationError or
/// CLI::ParseError on bad input.
std::optional<RunConfig> parse(int argc, const char* const* argv, std::ostream& out);

/// Runs a parsed configuration and returns the dataset as text.
std::string execute(const RunConfig& config);

/// Full pipeline: parse, compute, write. Returns 0, 2 (validation, one-line
/// message on `err`) or 3 (output not writable).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfiunruh::cli
