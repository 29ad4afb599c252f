// analysis.hpp: parameter scans, extremum detection and F_max envelopes

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qfiunruh/optimize.hpp"
#include "qfiunruh/spectral.hpp"

namespace qfiunruh {

inline constexpr double kMaxAcceleration = 50.0;
inline constexpr double kMaxTau = 1000.0;
/// Lower cutoff for a-axes so optimizers never touch the a = 0 limit branch.
inline constexpr double kMinScanAcceleration = 1e-3;

enum class AxisName { Tau, A, Theta };

std::string_view to_string(AxisName name);
AxisName parse_axis_name(std::string_view name);

/// Linearly spaced axis; both endpoints included.
struct Axis {
    AxisName name{AxisName::Tau};
    double min{0.0};
    double max{1.0};
    std::size_t n_points{2};

    double value(std::size_t i) const;
    std::vector<double> values() const;
    void validate() const;
};

/// Parses "name:min:max:npoints", e.g. "tau:0:15:601".
Axis parse_axis(std::string_view spec);

struct ScanGrid {
    std::vector<Axis> axes;  // one or two, distinct names
    // Coordinates not covered by an axis.
    double tau{0.0};
    double a{1.0};
    double theta{0.0};
    FieldModel field{FieldModel::Electromagnetic};
    unsigned threads{1};

    void validate() const;
    /// QFI along the single axis with every other coordinate fixed.
    std::function<double(double)> curve_function() const;
};

/// Column-named numeric table; the last column of a scan is "F".
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::vector<double> column(std::string_view name) const;
};

/// Evaluates the QFI at every grid point, first axis outermost.
Table scan(const ScanGrid& grid);

enum class ExtremumKind { Max, Min };
std::string_view to_string(ExtremumKind kind);

struct Extremum {
    double location{0.0};
    double value{0.0};
    ExtremumKind kind{ExtremumKind::Max};
};

struct PeakReport {
    std::vector<Extremum> extrema;  // ordered along the axis, alternating kinds
    std::size_t n_local_maxima{0};
    LineMaximum global_max;
};

/// Interior extrema of a sampled curve.
///
/// Turning points come from sign changes of the discrete differences.
/// Adjacent turning-point pairs (and turning points next to an endpoint)
/// whose values differ by less than 1e-9 * max|y| are removed as ripple,
/// smallest difference first. Each survivor is refined by golden-section
/// search on `f` over its two neighbouring grid cells.
/// Needs >= 50 points and refine_tol in [1e-10, 1e-4] (ValidationError otherwise).
PeakReport find_extrema(std::span<const double> x, std::span<const double> y,
                        const std::function<double(double)>& f, double refine_tol);

/// Convenience overload for the output of a one-axis `scan`.
PeakReport find_extrema(const ScanGrid& grid, const Table& curve, double refine_tol);

struct FmaxOptions {
    double a_min{kMinScanAcceleration};
    double a_max{6.0};
    std::size_t n_coarse{400};
    double refine_tol{1e-10};
    unsigned threads{1};
};

/// For every tau: the maximum of F over a (coarse grid, then golden-section
/// refinement of the best bracket). Columns: tau, F_max, a_argmax.
Table fmax_curve(std::span<const double> taus, double theta, FieldModel field, const FmaxOptions& options = {});

}  // namespace qfiunruh
