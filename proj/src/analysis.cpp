// analysis.cpp

#include "qfiunruh/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "qfiunruh/errors.hpp"
#include "qfiunruh/metrology.hpp"
#include "qfiunruh/parallel.hpp"

namespace qfiunruh {

using std::numbers::pi;

std::string_view to_string(AxisName name) {
    switch (name) {
        case AxisName::Tau: return "tau";
        case AxisName::A: return "a";
        case AxisName::Theta: return "theta";
    }
    return "?";
}

AxisName parse_axis_name(std::string_view name) {
    if (name == "tau") return AxisName::Tau;
    if (name == "a") return AxisName::A;
    if (name == "theta") return AxisName::Theta;
    throw ValidationError("unknown axis '" + std::string(name) + "' (expected tau|a|theta)");
}

std::string_view to_string(ExtremumKind kind) {
    return kind == ExtremumKind::Max ? "max" : "min";
}

double Axis::value(std::size_t i) const {
    if (i + 1 == n_points) return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(n_points - 1);
}

std::vector<double> Axis::values() const {
    std::vector<double> out(n_points);
    for (std::size_t i = 0; i < n_points; ++i) out[i] = value(i);
    return out;
}

void Axis::validate() const {
    const std::string label(to_string(name));
    if (n_points < 2) throw ValidationError(label + " axis needs at least 2 points");
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
        throw ValidationError(label + " axis needs finite min < max");
    }
    switch (name) {
        case AxisName::Tau:
            if (min < 0.0 || max > kMaxTau) throw ValidationError("tau axis must lie in [0, 1000]");
            break;
        case AxisName::A:
            if (min <= 0.0 || max > kMaxAcceleration) throw ValidationError("a axis must lie in (0, 50]");
            break;
        case AxisName::Theta:
            if (min < 0.0 || max > pi) throw ValidationError("theta axis must lie in [0, pi]");
            break;
    }
}

namespace {

double parse_number(std::string_view text, std::string_view what) {
    if (text == "pi") return pi;
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ValidationError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

Axis parse_axis(std::string_view spec) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t colon = spec.find(':', start);
        parts.push_back(spec.substr(start, colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (parts.size() != 4) {
        throw ValidationError("axis spec '" + std::string(spec) + "' must be name:min:max:npoints");
    }

    Axis axis;
    axis.name = parse_axis_name(parts[0]);
    axis.min = parse_number(parts[1], "axis min");
    axis.max = parse_number(parts[2], "axis max");
    std::size_t n = 0;
    const auto [end, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), n);
    if (ec != std::errc{} || end != parts[3].data() + parts[3].size()) {
        throw ValidationError("cannot parse axis npoints '" + std::string(parts[3]) + "'");
    }
    axis.n_points = n;
    axis.validate();
    return axis;
}

void ScanGrid::validate() const {
    if (axes.empty() || axes.size() > 2) throw ValidationError("a scan needs one or two axes");
    if (axes.size() == 2 && axes[0].name == axes[1].name) throw ValidationError("scan axes must be distinct");
    for (const Axis& ax : axes) ax.validate();
    if (!std::isfinite(tau) || tau < 0.0 || tau > kMaxTau) throw ValidationError("tau must lie in [0, 1000]");
    if (!std::isfinite(a) || a < 0.0 || a > kMaxAcceleration) throw ValidationError("a must lie in [0, 50]");
    if (!std::isfinite(theta) || theta < 0.0 || theta > pi) throw ValidationError("theta must lie in [0, pi]");
}

namespace {

struct Point {
    double tau, a, theta;
};

void assign(Point& p, AxisName name, double v) {
    switch (name) {
        case AxisName::Tau: p.tau = v; break;
        case AxisName::A: p.a = v; break;
        case AxisName::Theta: p.theta = v; break;
    }
}

}  // namespace

std::function<double(double)> ScanGrid::curve_function() const {
    if (axes.size() != 1) throw ValidationError("curve_function needs a one-axis grid");
    const Point fixed{tau, a, theta};
    const AxisName name = axes.front().name;
    const FieldModel f = field;
    return [fixed, name, f](double v) {
        Point p = fixed;
        assign(p, name, v);
        return qfi(p.a, p.tau, p.theta, f).value;
    };
}

std::vector<double> Table::column(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw ValidationError("no column '" + std::string(name) + "'");
    const auto idx = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[idx]);
    return out;
}

Table scan(const ScanGrid& grid) {
    grid.validate();

    Table table;
    for (const Axis& ax : grid.axes) table.columns.emplace_back(to_string(ax.name));
    table.columns.emplace_back("F");

    const std::size_t inner = grid.axes.size() == 2 ? grid.axes[1].n_points : 1;
    const std::size_t total = grid.axes[0].n_points * inner;
    table.rows.resize(total);

    parallel_for(total, grid.threads, [&](std::size_t k) {
        Point p{grid.tau, grid.a, grid.theta};
        std::vector<double>& row = table.rows[k];
        row.reserve(grid.axes.size() + 1);
        const std::size_t idx[2] = {k / inner, k % inner};
        for (std::size_t d = 0; d < grid.axes.size(); ++d) {
            const double v = grid.axes[d].value(idx[d]);
            assign(p, grid.axes[d].name, v);
            row.push_back(v);
        }
        row.push_back(qfi(p.a, p.tau, p.theta, grid.field).value);
    });
    return table;
}

namespace {

struct Node {
    std::size_t index;
    bool endpoint;
    ExtremumKind kind;
};

std::vector<Node> turning_points(std::span<const double> y) {
    std::vector<Node> nodes{{0, true, ExtremumKind::Max}};
    int prev = 0;
    for (std::size_t j = 0; j + 1 < y.size(); ++j) {
        const double d = y[j + 1] - y[j];
        const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) {
            nodes.push_back({j, false, prev > 0 ? ExtremumKind::Max : ExtremumKind::Min});
        }
        prev = s;
    }
    nodes.push_back({y.size() - 1, true, ExtremumKind::Max});
    return nodes;
}

// Removes turning points whose rise or fall to a neighbour is below `threshold`.
void prune_ripple(std::vector<Node>& nodes, std::span<const double> y, double threshold) {
    while (true) {
        double smallest = threshold;
        std::size_t at = 0;
        bool found = false;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            if (nodes[i].endpoint && nodes[i + 1].endpoint) continue;
            const double diff = std::abs(y[nodes[i].index] - y[nodes[i + 1].index]);
            if (diff < smallest) {
                smallest = diff;
                at = i;
                found = true;
            }
        }
        if (!found) return;

        const auto first = nodes.begin() + static_cast<std::ptrdiff_t>(at);
        if (nodes[at].endpoint) {
            nodes.erase(first + 1);
        } else if (nodes[at + 1].endpoint) {
            nodes.erase(first);
        } else {
            nodes.erase(first, first + 2);
        }
    }
}

}  // namespace

PeakReport find_extrema(std::span<const double> x, std::span<const double> y,
                        const std::function<double(double)>& f, double refine_tol) {
    if (x.size() != y.size()) throw ValidationError("find_extrema: x and y differ in length");
    if (x.size() < 50) throw ValidationError("find_extrema: need at least 50 points");
    if (!(refine_tol >= 1e-10 && refine_tol <= 1e-4)) {
        throw ValidationError("find_extrema: refine_tol must lie in [1e-10, 1e-4]");
    }

    double scale = 0.0;
    for (double v : y) scale = std::max(scale, std::abs(v));

    std::vector<Node> nodes = turning_points(y);
    prune_ripple(nodes, y, 1e-9 * scale);

    PeakReport report;
    const auto top = std::max_element(y.begin(), y.end());
    report.global_max = {x[static_cast<std::size_t>(top - y.begin())], *top};

    for (const Node& node : nodes) {
        if (node.endpoint) continue;
        const std::size_t i = node.index;
        const double lo = x[i == 0 ? 0 : i - 1];
        const double hi = x[std::min(i + 1, x.size() - 1)];

        Extremum e{x[i], y[i], node.kind};
        if (node.kind == ExtremumKind::Max) {
            const LineMaximum best = golden_section_maximize(f, lo, hi, refine_tol);
            if (best.value > e.value) e = {best.x, best.value, node.kind};
            ++report.n_local_maxima;
            if (e.value > report.global_max.value) report.global_max = {e.location, e.value};
        } else {
            const LineMaximum best = golden_section_maximize([&](double v) { return -f(v); }, lo, hi, refine_tol);
            if (-best.value < e.value) e = {best.x, -best.value, node.kind};
        }
        report.extrema.push_back(e);
    }
    return report;
}

PeakReport find_extrema(const ScanGrid& grid, const Table& curve, double refine_tol) {
    grid.validate();
    if (grid.axes.size() != 1) throw ValidationError("find_extrema needs a one-axis scan");
    const std::vector<double> x = curve.column(to_string(grid.axes.front().name));
    const std::vector<double> y = curve.column("F");
    return find_extrema(x, y, grid.curve_function(), refine_tol);
}

Table fmax_curve(std::span<const double> taus, double theta, FieldModel field, const FmaxOptions& opt) {
    if (taus.empty()) throw ValidationError("fmax_curve: tau grid is empty");
    Axis a_axis{AxisName::A, opt.a_min, opt.a_max, opt.n_coarse};
    a_axis.validate();
    if (opt.n_coarse < 400) throw ValidationError("fmax_curve: coarse grid needs at least 400 points");
    for (double t : taus) {
        if (!std::isfinite(t) || t < 0.0 || t > kMaxTau) throw ValidationError("fmax_curve: tau out of range");
    }
    if (!std::isfinite(theta) || theta < 0.0 || theta > pi) throw ValidationError("theta must lie in [0, pi]");

    const std::vector<double> grid = a_axis.values();
    Table table{{"tau", "F_max", "a_argmax"}, std::vector<std::vector<double>>(taus.size())};

    parallel_for(taus.size(), opt.threads, [&](std::size_t k) {
        const double tau = taus[k];
        auto f = [&](double a) { return qfi(a, tau, theta, field).value; };

        std::size_t best = 0;
        double best_value = f(grid[0]);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            const double v = f(grid[i]);
            if (v > best_value) {
                best_value = v;
                best = i;
            }
        }
        const double lo = grid[best == 0 ? 0 : best - 1];
        const double hi = grid[std::min(best + 1, grid.size() - 1)];
        const LineMaximum refined = golden_section_maximize(f, lo, hi, opt.refine_tol);

        double location = grid[best];
        if (refined.value > best_value) {
            best_value = refined.value;
            location = refined.x;
        }
        table.rows[k] = {tau, best_value, location};
    });
    return table;
}

}  // namespace qfiunruh
