// acceptance.cpp: end-to-end acceptance criteria, one PASS/FAIL line each.
//
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qfiunruh/analysis.hpp"
#include "qfiunruh/cli.hpp"
#include "qfiunruh/estimation.hpp"
#include "qfiunruh/metrology.hpp"

using namespace qfiunruh;
using oracle::pi;

namespace {

constexpr FieldModel kEm = FieldModel::Electromagnetic;
constexpr FieldModel kScalar = FieldModel::Scalar;

struct Outcome {
    bool pass{true};
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " FAILED{" << what << "}";
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;
    std::function<void(Outcome&)> body;
};

std::string sci(double v) {
    std::ostringstream os;
    os << std::setprecision(3) << std::scientific << v;
    return os.str();
}

double closed_form_finf(double a) {
    return oracle::naive_finf(a);
}

// ---------------------------------------------------------------------------

void zero_information_start(Outcome& o) {
    double worst = 0.0;
    for (FieldModel f : {kEm, kScalar}) {
        for (double a : {0.1, 0.5, 1.0, 2.5, 5.0}) {
            for (double theta : {0.0, pi / 4, pi / 2, pi}) worst = std::max(worst, std::abs(qfi(a, 0.0, theta, f).value));
        }
    }
    o.require(worst < 1e-12, "|F(tau=0)| < 1e-12");
    o.detail << " max|F|=" << sci(worst);
}

void asymptotic_closed_form(Outcome& o) {
    double worst = 0.0;
    double spread = 0.0;
    for (FieldModel f : {kEm, kScalar}) {
        for (double a : {0.5, 1.0, 1.5, 2.5}) {
            double lo = 1e300, hi = -1e300;
            for (double theta : {0.0, pi / 2, pi}) {
                const double F = qfi(a, 50.0, theta, f).value;
                worst = std::max(worst, std::abs(F - closed_form_finf(a)));
                worst = std::max(worst, std::abs(asymptotic_qfi(a, f) - closed_form_finf(a)));
                lo = std::min(lo, F);
                hi = std::max(hi, F);
            }
            spread = std::max(spread, hi - lo);
        }
    }
    o.require(worst < 1e-6, "|F(tau=50) - F_inf| < 1e-6");
    o.require(spread < 1e-8, "theta spread at tau=50 < 1e-8");
    o.detail << " max_err=" << sci(worst) << " theta_spread=" << sci(spread);
}

void derivative_oracle(Outcome& o) {
    double worst_component = 0.0;
    double worst_qfi = 0.0;
    int compared = 0;
    for (FieldModel f : {kEm, kScalar}) {
        for (double a : {0.1, 0.5, 1.0, 2.5, 5.0}) {
            for (double tau : {0.5, 1.0, 2.0, 4.0, 9.0}) {
                for (double theta : {0.0, pi / 2, pi}) {
                    const InitialState init{theta, 0.0};
                    const double h = 1e-5 * std::max(1.0, a);
                    const BlochState s = evolve(init, {tau, a, f});
                    const Eigen::Vector3d fd =
                        (evolve(init, {tau, a + h, f}).omega - evolve(init, {tau, a - h, f}).omega) / (2.0 * h);
                    for (int k = 0; k < 3; ++k) {
                        if (std::abs(s.d_omega[k]) < 1e-12) continue;
                        worst_component =
                            std::max(worst_component, std::abs(fd[k] - s.d_omega[k]) / std::abs(s.d_omega[k]));
                        ++compared;
                    }
                    const double F = qfi(a, tau, theta, f).value;
                    if (F > 1e-10) {
                        const double Ffd = qfi_fd_oracle(a, tau, theta, f, 1e-5);
                        worst_qfi = std::max(worst_qfi, std::abs(Ffd - F) / F);
                    }
                }
            }
        }
    }
    o.require(worst_component < 1e-5, "d omega/da vs central differences, rel < 1e-5");
    o.require(worst_qfi < 1e-5, "QFI vs finite-difference oracle, rel < 1e-5");
    o.detail << " components=" << compared << " max_rel_dw=" << sci(worst_component)
             << " max_rel_F=" << sci(worst_qfi);
}

void ode_oracle(Outcome& o) {
    double worst = 0.0;
    for (double tau : {0.5, 1.0, 4.0, 9.0}) {
        for (double a : {0.5, 1.0, 2.5}) {
            for (double theta : {0.0, pi / 2, pi}) {
                const InitialState init{theta, 0.0};
                const EvolutionParams p{tau, a, kEm};
                const Eigen::Vector3d d = bloch_ode_oracle(init, p, 1e-11).omega - evolve(init, p).omega;
                worst = std::max(worst, d.cwiseAbs().maxCoeff());
            }
        }
    }
    o.require(worst < 1e-8, "closed form vs ODE, max-norm < 1e-8");
    o.detail << " max_diff=" << sci(worst);
}

void sld_identities(Outcome& o) {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> ac(0.2, 5.0), tu(0.05, 12.0), th(0.0, pi), ph(0.0, 2 * pi);
    double worst_trace = 0.0, worst_rel = 0.0;
    int sampled = 0;
    while (sampled < 100) {
        const BlochState s = evolve({th(rng), ph(rng)}, {tu(rng), ac(rng), sampled % 2 ? kEm : kScalar});
        if (!(s.omega.norm() < 1.0 - 1e-10)) continue;
        const double F = qfi_from_bloch(s).value;
        if (!(F > 0.0)) continue;
        const Matrix2c rho = density_matrix(s.omega);
        const Matrix2c L = sld(s).L;
        worst_trace = std::max(worst_trace, std::abs(trace_rho_l(rho, L)));
        worst_rel = std::max(worst_rel, std::abs(trace_rho_l2(rho, L) - F) / F);
        ++sampled;
    }
    o.require(worst_trace < 1e-10, "|Tr(rho L)| < 1e-10");
    o.require(worst_rel < 1e-9, "|Tr(rho L^2) - F|/F < 1e-9");
    o.detail << " states=" << sampled << " max|TrRhoL|=" << sci(worst_trace) << " max_rel=" << sci(worst_rel);
}

PeakReport tau_peaks(double a, double theta) {
    const ScanGrid grid{{Axis{AxisName::Tau, 0.0, 15.0, 601}}, 0.0, a, theta, kEm, 0};
    return find_extrema(grid, scan(grid), 1e-8);
}

// A local maximum immediately followed by a local minimum that dips below the asymptote.
bool has_max_then_dip(const PeakReport& r, double asymptote) {
    for (std::size_t i = 0; i + 1 < r.extrema.size(); ++i) {
        if (r.extrema[i].kind == ExtremumKind::Max && r.extrema[i + 1].kind == ExtremumKind::Min &&
            r.extrema[i + 1].value < asymptote) {
            return true;
        }
    }
    return false;
}

void fig2_shape(Outcome& o) {
    for (double theta : {0.0, pi / 2}) {
        int hits = 0;
        for (double a : {1.0, 1.5, 2.5}) {
            const PeakReport r = tau_peaks(a, theta);
            if (has_max_then_dip(r, asymptotic_qfi(a, kEm))) ++hits;
        }
        o.detail << " theta=" << theta << ":max->min in " << hits << "/3";
        o.require(hits >= 1, "theta=" + std::to_string(theta) + " shows max then local min");
    }
    int minima = 0;
    for (double a : {1.0, 1.5, 2.5}) {
        for (const Extremum& e : tau_peaks(a, pi).extrema) {
            if (e.kind == ExtremumKind::Min) ++minima;
        }
    }
    o.detail << " theta=pi:minima=" << minima;
    o.require(minima == 0, "theta=pi has no local minimum");
}

void fig4_short_time(Outcome& o) {
    for (double a : {0.1, 1.0, 3.0}) {
        const ScanGrid grid{{Axis{AxisName::Theta, 0.0, pi, 401}}, 0.5, a, 0.0, kEm, 0};
        const std::vector<double> F = scan(grid).column("F");
        const auto best = static_cast<std::size_t>(std::max_element(F.begin(), F.end()) - F.begin());
        const double argmax = grid.axes.front().value(best);
        o.detail << " a=" << a << ":argmax=" << std::setprecision(4) << argmax;
        o.require(best == 0, "a=" + std::to_string(a) + " argmax theta = 0");
    }
}

void fig5_two_peaks(Outcome& o) {
    auto a_peaks = [](double tau, double theta) {
        const ScanGrid grid{{Axis{AxisName::A, kMinScanAcceleration, 6.0, 1200}}, tau, 1.0, theta, kEm, 0};
        return find_extrema(grid, scan(grid), 1e-8);
    };
    bool two = false;
    for (double tau : {0.5, 1.0, 4.0}) {
        const PeakReport r = a_peaks(tau, 0.0);
        o.detail << " th0/tau" << tau << ":" << r.n_local_maxima;
        two = two || r.n_local_maxima == 2;
    }
    o.require(two, "theta=0 has two peaks at some tau");

    // Peak locations may settle by less than the scan spacing once the
    // curve has reached its stationary shape.
    const double spacing = (6.0 - kMinScanAcceleration) / 1199.0;
    std::vector<double> locations;
    bool single = true;
    for (double tau : {0.5, 1.0, 4.0, 9.0}) {
        const PeakReport r = a_peaks(tau, pi);
        single = single && r.n_local_maxima == 1;
        for (const Extremum& e : r.extrema) {
            if (e.kind == ExtremumKind::Max) locations.push_back(e.location);
        }
    }
    o.require(single, "theta=pi has exactly one peak for every tau");
    bool shifts_left = locations.size() == 4 && locations.back() < locations.front();
    for (std::size_t i = 1; i < locations.size(); ++i) {
        shifts_left = shifts_left && locations[i] <= locations[i - 1] + spacing;
    }
    o.detail << " thpi_locs=";
    for (double l : locations) o.detail << std::setprecision(6) << l << ";";
    o.require(shifts_left, "theta=pi peak moves left with tau");
}

void fig6_contrast(Outcome& o) {
    // Brute-force the limiting value over the closed form, then check it against the pinned constant.
    const auto [a_star, f_star] = oracle::grid_max(closed_form_finf, 0.5, 4.0, 350'000);
    o.require(std::abs(f_star - oracle::kFStar) < 1e-10 && std::abs(a_star - oracle::kAStar) < 2e-5,
              "brute-force F* matches pinned value");
    o.detail << std::setprecision(10) << " F*=" << f_star << " a*=" << std::setprecision(6) << a_star;

    const Axis taus{AxisName::Tau, 0.05, 30.0, 300};
    const std::vector<double> tau_values = taus.values();
    FmaxOptions opt;
    opt.threads = 0;
    for (FieldModel f : {kEm, kScalar}) {
        for (double theta : {0.0, pi / 2, pi}) {
            const std::vector<double> F = fmax_curve(tau_values, theta, f, opt).column("F_max");
            const std::string tag = std::string(to_string(f)) + "/theta=" + std::to_string(theta);
            const double limit_err = std::abs(F.back() - f_star) / f_star;
            o.require(limit_err < 0.01, tag + " within 1% of F* at tau=30");
            if (f == kEm) {
                const double peak = *std::max_element(F.begin(), F.end());
                o.require(peak > F.front() && peak > 1.01 * F.back(), tag + " rises then falls");
            } else {
                std::size_t drops = 0;
                double worst_drop = 0.0;
                for (std::size_t i = 1; i < F.size(); ++i) {
                    if (F[i] < F[i - 1] - 1e-9) {
                        ++drops;
                        worst_drop = std::max(worst_drop, F[i - 1] - F[i]);
                    }
                }
                o.detail << " " << tag << ":drops=" << drops << "(max " << sci(worst_drop) << ")";
                o.require(drops == 0, tag + " rises monotonically");
            }
        }
    }
}

void cramer_rao(Outcome& o) {
    const EstimationReport main = simulate_estimation({1.0, 4.0, 0.0, kEm, 100'000, 200, 42});
    o.require(main.crb_product >= 0.8 && main.crb_product <= 1.5, "headline crb_product in [0.8, 1.5]");
    o.detail << " headline=" << std::setprecision(4) << main.crb_product;

    const EstimationConfig sample[] = {
        {1.5, 2.0, pi / 2, kEm, 100'000, 200, 2},
        {0.8, 1.0, pi, kEm, 100'000, 200, 3},
        {2.0, 3.0, 1.0, kScalar, 100'000, 200, 4},
    };
    for (const auto& cfg : sample) {
        const double crb = simulate_estimation(cfg).crb_product;
        o.detail << " " << crb;
        o.require(crb >= 0.8, "crb_product >= 0.8 at a=" + std::to_string(cfg.a_true));
    }
}

void determinism(Outcome& o) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qfiunruh_acceptance";
    fs::create_directories(dir);
    const std::vector<std::vector<std::string>> commands = {
        {"eval", "--a", "1", "--tau", "50", "--theta", "1.5707963", "--field", "em"},
        {"scan", "--axis", "tau:0:15:601", "--a", "1", "--theta", "0", "--field", "em"},
        {"scan", "--axis", "tau:0:15:61", "--axis", "a:0.05:6:40", "--theta", "3.141592653589793", "--format", "json"},
        {"peaks", "--axis", "a:0.001:6:1200", "--tau", "1", "--theta", "0"},
        {"fmax", "--axis", "tau:0.05:30:20", "--theta", "0", "--field", "scalar"},
        {"crlb", "--a", "1", "--tau", "4", "--theta", "0", "--shots", "100000", "--trials", "200", "--seed", "42"},
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    int identical = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        std::string bytes[2];
        for (int run = 0; run < 2; ++run) {
            const fs::path out = dir / ("run" + std::to_string(i) + "_" + std::to_string(run));
            std::vector<std::string> args{"qfiunruh"};
            args.insert(args.end(), commands[i].begin(), commands[i].end());
            args.insert(args.end(), {"-o", out.string()});
            std::vector<const char*> argv;
            for (const auto& s : args) argv.push_back(s.c_str());
            std::ostringstream sink, err;
            const int code = cli::run(static_cast<int>(argv.size()), argv.data(), sink, err);
            o.require(code == 0, commands[i][0] + " exits 0");
            bytes[run] = slurp(out);
        }
        if (!bytes[0].empty() && bytes[0] == bytes[1]) ++identical;
    }
    o.require(identical == static_cast<int>(commands.size()), "byte-identical reruns");
    o.detail << " identical=" << identical << "/" << commands.size();
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "zero-information start", 1.0, zero_information_start},
        {2, "asymptotic closed form", 1.0, asymptotic_closed_form},
        {3, "derivative oracle", 5.0, derivative_oracle},
        {4, "ODE oracle", 10.0, ode_oracle},
        {5, "SLD identities", 1.0, sld_identities},
        {6, "F(tau) maximum then local minimum", 5.0, fig2_shape},
        {7, "short-time optimum at theta = 0", 5.0, fig4_short_time},
        {8, "F(a) peak structure", 10.0, fig5_two_peaks},
        {9, "F_max(tau) EM vs scalar", 60.0, fig6_contrast},
        {10, "Cramer-Rao saturation", 120.0, cramer_rao},
        {11, "CLI determinism", 600.0, determinism},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(seconds < c.time_limit_s, "runtime limit " + std::to_string(c.time_limit_s) + " s");
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "AC" << c.id << " " << c.name << " ("
                  << std::fixed << std::setprecision(2) << seconds << " s)" << std::defaultfloat << ":"
                  << o.detail.str() << '\n';
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " acceptance criteria passed\n";
    return failed;
}
