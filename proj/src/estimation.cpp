// estimation.cpp

#include "qfiunruh/estimation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qfiunruh/errors.hpp"
#include "qfiunruh/optimize.hpp"
#include "qfiunruh/parallel.hpp"

namespace qfiunruh {

namespace {

constexpr double kMinQfi = 1e-6;
constexpr int kBranchProbe = 200;  // probe points on each side of a_true

bool near(const Matrix2c& x, const Matrix2c& y, double tol) {
    return (x - y).cwiseAbs().maxCoeff() <= tol;
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

void MeasurementPlan::validate() const {
    const Matrix2c id = Matrix2c::Identity();
    for (const Matrix2c* p : {&plus, &minus}) {
        if (!near(*p, p->adjoint(), 1e-12)) throw ValidationError("measurement projector is not Hermitian");
        if (!near(*p * *p, *p, 1e-12)) throw ValidationError("measurement projector is not idempotent");
    }
    if (!near(plus + minus, id, 1e-12)) throw ValidationError("measurement projectors do not sum to identity");
    if (n_shots == 0) throw ValidationError("n_shots must be positive");
}

double MeasurementPlan::probability(const Matrix2c& rho) const {
    return std::clamp((rho * plus).trace().real(), 0.0, 1.0);
}

MeasurementPlan make_measurement_plan(const BlochState& state, std::uint64_t n_shots, std::uint64_t seed) {
    const SldOperator L = sld(state);
    Eigen::SelfAdjointEigenSolver<Matrix2c> eig(L.L);
    // eigenvalues are sorted ascending
    const Eigen::Vector2cd up = eig.eigenvectors().col(1);
    const Eigen::Vector2cd down = eig.eigenvectors().col(0);

    MeasurementPlan plan;
    plan.plus = up * up.adjoint();
    plan.minus = down * down.adjoint();
    plan.n_shots = n_shots;
    plan.seed = seed;
    plan.validate();
    return plan;
}

EstimationReport simulate_estimation(const EstimationConfig& cfg) {
    if (cfg.n_shots < 1000) throw PreconditionError("simulate_estimation: n_shots must be >= 1000");
    if (cfg.n_trials < 100) throw PreconditionError("simulate_estimation: n_trials must be >= 100");

    const InitialState init{cfg.theta, 0.0};
    auto params_at = [&](double a) { return EvolutionParams{cfg.tau, a, cfg.field}; };

    const BlochState truth = evolve(init, params_at(cfg.a_true));
    const double fisher = qfi_from_bloch(truth).value;
    if (!(fisher > kMinQfi)) {
        throw PreconditionError("simulate_estimation: QFI = " + std::to_string(fisher)
                                + " is below 1e-6; the configuration carries no information about a");
    }

    const MeasurementPlan plan = make_measurement_plan(truth, cfg.n_shots, cfg.seed);
    auto probability = [&](double a) {
        return plan.probability(density_matrix(evolve(init, params_at(a)).omega));
    };

    // Restrict the search to the monotone branch of p(a) that contains a_true.
    const double p_true = probability(cfg.a_true);
    const double slope = plan.probability(density_matrix(truth.omega + 1e-6 * truth.d_omega)) - p_true;
    const double direction = slope >= 0.0 ? 1.0 : -1.0;

    auto walk = [&](double far) {
        double last = cfg.a_true;
        double p_last = p_true;
        for (int i = 1; i <= kBranchProbe; ++i) {
            const double x = cfg.a_true + (far - cfg.a_true) * i / kBranchProbe;
            const double px = probability(x);
            const bool increasing_in_a = direction * (px - p_last) * (x - last) > 0.0;
            if (!increasing_in_a) break;
            last = x;
            p_last = px;
        }
        return last;
    };
    const double lo = walk(cfg.a_true / 4.0);
    const double hi = walk(4.0 * cfg.a_true);
    const double tol = 1e-10 * cfg.a_true;
    const double edge = 1e-6 * (hi - lo);

    std::vector<double> estimates(cfg.n_trials);
    std::vector<char> at_boundary(cfg.n_trials, 0);
    parallel_for(cfg.n_trials, cfg.threads, [&](std::size_t trial) {
        auto engine = trial_engine(cfg.seed, trial);
        std::binomial_distribution<std::uint64_t> draw(cfg.n_shots, p_true);
        const double k = static_cast<double>(draw(engine));
        const double n = static_cast<double>(cfg.n_shots);

        auto log_likelihood = [&](double a) {
            const double p = std::clamp(probability(a), 1e-300, 1.0 - 1e-16);
            double ll = 0.0;
            if (k > 0.0) ll += k * std::log(p);
            if (k < n) ll += (n - k) * std::log1p(-p);
            return ll;
        };
        const LineMaximum best = golden_section_maximize(log_likelihood, lo, hi, tol);
        estimates[trial] = best.x;
        at_boundary[trial] = (best.x - lo < edge || hi - best.x < edge) ? 1 : 0;
    });

    EstimationReport r;
    r.a_true = cfg.a_true;
    r.n_shots = cfg.n_shots;
    r.n_trials = cfg.n_trials;
    r.qfi = fisher;
    r.search_lo = lo;
    r.search_hi = hi;
    r.boundary_hits = static_cast<std::uint64_t>(std::count(at_boundary.begin(), at_boundary.end(), 1));

    double mean = 0.0;
    for (double x : estimates) mean += x;
    mean /= static_cast<double>(estimates.size());
    double ss = 0.0;
    for (double x : estimates) ss += (x - mean) * (x - mean);
    r.a_hat_mean = mean;
    r.a_hat_var = ss / static_cast<double>(estimates.size() - 1);
    r.crb_product = static_cast<double>(cfg.n_shots) * fisher * r.a_hat_var;
    return r;
}

}  // namespace qfiunruh
