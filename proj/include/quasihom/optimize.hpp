#pragma once

#include "quasihom/rat.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace quasihom::optimize {

// g(p, q) = 2 + 1/q + 1/p + 4/(1 - q - 2p)^2 on {p > 0, q > 0, 2p + q < 1}.

inline bool feasible(double p, double q) {
    return p > 0.0 && q > 0.0 && 1.0 - q - 2.0 * p > 0.0;
}

inline void require_feasible(double p, double q) {
    if (!feasible(p, q))
        throw std::invalid_argument("optimize: point outside the feasible region");
}

inline double objective(double p, double q) {
    require_feasible(p, q);
    const double d = 1.0 - q - 2.0 * p;
    return 2.0 + 1.0 / q + 1.0 / p + 4.0 / (d * d);
}

inline Eigen::Vector2d gradient(double p, double q) {
    require_feasible(p, q);
    const double d = 1.0 - q - 2.0 * p;
    const double d3 = d * d * d;
    return {-1.0 / (p * p) + 16.0 / d3, -1.0 / (q * q) + 8.0 / d3};
}

inline Eigen::Matrix2d hessian(double p, double q) {
    require_feasible(p, q);
    const double d = 1.0 - q - 2.0 * p;
    const double d4 = d * d * d * d;
    Eigen::Matrix2d h;
    h(0, 0) = 2.0 / (p * p * p) + 96.0 / d4;
    h(1, 1) = 2.0 / (q * q * q) + 24.0 / d4;
    h(0, 1) = h(1, 0) = 48.0 / d4;
    return h;
}

/// Exact value of g at an exact rational point; throws on infeasible input.
inline Rat objective_exact(const Rat& p, const Rat& q) {
    const Rat d = Rat(1) - q - Rat(2) * p;
    if (!(p > Rat(0)) || !(q > Rat(0)) || !(d > Rat(0)))
        throw std::invalid_argument("objective_exact: point outside the feasible region");
    return Rat(2) + Rat(1) / q + Rat(1) / p + Rat(4) / (d * d);
}

struct OptimizeResult {
    double p = 0.0, q = 0.0, value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    std::int64_t ceil_value = 0;  // smallest integer >= value
};

/// Damped Newton from (0.1, 0.2): the step is halved until it is feasible and
/// decreases the objective; stops when the gradient norm drops below tol.
/// Also checks the stationarity relation q = sqrt(2)·p at the minimizer.
inline OptimizeResult minimize_constant(double tol = 1e-10, int max_iterations = 200) {
    if (!(tol > 0.0))
        throw std::invalid_argument("minimize_constant: tol must be positive");
    Eigen::Vector2d x{0.1, 0.2};
    double value = objective(x[0], x[1]);
    int it = 0;
    for (; it < max_iterations; ++it) {
        const Eigen::Vector2d g = gradient(x[0], x[1]);
        if (g.norm() < tol)
            break;
        const Eigen::Vector2d step = hessian(x[0], x[1]).ldlt().solve(-g);
        double scale = 1.0;
        bool moved = false;
        for (int halving = 0; halving < 60; ++halving, scale *= 0.5) {
            const Eigen::Vector2d cand = x + scale * step;
            if (!feasible(cand[0], cand[1]))
                continue;
            const double cand_value = objective(cand[0], cand[1]);
            if (cand_value < value) {
                x = cand;
                value = cand_value;
                moved = true;
                break;
            }
        }
        if (!moved)
            break;  // no descent left at double precision
    }

    OptimizeResult out;
    out.p = x[0];
    out.q = x[1];
    out.value = value;
    out.grad_norm = gradient(x[0], x[1]).norm();
    out.iterations = it;
    out.ceil_value = static_cast<std::int64_t>(std::ceil(value));
    if (out.grad_norm >= tol)
        throw std::runtime_error("minimize_constant: did not converge");
    if (std::abs(out.q / out.p - std::sqrt(2.0)) > 10.0 * tol + 1e-12)
        throw std::logic_error("minimize_constant: stationarity relation q = sqrt(2)p failed");
    return out;
}

struct ConvexityReport {
    double grid_step = 0.0;
    std::uint64_t points_checked = 0;
    bool all_positive_definite = false;
};

/// Sweeps the feasible region at the given step, keeping a margin of
/// 2·grid_step from the boundary, and checks both leading principal minors of
/// the Hessian at every point.
inline ConvexityReport convexity_check(double grid_step = 0.01) {
    if (!(grid_step > 0.0))
        throw std::invalid_argument("convexity_check: grid step must be positive");
    ConvexityReport rep;
    rep.grid_step = grid_step;
    rep.all_positive_definite = true;
    const double margin = 2.0 * grid_step;
    for (double p = margin; 2.0 * p < 1.0; p += grid_step) {
        for (double q = margin; 2.0 * p + q < 1.0 - margin; q += grid_step) {
            const Eigen::Matrix2d h = hessian(p, q);
            ++rep.points_checked;
            if (!(h(0, 0) > 0.0 && h.determinant() > 0.0))
                rep.all_positive_definite = false;
        }
    }
    return rep;
}

}  // namespace quasihom::optimize
