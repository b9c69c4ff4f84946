#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fhardy/quadrature.hpp"
#include "fhardy/specfun.hpp"

namespace fhardy {

enum class FormKind {
    /// Regional energy on (−1, 1).
    Regional,
    /// Energy over ℝ × ℝ of functions supported in (−1, 1).
    Killed,
    /// Regional energy minus ((2^α − 2)/α) ∫ u² (1 − x²)^{1−α}, the remainder
    /// term of the interval Hardy inequality on (−1, 1).
    RegionalMinusRemainder,
};

std::string to_string(FormKind kind);
/// Accepts "regional", "killed", "regional_minus_remainder"; throws DomainError otherwise.
FormKind form_kind_from_string(const std::string& name);

/// Sharp constant of the Rayleigh quotient form / ∫ u² (1/(1+x) + 1/(1−x))^α:
/// κ_{1,α} for the regional kinds, B((1+α)/2, (2−α)/2)/(α 2^α) for the killed form.
double limit_constant(FormKind kind, Alpha alpha);

/// Node placement: uniform in a central core, geometric toward ±1 down to
/// offsets of order `min_offset`. Grids for n and 2n + 1 nodes are nested.
struct GridSpec {
    double min_offset = 1e-24;
    /// Share of the parameter range given to the uniform core.
    double core_fraction = 0.25;
};

/// Interior node of the grid, stored as a side (±1) and its distance to that end.
struct GridNode {
    int side;
    double offset;
    double x() const { return side * (1.0 - offset); }
};

std::vector<GridNode> graded_grid(int n_nodes, const GridSpec& spec = {});

/// Galerkin matrices of a quadratic form on the hat basis of a graded grid.
struct DiscreteForm {
    Eigen::MatrixXd stiffness;
    /// Gram matrix of the weight (1/(1+x) + 1/(1−x))^α = 2^α (1 − x²)^{−α}.
    Eigen::MatrixXd mass;
    std::vector<GridNode> nodes;
    FormKind kind = FormKind::Killed;
    double alpha = 1.5;

    std::vector<double> grid() const;
};

DiscreteForm assemble(FormKind kind, Alpha alpha, int n_nodes, const QuadConfig& cfg = {},
                      const GridSpec& spec = {});

struct RayleighResult {
    double min_quotient = 0.0;
    /// Coefficients on the hat basis (node values), scaled to max |v| = 1, v ≥ 0 at the maximum.
    Eigen::VectorXd eigenvector;
    int iterations = 0;
    double residual_norm = 0.0;
};

/// Smallest generalized eigenvalue of (stiffness, mass) by subspace inverse
/// iteration with Rayleigh–Ritz projection after symmetric diagonal scaling.
/// residual_norm = ‖K v − λ M v‖ / (λ ‖M v‖) in the scaled basis. Throws
/// NonConvergenceError when tol is not met within the iteration cap.
RayleighResult min_rayleigh(const DiscreteForm& df, double tol = 1e-10, int max_iterations = 2000);

struct SweepPoint {
    int n = 0;
    double quotient = 0.0;
    double limit_constant = 0.0;
    double gap = 0.0;
    double error_estimate = 0.0;
};

/// Rayleigh quotients of u_n = ψ_n w, w = (1 − x²)^{(α−1)/2}, for each n of an
/// increasing list (n ≥ 3).
std::vector<SweepPoint> sharpness_sweep(FormKind kind, Alpha alpha, const std::vector<int>& n_list,
                                        const QuadConfig& cfg = {});

}  // namespace fhardy
