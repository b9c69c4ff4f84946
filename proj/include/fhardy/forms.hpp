#pragma once

#include "fhardy/quadrature.hpp"
#include "fhardy/specfun.hpp"
#include "fhardy/test_function.hpp"

namespace fhardy {

struct Interval {
    double a = -1.0;
    double b = 1.0;

    /// Throws DomainError unless a < b.
    void validate() const;
    double half_length() const { return 0.5 * (b - a); }
};

/// Weights for weighted_l2, all singular only at the ends of their interval.
class Weight {
public:
    enum class Kind { InvOneMinusX2Pow, Hardy, Phi };

    /// (1 − x²)^{−β} on (−1, 1).
    static Weight inv_one_minus_x2_pow(double beta);
    /// (1/(x − a) + 1/(b − x))^α on (a, b).
    static Weight hardy_weight(Alpha alpha, Interval iv = {});
    /// φ(x)(1 − x²)^{−α} on (−1, 1); negative near 0 when α < 1.
    static Weight phi_weight(Alpha alpha);

    double operator()(double x) const;
    Kind kind() const { return kind_; }
    Interval domain() const { return iv_; }

private:
    Weight(Kind kind, double exponent, Interval iv) : kind_(kind), exponent_(exponent), iv_(iv) {}

    Kind kind_;
    double exponent_;
    Interval iv_;
};

/// ½ ∬_{I×I} (u(x) − u(y))² |x − y|^{−1−α} dx dy, supp u strictly inside I.
///
/// Pairs with both points in the convex hull S of supp u are integrated in
/// (x, z = y − x) with graded panels at z = 0; pairs with one point outside S
/// reduce to u(x)² times a closed-form kernel integral.
PVResult energy_regional(const TestFunction& u, Interval iv, Alpha alpha, const QuadConfig& cfg = {});

/// Same quantity by tensor Gauss panels over S × S, with Duffy-graded panels
/// along the diagonal. Slower; kept as an independent cross-check.
PVResult energy_regional_tensor(const TestFunction& u, Interval iv, Alpha alpha, const QuadConfig& cfg = {});

/// ½ ∬_{ℝ×ℝ} (u(x) − u(y))² |x − y|^{−1−α} dx dy for u supported in (−1, 1).
PVResult energy_full_line(const TestFunction& u, Alpha alpha, const QuadConfig& cfg = {});

/// ∫ u(x)² (1/α)((1 + x)^{−α} + (1 − x)^{−α}) dx: the exterior of (−1, 1)
/// integrated out in closed form.
PVResult killing_term(const TestFunction& u, Alpha alpha, const QuadConfig& cfg = {});

/// ½ ∬ (u/w(x) − u/w(y))² w(x) w(y) |x − y|^{−1−α} over (−1, 1)²,
/// w(x) = (1 − x²)^{(α−1)/2}.
PVResult energy_ground_state(const TestFunction& u, Alpha alpha, const QuadConfig& cfg = {});

/// ∫ u² · weight over supp u, which must lie strictly inside the weight's interval.
PVResult weighted_l2(const TestFunction& u, const Weight& weight, const QuadConfig& cfg = {});

struct FormBreakdown {
    double energy = 0.0;
    double gs_term = 0.0;
    double kappa_term = 0.0;
    double phi_term = 0.0;
    /// energy − gs_term − kappa_term − phi_term
    double residual = 0.0;
    /// Sum of the component quadrature error estimates.
    double error_estimate = 0.0;
};

/// Evaluates the four terms of the ground state representation of the
/// regional energy on (−1, 1).
FormBreakdown verify_gsr_identity(const TestFunction& u, Alpha alpha, const QuadConfig& cfg = {});

struct HardyCheck {
    double lhs = 0.0;
    double rhs_main = 0.0;
    double rhs_remainder = 0.0;
    /// lhs − rhs_main − rhs_remainder
    double slack = 0.0;
    double error_budget = 0.0;
    bool holds() const { return slack >= -error_budget; }
};

/// Hardy inequality with remainder on (a, b), 1 < α < 2:
///   E(u) ≥ κ_{1,α} ∫ u² (1/(x−a) + 1/(b−x))^α
///          + (4 − 2^{3−α})/(α(b−a)) ∫ u² (1/(x−a) + 1/(b−x))^{α−1}.
/// Every term is evaluated on (−1, 1) after the affine transfer and scaled back.
HardyCheck hardy_check_1d(const TestFunction& u, Interval iv, Alpha alpha, const QuadConfig& cfg = {});

struct KilledCheck {
    /// Direct evaluation over ℝ × ℝ.
    double full_energy = 0.0;
    double regional_energy = 0.0;
    double killing_term = 0.0;
    double gs_term = 0.0;
    /// B((1+α)/2, (2−α)/2)/α · ∫ u² (1 − x²)^{−α}
    double const_term = 0.0;
    /// full_energy − gs_term − const_term
    double identity_residual = 0.0;
    /// full_energy − (regional_energy + killing_term)
    double split_residual = 0.0;
    /// full_energy − B/(α2^α) ∫ u² (1/(1+x) + 1/(1−x))^α
    double ineq_slack = 0.0;
    double error_budget = 0.0;
};

KilledCheck killed_check(const TestFunction& u, Alpha alpha, const QuadConfig& cfg = {});

struct PhiGap {
    double min_gap = 0.0;
    double argmin = 0.0;
};

/// min over an equispaced grid of [0, 1] of φ(x) − (2^α − 2)(1 − x²); 1 < α < 2.
PhiGap phi_lower_bound_check(Alpha alpha, int grid_size);

/// Slack tolerance used by every inequality check: summed error estimates plus 1e−12.
inline double error_budget(double summed_errors) { return summed_errors + 1e-12; }

}  // namespace fhardy
