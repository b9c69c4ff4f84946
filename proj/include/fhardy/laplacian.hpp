#pragma once

#include <vector>

#include "fhardy/quadrature.hpp"
#include "fhardy/specfun.hpp"
#include "fhardy/test_function.hpp"

namespace fhardy {

/// u_p(y) = (1 − y²)^p on (−1, 1), p > −1.
class PowerFunction {
public:
    explicit PowerFunction(double p);

    double exponent() const { return p_; }
    double value(double y) const;
    /// u_p(x+z) + u_p(x−z) − 2u_p(x), free of cancellation for small z.
    double second_difference(double x, double z) const;
    /// u_p(±(1 − s)) = (s(2 − s))^p, exact near the endpoints.
    double edge_value(double s) const;
    /// Algebraic order of the endpoint behaviour; false when u_p is a polynomial.
    bool edge_singular() const;

private:
    double p_;
};

/// Regional fractional Laplacian on (−1, 1),
///   L f(x) = PV ∫_{−1}^{1} (f(y) − f(x)) |x − y|^{−1−α} dy,
/// by the symmetrised second-difference form on the window |y − x| < (1−|x|)/2
/// and graded adaptive quadrature elsewhere. Throws NonConvergenceError.
PVResult regional_laplacian_pv(const TestFunction& f, double x, Alpha alpha, const QuadConfig& cfg = {});
PVResult regional_laplacian_pv(const PowerFunction& f, double x, Alpha alpha, const QuadConfig& cfg = {});

/// Same operator by symmetric excision of radius ε = ε₀ 2^{−k} and Richardson
/// extrapolation in the exponents 2j − α. An independent route kept for
/// cross-checks; less accurate than regional_laplacian_pv.
PVResult regional_laplacian_excised(const TestFunction& f, double x, Alpha alpha, const QuadConfig& cfg = {});
PVResult regional_laplacian_excised(const PowerFunction& f, double x, Alpha alpha, const QuadConfig& cfg = {});

/// L u_p(0) = (2/α)(1 − (p + 1 − α/2) B(p + 1, 1 − α/2)).
double lap_power_at_zero(double p, Alpha alpha);

/// PV ∫_{−1}^{1} ((1 − wx)^{α−1−2p} − 1)(1 − w²)^p |w|^{−1−α} dw.
/// The w and −w contributions are paired before quadrature, which removes the
/// odd |w|^{−α} part exactly.
PVResult power_pv_integral(double p, double x, Alpha alpha, const QuadConfig& cfg = {});

/// L u_p(x) from the closed bracket
///   (1−x²)^{p−α}/α · [(1−x)^α + (1+x)^α − (2p+2−α) B(p+1, 1−α/2) + α·I(p)],
/// with I(p) in closed form for p ∈ {(α−1)/2, (α−2)/2} and for p = (α−3)/2
/// when α > 1, and from power_pv_integral otherwise. Accuracy degrades as
/// |x| → 1 through the prefactor.
PVResult laplacian_power_closed_with_error(double p, double x, Alpha alpha, const QuadConfig& cfg = {});
double laplacian_power_closed(double p, double x, Alpha alpha, const QuadConfig& cfg = {});

/// −L w / w for w = (1−x²)^{(α−1)/2}:
///   (1−x²)^{−α} [B((1+α)/2, (2−α)/2) − (1+x)^α − (1−x)^α] / α.
double ground_state_potential(double x, Alpha alpha);

}  // namespace fhardy
