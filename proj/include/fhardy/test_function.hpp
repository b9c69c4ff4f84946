#pragma once

#include <string>
#include <variant>
#include <vector>

namespace fhardy {

struct Support {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return !(hi > lo); }
    double length() const { return hi - lo; }
};

/// Continuous compactly supported function from a small catalogue, evaluable
/// with two derivatives and with cancellation-free first and second
/// differences u(x+z) − u(x), u(x+z) + u(x−z) − 2u(x).
///
/// Every instance is `base(shift + scale·x)` for one of the catalogue kinds,
/// which is how functions are moved between an interval (a, b) and (−1, 1).
class TestFunction {
public:
    struct Zero {};
    /// exp(order·(1 − 1/(1−t²))), t = (y − center)/(width/2); support of length `width`.
    struct SmoothBump {
        double center;
        double width;
        double order;
    };
    /// P(t)(1−t²)³ with P given by `coefficients` (ascending powers of t) and t the
    /// affine image of y ∈ [lo, hi] on [−1, 1]. C² across the support ends.
    struct PolyCutoff {
        std::vector<double> coefficients;
        double lo;
        double hi;
        std::vector<double> expanded;  // monomial coefficients of P(t)(1−t²)³
    };
    /// Piecewise linear through (nodes[0], 0), (nodes[i], 1) for interior i, (nodes.back(), 0).
    struct Hat {
        std::vector<double> nodes;
    };
    /// ψ_n(y)·(1−y²)^{(α−1)/2} where ψ_n is 1 on [−1+2/n, 1−2/n], 0 outside
    /// (−1+1/n, 1−1/n) and linear (slope ±n) in between.
    struct TruncatedGroundState {
        int n;
        double alpha;
    };
    using Kind = std::variant<Zero, SmoothBump, PolyCutoff, Hat, TruncatedGroundState>;

    static TestFunction zero();
    static TestFunction smooth_bump(double center, double width, double order = 1.0);
    static TestFunction poly_cutoff(std::vector<double> coefficients, double lo, double hi);
    static TestFunction hat(std::vector<double> nodes);
    static TestFunction truncated_ground_state(int n, double alpha);

    double value(double x) const;
    double operator()(double x) const { return value(x); }
    double derivative(double x) const;
    double second_derivative(double x) const;

    /// u(x+z) − u(x).
    double increment(double x, double z) const;
    /// u(x+z) + u(x−z) − 2u(x).
    double second_difference(double x, double z) const;

    bool is_zero() const;
    Support support() const;
    /// Points where u is not C²; always contains both support ends.
    std::vector<double> kinks() const;

    /// x ↦ u(shift + scale·x), scale > 0.
    TestFunction pulled_back(double shift, double scale) const;
    /// Pulled back along the increasing affine map (−1, 1) → (a, b).
    TestFunction transported_to_unit(double a, double b) const;

    const Kind& kind() const { return kind_; }
    std::string describe() const;

private:
    explicit TestFunction(Kind kind) : kind_(std::move(kind)) {}

    double to_base(double x) const { return shift_ + scale_ * x; }

    Kind kind_;
    double shift_ = 0.0;
    double scale_ = 1.0;
};

}  // namespace fhardy
