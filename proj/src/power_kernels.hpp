#pragma once

// Cancellation-free building blocks for differences of (1 − y²)^p.

#include <cmath>

namespace fhardy::detail {

/// [(1−c)^p + (1+c)^p − 2] / c², |c| < 1. Even in c; finite at c = 0.
inline double sym_power_defect_over_c2(double p, double c) {
    const double c2 = c * c;
    if (std::abs(c) < 0.3) {
        // 2 Σ_{j≥1} C(p, 2j) c^{2j−2}
        double binom = p * (p - 1.0) / 2.0;  // C(p, 2)
        double sum = 0.0;
        double ck = 1.0;
        for (int j = 1; j < 400; ++j) {
            const double term = binom * ck;
            sum += term;
            if (term == 0.0 || std::abs(term) <= 1e-18 * std::abs(sum)) break;
            const int m = 2 * j;
            binom *= (p - m) / (m + 1.0) * (p - m - 1.0) / (m + 2.0);
            ck *= c2;
        }
        return 2.0 * sum;
    }
    const double d = std::expm1(p * std::log1p(-c)) + std::expm1(p * std::log1p(c));
    return d / c2;
}

inline double sym_power_defect(double p, double c) { return c * c * sym_power_defect_over_c2(p, c); }

/// (1−(x+z)²)^p − (1−x²)^p with x, x+z ∈ (−1, 1).
inline double power_increment(double p, double x, double z) {
    const double base = (1.0 - x) * (1.0 + x);
    const double rel = -(2.0 * x + z) * z / base;
    return std::pow(base, p) * std::expm1(p * std::log1p(rel));
}

/// (1−(x+z)²)^p + (1−(x−z)²)^p − 2(1−x²)^p with x ± z ∈ (−1, 1).
///
/// With C = 1−x², a = 2xz/C, q = 1 − z²/C the sum is
/// C^p [ q^p((1−a/q)^p + (1+a/q)^p − 2) + 2(q^p − 1) ].
inline double power_second_difference(double p, double x, double z) {
    const double base = (1.0 - x) * (1.0 + x);
    const double a = 2.0 * x * z / base;
    const double b = z * z / base;
    const double q = 1.0 - b;
    const double qp_minus_1 = std::expm1(p * std::log1p(-b));
    const double bracket = (1.0 + qp_minus_1) * sym_power_defect(p, a / q) + 2.0 * qp_minus_1;
    return std::pow(base, p) * bracket;
}

}  // namespace fhardy::detail
