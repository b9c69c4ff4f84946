#pragma once

namespace fhardy {

/// Exponent of the kernel |x−y|^{−n−α}; always in the open interval (0, 2).
class Alpha {
public:
    /// Throws DomainError unless 0 < value < 2.
    explicit Alpha(double value);

    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

    /// True on (1, 2), the range where the remainder terms are positive.
    bool in_hardy_range() const noexcept { return value_ > 1.0 && value_ < 2.0; }

private:
    double value_;
};

/// Throws DomainError naming `what` unless alpha ∈ (1, 2).
void require_hardy_range(Alpha alpha, const char* what);

/// ln Γ(x) for x > 0.
///
/// Lanczos-type rational approximation away from the zeros of ln Γ; on
/// |x−1| ≤ 0.3 and |x−2| ≤ 0.3 the Taylor series of ln Γ(1+z) in ζ(k) is
/// used instead so that the result keeps its relative accuracy where ln Γ
/// vanishes.
double log_gamma(double x);

double log_beta(double a, double b);
double beta(double a, double b);

/// B((1+α)/2, (2−α)/2), the beta value that appears in every sharp constant.
double hardy_beta(Alpha alpha);

/// κ_{n,α} = π^{(n−1)/2} Γ((1+α)/2)/Γ((n+α)/2) · (B((1+α)/2,(2−α)/2) − 2^α)/(α 2^α).
/// Vanishes at α = 1 and is positive elsewhere on (0, 2).
double kappa(int n, Alpha alpha);

/// Sharp constant of the killed (full-line) form: B((1+α)/2,(2−α)/2)/(α 2^α).
double killed_constant(Alpha alpha);

/// φ(x) = 2^α − (1+x)^α − (1−x)^α on [−1, 1].
double phi(double x, Alpha alpha);

/// (4 − 2^{3−α})/(α(b−a)); requires 1 < α < 2 and a < b.
double remainder_coeff_1d(Alpha alpha, double a, double b);

/// π^{(n−1)/2} Γ(α/2)(4 − 2^{3−α}) / (α Γ((n+α−1)/2)) / diam; requires 1 < α < 2.
double remainder_coeff_nd(int n, Alpha alpha, double diam);

struct ConstantReport {
    int n = 1;
    double kappa_n_alpha = 0.0;
    double beta_term = 0.0;
    /// remainder_coeff_nd(n, α, 1); zero outside (1, 2) where it is undefined.
    double remainder_coeff = 0.0;
};

ConstantReport constants(int n, Alpha alpha);

}  // namespace fhardy
