#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

namespace fhardy {

/// Tolerances and grading policy for every singular integral in the library.
struct QuadConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    int max_subdivisions = 2000;
    /// Upper bound on the half-width of the symmetric window around a PV point;
    /// also the first excision radius of the excise-and-extrapolate route.
    double pv_excision_start = 0.1;
    /// Number of halvings of the excision radius in the extrapolation route.
    int pv_richardson_levels = 6;
    /// Minimum power m of the graded substitution s = h·t^m at singular endpoints.
    double grading_exponent = 2.0;

    /// Throws DomainError when a field is out of range.
    void validate() const;

    /// Copy with both tolerances multiplied by `factor`, used for inner integrals.
    QuadConfig tightened(double factor) const {
        QuadConfig c = *this;
        c.rel_tol *= factor;
        c.abs_tol *= factor;
        return c;
    }

    double tolerance_for(double value) const { return std::max(abs_tol, rel_tol * std::abs(value)); }
};

struct PVResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions_used = 0;
};

namespace quad {

/// n-point Gauss–Legendre rule on [−1, 1]; computed once per n and cached.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

/// Integrand sample carrying an auxiliary quantity that is integrated with the
/// same rule but does not take part in error control (e.g. inner error estimates).
struct Sample {
    double value;
    double aux;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    /// Integral of the auxiliary channel, zero for plain integrands.
    double aux = 0.0;
    int subdivisions = 0;
    bool converged = true;

    PVResult as_pv() const { return {value, error + aux, subdivisions}; }
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 abscissae).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
Sample call(F& f, double x) {
    if constexpr (std::is_same_v<std::invoke_result_t<F&, double>, Sample>) {
        return f(x);
    } else {
        return {static_cast<double>(f(x)), 0.0};
    }
}

struct Panel {
    double a, b, value, error, aux;
};

template <class F>
Panel gauss_kronrod(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Sample fc = call(f, center);
    double kronrod = fc.value * kWgk[7];
    double gauss = fc.value * kWg[3];
    double aux = fc.aux * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const Sample f1 = call(f, center - dx);
        const Sample f2 = call(f, center + dx);
        kronrod += kWgk[j] * (f1.value + f2.value);
        aux += kWgk[j] * (f1.aux + f2.aux);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1.value + f2.value);
    }
    kronrod *= half;
    gauss *= half;
    aux *= half;
    double err = std::abs(kronrod - gauss);
    if (!std::isfinite(kronrod)) err = HUGE_VAL;
    return {a, b, kronrod, err, aux};
}

}  // namespace detail

/// Globally adaptive Gauss–Kronrod (7/15) quadrature on [a, b].
///
/// Interior breakpoints (kinks of the integrand) become mandatory panel
/// boundaries. The panel with the largest error is bisected until the summed
/// Kronrod–Gauss discrepancy falls below cfg.tolerance_for(value) or
/// cfg.max_subdivisions panels exist; `converged` records which happened.
/// Summation order depends only on the inputs, so results are reproducible.
template <class F>
Result integrate(F&& f, double a, double b, const QuadConfig& cfg,
                 std::span<const double> breakpoints = {}) {
    Result res;
    if (!(b > a)) return res;

    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<detail::Panel> panels;
    panels.reserve(static_cast<std::size_t>(cfg.max_subdivisions) + cuts.size());
    auto by_error = [&panels](std::size_t i, std::size_t j) { return panels[i].error < panels[j].error; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)> queue(by_error);

    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        panels.push_back(detail::gauss_kronrod(f, cuts[i], cuts[i + 1]));
        total += panels.back().value;
        total_err += panels.back().error;
        queue.push(panels.size() - 1);
    }

    double frozen_err = 0.0;  // error of panels too narrow to split further
    while (total_err + frozen_err > cfg.tolerance_for(total) && !queue.empty() &&
           static_cast<int>(panels.size()) < cfg.max_subdivisions) {
        const std::size_t worst = queue.top();
        queue.pop();
        const detail::Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b) || (p.b - p.a) <= 1e-14 * std::max(std::abs(p.a), std::abs(p.b))) {
            total_err -= p.error;
            frozen_err += p.error;
            continue;
        }
        detail::Panel left = detail::gauss_kronrod(f, p.a, mid);
        detail::Panel right = detail::gauss_kronrod(f, mid, p.b);
        total += left.value + right.value - p.value;
        total_err += left.error + right.error - p.error;
        panels[worst] = left;
        panels.push_back(right);
        queue.push(worst);
        queue.push(panels.size() - 1);
    }

    // Re-sum in panel order so the reported value does not carry the
    // update history's rounding.
    std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    res.value = 0.0;
    res.error = 0.0;
    res.aux = 0.0;
    for (const auto& p : panels) {
        res.value += p.value;
        res.error += p.error;
        res.aux += p.aux;
    }
    res.subdivisions = static_cast<int>(panels.size());
    res.converged = res.error <= cfg.tolerance_for(res.value);
    return res;
}

/// Power m of the substitution s = h t^m that turns s^exponent into a
/// bounded-derivative integrand in t.
inline double graded_power(double exponent, const QuadConfig& cfg) {
    if (exponent >= 1.0) return std::max(1.0, cfg.grading_exponent);
    return std::max(cfg.grading_exponent, 2.0 / (1.0 + exponent));
}

/// ∫_0^h g(s) ds for g(s) ~ s^exponent (exponent > −1) as s → 0⁺.
///
/// The integrand is evaluated as a function of the offset s from the singular
/// end, so callers can form 1−y, y−x, ... without cancellation. Breakpoints
/// are given in s.
template <class G>
Result integrate_graded(G&& g, double h, double exponent, const QuadConfig& cfg,
                        std::span<const double> breakpoints = {}) {
    if (!(h > 0.0)) return {};
    const double m = graded_power(exponent, cfg);
    std::vector<double> tcuts;
    for (double s : breakpoints)
        if (s > 0.0 && s < h) tcuts.push_back(std::pow(s / h, 1.0 / m));
    const double floor = h * 1e-280;
    auto transformed = [&](double t) -> Sample {
        const double s = h * std::pow(t, m);
        if (s <= floor) return {0.0, 0.0};
        const double jac = m * h * std::pow(t, m - 1.0);
        const Sample v = detail::call(g, s);
        return {v.value * jac, v.aux * jac};
    };
    return integrate(transformed, 0.0, 1.0, cfg, tcuts);
}

/// ∫_a^b g(s) ds after the logarithmic substitution s = a·e^τ (0 < a < b),
/// for integrands that decay like a power of s across many scales.
template <class G>
Result integrate_log(G&& g, double a, double b, const QuadConfig& cfg,
                     std::span<const double> breakpoints = {}) {
    if (!(b > a) || !(a > 0.0)) return {};
    std::vector<double> cuts;
    for (double s : breakpoints)
        if (s > a && s < b) cuts.push_back(std::log(s / a));
    auto transformed = [&](double tau) -> Sample {
        const double s = a * std::exp(tau);
        const Sample v = detail::call(g, s);
        return {v.value * s, v.aux * s};
    };
    return integrate(transformed, 0.0, std::log(b / a), cfg, cuts);
}

}  // namespace quad
}  // namespace fhardy
