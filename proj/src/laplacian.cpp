#include "fhardy/laplacian.hpp"

#include <cmath>
#include <string>

#include "fhardy/errors.hpp"
#include "power_kernels.hpp"

namespace fhardy {

PowerFunction::PowerFunction(double p) : p_(p) {
    if (!(p > -1.0)) throw DomainError("power function exponent must satisfy p > -1");
}

double PowerFunction::value(double y) const { return std::pow((1.0 - y) * (1.0 + y), p_); }

double PowerFunction::second_difference(double x, double z) const {
    return detail::power_second_difference(p_, x, z);
}

double PowerFunction::edge_value(double s) const { return std::pow(s * (2.0 - s), p_); }

bool PowerFunction::edge_singular() const { return !(p_ >= 0.0 && p_ == std::floor(p_)); }

namespace {

// Uniform view of the two kinds of function L is applied to.
struct TestProfile {
    const TestFunction& f;
    double value(double y) const { return f.value(y); }
    double second_difference(double x, double z) const { return f.second_difference(x, z); }
    std::vector<double> kinks() const { return f.kinks(); }
    bool edge_singular() const { return false; }
    double edge_exponent() const { return 1.0; }
    double edge_value(double s, double side) const { return f.value(side * (1.0 - s)); }
};

struct PowerProfile {
    const PowerFunction& f;
    double value(double y) const { return f.value(y); }
    double second_difference(double x, double z) const { return f.second_difference(x, z); }
    std::vector<double> kinks() const { return {}; }
    bool edge_singular() const { return f.edge_singular(); }
    double edge_exponent() const { return f.exponent(); }
    double edge_value(double s, double) const { return f.edge_value(s); }
};

void require_interior(double x, const char* what) {
    if (!(std::abs(x) < 1.0)) throw DomainError(std::string(what) + " requires |x| < 1");
}

struct Remainders {
    quad::Result left, right;
};

// ∫ over (−1, x−δ) ∪ (x+δ, 1) of (f(y) − f(x)) |x−y|^{−1−α} dy.
template <class P>
Remainders outer_pieces(const P& f, double x, double delta, double alpha, const QuadConfig& cfg) {
    const double fx = f.value(x);
    const double lo = x - delta, hi = x + delta;
    const auto kinks = f.kinks();
    Remainders r;
    if (f.edge_singular()) {
        std::vector<double> sr, sl;
        for (double k : kinks) {
            if (k > hi && k < 1.0) sr.push_back(1.0 - k);
            if (k < lo && k > -1.0) sl.push_back(1.0 + k);
        }
        auto right = [&](double s) { return (f.edge_value(s, 1.0) - fx) * std::pow(1.0 - s - x, -1.0 - alpha); };
        auto left = [&](double s) { return (f.edge_value(s, -1.0) - fx) * std::pow(x + 1.0 - s, -1.0 - alpha); };
        r.right = quad::integrate_graded(right, 1.0 - hi, f.edge_exponent(), cfg, sr);
        r.left = quad::integrate_graded(left, 1.0 + lo, f.edge_exponent(), cfg, sl);
    } else {
        auto right = [&](double y) { return (f.value(y) - fx) * std::pow(y - x, -1.0 - alpha); };
        auto left = [&](double y) { return (f.value(y) - fx) * std::pow(x - y, -1.0 - alpha); };
        r.right = quad::integrate(right, hi, 1.0, cfg, kinks);
        r.left = quad::integrate(left, -1.0, lo, cfg, kinks);
    }
    return r;
}

template <class P>
PVResult pv_symmetric(const P& f, double x, Alpha alpha_in, const QuadConfig& cfg) {
    cfg.validate();
    require_interior(x, "regional_laplacian_pv");
    const double alpha = alpha_in.value();
    const double delta = 0.5 * (1.0 - std::abs(x));

    std::vector<double> zbreaks;
    for (double k : f.kinks()) {
        const double d = std::abs(k - x);
        if (d > 0.0 && d < delta) zbreaks.push_back(d);
    }
    // (S/z²)·z^{1−α} keeps tiny z finite: S is O(z²).
    auto window = [&](double z) { return (f.second_difference(x, z) / z) / z * std::pow(z, 1.0 - alpha); };
    const QuadConfig piece = cfg.tightened(0.25);
    const auto near = quad::integrate_graded(window, delta, 1.0 - alpha, piece, zbreaks);
    const auto far = outer_pieces(f, x, delta, alpha, piece);

    PVResult out;
    out.value = near.value + far.left.value + far.right.value;
    out.error_estimate = near.error + far.left.error + far.right.error;
    out.subdivisions_used = near.subdivisions + far.left.subdivisions + far.right.subdivisions;
    if (!(near.converged && far.left.converged && far.right.converged))
        throw NonConvergenceError("regional_laplacian_pv", out.error_estimate, cfg.tolerance_for(out.value));
    return out;
}

template <class P>
PVResult pv_excised(const P& f, double x, Alpha alpha_in, const QuadConfig& cfg) {
    cfg.validate();
    require_interior(x, "regional_laplacian_excised");
    const double alpha = alpha_in.value();
    const double delta = 0.5 * (1.0 - std::abs(x));
    const double eps0 = std::min(cfg.pv_excision_start, delta);
    const int levels = cfg.pv_richardson_levels;

    const auto far = outer_pieces(f, x, delta, alpha, cfg);
    const double fx = f.value(x);
    std::vector<double> zbreaks;
    for (double k : f.kinks()) zbreaks.push_back(std::abs(k - x));

    auto truncated = [&](double z) {
        return ((f.value(x + z) - fx) + (f.value(x - z) - fx)) * std::pow(z, -1.0 - alpha);
    };

    // table[k][j]: j-th Richardson column at excision radius eps0 / 2^k
    std::vector<std::vector<double>> table(levels);
    double err = far.left.error + far.right.error;
    int subdivisions = far.left.subdivisions + far.right.subdivisions;
    for (int k = 0; k < levels; ++k) {
        const double eps = std::ldexp(eps0, -k);
        const auto r = quad::integrate_log(truncated, eps, delta, cfg, zbreaks);
        err += r.error;
        subdivisions += r.subdivisions;
        table[k].push_back(r.value + far.left.value + far.right.value);
        for (int j = 1; j <= k; ++j) {
            const double ratio = std::pow(2.0, 2.0 * j - alpha);
            table[k].push_back((ratio * table[k][j - 1] - table[k - 1][j - 1]) / (ratio - 1.0));
        }
    }
    PVResult out;
    const auto& last = table.back();
    out.value = last.back();
    if (levels >= 2) {
        err += std::abs(last.back() - last[last.size() - 2]);
        err += std::abs(last.back() - table[levels - 2].back());
    }
    out.error_estimate = err;
    out.subdivisions_used = subdivisions;
    return out;
}

}  // namespace

PVResult regional_laplacian_pv(const TestFunction& f, double x, Alpha alpha, const QuadConfig& cfg) {
    return pv_symmetric(TestProfile{f}, x, alpha, cfg);
}

PVResult regional_laplacian_pv(const PowerFunction& f, double x, Alpha alpha, const QuadConfig& cfg) {
    return pv_symmetric(PowerProfile{f}, x, alpha, cfg);
}

PVResult regional_laplacian_excised(const TestFunction& f, double x, Alpha alpha, const QuadConfig& cfg) {
    return pv_excised(TestProfile{f}, x, alpha, cfg);
}

PVResult regional_laplacian_excised(const PowerFunction& f, double x, Alpha alpha, const QuadConfig& cfg) {
    return pv_excised(PowerProfile{f}, x, alpha, cfg);
}

double lap_power_at_zero(double p, Alpha alpha) {
    if (!(p > -1.0)) throw DomainError("lap_power_at_zero requires p > -1");
    const double a = alpha.value();
    return 2.0 / a * (1.0 - (p + 1.0 - a / 2.0) * beta(p + 1.0, 1.0 - a / 2.0));
}

PVResult power_pv_integral(double p, double x, Alpha alpha_in, const QuadConfig& cfg) {
    cfg.validate();
    if (!(p > -1.0)) throw DomainError("power_pv_integral requires p > -1");
    require_interior(x, "power_pv_integral");
    if (x == 0.0) return {};
    const double alpha = alpha_in.value();
    const double k = alpha - 1.0 - 2.0 * p;

    // w ∈ (0, 1/2]: numerator is O(w²), integrand ~ w^{1−α}
    auto inner = [&](double w) {
        return x * x * detail::sym_power_defect_over_c2(k, w * x) * std::pow(w, 1.0 - alpha) *
               std::pow((1.0 - w) * (1.0 + w), p);
    };
    // w = 1 − s, s ∈ (0, 1/2]: integrand ~ s^p
    auto outer = [&](double s) {
        const double w = 1.0 - s;
        return detail::sym_power_defect(k, w * x) * std::pow(s * (2.0 - s), p) * std::pow(w, -1.0 - alpha);
    };
    const QuadConfig piece = cfg.tightened(0.25);
    const auto left = quad::integrate_graded(inner, 0.5, 1.0 - alpha, piece);
    const auto right = quad::integrate_graded(outer, 0.5, p, piece);

    PVResult out{left.value + right.value, left.error + right.error, left.subdivisions + right.subdivisions};
    if (!(left.converged && right.converged))
        throw NonConvergenceError("power_pv_integral", out.error_estimate, cfg.tolerance_for(out.value));
    return out;
}

PVResult laplacian_power_closed_with_error(double p, double x, Alpha alpha_in, const QuadConfig& cfg) {
    if (!(p > -1.0)) throw DomainError("laplacian_power_closed requires p > -1");
    require_interior(x, "laplacian_power_closed");
    const double a = alpha_in.value();
    const double b = beta(p + 1.0, 1.0 - a / 2.0);
    constexpr double same = 1e-12;

    PVResult integral;
    if (std::abs(p - (a - 1.0) / 2.0) <= same || std::abs(p - (a - 2.0) / 2.0) <= same) {
        integral = {};
    } else if (a > 1.0 && std::abs(p - (a - 3.0) / 2.0) <= same) {
        integral = {x * x * b, 0.0, 0};
    } else {
        integral = power_pv_integral(p, x, alpha_in, cfg);
    }
    const double bracket =
        std::pow(1.0 - x, a) + std::pow(1.0 + x, a) - (2.0 * p + 2.0 - a) * b + a * integral.value;
    const double prefactor = std::pow((1.0 - x) * (1.0 + x), p - a) / a;
    return {prefactor * bracket, std::abs(prefactor) * a * integral.error_estimate, integral.subdivisions_used};
}

double laplacian_power_closed(double p, double x, Alpha alpha, const QuadConfig& cfg) {
    return laplacian_power_closed_with_error(p, x, alpha, cfg).value;
}

double ground_state_potential(double x, Alpha alpha) {
    require_interior(x, "ground_state_potential");
    const double a = alpha.value();
    const double bracket = hardy_beta(alpha) - std::pow(1.0 + x, a) - std::pow(1.0 - x, a);
    return std::pow((1.0 - x) * (1.0 + x), -a) * bracket / a;
}

}  // namespace fhardy
