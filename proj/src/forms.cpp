#include "fhardy/forms.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fhardy/errors.hpp"
#include "power_kernels.hpp"

namespace fhardy {

void Interval::validate() const {
    if (!(a < b)) throw DomainError("interval requires a < b");
}

Weight Weight::inv_one_minus_x2_pow(double beta) { return Weight(Kind::InvOneMinusX2Pow, beta, {}); }

Weight Weight::hardy_weight(Alpha alpha, Interval iv) {
    iv.validate();
    return Weight(Kind::Hardy, alpha.value(), iv);
}

Weight Weight::phi_weight(Alpha alpha) { return Weight(Kind::Phi, alpha.value(), {}); }

double Weight::operator()(double x) const {
    switch (kind_) {
        case Kind::InvOneMinusX2Pow:
            return std::pow((1.0 - x) * (1.0 + x), -exponent_);
        case Kind::Hardy:
            return std::pow((iv_.b - iv_.a) / ((x - iv_.a) * (iv_.b - x)), exponent_);
        case Kind::Phi:
            return phi(x, Alpha(exponent_)) * std::pow((1.0 - x) * (1.0 + x), -exponent_);
    }
    return 0.0;
}

namespace {

void require_inside(const TestFunction& u, Interval iv, const char* what) {
    iv.validate();
    const Support s = u.support();
    if (!(s.lo > iv.a && s.hi < iv.b))
        throw DomainError(std::string(what) + " requires supp u strictly inside the interval");
}

// Outer integrand context: x together with its exact distances to the ends of S.
struct Point {
    double x, d0, d1;
};

// ∫_S F(x) dx with F sampled as quad::Sample{value, error of inner integrals}.
// S is split at its midpoint and each half is graded toward its outer end.
template <class F>
PVResult support_integral(const TestFunction& u, F&& f, const QuadConfig& cfg, bool& ok, const char* what) {
    const Support s = u.support();
    const double len = s.length();
    const double half = 0.5 * len;
    std::vector<double> left_breaks, right_breaks;
    for (double k : u.kinks()) {
        if (k > s.lo && k < s.hi) {
            left_breaks.push_back(k - s.lo);
            right_breaks.push_back(s.hi - k);
        }
    }
    const QuadConfig outer = cfg.tightened(0.5);
    auto from_left = [&](double t) { return f(Point{s.lo + t, t, len - t}); };
    auto from_right = [&](double t) { return f(Point{s.hi - t, len - t, t}); };
    const auto l = quad::integrate_graded(from_left, half, 1.0, outer, left_breaks);
    const auto r = quad::integrate_graded(from_right, half, 1.0, outer, right_breaks);
    PVResult out{l.value + r.value, l.error + r.error + std::abs(l.aux) + std::abs(r.aux),
                 l.subdivisions + r.subdivisions};
    if (!(ok && l.converged && r.converged))
        throw NonConvergenceError(what, out.error_estimate, cfg.tolerance_for(out.value));
    return out;
}

// ∫_0^{d1} Δ(x, z)² z^{−1−α} dz with Δ = u(x+z) − u(x).
quad::Result inner_energy(const TestFunction& u, const Point& p, double alpha, const QuadConfig& cfg) {
    std::vector<double> zbreaks;
    for (double k : u.kinks())
        if (k > p.x) zbreaks.push_back(k - p.x);
    auto g = [&](double z) {
        const double q = u.increment(p.x, z) / z;
        return q * q * std::pow(z, 1.0 - alpha);
    };
    return quad::integrate_graded(g, p.d1, 1.0 - alpha, cfg, zbreaks);
}

// ∫_c^1 w(y) (y − x)^{−1−α} dy, c = x + e, w = (1 − y²)^β.
quad::Result exterior_w(double x, double e, double beta, double alpha, const QuadConfig& cfg) {
    const double c = x + e;
    const double m = 0.5 * (c + 1.0);
    // y = c + e(e^τ − 1) resolves the (y − x)^{−1−α} peak of width e
    auto near = [&](double tau) {
        const double y = c + e * std::expm1(tau);
        return std::pow((1.0 - y) * (1.0 + y), beta) * std::pow(e, -alpha) * std::exp(-alpha * tau);
    };
    // y = 1 − r toward the endpoint singularity of w
    auto far = [&](double r) { return std::pow(r * (2.0 - r), beta) * std::pow((1.0 - x) - r, -1.0 - alpha); };
    const auto a = quad::integrate(near, 0.0, std::log1p((m - c) / e), cfg);
    const auto b = quad::integrate_graded(far, 1.0 - m, beta, cfg);
    quad::Result out;
    out.value = a.value + b.value;
    out.error = a.error + b.error;
    out.subdivisions = a.subdivisions + b.subdivisions;
    out.converged = a.converged && b.converged;
    return out;
}

// Energy over D × D for D = (A, B) ⊇ S; A, B infinite for the full line.
PVResult support_energy(const TestFunction& u, double A, double B, Alpha alpha_in, const QuadConfig& cfg,
                        const char* what) {
    cfg.validate();
    if (u.is_zero()) return {};
    const double alpha = alpha_in.value();
    const QuadConfig inner_cfg = cfg.tightened(0.1);
    bool ok = true;
    auto f = [&](const Point& p) -> quad::Sample {
        const auto in = inner_energy(u, p, alpha, inner_cfg);
        ok = ok && in.converged;
        const double ux = u.value(p.x);
        double tail = std::pow(p.d1, -alpha) + std::pow(p.d0, -alpha);
        if (std::isfinite(B)) tail -= std::pow(B - p.x, -alpha);
        if (std::isfinite(A)) tail -= std::pow(p.x - A, -alpha);
        return {in.value + ux * ux * tail / alpha, in.error};
    };
    return support_integral(u, f, cfg, ok, what);
}

}  // namespace

PVResult energy_regional(const TestFunction& u, Interval iv, Alpha alpha, const QuadConfig& cfg) {
    if (u.is_zero()) {
        iv.validate();
        return {};
    }
    require_inside(u, iv, "energy_regional");
    return support_energy(u, iv.a, iv.b, alpha, cfg, "energy_regional");
}

PVResult energy_full_line(const TestFunction& u, Alpha alpha, const QuadConfig& cfg) {
    if (u.is_zero()) return {};
    require_inside(u, {}, "energy_full_line");
    return support_energy(u, -HUGE_VAL, HUGE_VAL, alpha, cfg, "energy_full_line");
}

PVResult energy_ground_state(const TestFunction& u, Alpha alpha_in, const QuadConfig& cfg) {
    cfg.validate();
    if (u.is_zero()) return {};
    require_inside(u, {}, "energy_ground_state");
    const double alpha = alpha_in.value();
    const double beta = (alpha - 1.0) / 2.0;
    const QuadConfig inner_cfg = cfg.tightened(0.1);
    auto w = [beta](double y) { return std::pow((1.0 - y) * (1.0 + y), beta); };

    bool ok = true;
    auto f = [&](const Point& p) -> quad::Sample {
        const double wx = w(p.x);
        const double ux = u.value(p.x);
        const double vx = ux / wx;
        std::vector<double> zbreaks;
        for (double k : u.kinks())
            if (k > p.x) zbreaks.push_back(k - p.x);
        // (Δv)² w(x) w(x+z) with Δv = (Δu − v(x)Δw)/w(x+z)
        auto g = [&](double z) {
            const double du = u.increment(p.x, z);
            const double dw = detail::power_increment(beta, p.x, z);
            const double q = (du - vx * dw) / z;
            return q * q * std::pow(z, 1.0 - alpha) * wx / w(p.x + z);
        };
        const auto in = quad::integrate_graded(g, p.d1, 1.0 - alpha, inner_cfg, zbreaks);
        ok = ok && in.converged;
        double value = in.value, error = in.error;
        if (ux != 0.0) {
            const auto kr = exterior_w(p.x, p.d1, beta, alpha, inner_cfg);
            const auto kl = exterior_w(-p.x, p.d0, beta, alpha, inner_cfg);
            ok = ok && kr.converged && kl.converged;
            const double c = ux * ux / wx;
            value += c * (kr.value + kl.value);
            error += c * (kr.error + kl.error);
        }
        return {value, error};
    };
    return support_integral(u, f, cfg, ok, "energy_ground_state");
}

PVResult killing_term(const TestFunction& u, Alpha alpha_in, const QuadConfig& cfg) {
    cfg.validate();
    if (u.is_zero()) return {};
    require_inside(u, {}, "killing_term");
    const double alpha = alpha_in.value();
    const Support s = u.support();
    auto f = [&](double x) {
        const double ux = u.value(x);
        return ux * ux * (std::pow(1.0 + x, -alpha) + std::pow(1.0 - x, -alpha)) / alpha;
    };
    const auto r = quad::integrate(f, s.lo, s.hi, cfg, u.kinks());
    if (!r.converged) throw NonConvergenceError("killing_term", r.error, cfg.tolerance_for(r.value));
    return {r.value, r.error, r.subdivisions};
}

PVResult weighted_l2(const TestFunction& u, const Weight& weight, const QuadConfig& cfg) {
    cfg.validate();
    if (u.is_zero()) return {};
    require_inside(u, weight.domain(), "weighted_l2");
    const Support s = u.support();
    auto f = [&](double x) {
        const double ux = u.value(x);
        return ux == 0.0 ? 0.0 : ux * ux * weight(x);
    };
    const auto r = quad::integrate(f, s.lo, s.hi, cfg, u.kinks());
    if (!r.converged) throw NonConvergenceError("weighted_l2", r.error, cfg.tolerance_for(r.value));
    return {r.value, r.error, r.subdivisions};
}

// ---- tensor-panel energy ----------------------------------------------------

namespace {

constexpr int kTensorOrder = 16;
constexpr int kGeometricLevels = 12;

// ∫_0^h r^e F(r) dr, e > −1, F smooth: halving panels toward 0 and, on the
// last one, r = ε s^{1/(1+e)} which absorbs the power exactly.
template <class F>
double power_weighted(double h, double e, F&& f) {
    const auto& g = quad::gauss_legendre(kTensorOrder);
    double sum = 0.0;
    double hi = h;
    for (int level = 0; level < kGeometricLevels; ++level) {
        const double lo = 0.5 * hi;
        for (int i = 0; i < kTensorOrder; ++i) {
            const double r = lo + 0.5 * (hi - lo) * (g.nodes[i] + 1.0);
            sum += 0.5 * (hi - lo) * g.weights[i] * std::pow(r, e) * f(r);
        }
        hi = lo;
    }
    const double p = 1.0 / (1.0 + e);
    for (int i = 0; i < kTensorOrder; ++i) {
        const double s = 0.5 * (g.nodes[i] + 1.0);
        sum += 0.5 * g.weights[i] * std::pow(hi, 1.0 + e) * p * f(hi * std::pow(s, p));
    }
    return sum;
}

// ∬_{x<y, x,y ∈ panel} Δ² |x−y|^{−1−α}: r = y − x toward 0, x by Gauss.
double diagonal_panel(const TestFunction& u, double c0, double c1, double alpha) {
    const auto& g = quad::gauss_legendre(kTensorOrder);
    const double h = c1 - c0;
    auto f = [&](double r) {
        if (r <= 0.0) return 0.0;
        const double len = h - r;
        double inner = 0.0;
        for (int j = 0; j < kTensorOrder; ++j) {
            const double x = c0 + 0.5 * len * (g.nodes[j] + 1.0);
            const double q = u.increment(x, r) / r;
            inner += g.weights[j] * q * q;
        }
        return 0.5 * len * inner;
    };
    return power_weighted(h, 1.0 - alpha, f);
}

// Panels [c − h1, c] × [c, c + h2] in ρ = a + b, t = a/ρ with a = c − x, b = y − c.
double adjacent_panels(const TestFunction& u, double c, double h1, double h2, double alpha) {
    const auto& g = quad::gauss_legendre(kTensorOrder);
    const double tstar = h1 / (h1 + h2);
    double sum = 0.0;
    for (int side = 0; side < 2; ++side) {
        const double t0 = side == 0 ? 0.0 : tstar;
        const double t1 = side == 0 ? tstar : 1.0;
        for (int i = 0; i < kTensorOrder; ++i) {
            const double t = t0 + 0.5 * (t1 - t0) * (g.nodes[i] + 1.0);
            const double wt = 0.5 * (t1 - t0) * g.weights[i];
            const double rmax = side == 0 ? h2 / (1.0 - t) : h1 / t;
            auto f = [&](double rho) {
                if (rho <= 0.0) return 0.0;
                const double q = u.increment(c - rho * t, rho) / rho;
                return q * q;
            };
            sum += wt * power_weighted(rmax, 2.0 - alpha, f);
        }
    }
    return sum;
}

double separated_panels(const TestFunction& u, double a0, double a1, double b0, double b1, double alpha) {
    const auto& g = quad::gauss_legendre(kTensorOrder);
    double sum = 0.0;
    for (int i = 0; i < kTensorOrder; ++i) {
        const double x = a0 + 0.5 * (a1 - a0) * (g.nodes[i] + 1.0);
        double inner = 0.0;
        for (int j = 0; j < kTensorOrder; ++j) {
            const double y = b0 + 0.5 * (b1 - b0) * (g.nodes[j] + 1.0);
            const double d = u.increment(x, y - x);
            inner += g.weights[j] * d * d * std::pow(y - x, -1.0 - alpha);
        }
        sum += g.weights[i] * inner;
    }
    return 0.25 * (a1 - a0) * (b1 - b0) * sum;
}

double tensor_double_part(const TestFunction& u, const std::vector<double>& cuts, double alpha) {
    const std::size_t n = cuts.size() - 1;
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        total += diagonal_panel(u, cuts[k], cuts[k + 1], alpha);
        if (k + 1 < n) total += adjacent_panels(u, cuts[k + 1], cuts[k + 1] - cuts[k], cuts[k + 2] - cuts[k + 1], alpha);
        for (std::size_t l = k + 2; l < n; ++l)
            total += separated_panels(u, cuts[k], cuts[k + 1], cuts[l], cuts[l + 1], alpha);
    }
    return total;
}

}  // namespace

PVResult energy_regional_tensor(const TestFunction& u, Interval iv, Alpha alpha_in, const QuadConfig& cfg) {
    cfg.validate();
    if (u.is_zero()) {
        iv.validate();
        return {};
    }
    require_inside(u, iv, "energy_regional_tensor");
    const double alpha = alpha_in.value();
    const Support s = u.support();

    // Exterior pairs: one point in S, the other in I \ S, kernel integrated in closed form.
    auto tail = [&](double x) {
        const double ux = u.value(x);
        if (ux == 0.0) return 0.0;
        const double t = std::pow(s.hi - x, -alpha) - std::pow(iv.b - x, -alpha) + std::pow(x - s.lo, -alpha) -
                         std::pow(x - iv.a, -alpha);
        return ux * ux * t / alpha;
    };
    const auto ext = quad::integrate(tail, s.lo, s.hi, cfg.tightened(0.5), u.kinks());

    std::vector<double> base;
    for (double k : u.kinks())
        if (k >= s.lo && k <= s.hi) base.push_back(k);
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());

    double previous = 0.0, current = 0.0, change = HUGE_VAL;
    int pieces = 1, panels = 0;
    for (int level = 0; level < 7; ++level, pieces *= 2) {
        std::vector<double> cuts;
        for (std::size_t i = 0; i + 1 < base.size(); ++i)
            for (int j = 0; j < pieces; ++j) cuts.push_back(base[i] + (base[i + 1] - base[i]) * j / pieces);
        cuts.push_back(base.back());
        panels = static_cast<int>(cuts.size()) - 1;
        current = tensor_double_part(u, cuts, alpha);
        if (level > 0) {
            change = std::abs(current - previous);
            if (change <= 0.1 * cfg.tolerance_for(current)) break;
        }
        previous = current;
    }
    PVResult out{current + ext.value, change + ext.error, panels + ext.subdivisions};
    if (!(ext.converged && change <= cfg.tolerance_for(out.value)))
        throw NonConvergenceError("energy_regional_tensor", out.error_estimate, cfg.tolerance_for(out.value));
    return out;
}

// ---- checkers ---------------------------------------------------------------

FormBreakdown verify_gsr_identity(const TestFunction& u, Alpha alpha, const QuadConfig& cfg) {
    FormBreakdown b;
    if (u.is_zero()) return b;
    const double a = alpha.value();
    const auto e = energy_regional(u, {}, alpha, cfg);
    const auto gs = energy_ground_state(u, alpha, cfg);
    const auto m = weighted_l2(u, Weight::inv_one_minus_x2_pow(a), cfg);
    const auto ph = weighted_l2(u, Weight::phi_weight(alpha), cfg);
    const double k = std::pow(2.0, a) * kappa(1, alpha);
    b.energy = e.value;
    b.gs_term = gs.value;
    b.kappa_term = k * m.value;
    b.phi_term = ph.value / a;
    b.residual = b.energy - b.gs_term - b.kappa_term - b.phi_term;
    b.error_estimate = e.error_estimate + gs.error_estimate + std::abs(k) * m.error_estimate + ph.error_estimate / a;
    return b;
}

HardyCheck hardy_check_1d(const TestFunction& u, Interval iv, Alpha alpha, const QuadConfig& cfg) {
    require_hardy_range(alpha, "hardy_check_1d");
    iv.validate();
    HardyCheck h;
    if (u.is_zero()) {
        h.error_budget = error_budget(0.0);
        return h;
    }
    require_inside(u, iv, "hardy_check_1d");
    const double a = alpha.value();
    const TestFunction v = u.transported_to_unit(iv.a, iv.b);
    const double scale = std::pow(iv.half_length(), 1.0 - a);

    const auto e = energy_regional(v, {}, alpha, cfg);
    const auto main = weighted_l2(v, Weight::hardy_weight(alpha), cfg);
    const auto rem = weighted_l2(v, Weight::hardy_weight(Alpha(a - 1.0)), cfg);
    const double k = kappa(1, alpha);
    const double c = remainder_coeff_1d(alpha, -1.0, 1.0);

    h.lhs = scale * e.value;
    h.rhs_main = scale * k * main.value;
    h.rhs_remainder = scale * c * rem.value;
    h.slack = h.lhs - h.rhs_main - h.rhs_remainder;
    h.error_budget =
        error_budget(scale * (e.error_estimate + k * main.error_estimate + c * rem.error_estimate));
    return h;
}

KilledCheck killed_check(const TestFunction& u, Alpha alpha, const QuadConfig& cfg) {
    KilledCheck k;
    if (u.is_zero()) {
        k.error_budget = error_budget(0.0);
        return k;
    }
    const double a = alpha.value();
    const auto full = energy_full_line(u, alpha, cfg);
    const auto reg = energy_regional(u, {}, alpha, cfg);
    const auto kill = killing_term(u, alpha, cfg);
    const auto gs = energy_ground_state(u, alpha, cfg);
    const auto m = weighted_l2(u, Weight::inv_one_minus_x2_pow(a), cfg);
    const auto hw = weighted_l2(u, Weight::hardy_weight(alpha), cfg);
    const double b_over_a = hardy_beta(alpha) / a;
    const double c = killed_constant(alpha);

    k.full_energy = full.value;
    k.regional_energy = reg.value;
    k.killing_term = kill.value;
    k.gs_term = gs.value;
    k.const_term = b_over_a * m.value;
    k.identity_residual = k.full_energy - k.gs_term - k.const_term;
    k.split_residual = k.full_energy - (k.regional_energy + k.killing_term);
    k.ineq_slack = k.full_energy - c * hw.value;
    k.error_budget = error_budget(full.error_estimate + reg.error_estimate + kill.error_estimate + gs.error_estimate +
                                  b_over_a * m.error_estimate + c * hw.error_estimate);
    return k;
}

PhiGap phi_lower_bound_check(Alpha alpha, int grid_size) {
    require_hardy_range(alpha, "phi_lower_bound_check");
    if (grid_size < 2) throw DomainError("phi_lower_bound_check requires grid_size >= 2");
    const double c = std::pow(2.0, alpha.value()) - 2.0;
    PhiGap best{HUGE_VAL, 0.0};
    for (int i = 0; i < grid_size; ++i) {
        const double x = static_cast<double>(i) / (grid_size - 1);
        const double gap = phi(x, alpha) - c * (1.0 - x) * (1.0 + x);
        if (gap < best.min_gap) best = {gap, x};
    }
    return best;
}

}  // namespace fhardy
