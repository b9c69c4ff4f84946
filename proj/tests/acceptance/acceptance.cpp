#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fhardy/convex.hpp"
#include "fhardy/errors.hpp"
#include "fhardy/forms.hpp"
#include "fhardy/laplacian.hpp"
#include "fhardy/sharpness.hpp"
#include "fhardy/specfun.hpp"

using namespace fhardy;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    // records the first failing case only, so the line stays short
    void fail(const std::string& what) {
        if (pass) detail << "first failure: " << what << "; ";
        pass = false;
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

const double kCoreAlphas[] = {0.5, 1.0, 1.5, 1.9};
const double kXs[] = {0.0, 0.3, -0.3, 0.7, -0.7};

void power_cross_validation(Verdict& v) {
    double worst = 0.0;
    int cases = 0;
    for (double alpha : kCoreAlphas) {
        for (double p : {(alpha - 1.0) / 2.0, (alpha - 2.0) / 2.0, 1.0}) {
            for (double x : kXs) {
                const Alpha a(alpha);
                const double pv = regional_laplacian_pv(PowerFunction(p), x, a).value;
                const double closed = laplacian_power_closed(p, x, a);
                const double diff = std::abs(pv - closed);
                const bool ok = diff <= 1e-6 * std::abs(closed) || diff <= 1e-9;
                worst = std::max(worst, diff / std::max(std::abs(closed), 1e-3));
                ++cases;
                if (!ok)
                    v.fail("alpha=" + fmt(alpha) + " p=" + fmt(p) + " x=" + fmt(x) + " pv=" + fmt(pv) +
                           " closed=" + fmt(closed));
            }
        }
    }
    v.detail << cases << " points, worst relative diff " << fmt(worst) << " (tol 1e-06, abs 1e-09)";
}

void special_values(Verdict& v) {
    double worst_zero = 0.0, worst_rel = 0.0;
    for (double alpha : kCoreAlphas) {
        for (double p : {(alpha - 2.0) / 2.0, (alpha - 1.0) / 2.0}) {
            for (double x : kXs) {
                const double i = power_pv_integral(p, x, Alpha(alpha)).value;
                worst_zero = std::max(worst_zero, std::abs(i));
                if (std::abs(i) > 1e-8) v.fail("alpha=" + fmt(alpha) + " p=" + fmt(p) + " x=" + fmt(x) + " I=" + fmt(i));
            }
        }
    }
    for (double alpha : {1.25, 1.5, 1.75}) {
        const double p = (alpha - 3.0) / 2.0;
        const double b = beta(p + 1.0, 1.0 - alpha / 2.0);
        for (double x : {0.3, -0.3, 0.7, -0.7}) {
            const double i = power_pv_integral(p, x, Alpha(alpha)).value;
            const double want = x * x * b;
            const double rel = std::abs(i - want) / std::abs(want);
            worst_rel = std::max(worst_rel, rel);
            if (rel > 1e-6) v.fail("alpha=" + fmt(alpha) + " x=" + fmt(x) + " I=" + fmt(i) + " want=" + fmt(want));
        }
        // at x = 0 the target vanishes
        const double i0 = power_pv_integral(p, 0.0, Alpha(alpha)).value;
        if (std::abs(i0) > 1e-8) v.fail("alpha=" + fmt(alpha) + " x=0 I=" + fmt(i0));
    }
    v.detail << "max |I| at zero exponents " << fmt(worst_zero) << " (tol 1e-08); worst relative diff of the x^2 B law "
             << fmt(worst_rel) << " (tol 1e-06)";
}

// bumps, hats, poly cutoffs and one truncated ground state
std::vector<TestFunction> suite(double alpha) {
    return {
        TestFunction::smooth_bump(0.0, 1.6),
        TestFunction::smooth_bump(0.3, 0.9),
        TestFunction::smooth_bump(-0.5, 0.8, 2.0),
        TestFunction::smooth_bump(0.0, 1.98),
        TestFunction::hat({-0.5, 0.0, 0.5}),
        TestFunction::hat({-0.9, -0.2, 0.1, 0.8}),
        TestFunction::hat({0.2, 0.5, 0.95}),
        TestFunction::poly_cutoff({1.0}, -0.8, 0.8),
        TestFunction::poly_cutoff({1.0, 0.5, -0.3}, -0.9, 0.6),
        TestFunction::poly_cutoff({0.2, 1.0}, -0.3, 0.95),
        TestFunction::truncated_ground_state(8, alpha),
    };
}

void ground_state_identity(Verdict& v) {
    double worst = 0.0;
    int cases = 0;
    for (double alpha : kCoreAlphas) {
        for (const auto& u : suite(alpha)) {
            const auto b = verify_gsr_identity(u, Alpha(alpha));
            const double rel = std::abs(b.residual) / std::abs(b.energy);
            worst = std::max(worst, rel);
            ++cases;
            if (!(rel <= 1e-6)) v.fail(u.describe() + " alpha=" + fmt(alpha) + " rel=" + fmt(rel));
        }
    }
    v.detail << cases << " cases, worst residual/energy " << fmt(worst) << " (tol 1e-06)";
}

void phi_bound(Verdict& v) {
    double worst = INFINITY;
    for (int k = 1; k <= 20; ++k) {
        const double alpha = 1.0 + k / 21.0;
        const auto g = phi_lower_bound_check(Alpha(alpha), 100000);
        worst = std::min(worst, g.min_gap);
        if (g.min_gap < -1e-12) v.fail("alpha=" + fmt(alpha) + " min_gap=" + fmt(g.min_gap));
    }
    v.detail << "20 alphas, smallest min gap " << fmt(worst) << " (floor -1e-12)";
}

// supp u ⊂ (lo, hi) drawn from one of the catalogue kinds
TestFunction random_function(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double len = hi - lo;
    const double s0 = lo + len * (0.02 + 0.3 * unit(rng));
    const double s1 = hi - len * (0.02 + 0.3 * unit(rng));
    switch (rng() % 3) {
        case 0: return TestFunction::smooth_bump(0.5 * (s0 + s1), s1 - s0, 0.5 + 2.0 * unit(rng));
        case 1: {
            const double m0 = s0 + (s1 - s0) * (0.1 + 0.35 * unit(rng));
            const double m1 = s1 - (s1 - s0) * (0.1 + 0.35 * unit(rng));
            return TestFunction::hat({s0, m0, m1, s1});
        }
        default: return TestFunction::poly_cutoff({1.0, unit(rng) - 0.5, 0.5 * unit(rng)}, s0, s1);
    }
}

void hardy_remainder(Verdict& v) {
    std::mt19937_64 rng(0xc0ffee);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_slack = INFINITY, worst_scaling = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double alpha = 1.02 + 0.96 * unit(rng);
        const double a = -3.0 + 5.0 * unit(rng);
        const double b = a + 0.5 + 3.5 * unit(rng);
        const auto u = random_function(rng, a, b);
        const auto h = hardy_check_1d(u, {a, b}, Alpha(alpha));
        worst_slack = std::min(worst_slack, h.slack / h.lhs);
        if (!h.holds()) v.fail(u.describe() + " on (" + fmt(a) + "," + fmt(b) + ") alpha=" + fmt(alpha));

        // x ↦ c + s·x maps (a, b) onto (a2, b2); every term scales by s^{1−α}
        const double s = 0.25 + 3.0 * unit(rng);
        const double c = -2.0 + 4.0 * unit(rng);
        const auto u2 = u.pulled_back(-c / s, 1.0 / s);
        const auto h2 = hardy_check_1d(u2, {c + s * a, c + s * b}, Alpha(alpha));
        const double want = std::pow(s, 1.0 - alpha) * h.slack;
        const double rel = std::abs(h2.slack - want) / std::abs(want);
        worst_scaling = std::max(worst_scaling, rel);
        if (!(rel <= 1e-6)) v.fail("scaling s=" + fmt(s) + " " + u.describe() + " rel=" + fmt(rel));
    }
    v.detail << "50 configs, smallest slack/lhs " << fmt(worst_slack) << "; worst scaling mismatch "
             << fmt(worst_scaling) << " (tol 1e-06)";
}

void killed_identity(Verdict& v) {
    double worst = 0.0, worst_slack = INFINITY;
    int cases = 0;
    for (double alpha : kCoreAlphas) {
        for (const auto& u : suite(alpha)) {
            const auto k = killed_check(u, Alpha(alpha));
            const double rel = std::abs(k.identity_residual) / std::abs(k.full_energy);
            worst = std::max(worst, rel);
            worst_slack = std::min(worst_slack, k.ineq_slack / k.full_energy);
            ++cases;
            if (!(rel <= 1e-6)) v.fail(u.describe() + " alpha=" + fmt(alpha) + " rel=" + fmt(rel));
            if (k.ineq_slack < -k.error_budget)
                v.fail(u.describe() + " alpha=" + fmt(alpha) + " slack=" + fmt(k.ineq_slack));
        }
    }
    v.detail << cases << " cases, worst identity residual/energy " << fmt(worst) << " (tol 1e-06), smallest slack/energy "
             << fmt(worst_slack);
}

// independent oracle run: gap(n) = quotient(n) − B/(α 2^α) for the killed form
struct SweepGolden {
    double alpha;
    double gap[5];
};
const std::vector<int> kSweepN = {4, 16, 64, 256, 1024};
constexpr SweepGolden kSweepGolden[] = {
    {1.25, {1.463865820253327, 0.7532806448530213, 0.5162465333286650, 0.3925242686682539, 0.3163945809729260}},
    {1.5, {1.938395694772337, 1.009978750401102, 0.6953580042563634, 0.5293372934323779, 0.4267998070837453}},
};

void killed_sweep(Verdict& v) {
    for (const auto& g : kSweepGolden) {
        const Alpha a(g.alpha);
        const double c = killed_constant(a);
        const auto s = sharpness_sweep(FormKind::Killed, a, kSweepN);
        double worst_golden = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::string at = "alpha=" + fmt(g.alpha) + " n=" + std::to_string(s[i].n);
            if (i > 0 && !(s[i].quotient < s[i - 1].quotient)) v.fail(at + " not decreasing");
            if (s[i].quotient < c) v.fail(at + " below constant");
            const double rel = std::abs(s[i].gap - g.gap[i]) / g.gap[i];
            worst_golden = std::max(worst_golden, rel);
            if (rel > 1e-9) v.fail(at + " gap " + fmt(s[i].gap) + " vs golden " + fmt(g.gap[i]));
        }
        const double ratio = s.back().gap / s.front().gap;
        if (ratio > 0.5) v.fail("alpha=" + fmt(g.alpha) + " gap(1024)/gap(4)=" + fmt(ratio));
        v.detail << "alpha=" << g.alpha << ": gap(1024)/gap(4)=" << fmt(ratio) << " golden diff " << fmt(worst_golden)
                 << "; ";
    }
}

void discrete_eigenvalue(Verdict& v) {
    for (auto kind : {FormKind::RegionalMinusRemainder, FormKind::Killed}) {
        for (double alpha : {1.25, 1.5, 1.75}) {
            const Alpha a(alpha);
            const double c = limit_constant(kind, a);
            const auto r = min_rayleigh(assemble(kind, a, 256));
            const double ratio = r.min_quotient / c;
            v.detail << to_string(kind) << "@" << alpha << "=" << fmt(ratio) << " ";
            if (ratio < 1.0 - 1e-3 || ratio > 1.25)
                v.fail(to_string(kind) + " alpha=" + fmt(alpha) + " ratio=" + fmt(ratio));
        }
    }
    v.detail << "(ratio to the constant, window [1-1e-3, 1.25])";
}

void convex_case(Verdict& v) {
    struct Run {
        ConvexDomain2D dom;
        TestFunction2D u;
    };
    const auto disk = ConvexDomain2D::disk({0.0, 0.0}, 1.0);
    const auto square = ConvexDomain2D::rectangle({-0.5, -0.5}, {0.5, 0.5});
    const Run runs[] = {
        {disk, TestFunction2D::radial_bump({0.0, 0.0}, 0.8)},
        {disk, TestFunction2D::radial_bump({0.3, -0.2}, 0.5)},
        {square, TestFunction2D::radial_bump({0.0, 0.0}, 0.45)},
        {square, TestFunction2D::radial_bump({0.15, 0.1}, 0.3)},
    };
    std::uint64_t seed = 0x5eed2024ULL;
    double worst = INFINITY;
    for (const auto& r : runs) {
        for (double alpha : {1.25, 1.75}) {
            MCConfig mc;
            mc.rng_seed = seed++;
            const auto first = hardy_check_convex(r.dom, r.u, Alpha(alpha), mc);
            const auto again = hardy_check_convex(r.dom, r.u, Alpha(alpha), mc);
            const std::string at = r.dom.describe() + " " + r.u.describe() + " alpha=" + fmt(alpha) +
                                   " seed=" + std::to_string(mc.rng_seed);
            worst = std::min(worst, first.slack / first.slack_stderr);
            if (!first.holds()) v.fail(at + " slack=" + fmt(first.slack));
            if (first.slack != again.slack || first.slack_stderr != again.slack_stderr || first.lhs != again.lhs)
                v.fail(at + " rerun differs");
        }
    }
    v.detail << "8 runs x 1e6 samples, seeds 0x5eed2024..+7, smallest slack/stderr " << fmt(worst)
             << " (floor -2), reruns bit-identical";
}

void potential_positivity(Verdict& v) {
    double worst = INFINITY, worst_x = 0.0, worst_alpha = 0.0, max_bad_alpha = 0.0;
    int bad = 0;
    for (int j = 0; j < 100; ++j) {
        const double alpha = 0.05 + 1.9 * j / 99.0;
        for (int i = 0; i < 1000; ++i) {
            const double x = -0.999 + 1.998 * i / 999.0;
            const double g = ground_state_potential(x, Alpha(alpha));
            if (g < worst) {
                worst = g;
                worst_x = x;
                worst_alpha = alpha;
            }
            if (g < -1e-10) {
                ++bad;
                max_bad_alpha = std::max(max_bad_alpha, alpha);
            }
        }
    }
    if (bad > 0) {
        v.pass = false;
        v.detail << bad << " of 100000 points below -1e-10, all with alpha <= " << fmt(max_bad_alpha) << "; ";
    }
    v.detail << "min " << fmt(worst) << " at x=" << fmt(worst_x) << " alpha=" << fmt(worst_alpha);
}

const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> kCriteria = {
    {"regional Laplacian of powers, PV quadrature vs closed form", power_cross_validation},
    {"special values of the PV integral", special_values},
    {"ground state identity on the test suite", ground_state_identity},
    {"phi lower bound", phi_bound},
    {"1-d Hardy inequality with remainder, randomized and rescaled", hardy_remainder},
    {"killed form identity and inequality", killed_identity},
    {"killed form sharpness sweep", killed_sweep},
    {"discrete minimum Rayleigh quotient on n=256", discrete_eigenvalue},
    {"convex 2-d Hardy inequality, Monte Carlo", convex_case},
    {"ground state potential positivity", potential_positivity},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        const int k = std::atoi(argv[i]);
        if (k < 1 || k > static_cast<int>(kCriteria.size())) {
            std::cerr << "usage: acceptance [criterion 1-" << kCriteria.size() << "]...\n";
            return 64;
        }
        which.push_back(k);
    }
    if (which.empty())
        for (int k = 1; k <= static_cast<int>(kCriteria.size()); ++k) which.push_back(k);

    bool all = true;
    for (int k : which) {
        const auto& [name, check] = kCriteria[static_cast<std::size_t>(k - 1)];
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            check(v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << "error: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << k << " " << (v.pass ? "PASS" : "FAIL") << " [" << name << "] " << v.detail.str()
                  << " (" << std::fixed << std::setprecision(1) << secs << " s)" << std::defaultfloat << std::endl;
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
