#include "fhardy/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "fhardy/errors.hpp"

namespace fhardy {

void QuadConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("QuadConfig tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("QuadConfig.max_subdivisions must be positive");
    if (!(pv_excision_start > 0.0 && pv_excision_start <= 0.1))
        throw DomainError("QuadConfig.pv_excision_start must lie in (0, 0.1]");
    if (pv_richardson_levels < 1) throw DomainError("QuadConfig.pv_richardson_levels must be positive");
    if (!(grading_exponent >= 1.0)) throw DomainError("QuadConfig.grading_exponent must be >= 1");
}

namespace quad {

namespace {

GaussRule make_rule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre requires n >= 1");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussRule>(make_rule(n));
    return *slot;
}

}  // namespace quad
}  // namespace fhardy
