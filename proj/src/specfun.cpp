#include "fhardy/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fhardy/errors.hpp"

namespace fhardy {

namespace {

constexpr int kZetaTerms = 48;

// ζ(k) for k = 2..kZetaTerms+1 by Euler–Maclaurin summation with N = 10.
std::array<double, kZetaTerms + 2> make_zeta_table() {
    // B_{2j}/(2j)! for j = 1..5
    constexpr std::array<double, 5> b2j_over_fact = {
        1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0};
    constexpr int N = 10;
    std::array<double, kZetaTerms + 2> zeta{};
    for (int k = 2; k < kZetaTerms + 2; ++k) {
        double tail = std::pow(N, 1.0 - k) / (k - 1) + 0.5 * std::pow(N, -k);
        double rising = k;  // k(k+1)...(k+2j−2)
        for (int j = 1; j <= 5; ++j) {
            tail += b2j_over_fact[j - 1] * rising * std::pow(N, -k - 2 * j + 1);
            rising *= (k + 2 * j - 1) * (k + 2 * j);
        }
        double head = 0.0;
        for (int n = N - 1; n >= 1; --n) head += std::pow(n, -k);
        zeta[k] = head + tail;
    }
    return zeta;
}

// ln Γ(1+z), |z| ≤ 0.3.
double log_gamma_1p(double z) {
    static const auto zeta = make_zeta_table();
    constexpr double euler_gamma = 0.57721566490153286061;
    double sum = 0.0;
    double zk = -z;
    for (int k = 2; k < kZetaTerms + 2; ++k) {
        zk *= -z;
        sum += zeta[k] * zk / k;
    }
    return -euler_gamma * z + sum;
}

double log_gamma_lanczos(double x) {
    static constexpr std::array<double, 14> cof = {
        57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
        -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
        -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
        .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
        -.261908384015814087e-4, .368991826595316234e-5};
    double y = x;
    double tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (double c : cof) ser += c / ++y;
    return tmp + std::log(2.5066282746310005 * ser / x);
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw DomainError(std::string(what) + " requires a positive argument");
}

void require_dimension(int n) {
    if (n < 1) throw DomainError("dimension n must be a positive integer");
}

// 4 − 2^{3−α}, accurate near α = 1.
double remainder_numerator(double alpha) {
    return -4.0 * std::expm1((1.0 - alpha) * std::numbers::ln2);
}

}  // namespace

Alpha::Alpha(double value) : value_(value) {
    if (!(value > 0.0 && value < 2.0))
        throw DomainError("alpha must lie in (0, 2), got " + std::to_string(value));
}

void require_hardy_range(Alpha alpha, const char* what) {
    if (!alpha.in_hardy_range())
        throw DomainError(std::string(what) + " requires 1 < alpha < 2, got " +
                          std::to_string(alpha.value()));
}

double log_gamma(double x) {
    require_positive(x, "log_gamma");
    if (std::abs(x - 1.0) <= 0.3) return log_gamma_1p(x - 1.0);
    if (std::abs(x - 2.0) <= 0.3) return std::log1p(x - 2.0) + log_gamma_1p(x - 2.0);
    return log_gamma_lanczos(x);
}

double log_beta(double a, double b) {
    require_positive(a, "beta");
    require_positive(b, "beta");
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta(double a, double b) { return std::exp(log_beta(a, b)); }

double hardy_beta(Alpha alpha) {
    const double a = alpha.value();
    return beta((1.0 + a) / 2.0, (2.0 - a) / 2.0);
}

double kappa(int n, Alpha alpha) {
    require_dimension(n);
    const double a = alpha.value();
    const double log_prefactor = 0.5 * (n - 1) * std::log(std::numbers::pi) +
                                 log_gamma((1.0 + a) / 2.0) - log_gamma((n + a) / 2.0);
    // (B − 2^α)/2^α evaluated as expm1 so the zero at α = 1 keeps relative accuracy.
    const double bracket =
        std::expm1(log_beta((1.0 + a) / 2.0, (2.0 - a) / 2.0) - a * std::numbers::ln2);
    return std::exp(log_prefactor) * bracket / a;
}

double killed_constant(Alpha alpha) {
    const double a = alpha.value();
    return std::exp(log_beta((1.0 + a) / 2.0, (2.0 - a) / 2.0) - a * std::numbers::ln2) / a;
}

double phi(double x, Alpha alpha) {
    if (!(std::abs(x) <= 1.0)) throw DomainError("phi requires |x| <= 1");
    const double a = alpha.value();
    return std::pow(2.0, a) - std::pow(1.0 + x, a) - std::pow(1.0 - x, a);
}

double remainder_coeff_1d(Alpha alpha, double a, double b) {
    require_hardy_range(alpha, "remainder_coeff_1d");
    if (!(a < b)) throw DomainError("remainder_coeff_1d requires a < b");
    return remainder_numerator(alpha.value()) / (alpha.value() * (b - a));
}

double remainder_coeff_nd(int n, Alpha alpha, double diam) {
    require_dimension(n);
    require_hardy_range(alpha, "remainder_coeff_nd");
    require_positive(diam, "remainder_coeff_nd diameter");
    const double a = alpha.value();
    const double log_prefactor = 0.5 * (n - 1) * std::log(std::numbers::pi) +
                                 log_gamma(a / 2.0) - log_gamma((n + a - 1.0) / 2.0);
    return std::exp(log_prefactor) * remainder_numerator(a) / (a * diam);
}

ConstantReport constants(int n, Alpha alpha) {
    ConstantReport r;
    r.n = n;
    r.kappa_n_alpha = kappa(n, alpha);
    r.beta_term = hardy_beta(alpha);
    if (alpha.in_hardy_range()) r.remainder_coeff = remainder_coeff_nd(n, alpha, 1.0);
    return r;
}

}  // namespace fhardy
