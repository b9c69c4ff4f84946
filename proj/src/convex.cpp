#include "fhardy/convex.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "fhardy/errors.hpp"

namespace fhardy {

ConvexDomain2D ConvexDomain2D::disk(Point2 center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("disk radius must be positive");
    return ConvexDomain2D(Shape::Disk, center, {radius, 0.0});
}

ConvexDomain2D ConvexDomain2D::rectangle(Point2 corner_min, Point2 corner_max) {
    if (!(corner_min[0] < corner_max[0] && corner_min[1] < corner_max[1]))
        throw DomainError("rectangle requires corner_min < corner_max in both coordinates");
    return ConvexDomain2D(Shape::Rectangle, corner_min, corner_max);
}

double ConvexDomain2D::diameter() const {
    if (shape_ == Shape::Disk) return 2.0 * b_[0];
    return std::hypot(b_[0] - a_[0], b_[1] - a_[1]);
}

double ConvexDomain2D::area() const {
    if (shape_ == Shape::Disk) return std::numbers::pi * b_[0] * b_[0];
    return (b_[0] - a_[0]) * (b_[1] - a_[1]);
}

bool ConvexDomain2D::contains(Point2 p) const {
    if (shape_ == Shape::Disk) return std::hypot(p[0] - a_[0], p[1] - a_[1]) < b_[0];
    return p[0] > a_[0] && p[0] < b_[0] && p[1] > a_[1] && p[1] < b_[1];
}

double ConvexDomain2D::dist_to_complement(Point2 p) const {
    if (shape_ == Shape::Disk) return b_[0] - std::hypot(p[0] - a_[0], p[1] - a_[1]);
    return std::min({p[0] - a_[0], b_[0] - p[0], p[1] - a_[1], b_[1] - p[1]});
}

Point2 ConvexDomain2D::sample(double u1, double u2) const {
    if (shape_ == Shape::Disk) {
        const double r = b_[0] * std::sqrt(u1);
        const double t = 2.0 * std::numbers::pi * u2;
        return {a_[0] + r * std::cos(t), a_[1] + r * std::sin(t)};
    }
    return {a_[0] + (b_[0] - a_[0]) * u1, a_[1] + (b_[1] - a_[1]) * u2};
}

ConvexDomain2D ConvexDomain2D::translated(Point2 shift) const {
    if (shape_ == Shape::Disk) return disk({a_[0] + shift[0], a_[1] + shift[1]}, b_[0]);
    return rectangle({a_[0] + shift[0], a_[1] + shift[1]}, {b_[0] + shift[0], b_[1] + shift[1]});
}

std::string ConvexDomain2D::describe() const {
    std::ostringstream os;
    os.precision(17);
    if (shape_ == Shape::Disk) os << "disk(c=" << a_[0] << "," << a_[1] << ",r=" << b_[0] << ")";
    else os << "rectangle(" << a_[0] << "," << a_[1] << ";" << b_[0] << "," << b_[1] << ")";
    return os.str();
}

namespace {

double bump(double t, double order) {
    const double s = 1.0 - t * t;
    if (!(s > 0.0)) return 0.0;
    return std::exp(order * (1.0 - 1.0 / s));
}

}  // namespace

TestFunction2D TestFunction2D::zero() { return TestFunction2D(Kind::Zero, {0.0, 0.0}, {1.0, 1.0}, 1.0); }

TestFunction2D TestFunction2D::radial_bump(Point2 center, double radius, double order) {
    if (!(radius > 0.0)) throw DomainError("radial_bump radius must be positive");
    if (!(order > 0.0)) throw DomainError("radial_bump order must be positive");
    return TestFunction2D(Kind::Radial, center, {radius, radius}, order);
}

TestFunction2D TestFunction2D::tensor_bump(Point2 center, Point2 half_widths, double order) {
    if (!(half_widths[0] > 0.0 && half_widths[1] > 0.0)) throw DomainError("tensor_bump half widths must be positive");
    if (!(order > 0.0)) throw DomainError("tensor_bump order must be positive");
    return TestFunction2D(Kind::Tensor, center, half_widths, order);
}

double TestFunction2D::operator()(Point2 p) const {
    const double dx = p[0] - center_[0], dy = p[1] - center_[1];
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Radial: return bump(std::hypot(dx, dy) / half_[0], order_);
        case Kind::Tensor: return bump(dx / half_[0], order_) * bump(dy / half_[1], order_);
    }
    return 0.0;
}

bool TestFunction2D::support_inside(const ConvexDomain2D& dom) const {
    switch (kind_) {
        case Kind::Zero: return true;
        case Kind::Radial:
            if (dom.shape() == ConvexDomain2D::Shape::Disk)
                return std::hypot(center_[0] - dom.a()[0], center_[1] - dom.a()[1]) + half_[0] < dom.b()[0];
            return dom.dist_to_complement(center_) > half_[0];
        case Kind::Tensor:
            for (double sx : {-1.0, 1.0})
                for (double sy : {-1.0, 1.0}) {
                    const Point2 corner{center_[0] + sx * half_[0], center_[1] + sy * half_[1]};
                    if (!dom.contains(corner)) return false;
                }
            return true;
    }
    return false;
}

TestFunction2D TestFunction2D::translated(Point2 shift) const {
    return TestFunction2D(kind_, {center_[0] + shift[0], center_[1] + shift[1]}, half_, order_);
}

std::string TestFunction2D::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case Kind::Zero: os << "zero"; break;
        case Kind::Radial:
            os << "radial_bump(c=" << center_[0] << "," << center_[1] << ",r=" << half_[0] << ",order=" << order_
               << ")";
            break;
        case Kind::Tensor:
            os << "tensor_bump(c=" << center_[0] << "," << center_[1] << ",h=" << half_[0] << "," << half_[1]
               << ",order=" << order_ << ")";
            break;
    }
    return os.str();
}

std::string to_string(Stratification s) { return s == Stratification::Radial ? "radial" : "none"; }

Stratification stratification_from_string(const std::string& name) {
    if (name == "radial") return Stratification::Radial;
    if (name == "none") return Stratification::None;
    throw DomainError("unknown stratification '" + name + "'");
}

void MCConfig::validate() const {
    if (sample_count < 2) throw DomainError("MCConfig.sample_count must be at least 2");
    if (batch_size < 1) throw DomainError("MCConfig.batch_size must be positive");
}

namespace {

// Running mean and sum of squared deviations (Welford), mergeable (Chan et al.).
struct Moments {
    double n = 0.0, mean = 0.0, m2 = 0.0;

    void add(double v) {
        n += 1.0;
        const double d = v - mean;
        mean += d / n;
        m2 += d * (v - mean);
    }
    void merge(const Moments& o) {
        if (o.n == 0.0) return;
        const double total = n + o.n;
        const double d = o.mean - mean;
        mean += d * o.n / total;
        m2 += o.m2 + d * d * n * o.n / total;
        n = total;
    }
    double stderr_of_mean() const { return n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0; }
};

struct BatchMoments {
    Moments lhs, main, rem, rhs, slack;
    void merge(const BatchMoments& o) {
        lhs.merge(o.lhs);
        main.merge(o.main);
        rem.merge(o.rem);
        rhs.merge(o.rhs);
        slack.merge(o.slack);
    }
};

// Uniform on (0, 1) from the top 53 bits, offset by half a unit.
double open_uniform(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

}  // namespace

ConvexCheck hardy_check_convex(const ConvexDomain2D& dom, const TestFunction2D& u, Alpha alpha_in,
                               const MCConfig& mc) {
    require_hardy_range(alpha_in, "hardy_check_convex");
    mc.validate();
    if (!u.support_inside(dom)) throw DomainError("hardy_check_convex requires supp u strictly inside the domain");

    ConvexCheck out;
    out.samples = mc.sample_count;
    out.seed = mc.rng_seed;
    if (u.kind() == TestFunction2D::Kind::Zero) return out;

    const double alpha = alpha_in.value();
    const double area = dom.area();
    const double R = dom.diameter();
    const double k_main = kappa(2, alpha_in);
    const double k_rem = remainder_coeff_nd(2, alpha_in, R);
    // radial: z = r(cos θ, sin θ), r = R·U^{1/(2−α)} has density (2−α) r^{1−α}/R^{2−α},
    // so ½Δ²|z|^{−2−α}/p(z) = ½Δ² · 2π R^{2−α}/((2−α)|z|²)
    const double radial_factor = 0.5 * area * 2.0 * std::numbers::pi * std::pow(R, 2.0 - alpha) / (2.0 - alpha);

    const std::int64_t batches = (mc.sample_count + mc.batch_size - 1) / mc.batch_size;
    std::vector<BatchMoments> results(static_cast<std::size_t>(batches));
    const auto seed_lo = static_cast<std::uint32_t>(mc.rng_seed & 0xffffffffULL);
    const auto seed_hi = static_cast<std::uint32_t>(mc.rng_seed >> 32);

    auto run_batch = [&](std::int64_t b) {
        std::seed_seq seq{seed_lo, seed_hi, static_cast<std::uint32_t>(b)};
        std::mt19937_64 rng(seq);
        const std::int64_t count = std::min(mc.batch_size, mc.sample_count - b * mc.batch_size);
        BatchMoments m;
        for (std::int64_t i = 0; i < count; ++i) {
            const Point2 x = dom.sample(open_uniform(rng), open_uniform(rng));
            const double ux = u(x);
            double f = 0.0;
            if (mc.stratification == Stratification::Radial) {
                const double r = R * std::pow(open_uniform(rng), 1.0 / (2.0 - alpha));
                const double t = 2.0 * std::numbers::pi * open_uniform(rng);
                const Point2 y{x[0] + r * std::cos(t), x[1] + r * std::sin(t)};
                if (dom.contains(y)) {
                    const double d = u(y) - ux;
                    f = radial_factor * d * d / (r * r);
                }
            } else {
                const Point2 y = dom.sample(open_uniform(rng), open_uniform(rng));
                const double r = std::hypot(y[0] - x[0], y[1] - x[1]);
                const double d = u(y) - ux;
                if (r > 0.0) f = 0.5 * area * area * d * d * std::pow(r, -2.0 - alpha);
            }
            double gm = 0.0, gr = 0.0;
            if (ux != 0.0) {
                const double dist = dom.dist_to_complement(x);
                gm = area * ux * ux * k_main * std::pow(dist, -alpha);
                gr = area * ux * ux * k_rem * std::pow(dist, 1.0 - alpha);
            }
            m.lhs.add(f);
            m.main.add(gm);
            m.rem.add(gr);
            m.rhs.add(gm + gr);
            m.slack.add(f - gm - gr);
        }
        results[static_cast<std::size_t>(b)] = m;
    };

    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (std::int64_t b = next++; b < batches; b = next++) run_batch(b);
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    BatchMoments total;
    for (const auto& r : results) total.merge(r);
    out.lhs = total.lhs.mean;
    out.lhs_stderr = total.lhs.stderr_of_mean();
    out.rhs_main = total.main.mean;
    out.rhs_remainder = total.rem.mean;
    out.rhs_stderr = total.rhs.stderr_of_mean();
    out.slack = total.slack.mean;
    out.slack_stderr = total.slack.stderr_of_mean();
    return out;
}

}  // namespace fhardy
