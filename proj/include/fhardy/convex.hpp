#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "fhardy/specfun.hpp"

namespace fhardy {

using Point2 = std::array<double, 2>;

/// Disk or axis-aligned rectangle with closed-form distance to the complement.
class ConvexDomain2D {
public:
    enum class Shape { Disk, Rectangle };

    static ConvexDomain2D disk(Point2 center, double radius);
    static ConvexDomain2D rectangle(Point2 corner_min, Point2 corner_max);

    Shape shape() const { return shape_; }
    double diameter() const;
    double area() const;
    bool contains(Point2 p) const;
    /// dist(p, Ω^c) for p ∈ Ω.
    double dist_to_complement(Point2 p) const;
    /// Uniform point of Ω from two independent uniforms on (0, 1).
    Point2 sample(double u1, double u2) const;
    ConvexDomain2D translated(Point2 shift) const;
    std::string describe() const;

    // disk: a = center, b = (radius, 0); rectangle: a = corner_min, b = corner_max
    Point2 a() const { return a_; }
    Point2 b() const { return b_; }

private:
    ConvexDomain2D(Shape s, Point2 a, Point2 b) : shape_(s), a_(a), b_(b) {}

    Shape shape_;
    Point2 a_, b_;
};

/// Smooth compactly supported function on ℝ² built from the 1-d bump
/// g(t) = exp(order·(1 − 1/(1 − t²))) on |t| < 1.
class TestFunction2D {
public:
    enum class Kind { Zero, Radial, Tensor };

    static TestFunction2D zero();
    /// g(|x − center| / radius)
    static TestFunction2D radial_bump(Point2 center, double radius, double order = 1.0);
    /// g((x₁ − c₁)/h₁) · g((x₂ − c₂)/h₂)
    static TestFunction2D tensor_bump(Point2 center, Point2 half_widths, double order = 1.0);

    double operator()(Point2 p) const;
    Kind kind() const { return kind_; }
    /// True when the closed support lies in the open domain.
    bool support_inside(const ConvexDomain2D& dom) const;
    TestFunction2D translated(Point2 shift) const;
    std::string describe() const;

private:
    TestFunction2D(Kind k, Point2 c, Point2 h, double order) : kind_(k), center_(c), half_(h), order_(order) {}

    Kind kind_;
    Point2 center_;
    Point2 half_;
    double order_;
};

enum class Stratification {
    /// Pairs (x, y) uniform on Ω × Ω. The pair integrand behaves like
    /// |x − y|^{−α} on the diagonal, so its variance is infinite for α ≥ 1.
    None,
    /// y = x + z with |z| drawn from density ∝ |z|^{−α} on the disk of radius
    /// diam Ω; the weighted integrand is bounded.
    Radial,
};

std::string to_string(Stratification s);
/// Accepts "none" and "radial"; throws DomainError otherwise.
Stratification stratification_from_string(const std::string& name);

struct MCConfig {
    std::int64_t sample_count = 1'000'000;
    std::uint64_t rng_seed = 0x5eed2024ULL;
    Stratification stratification = Stratification::Radial;
    /// Samples per independently seeded batch; batches are merged in order.
    std::int64_t batch_size = 1 << 16;

    /// Throws DomainError when a field is out of range.
    void validate() const;
};

struct ConvexCheck {
    double lhs = 0.0;
    double lhs_stderr = 0.0;
    double rhs_main = 0.0;
    double rhs_remainder = 0.0;
    /// Standard error of rhs_main + rhs_remainder.
    double rhs_stderr = 0.0;
    double slack = 0.0;
    /// Standard error of the per-sample slack, lhs and rhs drawn from the same x.
    double slack_stderr = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    bool holds() const { return slack >= -2.0 * slack_stderr; }
};

/// Monte-Carlo check in two dimensions of
///   ½ ∬_{Ω×Ω} (u(x) − u(y))² |x − y|^{−2−α}
///     ≥ κ_{2,α} ∫ u² dist^{−α} + remainder_coeff_nd(2, α, diam Ω) ∫ u² dist^{1−α}
/// for convex Ω, 1 < α < 2. Batch b uses std::mt19937_64 seeded with
/// seed_seq{seed low 32 bits, seed high 32 bits, b}; uniforms are the top 53
/// bits, offset by half a unit so they never hit 0 or 1.
ConvexCheck hardy_check_convex(const ConvexDomain2D& dom, const TestFunction2D& u, Alpha alpha,
                               const MCConfig& mc = {});

}  // namespace fhardy
