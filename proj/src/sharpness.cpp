#include "fhardy/sharpness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "fhardy/errors.hpp"
#include "fhardy/forms.hpp"
#include "fhardy/test_function.hpp"

namespace fhardy {

std::string to_string(FormKind kind) {
    switch (kind) {
        case FormKind::Regional: return "regional";
        case FormKind::Killed: return "killed";
        case FormKind::RegionalMinusRemainder: return "regional_minus_remainder";
    }
    return "unknown";
}

FormKind form_kind_from_string(const std::string& name) {
    if (name == "regional") return FormKind::Regional;
    if (name == "killed") return FormKind::Killed;
    if (name == "regional_minus_remainder") return FormKind::RegionalMinusRemainder;
    throw DomainError("unknown form kind '" + name + "'");
}

double limit_constant(FormKind kind, Alpha alpha) {
    return kind == FormKind::Killed ? killed_constant(alpha) : kappa(1, alpha);
}

namespace {

// Offset of the core edge so that node spacing is continuous there.
double core_edge_offset(double d, double tau_c) {
    if (tau_c >= 1.0) return 1.0;
    auto mismatch = [&](double dc) {
        const double r = d / dc;
        return dc * std::log(1.0 / r) / (tau_c * (1.0 - r)) - (1.0 - dc) / (1.0 - tau_c);
    };
    double lo = std::log(d) + 1.0, hi = 0.0;  // log of δ_c
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mismatch(std::exp(mid)) > 0.0) hi = mid;
        else lo = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

}  // namespace

std::vector<GridNode> graded_grid(int n_nodes, const GridSpec& spec) {
    if (n_nodes < 1) throw DomainError("graded_grid requires at least one node");
    if (!(spec.min_offset > 0.0 && spec.min_offset < 0.1)) throw DomainError("GridSpec.min_offset must lie in (0, 0.1)");
    if (!(spec.core_fraction >= 0.0 && spec.core_fraction < 1.0))
        throw DomainError("GridSpec.core_fraction must lie in [0, 1)");
    const double tau_c = 1.0 - spec.core_fraction;
    const double dc = core_edge_offset(spec.min_offset, tau_c);
    const double r = spec.min_offset / dc;

    std::vector<GridNode> nodes;
    nodes.reserve(n_nodes);
    for (int j = 1; j <= n_nodes; ++j) {
        // ξ ∈ (−1, 1), τ = 1 − |ξ| is the parameter distance to the nearer end
        const int twice = 2 * j - (n_nodes + 1);  // (n+1)·ξ
        const int side = twice < 0 ? -1 : 1;
        const double tau = 1.0 - std::abs(static_cast<double>(twice)) / (n_nodes + 1);
        double offset;
        if (tau >= tau_c) offset = dc + (1.0 - dc) * (tau - tau_c) / (1.0 - tau_c);
        else offset = dc * (std::pow(r, (tau_c - tau) / tau_c) - r) / (1.0 - r);
        nodes.push_back({side, offset});
    }
    return nodes;
}

std::vector<double> DiscreteForm::grid() const {
    std::vector<double> x;
    x.reserve(nodes.size());
    for (const auto& n : nodes) x.push_back(n.x());
    return x;
}

namespace {

constexpr int kElementOrder = 20;
constexpr int kPairOrder = 12;

// A point expressed through the side it is measured from.
struct Pos {
    int side;
    double offset;
};

// x_q − x_p without cancellation when both are measured from the same end.
double pos_diff(const Pos& p, const Pos& q) {
    if (p.side == q.side) return p.side * (p.offset - q.offset);
    return q.side * (1.0 - q.offset) - p.side * (1.0 - p.offset);
}

// Element between consecutive nodes, parametrized linearly in x from left to right.
struct Element {
    int side;
    double left, right;  // offsets from `side` of the left and right ends
    double length;
    Pos at(double theta) const { return {side, left + theta * (right - left)}; }
    bool touches_boundary() const { return left == 0.0 || right == 0.0; }
};

struct Mesh {
    std::vector<Pos> points;  // n + 2 entries including both ends
    std::vector<Element> elements;  // element k joins points k − 1 and k, k = 1..n+1
};

Mesh make_mesh(const std::vector<GridNode>& nodes) {
    Mesh m;
    m.points.push_back({-1, 0.0});
    for (const auto& n : nodes) m.points.push_back({n.side, n.offset});
    m.points.push_back({1, 0.0});
    m.elements.push_back({});  // unused slot 0
    for (std::size_t k = 1; k < m.points.size(); ++k) {
        const Pos& a = m.points[k - 1];
        const Pos& b = m.points[k];
        Element e;
        e.side = a.offset <= b.offset ? a.side : b.side;
        e.left = a.side == e.side ? a.offset : 2.0 - a.offset;
        e.right = b.side == e.side ? b.offset : 2.0 - b.offset;
        e.length = pos_diff(a, b);
        m.elements.push_back(e);
    }
    return m;
}

struct ElementMoments {
    double ll = 0.0, lr = 0.0, rr = 0.0;
};

// ∫ over the element of (1−θ)², θ(1−θ), θ² times W(offset) dx.
template <class W>
ElementMoments element_moments(const Element& e, W&& weight, double edge_exponent, const QuadConfig& cfg) {
    ElementMoments m;
    if (e.touches_boundary()) {
        // only the hat of the interior end is nonzero: φ = s/h with s the offset from the boundary
        const double h = e.length;
        auto f = [&](double s) {
            const double phi = s / h;
            return phi * phi * weight(s);
        };
        const auto r = quad::integrate_graded(f, h, edge_exponent, cfg);
        if (!r.converged) throw NonConvergenceError("assemble (boundary element)", r.error, cfg.tolerance_for(r.value));
        if (e.left == 0.0) m.rr = r.value;
        else m.ll = r.value;
        return m;
    }
    const auto& g = quad::gauss_legendre(kElementOrder);
    for (int i = 0; i < kElementOrder; ++i) {
        const double t = 0.5 * (g.nodes[i] + 1.0);
        const double w = 0.5 * g.weights[i] * e.length * weight(e.at(t).offset);
        m.ll += (1.0 - t) * (1.0 - t) * w;
        m.lr += t * (1.0 - t) * w;
        m.rr += t * t * w;
    }
    return m;
}

// Adds the Gram matrix of W over the hat basis into `out`, times `factor`.
template <class W>
void add_weighted_gram(Eigen::MatrixXd& out, const Mesh& mesh, W&& weight, double edge_exponent, double factor,
                       const QuadConfig& cfg) {
    const int n = static_cast<int>(out.rows());
    for (int k = 1; k <= n + 1; ++k) {
        const auto m = element_moments(mesh.elements[k], weight, edge_exponent, cfg);
        const int l = k - 2, r = k - 1;  // basis indices of points k − 1 and k
        if (l >= 0) out(l, l) += factor * m.ll;
        if (r < n) out(r, r) += factor * m.rr;
        if (l >= 0 && r < n) {
            out(l, r) += factor * m.lr;
            out(r, l) += factor * m.lr;
        }
    }
}

// Full-line pairing of two hats. With H(r) = |r|^{3−α}/(α(1−α)(2−α)(3−α)) and
// slope jumps b_l of φ_j at s_l,
//   a(φ_i, φ_j) = Σ_l b_l ∫ φ_i(x) H''(x − s_l) dx,  H''(r) = |r|^{1−α}/(α(1−α)).
// Constants in H'' drop out because Σ b_l = 0, so |r|^{1−α} − 1 is used, which
// stays finite at α = 1. φ_i is taken as the narrower hat so that no sum
// cancels across scales.
class HatPairing {
public:
    HatPairing(const Mesh& mesh, double alpha, const QuadConfig& cfg) : mesh_(mesh), alpha_(alpha), cfg_(cfg) {}

    double operator()(int i, int j) const {
        const int pi = i + 1, pj = j + 1;  // mesh point indices of the hat peaks
        const double gap = pj - pi >= 2 ? pos_diff(mesh_.points[pi + 1], mesh_.points[pj - 1]) : 0.0;
        const double width = std::max(support_width(pi), support_width(pj));
        if (pj - pi >= 2 && gap >= 2.0 * width) return separated(pi, pj);
        return support_width(pi) <= support_width(pj) ? near(pi, pj) : near(pj, pi);
    }

private:
    double support_width(int p) const { return mesh_.elements[p].length + mesh_.elements[p + 1].length; }

    // (|ρ|^{1−α} − 1)/(α(1−α))
    double kernel(double rho) const {
        const double lr = std::log(std::abs(rho));
        const double d = 1.0 - alpha_;
        return (d == 0.0 ? lr : std::expm1(d * lr) / d) / alpha_;
    }

    // ∫ over element e of φ(x) kernel((x − x_S)/L) dx, φ linear from phi_p to phi_q.
    double element_moment(int e, const Pos& S, double phi_p, double phi_q, double L) const {
        const double len = mesh_.elements[e].length;
        const double dl = pos_diff(S, mesh_.points[e - 1]);
        const double dr = pos_diff(S, mesh_.points[e]);
        const bool from_left = std::abs(dl) <= std::abs(dr);
        const double d0 = from_left ? dl : dr;
        const double sign = from_left ? 1.0 : -1.0;
        const double phi0 = from_left ? phi_p : phi_q;
        const double dphi = from_left ? phi_q - phi_p : phi_p - phi_q;
        auto f = [&](double s) { return (phi0 + dphi * s / len) * kernel((d0 + sign * s) / L); };
        if (std::abs(d0) >= len) {
            const auto& g = quad::gauss_legendre(kElementOrder);
            double sum = 0.0;
            for (int k = 0; k < kElementOrder; ++k) sum += g.weights[k] * f(0.5 * len * (g.nodes[k] + 1.0));
            return 0.5 * len * sum;
        }
        const double exponent = d0 == 0.0 ? std::min(0.0, 1.0 - alpha_) : 0.0;
        const auto r = quad::integrate_graded(f, len, exponent, cfg_);
        if (!r.converged) throw NonConvergenceError("assemble (near pair)", r.error, cfg_.tolerance_for(r.value));
        return r.value;
    }

    double near(int pi, int pj) const {
        const double hj0 = mesh_.elements[pj].length, hj1 = mesh_.elements[pj + 1].length;
        const double L = std::max(hj0, hj1);
        const double b[3] = {1.0 / hj0, -1.0 / hj0 - 1.0 / hj1, 1.0 / hj1};
        double sum = 0.0;
        for (int l = 0; l < 3; ++l) {
            const Pos& S = mesh_.points[pj - 1 + l];
            const double m = element_moment(pi, S, 0.0, 1.0, L) + element_moment(pi + 1, S, 1.0, 0.0, L);
            sum += b[l] * m;
        }
        return std::pow(L, 1.0 - alpha_) * sum;
    }

    // −∬ φ_i(x) φ_j(y) |x − y|^{−1−α} for supports a positive distance apart.
    double separated(int pi, int pj) const {
        const auto& g = quad::gauss_legendre(kPairOrder);
        double total = 0.0;
        for (int ei = pi; ei <= pi + 1; ++ei) {
            const Element& e = mesh_.elements[ei];
            for (int ej = pj; ej <= pj + 1; ++ej) {
                const Element& f = mesh_.elements[ej];
                double sum = 0.0;
                for (int a = 0; a < kPairOrder; ++a) {
                    const double s = 0.5 * (g.nodes[a] + 1.0);
                    const double phi_x = ei == pi ? s : 1.0 - s;
                    const Pos px = e.at(s);
                    double inner = 0.0;
                    for (int b = 0; b < kPairOrder; ++b) {
                        const double t = 0.5 * (g.nodes[b] + 1.0);
                        const double phi_y = ej == pj ? t : 1.0 - t;
                        inner += g.weights[b] * phi_y * std::pow(pos_diff(px, f.at(t)), -1.0 - alpha_);
                    }
                    sum += g.weights[a] * phi_x * inner;
                }
                total += 0.25 * e.length * f.length * sum;
            }
        }
        return -total;
    }

    const Mesh& mesh_;
    double alpha_;
    QuadConfig cfg_;
};

}  // namespace

DiscreteForm assemble(FormKind kind, Alpha alpha_in, int n_nodes, const QuadConfig& cfg, const GridSpec& spec) {
    cfg.validate();
    if (n_nodes < 4) throw DomainError("assemble requires n_nodes >= 4");
    if (kind == FormKind::RegionalMinusRemainder) require_hardy_range(alpha_in, "assemble(regional_minus_remainder)");
    const double alpha = alpha_in.value();

    DiscreteForm df;
    df.kind = kind;
    df.alpha = alpha;
    df.nodes = graded_grid(n_nodes, spec);
    const Mesh mesh = make_mesh(df.nodes);
    const int n = n_nodes;

    df.stiffness = Eigen::MatrixXd::Zero(n, n);
    const HatPairing pairing(mesh, alpha, cfg.tightened(0.01));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i = next++; i < n; i = next++)
            for (int j = i; j < n; ++j) df.stiffness(i, j) = pairing(i, j);
    };
    const unsigned threads = std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    df.stiffness.triangularView<Eigen::StrictlyLower>() = df.stiffness.transpose().triangularView<Eigen::StrictlyLower>();

    const QuadConfig edge_cfg = cfg.tightened(0.01);
    if (kind != FormKind::Killed) {
        // killing density (1/α)((1 + x)^{−α} + (1 − x)^{−α})
        auto kill = [alpha](double d) { return (std::pow(d, -alpha) + std::pow(2.0 - d, -alpha)) / alpha; };
        add_weighted_gram(df.stiffness, mesh, kill, 2.0 - alpha, -1.0, edge_cfg);
    }
    if (kind == FormKind::RegionalMinusRemainder) {
        auto rem = [alpha](double d) { return std::pow(d * (2.0 - d), 1.0 - alpha); };
        const double c = (std::pow(2.0, alpha) - 2.0) / alpha;
        add_weighted_gram(df.stiffness, mesh, rem, 3.0 - alpha, -c, edge_cfg);
    }

    df.mass = Eigen::MatrixXd::Zero(n, n);
    auto hardy = [alpha](double d) { return std::pow(d * (2.0 - d), -alpha); };
    add_weighted_gram(df.mass, mesh, hardy, 2.0 - alpha, std::pow(2.0, alpha), edge_cfg);
    return df;
}

RayleighResult min_rayleigh(const DiscreteForm& df, double tol, int max_iterations) {
    const Eigen::Index n = df.stiffness.rows();
    if (n < 1 || df.stiffness.cols() != n || df.mass.rows() != n || df.mass.cols() != n)
        throw DomainError("min_rayleigh requires square stiffness and mass of equal size");
    if (!(tol > 0.0)) throw DomainError("min_rayleigh requires a positive tolerance");
    if (!(df.mass.diagonal().array() > 0.0).all()) throw DomainError("min_rayleigh requires a positive mass diagonal");

    const Eigen::VectorXd d = df.mass.diagonal().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd K = d.asDiagonal() * df.stiffness * d.asDiagonal();
    const Eigen::MatrixXd M = d.asDiagonal() * df.mass * d.asDiagonal();

    RayleighResult out;
    auto finish = [&](const Eigen::VectorXd& xs, double lambda) {
        Eigen::VectorXd v = d.asDiagonal() * xs;
        Eigen::Index imax;
        v.cwiseAbs().maxCoeff(&imax);
        v /= v(imax);
        out.eigenvector = v;
        out.min_quotient = lambda;
        return out;
    };
    if (n == 1) {
        out.iterations = 0;
        out.residual_norm = 0.0;
        return finish(Eigen::VectorXd::Ones(1), K(0, 0) / M(0, 0));
    }

    const Eigen::LDLT<Eigen::MatrixXd> solver(K);
    if (solver.info() != Eigen::Success) throw DomainError("min_rayleigh: stiffness factorization failed");

    const Eigen::Index p = std::min<Eigen::Index>(n, 12);
    Eigen::MatrixXd X(n, p);
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    X.col(0).setOnes();
    for (Eigen::Index c = 1; c < p; ++c)
        for (Eigen::Index r = 0; r < n; ++r) X(r, c) = unif(rng);

    double residual = HUGE_VAL, lambda = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        const Eigen::MatrixXd Y = solver.solve(M * X);
        Eigen::MatrixXd Kp = Y.transpose() * K * Y;
        Eigen::MatrixXd Mp = Y.transpose() * M * Y;
        Kp = 0.5 * (Kp + Kp.transpose()).eval();
        Mp = 0.5 * (Mp + Mp.transpose()).eval();
        const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ritz(Kp, Mp);
        if (ritz.info() != Eigen::Success) throw NonConvergenceError("min_rayleigh (Ritz step)", residual, tol);
        X = Y * ritz.eigenvectors();
        lambda = ritz.eigenvalues()(0);
        const Eigen::VectorXd x = X.col(0);
        const Eigen::VectorXd mx = M * x;
        residual = (K * x - lambda * mx).norm() / (std::abs(lambda) * mx.norm());
        if (residual <= tol) {
            out.iterations = it;
            out.residual_norm = residual;
            return finish(x, lambda);
        }
    }
    throw NonConvergenceError("min_rayleigh", residual, tol);
}

std::vector<SweepPoint> sharpness_sweep(FormKind kind, Alpha alpha, const std::vector<int>& n_list,
                                        const QuadConfig& cfg) {
    if (kind == FormKind::RegionalMinusRemainder) require_hardy_range(alpha, "sharpness_sweep");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 3) throw DomainError("sharpness_sweep requires n >= 3");
        if (i > 0 && n_list[i] <= n_list[i - 1]) throw DomainError("sharpness_sweep requires an increasing n list");
    }
    const double a = alpha.value();
    const double limit = limit_constant(kind, alpha);
    std::vector<SweepPoint> out;
    for (int n : n_list) {
        const auto u = TestFunction::truncated_ground_state(n, a);
        const auto mass = weighted_l2(u, Weight::hardy_weight(alpha), cfg);
        PVResult form;
        if (kind == FormKind::Killed) {
            form = energy_full_line(u, alpha, cfg);
        } else {
            form = energy_regional(u, {}, alpha, cfg);
            if (kind == FormKind::RegionalMinusRemainder) {
                const double c = (std::pow(2.0, a) - 2.0) / a;
                const auto rem = weighted_l2(u, Weight::inv_one_minus_x2_pow(a - 1.0), cfg);
                form.value -= c * rem.value;
                form.error_estimate += c * rem.error_estimate;
            }
        }
        SweepPoint pt;
        pt.n = n;
        pt.quotient = form.value / mass.value;
        pt.limit_constant = limit;
        pt.gap = pt.quotient - limit;
        pt.error_estimate = (form.error_estimate + std::abs(pt.quotient) * mass.error_estimate) / mass.value;
        out.push_back(pt);
    }
    return out;
}

}  // namespace fhardy
