#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fhardy/convex.hpp"
#include "fhardy/errors.hpp"
#include "fhardy/forms.hpp"
#include "fhardy/laplacian.hpp"
#include "fhardy/sharpness.hpp"

namespace fhardy::cli {

using json = nlohmann::ordered_json;

namespace {

// Every default of the tool; each one is overridable by a flag.
struct Defaults {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    int max_subdivisions = 2000;
    double pv_excision_start = 0.1;
    std::vector<int> n_list{4, 16, 64, 256, 1024};
    int eigen_n = 256;
    double grid_min_offset = 1e-24;
    double grid_core_fraction = 0.25;
    double eigen_tol = 1e-10;
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 0x5eed2024ULL;
    double identity_rel_tol = 1e-6;
    double eigen_floor = 1e-3;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + " from '" + s + "'");
    }
    if (used != s.size()) throw UsageError("cannot parse " + what + " from '" + s + "'");
    return v;
}

Point2 parse_point(const std::string& s, const std::string& what) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw UsageError(what + " must be two comma-separated numbers");
    return {parse_double(parts[0], what), parse_double(parts[1], what)};
}

struct Context {
    std::string command;
    json parameters = json::object();
    json results = json::object();
    json errors = json::object();
    std::optional<std::uint64_t> seed;
    bool pass = true;
    /// Name of the quantity that broke its rule when pass is false.
    std::string failed;
};

json quad_json(const QuadConfig& q) {
    return {{"rel_tol", q.rel_tol},
            {"abs_tol", q.abs_tol},
            {"max_subdivisions", q.max_subdivisions},
            {"pv_excision_start", q.pv_excision_start}};
}

}  // namespace

TestFunction parse_u_spec(const std::string& spec, double alpha) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("u_spec must look like kind:args, got '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const auto args = split(spec.substr(colon + 1), ',');
    if (kind != "hat" && kind != "bump" && kind != "gsn")
        throw UsageError("unknown u_spec kind '" + kind + "' (bump, hat, gsn)");
    try {
        if (kind == "hat") {
            std::vector<double> nodes;
            for (const auto& a : args) nodes.push_back(parse_double(a, "hat node"));
            return TestFunction::hat(nodes);
        }
        std::map<std::string, double> kv;
        for (const auto& a : args) {
            const auto eq = a.find('=');
            if (eq == std::string::npos) throw UsageError("expected key=value in u_spec, got '" + a + "'");
            kv[a.substr(0, eq)] = parse_double(a.substr(eq + 1), a.substr(0, eq));
        }
        auto take = [&](const std::string& key, std::optional<double> fallback = std::nullopt) {
            const auto it = kv.find(key);
            if (it == kv.end()) {
                if (fallback) return *fallback;
                throw UsageError("u_spec '" + kind + "' requires " + key + "=");
            }
            const double v = it->second;
            kv.erase(it);
            return v;
        };
        std::optional<TestFunction> u;
        if (kind == "bump") {
            const double c = take("c"), w = take("w"), order = take("order", 1.0);
            u = TestFunction::smooth_bump(c, w, order);
        } else if (kind == "gsn") {
            const double n = take("n");
            if (n != std::floor(n) || n < 3) throw UsageError("gsn requires an integer n >= 3");
            u = TestFunction::truncated_ground_state(static_cast<int>(n), alpha);
        } else {
            throw UsageError("unknown u_spec kind '" + kind + "' (bump, hat, gsn)");
        }
        if (!kv.empty()) throw UsageError("unknown u_spec key '" + kv.begin()->first + "'");
        return *u;
    } catch (const DomainError& e) {
        throw UsageError(std::string("invalid u_spec: ") + e.what());
    }
}

namespace {

void cmd_constants(Context& c, int n, double alpha) {
    const Alpha a(alpha);
    if (n < 1) throw UsageError("--n must be >= 1");
    c.parameters = {{"n", n}, {"alpha", alpha}};
    const auto r = constants(n, a);
    c.results = {{"kappa", r.kappa_n_alpha},
                 {"beta", r.beta_term},
                 {"remainder_coeff_nd_unit_diam", r.remainder_coeff},
                 {"remainder_coeff_1d", a.in_hardy_range() ? remainder_coeff_1d(a, -1.0, 1.0) : 0.0},
                 {"killed_constant", killed_constant(a)}};
    c.errors = {{"kappa", 4e-15 * std::abs(r.kappa_n_alpha)}};
    c.pass = std::isfinite(r.kappa_n_alpha);
    c.failed = "kappa";
}

void cmd_laplacian(Context& c, double p, double x, double alpha, const std::string& method, const QuadConfig& q) {
    const Alpha a(alpha);
    if (method != "pv" && method != "closed" && method != "both")
        throw UsageError("--method must be pv, closed or both");
    c.parameters = {{"p", p}, {"x", x}, {"alpha", alpha}, {"method", method}, {"quad", quad_json(q)}};
    std::optional<PVResult> pv, closed;
    if (method != "closed") pv = regional_laplacian_pv(PowerFunction(p), x, a, q);
    if (method != "pv") closed = laplacian_power_closed_with_error(p, x, a, q);
    if (pv) {
        c.results["pv"] = pv->value;
        c.errors["pv"] = pv->error_estimate;
    }
    if (closed) {
        c.results["closed"] = closed->value;
        c.errors["closed"] = closed->error_estimate;
    }
    if (pv && closed) {
        const double disc = std::abs(pv->value - closed->value);
        const double budget = error_budget(pv->error_estimate + closed->error_estimate);
        c.results["discrepancy"] = disc;
        c.errors["combined"] = budget;
        c.pass = disc <= budget;
        c.failed = "discrepancy";
    }
}

void cmd_verify_identity(Context& c, const std::string& spec, double alpha, const QuadConfig& q, double rel) {
    const Alpha a(alpha);
    const auto u = parse_u_spec(spec, alpha);
    c.parameters = {{"u", spec}, {"alpha", alpha}, {"quad", quad_json(q)}};
    const auto b = verify_gsr_identity(u, a, q);
    c.results = {{"energy", b.energy},
                 {"gs_term", b.gs_term},
                 {"kappa_term", b.kappa_term},
                 {"phi_term", b.phi_term},
                 {"residual", b.residual}};
    c.errors = {{"summed", b.error_estimate}};
    c.pass = std::abs(b.residual) <= std::max(rel * std::abs(b.energy), error_budget(b.error_estimate));
    c.failed = "residual";
}

void cmd_hardy(Context& c, const std::string& spec, double lo, double hi, double alpha, const QuadConfig& q) {
    const Alpha a(alpha);
    if (!a.in_hardy_range()) throw UsageError("hardy requires 1 < alpha < 2");
    if (!(lo < hi)) throw UsageError("hardy requires --a < --b");
    const auto u = parse_u_spec(spec, alpha);
    c.parameters = {{"u", spec}, {"a", lo}, {"b", hi}, {"alpha", alpha}, {"quad", quad_json(q)}};
    const auto h = hardy_check_1d(u, {lo, hi}, a, q);
    c.results = {{"lhs", h.lhs}, {"rhs_main", h.rhs_main}, {"rhs_remainder", h.rhs_remainder}, {"slack", h.slack}};
    c.errors = {{"budget", h.error_budget}};
    c.pass = h.holds();
    c.failed = "slack";
}

void cmd_killed(Context& c, const std::string& spec, double alpha, const QuadConfig& q, double rel) {
    const Alpha a(alpha);
    const auto u = parse_u_spec(spec, alpha);
    c.parameters = {{"u", spec}, {"alpha", alpha}, {"quad", quad_json(q)}};
    const auto k = killed_check(u, a, q);
    c.results = {{"full_energy", k.full_energy},     {"regional_energy", k.regional_energy},
                 {"killing_term", k.killing_term},   {"gs_term", k.gs_term},
                 {"const_term", k.const_term},       {"identity_residual", k.identity_residual},
                 {"split_residual", k.split_residual}, {"ineq_slack", k.ineq_slack}};
    c.errors = {{"budget", k.error_budget}};
    const double tol = std::max(rel * std::abs(k.full_energy), k.error_budget);
    if (std::abs(k.identity_residual) > tol) c.failed = "identity_residual";
    else if (std::abs(k.split_residual) > tol) c.failed = "split_residual";
    else if (k.ineq_slack < -k.error_budget) c.failed = "ineq_slack";
    c.pass = c.failed.empty();
}

void cmd_sharpness(Context& c, const std::string& form, double alpha, const std::vector<int>& n_list, int eigen_n,
                   const GridSpec& grid, double eigen_tol, double floor, const std::string& out_path,
                   const QuadConfig& q) {
    const Alpha a(alpha);
    FormKind kind;
    try {
        kind = form_kind_from_string(form);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (kind == FormKind::RegionalMinusRemainder && !a.in_hardy_range())
        throw UsageError("regional_minus_remainder requires 1 < alpha < 2");
    c.parameters = {{"form", form},
                    {"alpha", alpha},
                    {"n_list", n_list},
                    {"eigen_n", eigen_n},
                    {"grid", {{"min_offset", grid.min_offset}, {"core_fraction", grid.core_fraction}}},
                    {"eigen_tol", eigen_tol},
                    {"quad", quad_json(q)}};
    const double limit = limit_constant(kind, a);
    c.results["limit_constant"] = limit;
    bool ok = true;
    json sweep = json::array();
    json errs = json::array();
    if (!n_list.empty()) {
        const auto pts = sharpness_sweep(kind, a, n_list, q);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto& p = pts[i];
            sweep.push_back({{"n", p.n}, {"quotient", p.quotient}, {"gap", p.gap}});
            errs.push_back(p.error_estimate);
            if (p.gap < -error_budget(p.error_estimate) && ok) {
                ok = false;
                c.failed = "sweep.gap(n=" + std::to_string(p.n) + ")";
            }
            if (kind == FormKind::Killed && i > 0 && !(p.quotient < pts[i - 1].quotient) && ok) {
                ok = false;
                c.failed = "sweep.quotient(n=" + std::to_string(p.n) + ") not decreasing";
            }
        }
        if (!out_path.empty()) {
            std::ofstream csv(out_path);
            if (!csv) throw UsageError("cannot open --out file '" + out_path + "'");
            csv.precision(17);
            csv << "n,quotient,limit_constant,gap\n";
            for (const auto& p : pts) csv << p.n << ',' << p.quotient << ',' << p.limit_constant << ',' << p.gap << '\n';
        }
    }
    c.results["sweep"] = sweep;
    c.errors["sweep"] = errs;
    if (eigen_n > 0) {
        const auto df = assemble(kind, a, eigen_n, q, grid);
        const auto r = min_rayleigh(df, eigen_tol);
        c.results["eigen"] = {{"n", eigen_n},
                              {"min_quotient", r.min_quotient},
                              {"ratio", r.min_quotient / limit},
                              {"iterations", r.iterations}};
        c.errors["eigen_residual"] = r.residual_norm;
        if (r.min_quotient < limit * (1.0 - floor) && ok) {
            ok = false;
            c.failed = "eigen.min_quotient";
        }
    }
    c.pass = ok;
}

void cmd_convex(Context& c, const std::string& shape, const std::string& ukind, const std::string& center,
                const std::string& size, double alpha, const MCConfig& mc) {
    const Alpha a(alpha);
    if (!a.in_hardy_range()) throw UsageError("convex requires 1 < alpha < 2");
    ConvexDomain2D dom = ConvexDomain2D::disk({0.0, 0.0}, 1.0);
    if (shape == "square") dom = ConvexDomain2D::rectangle({-0.5, -0.5}, {0.5, 0.5});
    else if (shape != "disk") throw UsageError("--shape must be disk or square");
    const Point2 ctr = parse_point(center, "--center");
    std::optional<TestFunction2D> u;
    try {
        if (ukind == "radial") {
            u = TestFunction2D::radial_bump(ctr, parse_double(size, "--size"));
        } else if (ukind == "tensor") {
            u = TestFunction2D::tensor_bump(ctr, parse_point(size, "--size"));
        } else {
            throw UsageError("--u must be radial or tensor");
        }
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (!u->support_inside(dom)) throw UsageError("bump support must lie strictly inside the domain");
    if (mc.sample_count < 10000) throw UsageError("--samples must be at least 10000");
    c.parameters = {{"shape", shape},
                    {"domain", dom.describe()},
                    {"u", u->describe()},
                    {"alpha", alpha},
                    {"samples", mc.sample_count},
                    {"stratification", to_string(mc.stratification)},
                    {"batch_size", mc.batch_size}};
    c.seed = mc.rng_seed;
    const auto r = hardy_check_convex(dom, *u, a, mc);
    c.results = {{"lhs", r.lhs},
                 {"rhs_main", r.rhs_main},
                 {"rhs_remainder", r.rhs_remainder},
                 {"slack", r.slack},
                 {"diameter", dom.diameter()}};
    c.errors = {{"lhs_stderr", r.lhs_stderr}, {"rhs_stderr", r.rhs_stderr}, {"slack_stderr", r.slack_stderr}};
    c.pass = r.holds();
    c.failed = "slack";
}

json report(const Context& c, double ms) {
    json j;
    j["schema"] = 1;
    j["command"] = c.command;
    j["parameters"] = c.parameters;
    j["results"] = c.results;
    j["error_estimates"] = c.errors;
    j["wall_time_ms"] = static_cast<std::int64_t>(std::llround(ms));
    if (c.seed) j["seed"] = *c.seed;
    if (!c.pass && !c.failed.empty()) j["failed_quantity"] = c.failed;
    j["pass"] = c.pass;
    return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const Defaults d;
    CLI::App app{"Numerical checks of fractional Hardy inequalities on intervals and convex planar domains"};
    app.require_subcommand(1);
    app.footer(
        "u_spec grammar: bump:c=<center>,w=<width>[,order=<k>] | hat:<n1>,<n2>,... | gsn:n=<n>\n"
        "Exit codes: 0 pass, 1 violation, 2 non-convergence, 64 usage error.");

    QuadConfig q;
    q.rel_tol = d.rel_tol;
    q.abs_tol = d.abs_tol;
    q.max_subdivisions = d.max_subdivisions;
    q.pv_excision_start = d.pv_excision_start;
    auto add_quad = [&](CLI::App* s) {
        s->add_option("--rel-tol", q.rel_tol, "Relative quadrature tolerance")->capture_default_str();
        s->add_option("--abs-tol", q.abs_tol, "Absolute quadrature tolerance")->capture_default_str();
        s->add_option("--max-subdivisions", q.max_subdivisions, "Adaptive panel cap")->capture_default_str();
        s->add_option("--pv-excision-start", q.pv_excision_start, "Largest PV window half-width")
            ->capture_default_str();
    };

    double alpha = 1.5, p = 0.0, x = 0.0, lo = -1.0, hi = 1.0, identity_rel = d.identity_rel_tol;
    int n = 1;
    std::string method = "both", uspec, form = "killed", out_path, shape = "disk", ukind = "radial",
                center = "0,0", size = "0.4";
    std::vector<int> n_list = d.n_list;
    int eigen_n = d.eigen_n;
    GridSpec grid{d.grid_min_offset, d.grid_core_fraction};
    double eigen_tol = d.eigen_tol, floor = d.eigen_floor;
    MCConfig mc;
    mc.sample_count = d.samples;
    mc.rng_seed = d.seed;
    std::string strat = to_string(mc.stratification);

    auto* s_const = app.add_subcommand("constants", "kappa_{n,alpha}, the beta value and remainder coefficients");
    s_const->add_option("--n", n, "Dimension")->capture_default_str();
    s_const->add_option("--alpha", alpha, "Kernel exponent in (0, 2)")->required();

    auto* s_lap = app.add_subcommand("laplacian", "Regional Laplacian of (1 - x^2)^p by PV quadrature and closed form");
    s_lap->add_option("--p", p, "Exponent p > -1")->required();
    s_lap->add_option("--x", x, "Point in (-1, 1)")->required();
    s_lap->add_option("--alpha", alpha, "Kernel exponent in (0, 2)")->required();
    s_lap->add_option("--method", method, "pv, closed or both")->capture_default_str();
    add_quad(s_lap);

    auto* s_id = app.add_subcommand("verify-identity", "Ground state representation on (-1, 1)");
    s_id->add_option("--u", uspec, "Test function (u_spec)")->required();
    s_id->add_option("--alpha", alpha, "Kernel exponent in (0, 2)")->required();
    s_id->add_option("--rel", identity_rel, "Pass threshold on residual / energy")->capture_default_str();
    add_quad(s_id);

    auto* s_hardy = app.add_subcommand("hardy", "Hardy inequality with remainder on (a, b)");
    s_hardy->add_option("--u", uspec, "Test function (u_spec), supported in (a, b)")->required();
    s_hardy->add_option("--a", lo, "Left end")->capture_default_str();
    s_hardy->add_option("--b", hi, "Right end")->capture_default_str();
    s_hardy->add_option("--alpha", alpha, "Kernel exponent in (1, 2)")->required();
    add_quad(s_hardy);

    auto* s_killed = app.add_subcommand("killed", "Killed-form identity and sharp inequality on (-1, 1)");
    s_killed->add_option("--u", uspec, "Test function (u_spec)")->required();
    s_killed->add_option("--alpha", alpha, "Kernel exponent in (0, 2)")->required();
    s_killed->add_option("--rel", identity_rel, "Pass threshold on residual / energy")->capture_default_str();
    add_quad(s_killed);

    auto* s_sharp = app.add_subcommand("sharpness", "Quotients of truncated ground states and discrete minima");
    s_sharp->add_option("--form", form, "regional, killed or regional_minus_remainder")->capture_default_str();
    s_sharp->add_option("--alpha", alpha, "Kernel exponent in (0, 2)")->required();
    s_sharp->add_option("--n-list", n_list, "Increasing truncation parameters, n >= 3")
        ->delimiter(',')
        ->capture_default_str();
    s_sharp->add_option("--eigen-n", eigen_n, "Grid size of the discrete minimum (0 skips it)")
        ->capture_default_str();
    s_sharp->add_option("--grid-min-offset", grid.min_offset, "Smallest node distance to +-1")
        ->capture_default_str();
    s_sharp->add_option("--grid-core-fraction", grid.core_fraction, "Share of uniform core nodes")
        ->capture_default_str();
    s_sharp->add_option("--eigen-tol", eigen_tol, "Eigen residual tolerance")->capture_default_str();
    s_sharp->add_option("--eigen-floor", floor, "Allowed relative shortfall of the minimum quotient below the constant")
        ->capture_default_str();
    s_sharp->add_option("--out", out_path, "CSV file with columns n,quotient,limit_constant,gap");
    add_quad(s_sharp);

    auto* s_convex = app.add_subcommand("convex", "Monte-Carlo Hardy inequality on the unit disk or square");
    s_convex->add_option("--shape", shape, "disk (radius 1) or square (side 1), both centered at 0")
        ->capture_default_str();
    s_convex->add_option("--u", ukind, "radial or tensor bump")->capture_default_str();
    s_convex->add_option("--center", center, "Bump center x,y")->capture_default_str();
    s_convex->add_option("--size", size, "Radius (radial) or half widths hx,hy (tensor)")->capture_default_str();
    s_convex->add_option("--alpha", alpha, "Kernel exponent in (1, 2)")->required();
    s_convex->add_option("--samples", mc.sample_count, "Monte-Carlo samples")->capture_default_str();
    s_convex->add_option("--seed", mc.rng_seed, "64-bit seed")->capture_default_str();
    s_convex->add_option("--stratification", strat, "radial or none")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kPass;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    Context c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        q.validate();
        if (s_const->parsed()) {
            c.command = "constants";
            cmd_constants(c, n, alpha);
        } else if (s_lap->parsed()) {
            c.command = "laplacian";
            cmd_laplacian(c, p, x, alpha, method, q);
        } else if (s_id->parsed()) {
            c.command = "verify-identity";
            cmd_verify_identity(c, uspec, alpha, q, identity_rel);
        } else if (s_hardy->parsed()) {
            c.command = "hardy";
            cmd_hardy(c, uspec, lo, hi, alpha, q);
        } else if (s_killed->parsed()) {
            c.command = "killed";
            cmd_killed(c, uspec, alpha, q, identity_rel);
        } else if (s_sharp->parsed()) {
            c.command = "sharpness";
            cmd_sharpness(c, form, alpha, n_list, eigen_n, grid, eigen_tol, floor, out_path, q);
        } else if (s_convex->parsed()) {
            c.command = "convex";
            mc.stratification = stratification_from_string(strat);
            cmd_convex(c, shape, ukind, center, size, alpha, mc);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const NonConvergenceError& e) {
        c.pass = false;
        c.results = {{"error", e.what()}};
        c.failed = e.quantity();
        c.errors = {{"estimate", e.error_estimate()}, {"tolerance", e.tolerance()}};
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        out << report(c, ms).dump(2) << '\n';
        err << e.what() << '\n';
        return kNonConvergence;
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out << report(c, ms).dump(2) << '\n';
    if (!c.pass) {
        err << c.command << ": check failed: " << c.failed << '\n';
        return kViolation;
    }
    return kPass;
}

}  // namespace fhardy::cli
