#include "acceptance.hpp"

#include "lorcone/comparison.hpp"
#include "lorcone/config.hpp"
#include "lorcone/cone.hpp"
#include "lorcone/errors.hpp"
#include "lorcone/llstructure.hpp"
#include "lorcone/warp.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace lorcone;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kViolation = 2;

constexpr const char* kFooter = R"(Points are written `t;fiber`, e.g. `0.5;1,0` in E^2, `1;0:0.25` on a graph
(edge 0, offset 0.25) or `1;c` for the vertex labelled c.

CSV formats:
  geodesic --out: t,fiber
  certify --out:  triangle,p_t,p_fiber,q_t,q_fiber,s_p,s_q,tau_cone,tau_model,gap,status
    (status is compared, unrelated or informational; fiber columns are quoted)

Exit codes: 0 success or consistent, 2 violation or failed check, 1 error.
LORCONE_THREADS caps the number of certification threads.)";

std::string num(double v) {
    std::ostringstream os;
    os.precision(9);
    os << v;
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_tau(const ConeConfig& cfg, const std::string& ps, const std::string& qs) {
    const GeneralizedCone& cone = cfg.get();
    const ConePoint p = parse_point(cone, ps);
    const ConePoint q = parse_point(cone, qs);
    const RelationVerdict v = relate(cone, p, q, true);
    std::cout << "tau " << num(time_separation(cone, p, q)) << '\n'
              << "relation " << to_string(v.relation) << (v.reversed ? " (q before p)" : "") << '\n'
              << "fiber_distance " << num(v.fiber_distance) << '\n'
              << "null_reach " << num(v.null_reach) << '\n';
    if (v.forward_horizon) std::cout << "forward_horizon " << num(*v.forward_horizon) << '\n';
    if (v.h_of_distance) std::cout << "null_arrival_time " << num(*v.h_of_distance) << '\n';
    return kOk;
}

int cmd_geodesic(const ConeConfig& cfg, const std::string& ps, const std::string& qs,
                 const std::string& out, std::size_t n) {
    const GeneralizedCone& cone = cfg.get();
    const ConePoint p = parse_point(cone, ps);
    const ConePoint q = parse_point(cone, qs);
    const CausalPath path = maximizing_geodesic(cone, p, q, n);
    std::ofstream os(out);
    if (!os) throw ConfigError(out, "cannot write file");
    write_path_csv(os, cone.fiber(), path);
    std::cout << "tau " << num(time_separation(cone, p, q)) << '\n'
              << "length " << num(path_length(cone, path)) << '\n'
              << "class " << to_string(classify_path(cone, path)) << '\n'
              << "samples " << path.size() << '\n';
    return kOk;
}

int cmd_certify(ConeConfig cfg, double K, const std::string& dir, std::size_t n, const std::string& out,
                std::optional<std::uint64_t> seed, std::size_t threads) {
    SamplingOptions s = cfg.sampling;
    if (n > 0) s.n_triangles = n;
    if (seed) s.seed = *seed;
    if (threads > 0) s.threads = threads;
    const GeneralizedCone& cone = cfg.get();
    const CurvatureReport rep = certify_bound(cone, K, bound_direction_from_string(dir), s);
    if (!out.empty()) {
        std::ofstream os(out);
        if (!os) throw ConfigError(out, "cannot write file");
        write_report_csv(os, cone.fiber(), rep);
    }
    write_report_summary(std::cout, cone.fiber(), rep);
    return rep.violated ? kViolation : kOk;
}

int cmd_singularity(const ConeConfig& cfg, double K) {
    const SingularityReport r = singularity_report(cfg.get().warp(), K);
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "lower_bound_consistent " << yes(r.lower_bound_K_consistent) << '\n'
              << "interval_finite " << yes(r.interval_finite.a_finite) << ' '
              << yes(r.interval_finite.b_finite) << '\n'
              << "diameter_bound " << num(r.tau_diameter_bound) << '\n'
              << "big_bang " << (r.big_bang_inconclusive ? "inconclusive" : yes(r.big_bang)) << '\n'
              << "big_crunch " << (r.big_crunch_inconclusive ? "inconclusive" : yes(r.big_crunch)) << '\n'
              << "upper_bound_possible " << yes(r.upper_bound_possible) << '\n';
    for (const std::string& v : r.verdicts) std::cout << "verdict " << v << '\n';
    return r.lower_bound_K_consistent ? kOk : kViolation;
}

int cmd_llcheck(const std::string& path) {
    const ll::CurveCatalog c = ll::CurveCatalog::parse(read_file(path));
    const ll::LLVerdict v = ll::check_bare_llspace(c);
    std::cout << "points " << c.size() << '\n'
              << "curves " << c.curves().size() << '\n'
              << "pairs_checked " << v.pairs_checked << '\n'
              << "triples_checked " << v.triples_checked << '\n'
              << "failures " << v.failures.size() << '\n';
    for (const std::string& f : v.failures) std::cout << "failure " << f << '\n';
    std::cout << "verdict " << (v.passed() ? "bare Lorentzian length space" : "checks failed") << '\n';
    return v.passed() ? kOk : kViolation;
}

int cmd_selftest(const std::vector<int>& only) {
    bool ok = true;
    acceptance::run(only, [&](const acceptance::CriterionResult& r) {
        std::cout << acceptance::format(r) << std::endl;
        ok = ok && r.passed;
    });
    return ok ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal structure, time separation and curvature comparison on generalized cones"};
    app.footer(kFooter);
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON cone configuration");

    std::string p, q, out, dir = "below";
    std::size_t samples = 257, n = 0, threads = 0;
    double K = 0.0;
    std::optional<std::uint64_t> seed;
    std::string catalog;
    std::vector<int> only;

    auto* tau = app.add_subcommand("tau", "time separation and causal relation of two points");
    tau->add_option("p", p, "first point t;fiber")->required();
    tau->add_option("q", q, "second point t;fiber")->required();

    auto* geo = app.add_subcommand("geodesic", "sample the maximizing curve from p to q");
    geo->add_option("p", p, "first point t;fiber")->required();
    geo->add_option("q", q, "second point t;fiber")->required();
    geo->add_option("--out", out, "output CSV (t,fiber)")->required();
    geo->add_option("--samples", samples, "number of samples")->check(CLI::Range(2, 1000000));

    auto* cert = app.add_subcommand("certify", "sample triangles against a timelike curvature bound");
    cert->add_option("--K", K, "model curvature")->required();
    cert->add_option("--dir", dir, "below or above")->check(CLI::IsMember({"below", "above"}));
    cert->add_option("--n", n, "number of triangles (default from config, else 200)");
    cert->add_option("--out", out, "report CSV");
    cert->add_option("--seed", seed, "sampling seed (default from config)");
    cert->add_option("--threads", threads, "worker threads (default: all cores)");

    auto* sing = app.add_subcommand("singularity", "warping-function curvature and singularity criteria");
    sing->add_option("--K", K, "curvature bound to test")->required();

    auto* llc = app.add_subcommand("llcheck", "verify a finite curve catalog");
    llc->add_option("catalog", catalog, "catalog file (curve from to length class)")->required();

    auto* self = app.add_subcommand("selftest", "run the acceptance suite");
    self->add_option("--only", only, "criterion numbers to run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: usage: " << e.what() << '\n';
        return kError;
    }

    try {
        if (llc->parsed()) return cmd_llcheck(catalog);
        if (self->parsed()) return cmd_selftest(only);
        if (config_path.empty()) throw ConfigError("--config", "required for this command");
        ConeConfig cfg = load_config(config_path);
        if (tau->parsed()) return cmd_tau(cfg, p, q);
        if (geo->parsed()) return cmd_geodesic(cfg, p, q, out, samples);
        if (cert->parsed()) return cmd_certify(std::move(cfg), K, dir, n, out, seed, threads);
        if (sing->parsed()) return cmd_singularity(cfg, K);
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << '\n';
    } catch (const DomainError& e) {
        std::cerr << "error: domain: " << e.what() << '\n';
    } catch (const IndeterminateError& e) {
        std::cerr << "error: indeterminate: " << e.what() << '\n';
    } catch (const ConvergenceError& e) {
        std::cerr << "error: convergence: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
    }
    return kError;
}
