#include "lorcone/config.hpp"

#include "lorcone/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace lorcone {

namespace {

using json = nlohmann::json;

void allow_only(const json& obj, const std::string& path, std::set<std::string> keys) {
    if (!obj.is_object()) throw ConfigError(path, "expected an object");
    for (const auto& [k, v] : obj.items()) {
        if (!keys.count(k))
            throw ConfigError(path.empty() ? k : path + "." + k, "unknown field");
    }
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError(path.empty() ? key : path + "." + key, "missing field");
    return obj.at(key);
}

double number(const json& v, const std::string& path) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw ConfigError(path, "expected a number or \"inf\"/\"-inf\"");
}

double finite_number(const json& v, const std::string& path) {
    const double x = number(v, path);
    if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
    return x;
}

double opt_number(const json& obj, const std::string& path, const std::string& key, double fallback) {
    return obj.contains(key) ? finite_number(obj.at(key), path + "." + key) : fallback;
}

std::size_t count(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError(path, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

std::string text(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path, "expected a string");
    return v.get<std::string>();
}

std::optional<Interval> parse_interval(const json& root) {
    if (!root.contains("interval")) return std::nullopt;
    const json& iv = root.at("interval");
    allow_only(iv, "interval", {"a", "b"});
    Interval I{number(require(iv, "interval", "a"), "interval.a"),
               number(require(iv, "interval", "b"), "interval.b")};
    if (!(I.a < I.b)) throw ConfigError("interval", "needs a < b");
    return I;
}

WarpSpec parse_warp(const json& w, std::optional<Interval> interval) {
    if (!w.is_object()) throw ConfigError("warp", "expected an object");
    const std::string kind_name = text(require(w, "warp", "kind"), "warp.kind");
    WarpKind kind;
    try {
        kind = warp_kind_from_string(kind_name);
    } catch (const ConfigError& e) {
        throw ConfigError("warp.kind", e.what());
    }
    auto need_interval = [&]() {
        if (!interval) throw ConfigError("interval", "missing field");
        return *interval;
    };
    try {
        switch (kind) {
            case WarpKind::constant:
                allow_only(w, "warp", {"kind", "c"});
                return WarpSpec::constant(finite_number(require(w, "warp", "c"), "warp.c"),
                                          need_interval());
            case WarpKind::power:
                allow_only(w, "warp", {"kind", "p", "amplitude"});
                return WarpSpec::power(finite_number(require(w, "warp", "p"), "warp.p"),
                                       need_interval(), opt_number(w, "warp", "amplitude", 1.0));
            case WarpKind::sampled: {
                allow_only(w, "warp", {"kind", "samples", "interpolation"});
                const json& s = require(w, "warp", "samples");
                if (!s.is_array()) throw ConfigError("warp.samples", "expected an array of [t, f]");
                std::vector<std::pair<double, double>> samples;
                for (std::size_t i = 0; i < s.size(); ++i) {
                    const std::string p = "warp.samples[" + std::to_string(i) + "]";
                    if (!s[i].is_array() || s[i].size() != 2) throw ConfigError(p, "expected [t, f]");
                    samples.emplace_back(finite_number(s[i][0], p + "[0]"),
                                         finite_number(s[i][1], p + "[1]"));
                }
                Interpolation rule = Interpolation::linear;
                if (w.contains("interpolation")) {
                    const std::string r = text(w.at("interpolation"), "warp.interpolation");
                    if (r == "linear") rule = Interpolation::linear;
                    else if (r == "cubic_spline") rule = Interpolation::cubic_spline;
                    else throw ConfigError("warp.interpolation", "expected linear or cubic_spline");
                }
                return WarpSpec::sampled(std::move(samples), rule, interval);
            }
            default:
                allow_only(w, "warp", {"kind", "amplitude", "rate"});
                return WarpSpec::elementary(kind, need_interval(),
                                            opt_number(w, "warp", "amplitude", 1.0),
                                            opt_number(w, "warp", "rate", 1.0));
        }
    } catch (const DomainError& e) {
        throw ConfigError("warp", e.what());
    }
}

FiberPtr parse_fiber(const json& f) {
    if (!f.is_object()) throw ConfigError("fiber", "expected an object");
    const std::string kind = text(require(f, "fiber", "kind"), "fiber.kind");
    try {
        if (kind == "real_line") {
            allow_only(f, "fiber", {"kind"});
            return std::make_shared<RealLine>();
        }
        if (kind == "circle") {
            allow_only(f, "fiber", {"kind", "radius"});
            return std::make_shared<Circle>(opt_number(f, "fiber", "radius", 1.0));
        }
        if (kind == "euclidean") {
            allow_only(f, "fiber", {"kind", "n"});
            const std::size_t n = count(require(f, "fiber", "n"), "fiber.n");
            return std::make_shared<EuclideanN>(n);
        }
        if (kind == "sphere2") {
            allow_only(f, "fiber", {"kind", "radius", "tie_break_seed"});
            std::optional<std::uint64_t> seed;
            if (f.contains("tie_break_seed")) seed = count(f.at("tie_break_seed"), "fiber.tie_break_seed");
            return std::make_shared<Sphere2>(opt_number(f, "fiber", "radius", 1.0), seed);
        }
        if (kind == "hyperbolic2") {
            allow_only(f, "fiber", {"kind", "radius"});
            return std::make_shared<Hyperbolic2>(opt_number(f, "fiber", "radius", 1.0));
        }
        if (kind == "graph") {
            allow_only(f, "fiber", {"kind", "edges"});
            const json& e = require(f, "fiber", "edges");
            std::string list;
            if (e.is_string()) {
                list = e.get<std::string>();
            } else if (e.is_array()) {
                for (std::size_t i = 0; i < e.size(); ++i) {
                    const std::string p = "fiber.edges[" + std::to_string(i) + "]";
                    if (!e[i].is_array() || e[i].size() != 3) throw ConfigError(p, "expected [u, v, weight]");
                    auto label = [&](const json& v, const std::string& q) {
                        if (v.is_string()) return v.get<std::string>();
                        if (v.is_number_integer()) return std::to_string(v.get<long long>());
                        throw ConfigError(q, "expected a vertex label");
                    };
                    std::ostringstream line;
                    line.precision(17);
                    line << label(e[i][0], p + "[0]") << ' ' << label(e[i][1], p + "[1]") << ' '
                         << finite_number(e[i][2], p + "[2]") << '\n';
                    list += line.str();
                }
            } else {
                throw ConfigError("fiber.edges", "expected an edge-list string or an array");
            }
            try {
                return std::make_shared<MetricGraph>(MetricGraph::from_edge_list(list));
            } catch (const std::exception& err) {
                throw ConfigError("fiber.edges", err.what());
            }
        }
    } catch (const DomainError& e) {
        throw ConfigError("fiber", e.what());
    }
    throw ConfigError("fiber.kind", "unknown fiber kind '" + kind + "'");
}

}  // namespace

ConeConfig parse_config(std::string_view doc) {
    json root;
    try {
        root = json::parse(doc.begin(), doc.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < doc.size(); ++i) {
            if (doc[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col),
                          "malformed JSON");
    }
    allow_only(root, "", {"interval", "warp", "fiber", "tolerances", "sampling", "seed"});

    ConeConfig cfg;
    const std::optional<Interval> interval = parse_interval(root);
    WarpSpec warp = parse_warp(require(root, "", "warp"), interval);
    FiberPtr fiber = parse_fiber(require(root, "", "fiber"));

    ConeOptions options;
    quad::Tolerance qt = warp.tolerance();
    if (root.contains("tolerances")) {
        const json& t = root.at("tolerances");
        allow_only(t, "tolerances",
                   {"quad_abs", "quad_rel", "divergence_cap", "null", "segment", "report"});
        qt.abs = opt_number(t, "tolerances", "quad_abs", qt.abs);
        qt.rel = opt_number(t, "tolerances", "quad_rel", qt.rel);
        qt.divergence_cap = opt_number(t, "tolerances", "divergence_cap", qt.divergence_cap);
        options.null_tolerance = opt_number(t, "tolerances", "null", options.null_tolerance);
        options.segment_tolerance = opt_number(t, "tolerances", "segment", options.segment_tolerance);
        cfg.sampling.tolerance = opt_number(t, "tolerances", "report", cfg.sampling.tolerance);
        for (const auto& [k, v] : t.items())
            if (!(finite_number(v, "tolerances." + k) > 0.0))
                throw ConfigError("tolerances." + k, "must be positive");
    }
    if (root.contains("seed")) cfg.seed = count(root.at("seed"), "seed");
    cfg.sampling.seed = cfg.seed;
    cfg.cone.emplace(warp.with_tolerance(qt), fiber, options);

    if (root.contains("sampling")) {
        const json& s = root.at("sampling");
        allow_only(s, "sampling",
                   {"n_triangles", "t_window", "epsilon", "fiber_scale", "base_point",
                    "diameter_fraction", "pair_samples", "threads"});
        SamplingOptions& o = cfg.sampling;
        if (s.contains("n_triangles")) o.n_triangles = count(s.at("n_triangles"), "sampling.n_triangles");
        if (s.contains("pair_samples")) o.pair_samples = count(s.at("pair_samples"), "sampling.pair_samples");
        if (s.contains("threads")) o.threads = count(s.at("threads"), "sampling.threads");
        if (s.contains("t_window")) {
            const json& w = s.at("t_window");
            if (!w.is_array() || w.size() != 2) throw ConfigError("sampling.t_window", "expected [lo, hi]");
            o.t_window = std::make_pair(finite_number(w[0], "sampling.t_window[0]"),
                                        finite_number(w[1], "sampling.t_window[1]"));
            if (!(o.t_window->first <= o.t_window->second))
                throw ConfigError("sampling.t_window", "needs lo <= hi");
        }
        if (s.contains("epsilon")) o.epsilon = finite_number(s.at("epsilon"), "sampling.epsilon");
        o.fiber_scale = opt_number(s, "sampling", "fiber_scale", o.fiber_scale);
        o.diameter_fraction = opt_number(s, "sampling", "diameter_fraction", o.diameter_fraction);
        if (s.contains("base_point")) {
            try {
                o.base_point = fiber->canonical(fiber->decode(text(s.at("base_point"), "sampling.base_point")));
            } catch (const DomainError& e) {
                throw ConfigError("sampling.base_point", e.what());
            }
        }
    }
    return cfg;
}

ConeConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ConePoint parse_point(const GeneralizedCone& cone, std::string_view text) {
    const auto semi = text.find(';');
    if (semi == std::string_view::npos)
        throw ConfigError(std::string(text), "expected a point 't;fiber coordinates'");
    double t = 0.0;
    const std::string ts(text.substr(0, semi));
    try {
        std::size_t used = 0;
        t = std::stod(ts, &used);
        if (used != ts.size()) throw std::invalid_argument(ts);
    } catch (const std::exception&) {
        throw ConfigError(std::string(text), "invalid time coordinate '" + ts + "'");
    }
    try {
        return cone.point(t, cone.fiber().decode(text.substr(semi + 1)));
    } catch (const DomainError& e) {
        throw ConfigError(std::string(text), e.what());
    }
}

}  // namespace lorcone
