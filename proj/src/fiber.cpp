#include "lorcone/fiber.hpp"

#include "lorcone/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace lorcone {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInfD = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
// Lorentzian product on R^{1,2}, signature (+, -, -) so hyperboloid points have <x,x> = 1.
double ldot(const Vec3& a, const Vec3& b) { return a[0] * b[0] - a[1] * b[1] - a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 to3(const FiberPoint& p) { return {p[0], p[1], p[2]}; }
FiberPoint from3(const Vec3& v) { return FiberPoint{v[0], v[1], v[2]}; }

double parse_double(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw DomainError("empty coordinate");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw DomainError("cannot parse coordinate '" + std::string(s) + "'");
    }
    return v;
}

std::string fmt(double x, int precision = 9) {
    std::ostringstream os;
    os.precision(precision);
    os << x;
    return os.str();
}

void require_size(const FiberPoint& p, std::size_t n, const std::string& space) {
    if (p.size() != n) {
        throw DomainError(space + " point needs " + std::to_string(n) + " coordinates, got " +
                          std::to_string(p.size()));
    }
    for (double v : p.c) {
        if (!std::isfinite(v)) throw DomainError(space + " point has a non-finite coordinate");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// FiberSpace defaults

FiberPoint FiberSpace::geodesic_point(const FiberPoint&, const FiberPoint&, double) const {
    throw DomainError("fiber '" + name() + "' does not provide geodesics");
}

bool FiberSpace::unique_geodesic(const FiberPoint&, const FiberPoint&) const { return true; }

std::string FiberSpace::encode(const FiberPoint& p, int precision) const {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += fmt(p[i], precision);
    }
    return out;
}

FiberPoint FiberSpace::decode(std::string_view text) const {
    FiberPoint p;
    while (true) {
        const auto pos = text.find(',');
        p.c.push_back(parse_double(text.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        text.remove_prefix(pos + 1);
    }
    return canonical(p);
}

// ---------------------------------------------------------------------------
// RealLine

double RealLine::distance(const FiberPoint& x, const FiberPoint& y) const {
    return std::abs(x[0] - y[0]);
}

FiberPoint RealLine::geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const {
    return FiberPoint{x[0] + u * (y[0] - x[0])};
}

FiberPoint RealLine::canonical(const FiberPoint& p) const {
    require_size(p, 1, "real_line");
    return p;
}

FiberPoint RealLine::sample_near(const FiberPoint& base, double radius, Rng& rng) const {
    std::uniform_real_distribution<double> u(-radius, radius);
    return FiberPoint{base[0] + u(rng)};
}

FiberPoint RealLine::sample_point(double scale, Rng& rng) const {
    std::uniform_real_distribution<double> u(-scale, scale);
    return FiberPoint{u(rng)};
}

// ---------------------------------------------------------------------------
// Circle

Circle::Circle(double radius) : radius_(radius) {
    if (!(radius > 0.0)) throw DomainError("circle radius must be positive");
}

double Circle::distance(const FiberPoint& x, const FiberPoint& y) const {
    double d = std::fmod(std::abs(x[0] - y[0]), 2 * kPi);
    return radius_ * std::min(d, 2 * kPi - d);
}

bool Circle::unique_geodesic(const FiberPoint& x, const FiberPoint& y) const {
    return std::abs(distance(x, y) - kPi * radius_) > 1e-12 * radius_;
}

FiberPoint Circle::geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const {
    double delta = std::remainder(y[0] - x[0], 2 * kPi);  // in [-pi, pi]
    if (std::abs(std::abs(delta) - kPi) <= 1e-12) delta = kPi;
    return canonical(FiberPoint{x[0] + u * delta});
}

FiberPoint Circle::canonical(const FiberPoint& p) const {
    require_size(p, 1, "circle");
    double a = std::fmod(p[0], 2 * kPi);
    if (a < 0) a += 2 * kPi;
    return FiberPoint{a};
}

FiberPoint Circle::sample_near(const FiberPoint& base, double radius, Rng& rng) const {
    std::uniform_real_distribution<double> u(-radius / radius_, radius / radius_);
    return canonical(FiberPoint{base[0] + u(rng)});
}

FiberPoint Circle::sample_point(double, Rng& rng) const {
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    return FiberPoint{u(rng)};
}

// ---------------------------------------------------------------------------
// EuclideanN

EuclideanN::EuclideanN(std::size_t n) : n_(n) {
    if (n == 0) throw DomainError("euclidean dimension must be >= 1");
}

double EuclideanN::distance(const FiberPoint& x, const FiberPoint& y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
}

FiberPoint EuclideanN::geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const {
    FiberPoint m = x;
    for (std::size_t i = 0; i < n_; ++i) m.c[i] = x[i] + u * (y[i] - x[i]);
    return m;
}

FiberPoint EuclideanN::canonical(const FiberPoint& p) const {
    require_size(p, n_, "euclidean");
    return p;
}

FiberPoint EuclideanN::sample_near(const FiberPoint& base, double radius, Rng& rng) const {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n_);
    double r2;
    do {
        r2 = 0.0;
        for (auto& c : v) {
            c = u(rng);
            r2 += c * c;
        }
    } while (r2 > 1.0);
    FiberPoint out = base;
    for (std::size_t i = 0; i < n_; ++i) out.c[i] += radius * v[i];
    return out;
}

FiberPoint EuclideanN::sample_point(double scale, Rng& rng) const {
    std::uniform_real_distribution<double> u(-scale, scale);
    FiberPoint p;
    p.c.resize(n_);
    for (auto& c : p.c) c = u(rng);
    return p;
}

// ---------------------------------------------------------------------------
// Sphere2

Sphere2::Sphere2(double radius, std::optional<std::uint64_t> tie_break_seed)
    : radius_(radius), tie_break_seed_(tie_break_seed) {
    if (!(radius > 0.0)) throw DomainError("sphere radius must be positive");
}

double Sphere2::distance(const FiberPoint& x, const FiberPoint& y) const {
    const Vec3 a = to3(x);
    const Vec3 b = to3(y);
    return radius_ * std::atan2(norm(cross(a, b)), dot(a, b));
}

bool Sphere2::unique_geodesic(const FiberPoint& x, const FiberPoint& y) const {
    const Vec3 a = to3(x);
    const Vec3 b = to3(y);
    return !(norm(cross(a, b)) < 1e-12 && dot(a, b) < 0.0);
}

FiberPoint Sphere2::exp_map(const FiberPoint& base, const Vec3& v, double rho) const {
    const Vec3 x = to3(base);
    const double th = rho / radius_;
    Vec3 m{};
    for (int i = 0; i < 3; ++i) m[i] = std::cos(th) * x[i] + std::sin(th) * v[i];
    const double n = norm(m);
    for (auto& c : m) c /= n;
    return from3(m);
}

FiberPoint Sphere2::geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const {
    const Vec3 a = to3(x);
    const Vec3 b = to3(y);
    const double theta = std::atan2(norm(cross(a, b)), dot(a, b));
    if (theta == 0.0) return x;
    Vec3 dir{};
    if (unique_geodesic(x, y)) {
        const double ab = dot(a, b);
        for (int i = 0; i < 3; ++i) dir[i] = b[i] - ab * a[i];
    } else {
        // Antipodes: canonical axis least aligned with x.
        int axis = 0;
        for (int i = 1; i < 3; ++i) {
            if (std::abs(a[i]) < std::abs(a[axis])) axis = i;
        }
        Vec3 e{0.0, 0.0, 0.0};
        e[axis] = 1.0;
        const double ea = dot(e, a);
        for (int i = 0; i < 3; ++i) dir[i] = e[i] - ea * a[i];
        if (tie_break_seed_) {
            // Rotate inside the tangent plane by a seed-derived angle.
            const Vec3 w = cross(a, dir);
            const double ang = 2 * kPi * static_cast<double>(*tie_break_seed_ % 1000003) / 1000003.0;
            for (int i = 0; i < 3; ++i) dir[i] = std::cos(ang) * dir[i] + std::sin(ang) * w[i];
        }
    }
    const double n = norm(dir);
    for (auto& c : dir) c /= n;
    return exp_map(x, dir, u * theta * radius_);
}

FiberPoint Sphere2::canonical(const FiberPoint& p) const {
    require_size(p, 3, "sphere2");
    const Vec3 v = to3(p);
    const double n = norm(v);
    if (!(n > 0.0)) throw DomainError("sphere2 point must be a nonzero vector");
    return FiberPoint{v[0] / n, v[1] / n, v[2] / n};
}

FiberPoint Sphere2::sample_near(const FiberPoint& base, double radius, Rng& rng) const {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Vec3 x = to3(base);
    Vec3 w{g(rng), g(rng), g(rng)};
    const double wx = dot(w, x);
    for (int i = 0; i < 3; ++i) w[i] -= wx * x[i];
    const double n = norm(w);
    for (auto& c : w) c /= n;
    const double rho = std::min(radius, kPi * radius_ * 0.999) * std::sqrt(u(rng));
    return exp_map(base, w, rho);
}

FiberPoint Sphere2::sample_point(double, Rng& rng) const {
    std::normal_distribution<double> g(0.0, 1.0);
    return canonical(FiberPoint{g(rng), g(rng), g(rng)});
}

// ---------------------------------------------------------------------------
// Hyperbolic2

Hyperbolic2::Hyperbolic2(double radius) : radius_(radius) {
    if (!(radius > 0.0)) throw DomainError("hyperbolic radius must be positive");
}

double Hyperbolic2::distance(const FiberPoint& x, const FiberPoint& y) const {
    // acosh(<x,y>) = 2 asinh(|x - y| / 2) with the spacelike norm of x - y;
    // the second form stays accurate for nearby points.
    const Vec3 d{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
    const double q = std::max(0.0, -ldot(d, d));
    return radius_ * 2.0 * std::asinh(0.5 * std::sqrt(q));
}

FiberPoint Hyperbolic2::exp_map(const FiberPoint& base, const Vec3& v, double rho) const {
    const Vec3 x = to3(base);
    const double th = rho / radius_;
    Vec3 m{};
    for (int i = 0; i < 3; ++i) m[i] = std::cosh(th) * x[i] + std::sinh(th) * v[i];
    return canonical(from3(m));
}

FiberPoint Hyperbolic2::geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const {
    const double theta = distance(x, y) / radius_;
    if (theta == 0.0) return x;
    Vec3 m{};
    if (theta < 1e-6) {
        for (int i = 0; i < 3; ++i) m[i] = (1 - u) * x[i] + u * y[i];
    } else {
        const double s = std::sinh(theta);
        const double wa = std::sinh((1 - u) * theta) / s;
        const double wb = std::sinh(u * theta) / s;
        for (int i = 0; i < 3; ++i) m[i] = wa * x[i] + wb * y[i];
    }
    return canonical(from3(m));
}

FiberPoint Hyperbolic2::canonical(const FiberPoint& p) const {
    if (p.size() == 2) {
        require_size(p, 2, "hyperbolic2");
        return FiberPoint{std::sqrt(1.0 + p[0] * p[0] + p[1] * p[1]), p[0], p[1]};
    }
    require_size(p, 3, "hyperbolic2");
    Vec3 v = to3(p);
    const double q = ldot(v, v);
    if (!(q > 0.0) || !(v[0] > 0.0)) {
        throw DomainError("hyperbolic2 point must lie on the upper sheet x0^2 - x1^2 - x2^2 = 1");
    }
    // Renormalize onto the sheet by recomputing x0 from the spatial part.
    const double s = 1.0 / std::sqrt(q);
    return FiberPoint{std::sqrt(1.0 + v[1] * v[1] * s * s + v[2] * v[2] * s * s), v[1] * s,
                      v[2] * s};
}

FiberPoint Hyperbolic2::sample_near(const FiberPoint& base, double radius, Rng& rng) const {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Vec3 x = to3(base);
    Vec3 w{g(rng), g(rng), g(rng)};
    // Project to the tangent space {v : <v, x> = 0} and normalize (<v,v> = -1).
    const double wx = ldot(w, x);
    for (int i = 0; i < 3; ++i) w[i] -= wx * x[i];
    const double n = std::sqrt(-ldot(w, w));
    for (auto& c : w) c /= n;
    return exp_map(base, w, radius * std::sqrt(u(rng)));
}

FiberPoint Hyperbolic2::sample_point(double scale, Rng& rng) const {
    const FiberPoint origin{1.0, 0.0, 0.0};
    return sample_near(origin, scale, rng);
}

// ---------------------------------------------------------------------------
// MetricGraph

MetricGraph MetricGraph::from_edge_list(std::string_view text) {
    std::vector<std::string> labels;
    std::map<std::string, std::size_t> index;
    std::vector<Edge> edges;
    auto id_of = [&](const std::string& label) {
        auto [it, inserted] = index.emplace(label, labels.size());
        if (inserted) labels.push_back(label);
        return it->second;
    };
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string u, v, w, extra;
        if (!(ls >> u)) continue;
        if (!(ls >> v >> w) || (ls >> extra)) {
            throw ConfigError("edge list line " + std::to_string(lineno),
                              "expected `u v weight`");
        }
        double weight = 0.0;
        try {
            weight = parse_double(w);
        } catch (const DomainError&) {
            throw ConfigError("edge list line " + std::to_string(lineno), "bad weight '" + w + "'");
        }
        const std::size_t iu = id_of(u);
        const std::size_t iv = id_of(v);
        edges.push_back({iu, iv, weight});
    }
    return MetricGraph(std::move(labels), std::move(edges));
}

MetricGraph::MetricGraph(std::vector<std::string> vertex_labels, std::vector<Edge> edges)
    : labels_(std::move(vertex_labels)), edges_(std::move(edges)) {
    const std::size_t n = labels_.size();
    if (n == 0 || edges_.empty()) throw DomainError("metric graph needs at least one edge");
    incident_.assign(n, {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.u >= n || ed.v >= n) throw DomainError("edge " + std::to_string(e) + " has an unknown vertex");
        if (ed.u == ed.v) throw DomainError("edge " + std::to_string(e) + " is a self-loop");
        if (!(ed.weight > 0.0) || !std::isfinite(ed.weight)) {
            throw DomainError("edge " + std::to_string(e) + " needs a positive finite weight");
        }
        incident_[ed.u].push_back(e);
        incident_[ed.v].push_back(e);
    }
    // Floyd-Warshall with successor table; strict improvement keeps the
    // first-found (lowest intermediate index) path on ties.
    dist_.assign(n * n, kInfD);
    next_.assign(n * n, kNone);
    for (std::size_t i = 0; i < n; ++i) {
        dist_[i * n + i] = 0.0;
        next_[i * n + i] = i;
    }
    for (const Edge& ed : edges_) {
        if (ed.weight < dist_[ed.u * n + ed.v]) {
            dist_[ed.u * n + ed.v] = dist_[ed.v * n + ed.u] = ed.weight;
            next_[ed.u * n + ed.v] = ed.v;
            next_[ed.v * n + ed.u] = ed.u;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double dik = dist_[i * n + k];
            if (dik == kInfD) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const double cand = dik + dist_[k * n + j];
                if (cand < dist_[i * n + j] * (1.0 - 1e-15)) {
                    dist_[i * n + j] = cand;
                    next_[i * n + j] = next_[i * n + k];
                }
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (dist_[j] == kInfD) {
            throw DomainError("metric graph is disconnected: vertex '" + labels_[j] +
                              "' unreachable from '" + labels_[0] + "'");
        }
    }
}

std::size_t MetricGraph::vertex_index(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return i;
    }
    throw DomainError("unknown graph vertex '" + std::string(label) + "'");
}

FiberPoint MetricGraph::vertex_point(std::size_t vertex) const {
    const std::size_t e = *std::min_element(incident_[vertex].begin(), incident_[vertex].end());
    const Edge& ed = edges_[e];
    return FiberPoint{static_cast<double>(e), ed.u == vertex ? 0.0 : ed.weight};
}

FiberPoint MetricGraph::canonical(const FiberPoint& p) const {
    require_size(p, 2, "graph");
    const double ef = p[0];
    if (ef < 0 || ef != std::floor(ef) || ef >= static_cast<double>(edges_.size())) {
        throw DomainError("graph point has invalid edge id " + fmt(ef));
    }
    const Edge& ed = edges_[static_cast<std::size_t>(ef)];
    const double tol = 1e-12 * ed.weight;
    if (p[1] < -tol || p[1] > ed.weight + tol) {
        throw DomainError("graph point offset " + fmt(p[1]) + " outside [0, " + fmt(ed.weight) + "]");
    }
    if (p[1] <= tol) return vertex_point(ed.u);
    if (p[1] >= ed.weight - tol) return vertex_point(ed.v);
    return p;
}

MetricGraph::Route MetricGraph::best_route(const FiberPoint& x, const FiberPoint& y,
                                           bool* tie) const {
    const Edge& ex = edges_[static_cast<std::size_t>(x[0])];
    const Edge& ey = edges_[static_cast<std::size_t>(y[0])];
    const double xo[2] = {x[1], ex.weight - x[1]};
    const double yo[2] = {y[1], ey.weight - y[1]};
    const std::size_t xv[2] = {ex.u, ex.v};
    const std::size_t yv[2] = {ey.u, ey.v};

    std::vector<Route> cands;
    if (x[0] == y[0]) cands.push_back({std::abs(x[1] - y[1]), true, 0, 0});
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            cands.push_back({xo[i] + vertex_distance(xv[i], yv[j]) + yo[j], false, i, j});
        }
    }
    Route best = cands.front();
    for (const Route& r : cands) {
        if (r.length < best.length) best = r;
    }
    if (tie) {
        // Equal-length candidates that visit different vertex sequences are
        // distinct geodesics. Ties inside the vertex path itself are settled
        // by the successor table and not reported.
        auto signature = [&](const Route& r) {
            if (r.direct) return std::vector<std::size_t>{};
            return vertex_path(xv[r.x_end], yv[r.y_end]);
        };
        *tie = false;
        const double eps = 1e-12 * std::max(1.0, best.length);
        const auto best_sig = signature(best);
        for (const Route& r : cands) {
            if (std::abs(r.length - best.length) > eps) continue;
            if (r.direct != best.direct || signature(r) != best_sig) *tie = true;
        }
    }
    return best;
}

double MetricGraph::distance(const FiberPoint& x, const FiberPoint& y) const {
    return best_route(x, y).length;
}

bool MetricGraph::unique_geodesic(const FiberPoint& x, const FiberPoint& y) const {
    bool tie = false;
    best_route(x, y, &tie);
    return !tie;
}

std::vector<std::size_t> MetricGraph::vertex_path(std::size_t i, std::size_t j) const {
    const std::size_t n = labels_.size();
    std::vector<std::size_t> path{i};
    while (i != j) {
        i = next_[i * n + j];
        path.push_back(i);
    }
    return path;
}

FiberPoint MetricGraph::geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const {
    const Route r = best_route(x, y);
    double s = std::clamp(u, 0.0, 1.0) * r.length;
    const std::size_t exi = static_cast<std::size_t>(x[0]);
    const Edge& ex = edges_[exi];
    if (r.direct) {
        const double dir = y[1] >= x[1] ? 1.0 : -1.0;
        return canonical(FiberPoint{x[0], x[1] + dir * s});
    }
    // Leg 1: along x's edge to its chosen endpoint.
    const double leg1 = r.x_end == 0 ? x[1] : ex.weight - x[1];
    if (s <= leg1) {
        return canonical(FiberPoint{x[0], r.x_end == 0 ? x[1] - s : x[1] + s});
    }
    s -= leg1;
    const std::size_t vx = r.x_end == 0 ? ex.u : ex.v;
    const std::size_t eyi = static_cast<std::size_t>(y[0]);
    const Edge& ey = edges_[eyi];
    const std::size_t vy = r.y_end == 0 ? ey.u : ey.v;
    // Leg 2: vertex path, choosing the lightest (lowest-id on ties) edge per hop.
    const auto path = vertex_path(vx, vy);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const std::size_t a = path[k];
        const std::size_t b = path[k + 1];
        std::size_t best_e = kNone;
        for (std::size_t e : incident_[a]) {
            const Edge& ed = edges_[e];
            if (!((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a))) continue;
            if (best_e == kNone || ed.weight < edges_[best_e].weight) best_e = e;
        }
        const Edge& ed = edges_[best_e];
        if (s <= ed.weight) {
            const double off = ed.u == a ? s : ed.weight - s;
            return canonical(FiberPoint{static_cast<double>(best_e), off});
        }
        s -= ed.weight;
    }
    // Leg 3: along y's edge from its chosen endpoint.
    const double leg3 = r.y_end == 0 ? y[1] : ey.weight - y[1];
    s = std::min(s, leg3);
    return canonical(FiberPoint{y[0], r.y_end == 0 ? s : ey.weight - s});
}

FiberPoint MetricGraph::sample_near(const FiberPoint& base, double radius, Rng& rng) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double remaining = radius * u(rng);
    std::size_t e = static_cast<std::size_t>(base[0]);
    double off = base[1];
    double dir = u(rng) < 0.5 ? -1.0 : 1.0;
    while (true) {
        const Edge& ed = edges_[e];
        const double room = dir > 0 ? ed.weight - off : off;
        if (remaining <= room) return canonical(FiberPoint{static_cast<double>(e), off + dir * remaining});
        remaining -= room;
        const std::size_t vtx = dir > 0 ? ed.v : ed.u;
        const auto& inc = incident_[vtx];
        std::uniform_int_distribution<std::size_t> pick(0, inc.size() - 1);
        e = inc[pick(rng)];
        const Edge& ne = edges_[e];
        if (ne.u == vtx) {
            off = 0.0;
            dir = 1.0;
        } else {
            off = ne.weight;
            dir = -1.0;
        }
    }
}

FiberPoint MetricGraph::sample_point(double, Rng& rng) const {
    double total = 0.0;
    for (const Edge& ed : edges_) total += ed.weight;
    std::uniform_real_distribution<double> u(0.0, total);
    double s = u(rng);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (s <= edges_[e].weight) return canonical(FiberPoint{static_cast<double>(e), s});
        s -= edges_[e].weight;
    }
    return vertex_point(edges_.back().v);
}

std::string MetricGraph::encode(const FiberPoint& p, int precision) const {
    return std::to_string(static_cast<std::size_t>(p[0])) + ":" + fmt(p[1], precision);
}

FiberPoint MetricGraph::decode(std::string_view text) const {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        std::string label(text);
        while (!label.empty() && std::isspace(static_cast<unsigned char>(label.back()))) label.pop_back();
        return vertex_point(vertex_index(label));
    }
    return canonical(FiberPoint{parse_double(text.substr(0, colon)), parse_double(text.substr(colon + 1))});
}

// ---------------------------------------------------------------------------

FiberPtr model_surface(double K) {
    if (K == 0.0) return std::make_shared<EuclideanN>(2);
    if (K > 0.0) return std::make_shared<Sphere2>(1.0 / std::sqrt(K));
    return std::make_shared<Hyperbolic2>(1.0 / std::sqrt(-K));
}

MetricTriangle realize_metric_triangle(double K, double d_xy, double d_xz, double d_yz) {
    if (d_xy < 0 || d_xz < 0 || d_yz < 0) throw DomainError("triangle sides must be nonnegative");
    const double scale = std::max({1.0, d_xy, d_xz, d_yz});
    const double slack = 1e-12 * scale;
    if (d_xy > d_xz + d_yz + slack || d_xz > d_xy + d_yz + slack || d_yz > d_xy + d_xz + slack) {
        throw DomainError("triangle inequality violated by sides " + fmt(d_xy) + ", " + fmt(d_xz) +
                          ", " + fmt(d_yz));
    }
    MetricTriangle out;
    out.space = model_surface(K);
    const double R = K == 0.0 ? 1.0 : 1.0 / std::sqrt(std::abs(K));
    const double a = d_xy / R;
    const double b = d_xz / R;
    const double c = d_yz / R;
    if (K > 0.0 && a + b + c >= 2 * kPi) {
        throw DomainError("perimeter " + fmt(d_xy + d_xz + d_yz) + " violates the size bound 2 pi / sqrt(K)");
    }
    // Angle at x from the half-angle law of cosines,
    //   S(c/2)^2 = S((a-b)/2)^2 + S(a) S(b) sin^2(theta/2)
    // with S = id, sin or sinh. The cos form loses half the digits when the
    // angle is near 0 or pi.
    auto S = [K](double u) { return K == 0.0 ? u : K > 0.0 ? std::sin(u) : std::sinh(u); };
    double h = 0.0;  // sin^2(theta / 2)
    const double den = S(a) * S(b);
    if (den > 0.0) {
        const double sc = S(0.5 * c);
        const double sd = S(0.5 * (a - b));
        h = std::clamp((sc - sd) * (sc + sd) / den, 0.0, 1.0);
    }
    const double ct = 1.0 - 2.0 * h;
    const double st = 2.0 * std::sqrt(h * (1.0 - h));
    if (K == 0.0) {
        out.vertices = {FiberPoint{0.0, 0.0}, FiberPoint{d_xy, 0.0},
                        FiberPoint{d_xz * ct, d_xz * st}};
    } else if (K > 0.0) {
        out.vertices = {FiberPoint{0.0, 0.0, 1.0}, FiberPoint{std::sin(a), 0.0, std::cos(a)},
                        FiberPoint{std::sin(b) * ct, std::sin(b) * st, std::cos(b)}};
    } else {
        out.vertices = {FiberPoint{1.0, 0.0, 0.0}, FiberPoint{std::cosh(a), std::sinh(a), 0.0},
                        FiberPoint{std::cosh(b), std::sinh(b) * ct, std::sinh(b) * st}};
    }
    return out;
}

}  // namespace lorcone
