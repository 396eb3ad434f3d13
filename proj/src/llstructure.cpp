#include "lorcone/llstructure.hpp"

#include "lorcone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace lorcone::ll {

namespace {

std::vector<std::string> tokens(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream is{std::string(line)};
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

}  // namespace

CurveCatalog::CurveCatalog(std::vector<std::string> points) {
    for (auto& p : points) add_point(p);
}

std::size_t CurveCatalog::add_point(const std::string& id) {
    const auto it = std::find(points_.begin(), points_.end(), id);
    if (it != points_.end()) return static_cast<std::size_t>(it - points_.begin());
    points_.push_back(id);
    return points_.size() - 1;
}

void CurveCatalog::add_curve(std::size_t from, std::size_t to, double length, CurveClass cls) {
    if (from >= points_.size() || to >= points_.size())
        throw ConfigError("curve", "endpoint index out of range");
    if (!std::isfinite(length) || length < 0.0)
        throw ConfigError("curve", "length must be finite and nonnegative");
    if (cls == CurveClass::timelike && !(length > 0.0))
        throw ConfigError("curve", "timelike curves need positive length");
    curves_.push_back({from, to, length, cls});
}

std::size_t CurveCatalog::index(const std::string& id) const {
    const auto it = std::find(points_.begin(), points_.end(), id);
    if (it == points_.end()) throw ConfigError("point", "unknown point '" + id + "'");
    return static_cast<std::size_t>(it - points_.begin());
}

CurveCatalog CurveCatalog::parse(std::string_view text) {
    CurveCatalog c;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto tok = tokens(line);
        if (tok.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        if (tok[0] == "point") {
            if (tok.size() != 2) throw ConfigError(where, "expected 'point <id>'");
            c.add_point(tok[1]);
        } else if (tok[0] == "curve") {
            if (tok.size() != 5)
                throw ConfigError(where, "expected 'curve <from> <to> <length> <timelike|causal>'");
            double length = 0.0;
            try {
                std::size_t used = 0;
                length = std::stod(tok[3], &used);
                if (used != tok[3].size()) throw std::invalid_argument(tok[3]);
            } catch (const std::exception&) {
                throw ConfigError(where, "invalid length '" + tok[3] + "'");
            }
            CurveClass cls;
            if (tok[4] == "timelike") cls = CurveClass::timelike;
            else if (tok[4] == "causal") cls = CurveClass::causal;
            else throw ConfigError(where, "unknown curve class '" + tok[4] + "'");
            const std::size_t from = c.add_point(tok[1]);
            const std::size_t to = c.add_point(tok[2]);
            if (!std::isfinite(length) || length < 0.0)
                throw ConfigError(where, "length must be finite and nonnegative");
            if (cls == CurveClass::timelike && !(length > 0.0))
                throw ConfigError(where, "timelike curves need positive length");
            c.add_curve(from, to, length, cls);
        } else {
            throw ConfigError(where, "unknown record '" + tok[0] + "'");
        }
        if (end == text.size()) break;
    }
    return c;
}

RelationTable derived_relations(const CurveCatalog& c) {
    const std::size_t n = c.size();
    RelationTable r;
    r.n = n;
    r.causal.assign(n * n, 0);
    r.chronological.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) r.causal[i * n + i] = 1;
    for (const Curve& e : c.curves()) {
        r.causal[e.from * n + e.to] = 1;
        if (e.cls == CurveClass::timelike) r.chronological[e.from * n + e.to] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (r.causal[i * n + k] && r.causal[k * n + j]) r.causal[i * n + j] = 1;
                if (r.chronological[i * n + k] && r.chronological[k * n + j])
                    r.chronological[i * n + j] = 1;
            }
    return r;
}

namespace {

// Tarjan; components come out in reverse topological order.
std::vector<std::size_t> strong_components(std::size_t n, const std::vector<Curve>& curves,
                                           std::size_t& count) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const Curve& e : curves) adj[e.from].push_back(e.to);
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset), stack;
    std::vector<char> on_stack(n, 0);
    std::size_t counter = 0;
    count = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
        for (std::size_t w : adj[v]) {
            if (index[w] == unset) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                comp[w] = count;
            } while (w != v);
            ++count;
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] == unset) visit(v);
    return comp;
}

}  // namespace

TauTable derived_tau(const CurveCatalog& c) {
    const std::size_t n = c.size();
    const RelationTable rel = derived_relations(c);
    std::size_t m = 0;
    const std::vector<std::size_t> comp = strong_components(n, c.curves(), m);

    std::vector<char> positive(m, 0);
    // Best edge between distinct components (-1 = none).
    std::vector<double> edge(m * m, -1.0);
    for (const Curve& e : c.curves()) {
        const std::size_t a = comp[e.from];
        const std::size_t b = comp[e.to];
        if (a == b) {
            if (e.length > 0.0) positive[a] = 1;
        } else {
            edge[a * m + b] = std::max(edge[a * m + b], e.length);
        }
    }
    // Component ids are reverse topological: edges go from higher to lower id.
    constexpr double none = -1.0;
    std::vector<double> best(m * m, none);
    for (std::size_t s = 0; s < m; ++s) {
        best[s * m + s] = 0.0;
        for (std::size_t u = s + 1; u-- > 0;) {
            const double bu = best[s * m + u];
            if (bu < 0.0) continue;
            for (std::size_t v = 0; v < u; ++v) {
                const double w = edge[u * m + v];
                if (w < 0.0) continue;
                best[s * m + v] = std::max(best[s * m + v], bu + w);
            }
        }
    }

    TauTable T;
    T.n = n;
    T.values.assign(n * n, TauValue{});
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (!rel.leq(x, y)) continue;
            bool inf = false;
            for (std::size_t w = 0; w < n && !inf; ++w)
                inf = positive[comp[w]] && rel.leq(x, w) && rel.leq(w, y);
            TauValue& v = T.values[x * n + y];
            if (inf) {
                v.infinite = true;
                v.value = std::numeric_limits<double>::infinity();
            } else {
                v.value = std::max(0.0, best[comp[x] * m + comp[y]]);
            }
        }
    }
    return T;
}

namespace {

// Bellman-Ford longest paths; nodes still improving after n rounds sit
// behind a positive cycle.
TauTable relaxation_tau(const CurveCatalog& c) {
    const std::size_t n = c.size();
    constexpr double unreached = -std::numeric_limits<double>::infinity();
    TauTable T;
    T.n = n;
    T.values.assign(n * n, TauValue{});
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<double> dist(n, unreached);
        std::vector<char> inf(n, 0);
        dist[s] = 0.0;
        for (std::size_t round = 0; round + 1 < std::max<std::size_t>(n, 2); ++round)
            for (const Curve& e : c.curves())
                if (dist[e.from] > unreached && dist[e.from] + e.length > dist[e.to])
                    dist[e.to] = dist[e.from] + e.length;
        for (std::size_t round = 0; round < n + 1; ++round)
            for (const Curve& e : c.curves())
                if (dist[e.from] > unreached &&
                    (inf[e.from] || dist[e.from] + e.length > dist[e.to])) {
                    dist[e.to] = std::max(dist[e.to], dist[e.from] + e.length);
                    inf[e.to] = 1;
                }
        for (std::size_t y = 0; y < n; ++y) {
            TauValue& v = T.values[s * n + y];
            if (inf[y]) {
                v.infinite = true;
                v.value = std::numeric_limits<double>::infinity();
            } else if (dist[y] > unreached) {
                v.value = dist[y];
            }
        }
    }
    return T;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(9);
    os << v;
    return os.str();
}

std::string show(const TauValue& v) { return v.infinite ? "inf" : fmt(v.value); }

}  // namespace

LLVerdict check_bare_llspace(const CurveCatalog& c) {
    const std::size_t n = c.size();
    const RelationTable rel = derived_relations(c);
    const TauTable tau = derived_tau(c);
    const TauTable sup = relaxation_tau(c);
    const auto& name = c.points();
    LLVerdict v;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            ++v.pairs_checked;
            const TauValue& t = tau.at(x, y);
            const std::string pair = "(" + name[x] + ", " + name[y] + ")";
            if (!rel.leq(x, y) && (t.infinite || t.value != 0.0))
                v.failures.push_back("tau" + pair + " = " + show(t) + " but not causally related");
            if (rel.ll(x, y) && !(t.infinite || t.value > 0.0))
                v.failures.push_back("tau" + pair + " = 0 on a chronological pair");
            const TauValue& s = sup.at(x, y);
            const bool same = s.infinite == t.infinite &&
                              (t.infinite || std::abs(s.value - t.value) <=
                                                 1e-12 * std::max(1.0, std::abs(t.value)));
            if (!same)
                v.failures.push_back("tau" + pair + " = " + show(t) +
                                     " differs from the concatenation supremum " + show(s));
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (!rel.leq(x, y)) continue;
            for (std::size_t z = 0; z < n; ++z) {
                if (!rel.leq(y, z)) continue;
                ++v.triples_checked;
                const TauValue& xz = tau.at(x, z);
                if (xz.infinite) continue;
                const TauValue& xy = tau.at(x, y);
                const TauValue& yz = tau.at(y, z);
                const bool ok = !xy.infinite && !yz.infinite &&
                                xy.value + yz.value <= xz.value + 1e-12 * std::max(1.0, xz.value);
                if (!ok)
                    v.failures.push_back("reverse triangle inequality fails on (" + name[x] +
                                         ", " + name[y] + ", " + name[z] + "): " + show(xy) +
                                         " + " + show(yz) + " > " + show(xz));
            }
        }
    return v;
}

}  // namespace lorcone::ll
