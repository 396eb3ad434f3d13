#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lorcone::ll {

enum class CurveClass { timelike, causal };

struct Curve {
    std::size_t from = 0;
    std::size_t to = 0;
    double length = 0.0;
    CurveClass cls = CurveClass::causal;
};

/// Finite Lorentzian length structure: named points and future-directed
/// curves between them. Concatenation closure is implicit in the derived
/// tables.
class CurveCatalog {
public:
    CurveCatalog() = default;
    explicit CurveCatalog(std::vector<std::string> points);

    /// Text format, one record per line (blank lines and `#` comments
    /// ignored): `point <id>` declares a point, `curve <from> <to> <length>
    /// <timelike|causal>` adds a curve (undeclared endpoints are added).
    static CurveCatalog parse(std::string_view text);

    std::size_t add_point(const std::string& id);
    /// ConfigError on negative length or a timelike curve of length 0.
    void add_curve(std::size_t from, std::size_t to, double length, CurveClass cls);

    std::size_t size() const { return points_.size(); }
    const std::vector<std::string>& points() const { return points_; }
    const std::vector<Curve>& curves() const { return curves_; }
    std::size_t index(const std::string& id) const;

private:
    std::vector<std::string> points_;
    std::vector<Curve> curves_;
};

/// Row-major n x n boolean tables.
struct RelationTable {
    std::size_t n = 0;
    std::vector<char> causal;       // x <= y
    std::vector<char> chronological;  // x << y

    bool leq(std::size_t x, std::size_t y) const { return causal[x * n + y] != 0; }
    bool ll(std::size_t x, std::size_t y) const { return chronological[x * n + y] != 0; }
};

RelationTable derived_relations(const CurveCatalog& c);

/// tau value in [0, inf]; infinity is a flag, not a number.
struct TauValue {
    double value = 0.0;
    bool infinite = false;

    bool operator==(const TauValue&) const = default;
};

struct TauTable {
    std::size_t n = 0;
    std::vector<TauValue> values;

    const TauValue& at(std::size_t x, std::size_t y) const { return values[x * n + y]; }
};

/// Longest concatenation length; infinite when a connecting chain can pass
/// through a cycle of positive length.
TauTable derived_tau(const CurveCatalog& c);

struct LLVerdict {
    std::size_t triples_checked = 0;
    std::size_t pairs_checked = 0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

/// Reverse triangle inequality on x <= y <= z, positivity on <<, tau = 0
/// off <=, and agreement of the tau table with an independent relaxation.
LLVerdict check_bare_llspace(const CurveCatalog& c);

}  // namespace lorcone::ll
