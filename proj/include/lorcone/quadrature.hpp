#pragma once

#include <functional>
#include <vector>

namespace lorcone::quad {

struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-10;
    /// Partial sums of an improper integral beyond this are declared divergent.
    double divergence_cap = 1e12;
};

using Integrand = std::function<double(double)>;

/// Integral of g over [lo, hi] (either order) where lo, hi lie in the open
/// interval (a, b). The range is split into pieces graded toward any finite
/// endpoint of (a, b) so integrands that blow up there (1/f with f -> 0)
/// stay well resolved. Throws ConvergenceError when a piece fails.
double integrate(const Integrand& g, double lo, double hi, double a, double b,
                 const Tolerance& tol = {});

/// Improper integral of g from `from` toward `endpoint` (finite or +-inf).
///
/// Pieces are geometric: toward a finite endpoint each piece halves the
/// remaining distance, toward infinity each piece doubles the covered
/// length. `nodes[k]`/`partial[k]` record the cumulative (unsigned)
/// integral from `from` to `nodes[k]`; nodes[0] == from.
struct TailIntegral {
    std::vector<double> nodes;
    std::vector<double> partial;
    double limit = 0.0;     // +inf when diverged
    bool diverged = false;
};

TailIntegral integrate_to_endpoint(const Integrand& g, double from, double endpoint,
                                   const Tolerance& tol = {});

}  // namespace lorcone::quad
