#pragma once

#include "lorcone/llstructure.hpp"
#include "lorcone/warp.hpp"

#include <cstddef>
#include <cstdint>

namespace lorcone::oracle {

struct DPGrid {
    std::size_t time_steps = 600;
    std::size_t fiber_steps = 600;
    /// Longest straight piece, in time layers.
    std::size_t max_jump = 12;
};

/// Brute-force maximization of the Lorentzian length over causal polygons
/// (t, x(t)) from (t0, 0) to (t1, d) in I x_f R whose vertices sit on a
/// time x fiber grid. Returns 0 when no causal polygon exists.
double dp_time_separation(const WarpSpec& warp, double t0, double t1, double d,
                          const DPGrid& grid = {});

/// sqrt(s^2 + t^2 - 2 s t cosh d) on the causal range, else 0.
double minkowski_cone_tau(double s, double t, double d);

/// Time separations in the de Sitter (K = 1) and anti-de Sitter (K = -1)
/// charts, from their hyperboloid embeddings.
double de_sitter_tau(double t0, double x0, double t1, double x1);
double anti_de_sitter_tau(double t0, double x0, double t1, double x1);

/// Longest path by enumerating every simple path; catalogs must be acyclic.
ll::TauTable enumerate_tau(const ll::CurveCatalog& c);

/// Random catalog with n points; acyclic unless `allow_cycles`.
ll::CurveCatalog random_catalog(std::size_t n, std::uint64_t seed, bool allow_cycles = false);

}  // namespace lorcone::oracle
