#pragma once

#include "lorcone/comparison.hpp"
#include "lorcone/cone.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lorcone {

/// A validated cone description loaded from JSON.
///
///     {
///       "interval": {"a": "-inf", "b": "inf"},
///       "warp": {"kind": "constant", "c": 1},
///       "fiber": {"kind": "euclidean", "n": 2},
///       "tolerances": {"null": 1e-9, "report": 1e-5},
///       "sampling": {"n_triangles": 200, "base_point": "c"},
///       "seed": 7
///     }
///
/// Numbers may be given as "inf" / "-inf" strings. Unknown fields are
/// rejected with their field path.
struct ConeConfig {
    std::optional<GeneralizedCone> cone;
    SamplingOptions sampling;
    std::uint64_t seed = 1;

    const GeneralizedCone& get() const { return *cone; }
};

/// Throws ConfigError with a `line L, column C` location on malformed JSON
/// and a field path (`warp.c`, `fiber.edges`, ...) on semantic errors.
ConeConfig parse_config(std::string_view text);
ConeConfig load_config(const std::string& path);

/// `t;c1,c2,...` with the fiber part in the fiber's own encoding.
ConePoint parse_point(const GeneralizedCone& cone, std::string_view text);

}  // namespace lorcone
