#ifndef VSKX_NODES_HPP_
#define VSKX_NODES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <vskx/types.hpp>

namespace vskx {

enum class Distribution { Halton, Chebyshev, Random, Uniform };

std::string to_string(Distribution d);
std::optional<Distribution> parse_distribution(std::string_view name);

struct NodeSet {
  VecX points;  // sorted ascending
  Distribution distribution = Distribution::Uniform;
  std::uint64_t seed = 0;  // meaningful for Random only
};

// First n terms (from index 1) of the base-2 van der Corput sequence on [a, b].
NodeSet halton(Index n, double a, double b);

// Chebyshev-Gauss-Lobatto points, both endpoints included.
NodeSet chebyshev(Index n, double a, double b);

// Chebyshev-Gauss points (roots of T_n), endpoints excluded.
NodeSet chebyshev_gauss(Index n, double a, double b);

// i.i.d. uniform draws from mt19937_64 (53-bit mantissa conversion), re-drawn
// on collision or on hitting an endpoint.
NodeSet random_uniform(Index n, double a, double b, std::uint64_t seed);

NodeSet equispaced(Index n, double a, double b);

}  // namespace vskx

#endif  // VSKX_NODES_HPP_
