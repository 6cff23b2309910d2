#pragma once

#include <cstddef>
#include <vector>

#include "surfrec/discretize.hpp"
#include "surfrec/geometry.hpp"

namespace surfrec {

/// Scattered node set with one scalar value per node. Node, kind and value
/// arrays run in lockstep.
struct ScatteredField {
  std::vector<Point2> nodes;
  std::vector<NodeKind> kind;
  std::vector<double> values;

  std::size_t size() const { return nodes.size(); }
};

/// Laplacian approximation weights of one node: sum_i weights[i] *
/// u(nodes[neighbors[i]]) approximates the Laplacian of u at the center.
struct StencilWeights {
  std::size_t center = 0;
  std::vector<std::size_t> neighbors;
  std::vector<double> weights;
};

struct RbffdParams {
  std::size_t stencil_size = 12;
  double condition_limit = 1e12;
};

/// The n nodes nearest to `center` (itself first), ties broken by index.
/// Throws NotEnoughNodes when n exceeds the node count.
std::vector<std::size_t> select_stencil(const NeighborIndex& index, std::size_t center,
                                        std::size_t n);

/// Laplacian weights for one stencil whose first point is the center, from
/// cubic polyharmonic collocation (r^3) with exactness constraints on all
/// monomials up to degree 2. Coordinates are shifted to the center and
/// scaled by the stencil radius before solving.
/// Throws NotEnoughNodes (< 6 points) and SingularStencil (conditioning
/// proxy beyond the limit or a failed factorization).
std::vector<double> laplacian_weights(const std::vector<Point2>& stencil_points,
                                      double condition_limit = 1e12);

/// Weights for every interior node of the set.
std::vector<StencilWeights> build_laplacian_weights(const std::vector<Point2>& nodes,
                                                    const std::vector<NodeKind>& kinds,
                                                    const RbffdParams& params = {});

/// One explicit Euler step of the heat equation: interior values advance by
/// dt times the discrete Laplacian of the old field; outer-boundary values
/// are pinned to 1 and dendrite-boundary values to 0 afterwards. The input
/// field is read only.
ScatteredField heat_step(const ScatteredField& field, const std::vector<StencilWeights>& weights,
                         double dt);

/// Conservative explicit-Euler step limit for the spacing; callers that know
/// their minimum spacing should substep or warn above it.
inline double stable_heat_dt(double h_min) { return 0.1 * h_min * h_min; }

struct PoissonSolveInfo {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Dirichlet-Poisson solve on the node set: the Laplacian row of each
/// interior node equals rhs there, boundary nodes are pinned to bc. Solved
/// iteratively to relative residual 1e-10.
/// Throws SolverDiverged with the iteration count and residual reached.
ScatteredField solve_poisson(const std::vector<Point2>& nodes, const std::vector<NodeKind>& kinds,
                             const std::vector<double>& rhs, const std::vector<double>& bc,
                             const RbffdParams& params = {}, PoissonSolveInfo* info = nullptr);

struct PoissonHarnessResult {
  std::size_t node_count = 0;
  double max_error = 0.0;
  double relative_residual = 0.0;
  std::size_t iterations = 0;
  double wall_seconds = 0.0;
};

/// Validation run on the unit disk with exact solution u = 1 - x^2 - y^2:
/// the boundary circle is sampled, reconstructed and resampled at `spacing`,
/// the interior fill runs at the same spacing, and the Dirichlet problem
/// (rhs -4, boundary 0) is solved and compared against the exact values.
PoissonHarnessResult run_disk_poisson_harness(double spacing, const RbffdParams& params = {},
                                              std::uint64_t seed = 0);

/// Shepard transfer of the old field onto new node positions: an inverse
/// distance weighted average of the k nearest old values; a new node closer
/// than 1e-12 to an old one copies its value exactly.
std::vector<double> idw_transfer(const ScatteredField& old_field,
                                 const std::vector<Point2>& new_nodes, std::size_t k_sources = 4,
                                 double power = 2.0);

}  // namespace surfrec
