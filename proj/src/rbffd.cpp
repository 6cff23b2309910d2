#include "surfrec/rbffd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "surfrec/linalg.hpp"

namespace surfrec {

namespace {

constexpr std::size_t kMonomialCount = 6;  // 1, x, y, x^2, xy, y^2

void monomials(const Point2& p, double* out) {
  out[0] = 1.0;
  out[1] = p.x;
  out[2] = p.y;
  out[3] = p.x * p.x;
  out[4] = p.x * p.y;
  out[5] = p.y * p.y;
}

}  // namespace

std::vector<std::size_t> select_stencil(const NeighborIndex& index, std::size_t center,
                                        std::size_t n) {
  if (center >= index.size()) fail(ErrorCode::InvalidArgument, "stencil center index out of range");
  if (n < 1 || n > index.size())
    fail(ErrorCode::NotEnoughNodes, "stencil size " + std::to_string(n) + " exceeds the node count " +
                                        std::to_string(index.size()));
  std::vector<std::size_t> ids = index.nearest(index.point(center), n);
  // The center is the unique zero-distance hit; make that explicit up front.
  const auto self = std::find(ids.begin(), ids.end(), center);
  if (self != ids.begin() && self != ids.end()) std::rotate(ids.begin(), self, self + 1);
  return ids;
}

std::vector<double> laplacian_weights(const std::vector<Point2>& stencil_points,
                                      double condition_limit) {
  const std::size_t n = stencil_points.size();
  if (n < kMonomialCount)
    fail(ErrorCode::NotEnoughNodes,
         "a degree-2 augmented stencil needs at least 6 points, got " + std::to_string(n));

  // Shift to the center and scale by the stencil radius; the scaled system
  // is well conditioned and the Laplacian scales back by 1/radius^2.
  const Point2 center = stencil_points[0];
  double radius = 0.0;
  for (const Point2& p : stencil_points) radius = std::max(radius, distance(p, center));
  if (radius <= 0.0) fail(ErrorCode::SingularStencil, "all stencil points coincide with the center");

  std::vector<Point2> local(n);
  for (std::size_t i = 0; i < n; ++i) local[i] = (stencil_points[i] - center) / radius;

  const std::size_t m = n + kMonomialCount;
  std::vector<double> a(m * m, 0.0);
  std::vector<double> b(m, 0.0);

  // Collocation block: phi(r) = r^3.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double r = distance(local[i], local[j]);
      a[i * m + j] = r * r * r;
    }
  }
  // Polynomial blocks and exactness constraints.
  double mono[kMonomialCount];
  for (std::size_t i = 0; i < n; ++i) {
    monomials(local[i], mono);
    for (std::size_t q = 0; q < kMonomialCount; ++q) {
      a[i * m + (n + q)] = mono[q];
      a[(n + q) * m + i] = mono[q];
    }
  }
  // Right side: Laplacian of phi(||x - x_i||) at the center is 9 r, and of
  // the monomials (2 for x^2 and y^2, 0 otherwise).
  for (std::size_t i = 0; i < n; ++i) b[i] = 9.0 * local[i].norm();
  b[n + 3] = 2.0;
  b[n + 5] = 2.0;

  const DenseSolveInfo info = lu_solve(a, b, m);
  if (!info.ok || info.pivot_ratio > condition_limit)
    fail(ErrorCode::SingularStencil,
         "stencil system is numerically singular (pivot ratio " +
             std::to_string(info.ok ? info.pivot_ratio : 0.0) + ")");

  std::vector<double> weights(n);
  const double unscale = 1.0 / (radius * radius);
  for (std::size_t i = 0; i < n; ++i) weights[i] = b[i] * unscale;
  return weights;
}

std::vector<StencilWeights> build_laplacian_weights(const std::vector<Point2>& nodes,
                                                    const std::vector<NodeKind>& kinds,
                                                    const RbffdParams& params) {
  if (nodes.size() != kinds.size())
    fail(ErrorCode::InvalidArgument, "node and kind array lengths differ");
  const NeighborIndex index(nodes);

  std::vector<StencilWeights> all;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (kinds[i] != NodeKind::Interior) continue;
    StencilWeights sw;
    sw.center = i;
    sw.neighbors = select_stencil(index, i, params.stencil_size);
    std::vector<Point2> pts(sw.neighbors.size());
    for (std::size_t j = 0; j < sw.neighbors.size(); ++j) pts[j] = nodes[sw.neighbors[j]];
    try {
      sw.weights = laplacian_weights(pts, params.condition_limit);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularStencil)
        fail(ErrorCode::SingularStencil, std::string(e.what()) + " at node " + std::to_string(i));
      throw;
    }
    all.push_back(std::move(sw));
  }
  return all;
}

ScatteredField heat_step(const ScatteredField& field, const std::vector<StencilWeights>& weights,
                         double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "heat step needs dt > 0");

  ScatteredField next = field;
  for (const StencilWeights& sw : weights) {
    double lap = 0.0;
    for (std::size_t j = 0; j < sw.neighbors.size(); ++j)
      lap += sw.weights[j] * field.values[sw.neighbors[j]];
    next.values[sw.center] = field.values[sw.center] + dt * lap;
  }
  for (std::size_t i = 0; i < next.size(); ++i) {
    if (next.kind[i] == NodeKind::Outer) next.values[i] = 1.0;
    if (next.kind[i] == NodeKind::Dendrite) next.values[i] = 0.0;
  }
  return next;
}

ScatteredField solve_poisson(const std::vector<Point2>& nodes, const std::vector<NodeKind>& kinds,
                             const std::vector<double>& rhs, const std::vector<double>& bc,
                             const RbffdParams& params, PoissonSolveInfo* out_info) {
  const std::size_t n = nodes.size();
  if (kinds.size() != n || rhs.size() != n || bc.size() != n)
    fail(ErrorCode::InvalidArgument, "poisson inputs must all have one entry per node");

  const std::vector<StencilWeights> weights = build_laplacian_weights(nodes, kinds, params);

  // One row per node; rows are scaled by their diagonal so identity rows and
  // Laplacian rows live on the same scale (Jacobi preconditioning).
  CsrMatrix matrix(n);
  std::vector<double> b(n, 0.0);
  std::size_t w = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (kinds[i] != NodeKind::Interior) {
      matrix.add_row({i}, {1.0});
      b[i] = bc[i];
      continue;
    }
    const StencilWeights& sw = weights[w++];
    double diag = 0.0;
    for (std::size_t j = 0; j < sw.neighbors.size(); ++j)
      if (sw.neighbors[j] == i) diag = sw.weights[j];
    if (diag == 0.0) fail(ErrorCode::SingularStencil, "zero diagonal weight at node " + std::to_string(i));
    std::vector<double> vals(sw.weights.size());
    for (std::size_t j = 0; j < sw.weights.size(); ++j) vals[j] = sw.weights[j] / diag;
    matrix.add_row(sw.neighbors, vals);
    b[i] = rhs[i] / diag;
  }

  std::vector<double> x;
  const IterativeSolveInfo info = bicgstab(matrix, b, x, 1e-10, std::max<std::size_t>(4000, 20 * n));
  if (out_info) {
    out_info->iterations = info.iterations;
    out_info->relative_residual = info.relative_residual;
  }
  if (!info.converged)
    fail(ErrorCode::SolverDiverged, "relative residual " + std::to_string(info.relative_residual) +
                                        " after " + std::to_string(info.iterations) + " iterations");

  ScatteredField out;
  out.nodes = nodes;
  out.kind = kinds;
  out.values = std::move(x);
  return out;
}

PoissonHarnessResult run_disk_poisson_harness(double spacing, const RbffdParams& params,
                                              std::uint64_t seed) {
  if (!(spacing > 0.0 && spacing < 2.0))
    fail(ErrorCode::InvalidArgument, "disk harness spacing must be in (0, 2)");
  const auto t_start = std::chrono::steady_clock::now();

  // The circle is sampled coarser than the node spacing so the fitted curve,
  // not the raw sample, defines the geometry the solver sees; node positions
  // then fall between interpolation points and carry the reconstruction
  // error instead of coinciding with exact circle points.
  const std::size_t sample_count = std::max<std::size_t>(
      16, static_cast<std::size_t>(std::llround(2.0 * std::numbers::pi / (1.5 * spacing))));
  std::vector<Point2> circle(sample_count);
  for (std::size_t j = 0; j < sample_count; ++j) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(sample_count);
    circle[j] = {std::cos(a), std::sin(a)};
  }

  const ReconstructedDomain disk = ReconstructedDomain::from_points(circle);
  const SpacingProfile profile{spacing, spacing, {}, 1.0};
  const std::vector<BoundaryNode> boundary = resample_boundary(disk, profile, NodeKind::Outer);
  const std::vector<Point2> interior = fill_interior(disk, nullptr, boundary, {}, profile, {}, seed);

  std::vector<Point2> nodes;
  std::vector<NodeKind> kinds;
  for (const BoundaryNode& b : boundary) {
    nodes.push_back(b.position);
    kinds.push_back(NodeKind::Outer);
  }
  for (const Point2& p : interior) {
    nodes.push_back(p);
    kinds.push_back(NodeKind::Interior);
  }

  std::vector<double> rhs(nodes.size(), -4.0);
  std::vector<double> bc(nodes.size(), 0.0);

  PoissonSolveInfo info;
  const ScatteredField solution = solve_poisson(nodes, kinds, rhs, bc, params, &info);

  PoissonHarnessResult result;
  result.node_count = nodes.size();
  result.iterations = info.iterations;
  result.relative_residual = info.relative_residual;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double exact = 1.0 - nodes[i].norm2();
    result.max_error = std::max(result.max_error, std::abs(solution.values[i] - exact));
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

std::vector<double> idw_transfer(const ScatteredField& old_field,
                                 const std::vector<Point2>& new_nodes, std::size_t k_sources,
                                 double power) {
  if (old_field.size() == 0) fail(ErrorCode::EmptyInput, "cannot transfer from an empty field");
  if (k_sources < 1 || k_sources > old_field.size())
    fail(ErrorCode::InvalidArgument, "k_sources must be in [1, old field size]");

  const NeighborIndex index(old_field.nodes);
  std::vector<double> values(new_nodes.size(), 0.0);
  for (std::size_t i = 0; i < new_nodes.size(); ++i) {
    const auto ids = index.nearest(new_nodes[i], k_sources);
    const double nearest_d = distance(new_nodes[i], old_field.nodes[ids[0]]);
    if (nearest_d < 1e-12) {
      values[i] = old_field.values[ids[0]];
      continue;
    }
    double num = 0.0, den = 0.0;
    for (const std::size_t j : ids) {
      const double wgt = std::pow(distance(new_nodes[i], old_field.nodes[j]), -power);
      num += wgt * old_field.values[j];
      den += wgt;
    }
    values[i] = num / den;
  }
  return values;
}

}  // namespace surfrec
