// Command-line front end: boundary ordering, containment queries, node
// generation, the Poisson validation harness and the dendrite simulation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "surfrec/domain.hpp"
#include "surfrec/io.hpp"
#include "surfrec/sim.hpp"

namespace {

using namespace surfrec;

int cmd_order(const std::string& input, const std::string& output, const std::string& report_path) {
  const std::vector<Point2> points = read_points_csv(input);
  const OrderedBoundary ordered = order_points(points);
  write_ordered_csv(output, ordered);

  const nlohmann::json report = density_report_to_json(validate_density(ordered));
  if (report_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(report_path);
    if (!out) fail(ErrorCode::IoFailure, "cannot open " + report_path + " for writing");
    out << report.dump(2) << "\n";
  }
  std::cerr << "ordered " << points.size() << " points -> " << output << "\n";
  return 0;
}

int cmd_contain(const std::string& boundary_path, const std::string& query_path,
                const std::string& output) {
  const ReconstructedDomain domain = ReconstructedDomain::from_points(read_points_csv(boundary_path));
  const std::vector<Point2> queries = read_points_csv(query_path);

  std::ofstream out(output);
  if (!out) fail(ErrorCode::IoFailure, "cannot open " + output + " for writing");
  out << "x,y,inside\n";
  char buf[96];
  for (const Point2& q : queries) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d", q.x, q.y, domain.contains(q) ? 1 : 0);
    out << buf << "\n";
  }
  if (!out.flush()) fail(ErrorCode::IoFailure, "write to " + output + " failed");
  std::cerr << "classified " << queries.size() << " queries -> " << output << "\n";
  return 0;
}

int cmd_discretize(const std::string& boundary_path, const std::string& inner_path,
                   const std::string& output, double h, double h_min, double h_max,
                   double transition_radius, std::uint64_t seed) {
  const ReconstructedDomain outer = ReconstructedDomain::from_points(read_points_csv(boundary_path));

  SpacingProfile profile;
  if (h > 0.0) {
    profile.h_min = profile.h_max = h;
    profile.transition_radius = 1.0;
  } else {
    profile.h_min = h_min;
    profile.h_max = h_max;
    profile.transition_radius = transition_radius;
  }

  std::vector<BoundaryNode> inner_nodes;
  std::optional<ReconstructedDomain> inner;
  if (!inner_path.empty()) {
    inner = ReconstructedDomain::from_points(read_points_csv(inner_path));
    profile.focus_points = inner->spline().control_points();
    inner_nodes = resample_boundary(*inner, profile, NodeKind::Dendrite);
  }
  const std::vector<BoundaryNode> outer_nodes = resample_boundary(outer, profile, NodeKind::Outer);
  const std::vector<Point2> interior =
      fill_interior(outer, inner ? &*inner : nullptr, outer_nodes, inner_nodes, profile, {}, seed);

  std::vector<BoundaryNode> boundary = outer_nodes;
  boundary.insert(boundary.end(), inner_nodes.begin(), inner_nodes.end());
  write_nodes_csv(output, boundary, interior);
  std::cerr << "wrote " << boundary.size() << " boundary + " << interior.size()
            << " interior nodes -> " << output << "\n";
  return 0;
}

int cmd_poisson(double spacing, std::uint64_t seed) {
  const PoissonHarnessResult r = run_disk_poisson_harness(spacing, {}, seed);
  std::printf("N          %zu\n", r.node_count);
  std::printf("max error  %.6e\n", r.max_error);
  std::printf("residual   %.3e (%zu iterations)\n", r.relative_residual, r.iterations);
  std::printf("wall time  %.3f s\n", r.wall_seconds);
  return 0;
}

int cmd_simulate(const std::string& config_path) {
  const SimConfig config = config_path.empty() ? SimConfig{} : read_sim_config(config_path);
  const SimResult result = run_simulation(config);
  const SimStepStats& last = result.stats.back();
  std::printf("steps          %d\n", static_cast<int>(result.stats.size()) - 1);
  std::printf("final nodes    %zu\n", last.node_count);
  std::printf("dendrite area  %.6f\n", last.dendrite_area);
  std::printf("symmetry       %.3e\n", last.symmetry_metric);
  std::printf("wall time      %.1f s\n", result.wall_seconds);
  std::printf("snapshots      %zu files in %s\n", result.snapshot_paths.size(),
              config.output_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-boundary reconstruction and meshless moving-boundary simulation"};
  app.require_subcommand(1);

  std::string input, inner_path, query_path, output, report_path, config_path;
  double h = 0.0, h_min = 0.02, h_max = 0.08, transition_radius = 0.3;
  double spacing = 0.0585;
  std::uint64_t seed = 0;

  auto* order = app.add_subcommand("order", "Recover curve order of unordered boundary points");
  order->add_option("input", input, "points CSV (x,y)")->required();
  order->add_option("-o,--output", output, "ordered CSV (x,y,order)")->required();
  order->add_option("-r,--report", report_path, "density report JSON (stdout when omitted)");

  auto* contain = app.add_subcommand("contain", "Classify query points against a boundary");
  contain->add_option("boundary", input, "boundary points CSV")->required();
  contain->add_option("queries", query_path, "query points CSV")->required();
  contain->add_option("-o,--output", output, "result CSV (x,y,inside)")->required();

  auto* disc = app.add_subcommand("discretize", "Generate boundary and interior nodes");
  disc->add_option("boundary", input, "outer boundary points CSV")->required();
  disc->add_option("-o,--output", output, "nodes CSV (x,y,kind)")->required();
  disc->add_option("--inner", inner_path, "inner boundary points CSV (annulus)");
  disc->add_option("--spacing", h, "uniform spacing (overrides the graded profile)");
  disc->add_option("--h-min", h_min, "spacing at the inner boundary");
  disc->add_option("--h-max", h_max, "spacing away from the inner boundary");
  disc->add_option("--transition-radius", transition_radius, "grading distance");
  disc->add_option("--seed", seed, "fill seed");

  auto* poisson = app.add_subcommand("poisson", "Unit-disk Poisson validation harness");
  poisson->add_option("--spacing", spacing, "node spacing (default lands near 900 nodes)");
  poisson->add_option("--seed", seed, "fill seed");

  auto* simulate = app.add_subcommand("simulate", "Run the dendrite growth simulation");
  simulate->add_option("--config", config_path, "JSON config; defaults used when omitted");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(order)) return cmd_order(input, output, report_path);
    if (app.got_subcommand(contain)) return cmd_contain(input, query_path, output);
    if (app.got_subcommand(disc))
      return cmd_discretize(input, inner_path, output, h, h_min, h_max, transition_radius, seed);
    if (app.got_subcommand(poisson)) return cmd_poisson(spacing, seed);
    if (app.got_subcommand(simulate)) return cmd_simulate(config_path);
  } catch (const surfrec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
