// Copyright 2026 The Frenet Planner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "frenet_planner/cli.hpp"

#include "frenet_planner/endpoint_regulation.hpp"
#include "frenet_planner/error.hpp"
#include "frenet_planner/report_io.hpp"
#include "frenet_planner/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <vector>

namespace frenet_planner::cli
{

namespace
{

std::optional<std::string> read_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  return std::string{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path & path, const std::string & content)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

// Reads and parses; prints every violation and returns nullopt on failure.
std::optional<std::pair<Scenario, std::string>> ingest(
  const std::filesystem::path & path, std::ostream & err)
{
  auto bytes = read_file(path);
  if (!bytes) {
    err << to_string(ErrorCode::FileNotFound) << ": cannot read " << path.string() << '\n';
    return std::nullopt;
  }
  ScenarioParse parsed = parse_scenario(*bytes);
  if (!parsed.ok()) {
    for (const auto & v : parsed.violations) {
      err << to_string(ErrorCode::SchemaViolation) << ": " << v << '\n';
    }
    return std::nullopt;
  }
  return std::make_pair(std::move(parsed.scenario), std::move(*bytes));
}

bool prepare_dir(const std::filesystem::path & dir, std::ostream & err)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    err << "cannot create output directory " << dir.string() << '\n';
    return false;
  }
  return true;
}

}  // namespace

std::string sha256_hex(std::string_view bytes)
{
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0x0f]);
  }
  return hex;
}

int cmd_validate(const std::filesystem::path & scenario, std::ostream & out, std::ostream & err)
{
  const auto parsed = ingest(scenario, err);
  if (!parsed) {
    return kExitUsage;
  }
  out << "valid: " << scenario.string() << '\n';
  return kExitOk;
}

int cmd_run(const RunOptions & options, std::ostream & out, std::ostream & err)
{
  const auto start = std::chrono::steady_clock::now();
  auto parsed = ingest(options.scenario, err);
  if (!parsed) {
    return kExitUsage;
  }
  Scenario & scenario = parsed->first;
  if (options.seed) {
    scenario.sim.seed = *options.seed;
  }
  if (!prepare_dir(options.out_dir, err)) {
    return kExitUsage;
  }

  const SimLog log = run(scenario, options.mode);
  const std::vector<std::pair<std::string, std::string>> files{
    {"simlog.json", simlog_to_json(log)},
    {"profiles.csv", profiles_csv(log)},
    {"jerk_stats.csv", jerk_stats_csv(log)},
    {"endpoint_nn.csv", endpoint_nn_csv(log)},
    {"feasibility.csv", feasibility_csv(log)},
  };
  for (const auto & [name, content] : files) {
    write_file(options.out_dir / name, content);
  }
  if (log.status != RunStatus::Completed) {
    err << log.diagnostic << '\n';
    return kExitDomain;
  }

  nlohmann::ordered_json manifest;
  manifest["tool_version"] = std::string(kToolVersion);
  manifest["scenario"] = {
    {"path", options.scenario.string()}, {"sha256", sha256_hex(parsed->second)}};
  manifest["mode"] = std::string(to_string(options.mode));
  manifest["seed"] = scenario.sim.seed;
  nlohmann::ordered_json names = nlohmann::ordered_json::array();
  for (const auto & f : files) {
    names.push_back(f.first);
  }
  names.push_back("manifest.json");
  manifest["outputs"] = names;
  manifest["duration_seconds"] =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file(options.out_dir / "manifest.json", manifest.dump(2) + "\n");
  out << "completed " << log.cycles.size() << " cycles, outputs in "
      << options.out_dir.string() << '\n';
  return kExitOk;
}

int cmd_cluster(const ClusterOptions & options, std::ostream & out, std::ostream & err)
{
  const auto parsed = ingest(options.scenario, err);
  if (!parsed) {
    return kExitUsage;
  }
  const Scenario & scenario = parsed->first;
  if (!prepare_dir(options.out_dir, err)) {
    return kExitUsage;
  }
  TrajectoryCluster cluster;
  try {
    const ReferencePath path = build_reference_path(scenario.waypoints);
    if (options.mode == PlannerMode::Proposed) {
      cluster = regulated_cluster(scenario.initial, path, scenario.grid, scenario.regulation);
    } else {
      cluster = generate_cluster(scenario.initial, path, scenario.grid);
      sort_cluster(cluster);
      cluster.reference_index = select_reference_candidate(cluster);
    }
  } catch (const PlannerError & e) {
    err << e.what() << '\n';
    return kExitDomain;
  }

  if (options.dump == DumpKind::Endpoints) {
    write_file(options.out_dir / "endpoints.csv", cluster_endpoints_csv(cluster));
  } else {
    write_file(options.out_dir / "cluster_full.csv", cluster_full_csv(cluster));
  }
  std::vector<double> nn;
  if (cluster.candidates.size() >= 2) {
    nn = nn_distance_stats(cluster).nn_distances;
  }
  write_file(options.out_dir / "nn_histogram.csv", histogram_csv(histogram(nn, 0.05)));
  out << cluster.candidates.size() << " candidates"
      << (cluster.budget_exhausted ? " (insertion budget exhausted)" : "") << '\n';
  return kExitOk;
}

int main_entry(int argc, char ** argv)
{
  CLI::App app{"Frenet trajectory planner with endpoint regulation and momentum-aware refinement"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string scenario;
  std::string mode = "proposed";
  std::string dump;
  std::string out_dir;
  std::optional<std::uint64_t> seed;

  auto * validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("scenario", scenario, "scenario JSON")->required();

  auto * run_cmd = app.add_subcommand("run", "closed-loop simulation");
  run_cmd->add_option("scenario", scenario, "scenario JSON")->required();
  run_cmd->add_option("--mode", mode, "proposed or baseline")
    ->check(CLI::IsMember({"proposed", "baseline"}));
  run_cmd->add_option("--seed", seed, "override sim.seed");
  run_cmd->add_option("--out", out_dir, "output directory")->required();

  auto * cluster_cmd = app.add_subcommand("cluster", "dump one cluster at the initial state");
  cluster_cmd->add_option("scenario", scenario, "scenario JSON")->required();
  cluster_cmd->add_option("--dump", dump, "endpoints or full")
    ->required()
    ->check(CLI::IsMember({"endpoints", "full"}));
  cluster_cmd->add_option("--mode", mode, "proposed (regulated) or baseline")
    ->check(CLI::IsMember({"proposed", "baseline"}));
  cluster_cmd->add_option("--out", out_dir, "output directory (default: current)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) {
      return cmd_validate(scenario, std::cout, std::cerr);
    }
    if (run_cmd->parsed()) {
      RunOptions o;
      o.scenario = scenario;
      o.mode = *parse_mode(mode);
      o.seed = seed;
      o.out_dir = out_dir;
      return cmd_run(o, std::cout, std::cerr);
    }
    ClusterOptions o;
    o.scenario = scenario;
    o.dump = dump == "full" ? DumpKind::Full : DumpKind::Endpoints;
    o.mode = *parse_mode(mode);
    if (!out_dir.empty()) {
      o.out_dir = out_dir;
    }
    return cmd_cluster(o, std::cout, std::cerr);
  } catch (const PlannerError & e) {
    std::cerr << e.what() << '\n';
    return e.code() == ErrorCode::ScenarioInvalid || e.code() == ErrorCode::SchemaViolation ||
               e.code() == ErrorCode::FileNotFound
             ? kExitUsage
             : kExitDomain;
  } catch (const std::exception & e) {
    std::cerr << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace frenet_planner::cli
