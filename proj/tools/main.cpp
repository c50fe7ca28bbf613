// Copyright 2026 The freemeixner Authors
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

// Command-line front end: density tables, verification suites and path sampling.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "freemeixner/errors.hpp"
#include "freemeixner/fm_kernel.hpp"
#include "freemeixner/simulate.hpp"
#include "freemeixner/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  double theta = 0.0;
  double tau = 0.0;
  double s = 0.0;
  double t = 1.0;
  double x = 0.0;
  double z_re = 0.0;
  double z_im = 0.0;
  double tol = 0.0;  // 0: suite defaults
  std::uint64_t seed = 0;
  std::size_t paths = 1;
  double grid_T = 1.0;
  int grid_n = 0;
  std::string grid;
  std::string out;
  std::string format = "csv";
  bool stats = false;
  int points = 201;
  std::string which;
  bool theta_set = false;
  bool tau_set = false;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Output goes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw fm::DomainError("cannot open output file " + path);
      file_->imbue(std::locale::classic());
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

json header(const std::string& command, const json& params) {
  return {{"program", "freemeixner"}, {"version", FREEMEIXNER_VERSION}, {"command", command}, {"params", params}};
}

void write_csv_header(std::ostream& os, const json& h) {
  os << "# freemeixner " << FREEMEIXNER_VERSION << '\n';
  os << "# command: " << h["command"].get<std::string>() << '\n';
  for (const auto& [k, v] : h["params"].items()) os << "# " << k << " = " << v.dump() << '\n';
}

void check_format(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") throw CLI::ValidationError("--format", "must be csv or json");
}

int cmd_density(const RunConfig& cfg) {
  check_format(cfg);
  const fm::ProcessParams p(cfg.theta, cfg.tau);
  const fm::TransitionKernel k = fm::transition_measure(p, cfg.s, cfg.t, cfg.x);
  const json params = {{"theta", cfg.theta}, {"tau", cfg.tau}, {"s", cfg.s},
                       {"t", cfg.t},         {"x", cfg.x},     {"points", cfg.points}};
  const json h = header("density", params);
  json measure = k.measure.to_json(cfg.points);

  json atoms = json::array();
  for (const auto& a : k.measure.atoms()) atoms.push_back({{"y", a.location}, {"w", a.weight}});

  Sink sink(cfg.out);
  std::ostream& os = sink.os();
  if (cfg.format == "json") {
    json doc = h;
    doc["measure"] = measure;
    doc["atoms"] = atoms;
    os << doc.dump(2) << '\n';
    return kExitOk;
  }
  write_csv_header(os, h);
  os << "# atoms: " << atoms.dump() << '\n';
  os << "y,density\n";
  if (const auto& cont = k.measure.continuous()) {
    const int n = cfg.points;
    for (int i = 0; i < n; ++i) {
      const double y = cont->lo() + (cont->hi() - cont->lo()) * i / (n - 1);
      os << fmt(y) << ',' << fmt(cont->density(y)) << '\n';
    }
  }
  if (!cfg.out.empty()) {
    std::ofstream aj(cfg.out + ".atoms.json");
    aj << atoms.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  std::vector<fm::ProcessParams> grid = fm::default_process_grid();
  if (cfg.theta_set || cfg.tau_set) grid = {fm::ProcessParams(cfg.theta, cfg.tau)};
  const bool tol_set = cfg.tol > 0.0;

  std::vector<fm::CheckReport> reports;
  const std::string& w = cfg.which;
  auto append = [&](std::vector<fm::CheckReport> r) { reports.insert(reports.end(), r.begin(), r.end()); };
  if (w == "aw" || w == "all") {
    fm::AwTolerances t;
    if (tol_set) t.closed_vs_quadrature = cfg.tol;
    append(fm::verify_aw(t));
  }
  if (w == "nu" || w == "all") {
    fm::NuTolerances t;
    if (tol_set) t.mass = t.moments = t.h_transform = cfg.tol;
    append(fm::verify_nu(t));
  }
  if (w == "conv" || w == "all") append(fm::verify_convolution(tol_set ? cfg.tol : 1e-7));
  if (w == "ck" || w == "all") {
    fm::KernelTolerances t;
    if (tol_set) t.chapman_kolmogorov = cfg.tol;
    append(fm::verify_kernel(grid, t));
  }
  if (w == "martingale" || w == "all") append(fm::verify_martingale(grid, tol_set ? cfg.tol : 1e-8));
  if (w == "generator" || w == "all") {
    fm::GeneratorTolerances t;
    if (tol_set) t.contour_vs_semicircle = cfg.tol;
    append(fm::verify_generator(grid, t));
  }

  json params = {{"suite", w}};
  if (cfg.theta_set || cfg.tau_set) {
    params["theta"] = cfg.theta;
    params["tau"] = cfg.tau;
  }
  if (tol_set) params["tol"] = cfg.tol;
  json doc = header("verify", params);
  doc["checks"] = json::array();
  for (const auto& r : reports) doc["checks"].push_back(r.to_json());
  const bool ok = fm::all_pass(reports);
  doc["pass"] = ok;

  Sink sink(cfg.out);
  sink.os() << doc.dump(2) << '\n';
  for (const auto& r : reports)
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.check << "  max_dev=" << r.max_deviation
              << "  tol=" << r.tolerance << (r.pass ? "" : "  worst=" + r.worst.dump()) << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

std::vector<double> parse_grid(const RunConfig& cfg) {
  if (!cfg.grid.empty()) {
    std::vector<double> g;
    std::stringstream ss(cfg.grid);
    ss.imbue(std::locale::classic());
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "cannot parse '" + item + "'");
      }
      if (used != item.size()) throw CLI::ValidationError("--grid", "cannot parse '" + item + "'");
      g.push_back(v);
    }
    return g;
  }
  return fm::uniform_grid(cfg.grid_T, cfg.grid_n > 0 ? cfg.grid_n : 10);
}

int cmd_sample(const RunConfig& cfg) {
  check_format(cfg);
  const fm::ProcessParams p(cfg.theta, cfg.tau);
  const std::vector<double> grid = parse_grid(cfg);
  if (cfg.paths == 0) throw CLI::ValidationError("--paths", "must be positive");
  const auto paths = fm::sample_paths(p, grid, cfg.paths, cfg.seed);

  json params = {{"theta", cfg.theta}, {"tau", cfg.tau}, {"seed", cfg.seed}, {"paths", cfg.paths}, {"grid", grid}};
  const json h = header("sample", params);
  json stats;
  if (cfg.stats) {
    stats = json::array();
    for (const auto& st : fm::empirical_stats(paths, p))
      stats.push_back({{"time", st.time},
                       {"mean", st.mean},
                       {"variance", st.variance},
                       {"skewness", st.skewness},
                       {"atom_fraction", st.atom_fraction},
                       {"atom_weight", fm::marginal_atom_weight(p, st.time)},
                       {"ks", st.ks},
                       {"ks_critical", st.ks_critical}});
  }

  Sink sink(cfg.out);
  std::ostream& os = sink.os();
  if (cfg.format == "json") {
    json doc = h;
    doc["paths"] = json::array();
    for (const auto& path : paths)
      doc["paths"].push_back({{"time", path.times}, {"value", path.values}, {"atom_flag", path.atom_flags}});
    if (cfg.stats) doc["stats"] = stats;
    os << doc.dump(2) << '\n';
    return kExitOk;
  }
  write_csv_header(os, h);
  os << "path,time,value,atom_flag\n";
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t k = 0; k < paths[i].times.size(); ++k)
      os << i << ',' << fmt(paths[i].times[k]) << ',' << fmt(paths[i].values[k]) << ','
         << (paths[i].atom_flags[k] ? 1 : 0) << '\n';
  if (cfg.stats) os << "# stats: " << stats.dump() << '\n';
  return kExitOk;
}

void add_process_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--theta", cfg.theta, "process parameter theta");
  app->add_option("--tau", cfg.tau, "process parameter tau (>= 0)");
  app->add_option("--out", cfg.out, "output file (default stdout)");
  app->add_option("--format", cfg.format, "csv or json");
}

}  // namespace

int main(int argc, char** argv) {
  std::locale::global(std::locale::classic());
  RunConfig cfg;
  CLI::App app{"Free-Meixner transition kernels, verification suites and path sampling"};
  app.set_version_flag("--version", std::string("freemeixner ") + FREEMEIXNER_VERSION);
  app.require_subcommand(1);

  auto* density = app.add_subcommand("density", "transition density on a grid plus atoms");
  add_process_flags(density, cfg);
  density->add_option("--s", cfg.s, "start time");
  density->add_option("--t", cfg.t, "end time");
  density->add_option("--x", cfg.x, "state at time s");
  density->add_option("--points", cfg.points, "grid points over the continuous support")->check(CLI::Range(2, 1000000));

  auto* verify = app.add_subcommand("verify", "run a verification suite; JSON report");
  add_process_flags(verify, cfg);
  verify->add_option("which", cfg.which, "ck|kernel|martingale|generator|aw|nu|conv|all")
      ->required()
      ->check(CLI::IsMember({"ck", "kernel", "martingale", "generator", "aw", "nu", "conv", "all"}));
  verify->add_option("--tol", cfg.tol, "override the headline tolerance of the suite");
  verify->add_option("--z-re", cfg.z_re, "unused; accepted for a uniform flag set");
  verify->add_option("--z-im", cfg.z_im, "unused; accepted for a uniform flag set");

  auto* sample = app.add_subcommand("sample", "sample paths on a time grid");
  add_process_flags(sample, cfg);
  sample->add_option("--seed", cfg.seed, "RNG seed");
  sample->add_option("--paths", cfg.paths, "number of paths");
  sample->add_option("--grid", cfg.grid, "comma separated increasing times");
  sample->add_option("--grid-T", cfg.grid_T, "horizon of the uniform grid");
  sample->add_option("--grid-n", cfg.grid_n, "number of steps of the uniform grid");
  sample->add_flag("--stats", cfg.stats, "append per-time statistics (needs >= 1000 paths)");

  try {
    app.parse(argc, argv);
    cfg.theta_set = (*verify)["--theta"]->count() > 0;
    cfg.tau_set = (*verify)["--tau"]->count() > 0;
    if (cfg.which == "kernel") cfg.which = "ck";
    if (!(cfg.tau >= 0.0)) throw CLI::ValidationError("--tau", "must be >= 0");
    if (verify->parsed() && cfg.tol < 0.0) throw CLI::ValidationError("--tol", "must be > 0");
    if (density->parsed()) return cmd_density(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    return cmd_sample(cfg);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const fm::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
