// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include "romgrid/errors.hpp"
#include "romgrid/greedy.hpp"
#include "romgrid/io/grid.hpp"
#include "romgrid/io/manifest.hpp"
#include "romgrid/io/matrix_market.hpp"
#include "romgrid/io/report.hpp"
#include "romgrid/io/synthetic.hpp"

namespace romgrid
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

// Frequency range covering the dynamics of each synthetic family.
std::vector<std::string> DefaultGrid(const std::string &synthetic)
{
  const std::string kind = synthetic.substr(0, synthetic.find(':'));
  if (kind == "rc_ladder")
  {
    return {"f:1e-5:1:60:log"};
  }
  if (kind == "symmetric_second_order")
  {
    return {"s=f:1e-2:1:20:log", "d=1,1.5,2", "theta=1", "alpha=0", "beta=0"};
  }
  return {"f:1e-3:10:60:log"};
}

struct SourceOptions
{
  std::string manifest;
  std::string synthetic;
  std::vector<std::string> train;
};

void AddSourceOptions(CLI::App *cmd, SourceOptions &src)
{
  auto *m = cmd->add_option("--manifest", src.manifest, "JSON system manifest");
  auto *s = cmd->add_option("--synthetic", src.synthetic,
                            "rc_ladder:N | random_stable:N[:SEED] | "
                            "symmetric_second_order:N[:SEED] | mimo_block:N[:PORTS[:SEED]]");
  m->excludes(s);
  cmd->add_option("--train", src.train,
                  "training grid axis, NAME=AXIS or f:START:STOP:COUNT:log|lin (repeatable)");
}

ParametricSystem LoadSource(SourceOptions &src)
{
  if (!src.manifest.empty())
  {
    if (src.train.empty())
    {
      throw InvalidConfigError("--train is required with --manifest");
    }
    return io::LoadSystem(src.manifest);
  }
  if (src.synthetic.empty())
  {
    src.synthetic = "rc_ladder:200";
  }
  if (src.train.empty())
  {
    src.train = DefaultGrid(src.synthetic);
  }
  return io::GenerateSynthetic(src.synthetic);
}

json SourceJson(const SourceOptions &src)
{
  json j;
  if (!src.manifest.empty())
  {
    j["manifest"] = fs::absolute(src.manifest).string();
  }
  else
  {
    j["synthetic"] = src.synthetic;
  }
  j["train"] = src.train;
  return j;
}

ParametricSystem LoadSourceJson(const json &j)
{
  if (j.contains("manifest"))
  {
    return io::LoadSystem(j.at("manifest").get<std::string>());
  }
  return io::GenerateSynthetic(j.at("synthetic").get<std::string>());
}

MomentMethod ParseMethod(const std::string &s)
{
  if (s == "auto")
  {
    return MomentMethod::Auto;
  }
  if (s == "krylov")
  {
    return MomentMethod::Krylov;
  }
  if (s == "multimoment")
  {
    return MomentMethod::Multimoment;
  }
  throw InvalidConfigError("unknown moment method '" + s + "'");
}

struct GreedyOptions
{
  double tol = 1.0e-3;
  int q = -1;
  int max_iter = 30;
  bool symmetric_variant = false;
  std::uint64_t seed = 0;
  int K = 20;
  std::string method = "auto";
  bool serial = false;
  bool no_true_errors = false;
};

void AddGreedyOptions(CLI::App *cmd, GreedyOptions &g)
{
  cmd->add_option("--tol", g.tol, "greedy tolerance")->capture_default_str();
  cmd->add_option("--q", g.q, "moment order (default: 3 Krylov, 1 multimoment)");
  cmd->add_option("--max-iter", g.max_iter, "iteration cap")->capture_default_str();
  cmd->add_flag("--symmetric-variant", g.symmetric_variant,
                "separate expansion points for the dual basis");
  cmd->add_option("--seed", g.seed, "seed of the randomized estimator")->capture_default_str();
  cmd->add_option("--K", g.K, "sample count of the randomized estimator")->capture_default_str();
  cmd->add_option("--method", g.method, "auto | krylov | multimoment")->capture_default_str();
  cmd->add_flag("--serial", g.serial, "evaluate the training set on one thread");
  cmd->add_flag("--no-true-errors", g.no_true_errors, "skip full-order error tracking");
}

GreedyConfig MakeConfig(EstimatorKind kind, const GreedyOptions &g,
                        std::vector<SamplePoint> train)
{
  GreedyConfig cfg;
  cfg.kind = kind;
  cfg.tolerance = g.tol;
  cfg.q = g.q;
  cfg.max_iterations = g.max_iter;
  cfg.symmetric_variant = g.symmetric_variant;
  cfg.randomized = {g.K, g.seed};
  cfg.method = ParseMethod(g.method);
  cfg.parallel = !g.serial;
  cfg.record_true_errors = !g.no_true_errors;
  cfg.training_set = std::move(train);
  return cfg;
}

std::string Sci(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

void PrintTrace(std::ostream &out, const GreedyResult &r)
{
  out << "iter  rom_dim  max_estimate  max_true_error  main_point\n";
  for (const auto &rec : r.trace)
  {
    char line[128];
    std::snprintf(line, sizeof(line), "%4d  %7ld  %12s  %14s  ", rec.iteration,
                  static_cast<long>(rec.rom_dimension), Sci(rec.max_estimate).c_str(),
                  rec.max_true_error ? Sci(*rec.max_true_error).c_str() : "-");
    out << line << io::FormatPoint(rec.selected_main) << "\n";
  }
  out << "converged: " << (r.converged ? "true" : "false")
      << " (" << ToString(r.stop_reason) << ")\n";
  for (const auto &w : r.warnings)
  {
    out << "warning: " << w << "\n";
  }
}

const std::vector<std::pair<std::string, const Basis GreedyBases::*>> kBasisFiles = {
    {"V", &GreedyBases::V},       {"V_du", &GreedyBases::Vdu},
    {"V_rdu", &GreedyBases::Vrdu}, {"V_rpr", &GreedyBases::Vrpr},
    {"V_rrpr", &GreedyBases::Vrrpr}};

void WriteRun(const std::string &dir, const SourceOptions &src, const GreedyConfig &cfg,
              const GreedyResult &result, const ParametricSystem &sys)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
  {
    throw IoError("cannot create '" + dir + "': " + ec.message());
  }
  io::WriteTraceCsv((fs::path(dir) / "trace.csv").string(), result.trace);
  io::WriteJson((fs::path(dir) / "trace.json").string(), io::TraceJson(result));

  json bases = json::object();
  for (const auto &[name, member] : kBasisFiles)
  {
    const Basis &b = result.bases.*member;
    if (!b.Empty())
    {
      const std::string file = name + ".mtx";
      io::WriteMatrixMarket((fs::path(dir) / file).string(), b.Columns());
      bases[name] = file;
    }
  }
  const auto &rom = result.workspace.rom_primal;
  const ParametricSystem rom_sys(rom.q_hat, rom.b_hat, rom.c_hat, sys.ParameterNames());
  io::WriteSystem(rom_sys, (fs::path(dir) / "rom").string(), "rom");

  json run;
  run["source"] = SourceJson(src);
  run["estimator"] = ToString(cfg.kind);
  run["tolerance"] = cfg.tolerance;
  run["q"] = cfg.q;
  run["max_iterations"] = cfg.max_iterations;
  run["symmetric_variant"] = cfg.symmetric_variant;
  run["randomized"] = {{"K", cfg.randomized.samples}, {"seed", cfg.randomized.seed}};
  run["converged"] = result.converged;
  run["stop_reason"] = ToString(result.stop_reason);
  run["rom_dim"] = rom.Dim();
  run["bases"] = bases;
  io::WriteJson((fs::path(dir) / "run.json").string(), run);
}

int Reduce(SourceOptions &src, const std::string &estimator, const GreedyOptions &g,
           const std::string &out_dir, std::ostream &out)
{
  const auto sys = LoadSource(src);
  const auto cfg = MakeConfig(ParseEstimatorKind(estimator), g, io::ParseGrid(src.train));
  const auto result = RunGreedy(sys, cfg);
  PrintTrace(out, result);
  WriteRun(out_dir, src, cfg, result, sys);
  out << "wrote " << out_dir << "\n";
  return 0;
}

int ValidateRun(const std::string &dir, std::vector<std::string> grid, const std::string &out_dir,
                std::ostream &out)
{
  const json run = io::ReadJson((fs::path(dir) / "run.json").string());
  const auto sys = LoadSourceJson(run.at("source"));
  if (grid.empty())
  {
    grid = run.at("source").at("train").get<std::vector<std::string>>();
  }
  const auto kind = ParseEstimatorKind(run.at("estimator").get<std::string>());
  const auto &files = run.at("bases");
  const auto load = [&](const char *name, BasisLabel label) -> std::optional<Basis>
  {
    if (!files.contains(name))
    {
      return std::nullopt;
    }
    return Basis::FromOrthonormal(
        label, io::ReadMatrixMarket((fs::path(dir) / files.at(name).get<std::string>()).string()));
  };
  WorkspaceBases wb;
  wb.V = *load("V", BasisLabel::V);
  const auto req = Requirements(kind);
  if (req.dual)
  {
    wb.Vdu = load("V_du", BasisLabel::Vdu);
  }
  if (req.dual_residual)
  {
    wb.Vrdu = load("V_rdu", BasisLabel::Vrdu);
  }
  if (req.primal_residual)
  {
    wb.Vrpr = load("V_rpr", BasisLabel::Vrpr);
  }
  if (req.primal_residual_residual)
  {
    wb.Vrrpr = load("V_rrpr", BasisLabel::Vrrpr);
  }
  auto ws = BuildWorkspace(kind, sys, wb);
  ws.randomized = {run.at("randomized").at("K").get<int>(),
                   run.at("randomized").at("seed").get<std::uint64_t>()};
  const auto report = Validate(sys, ws, kind, io::ParseGrid(grid));

  const std::string target = out_dir.empty() ? dir : out_dir;
  fs::create_directories(target);
  io::WriteText((fs::path(target) / "effectivity.csv").string(), io::EffectivityCsv(report));
  io::WriteJson((fs::path(target) / "effectivity.json").string(), io::EffectivityJson(report));

  const auto &s = report.summary;
  const auto show = [](const std::optional<double> &v) { return v ? Sci(*v) : std::string("-"); };
  out << "estimator " << ToString(kind) << ", " << report.rows.size() << " samples, "
      << s.skipped_singular << " skipped\n";
  out << "effectivity all:      min " << show(s.min_eff_all) << "  max " << show(s.max_eff_all)
      << "\n";
  out << "effectivity filtered: min " << show(s.min_eff_filtered) << "  max "
      << show(s.max_eff_filtered) << "  (true error >= " << Sci(s.filter_threshold) << ")\n";
  if (s.filtered_empty)
  {
    out << "filtered set is empty: every true error is below the threshold\n";
  }
  out << "max true error: " << Sci(s.max_true_error) << "\n";
  return 0;
}

int Compare(SourceOptions &src, const std::string &list, const GreedyOptions &g,
            const std::string &out_dir, std::ostream &out)
{
  const auto sys = LoadSource(src);
  const auto train = io::ParseGrid(src.train);
  std::vector<EstimatorKind> kinds;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    kinds.push_back(ParseEstimatorKind(item));
  }
  if (kinds.empty())
  {
    throw InvalidConfigError("--estimators is empty");
  }
  std::vector<GreedyResult> results;
  std::size_t rows = 0;
  for (auto kind : kinds)
  {
    const auto cfg = MakeConfig(kind, g, train);
    results.push_back(RunGreedy(sys, cfg));
    rows = std::max(rows, results.back().trace.size());
    if (!out_dir.empty())
    {
      WriteRun((fs::path(out_dir) / ToString(kind)).string(), src, cfg, results.back(), sys);
    }
  }

  // One column pair (estimate, true error) per estimator, one row per iteration.
  char cell[64];
  out << "iter";
  for (auto kind : kinds)
  {
    std::snprintf(cell, sizeof(cell), " | %-10s %10s", ToString(kind).c_str(), "true");
    out << cell;
  }
  out << "\n";
  for (std::size_t r = 0; r < rows; r++)
  {
    std::snprintf(cell, sizeof(cell), "%4zu", r + 1);
    out << cell;
    for (const auto &res : results)
    {
      if (r < res.trace.size())
      {
        const auto &rec = res.trace[r];
        std::snprintf(cell, sizeof(cell), " | %10s %10s", Sci(rec.max_estimate).c_str(),
                      rec.max_true_error ? Sci(*rec.max_true_error).c_str() : "-");
      }
      else
      {
        std::snprintf(cell, sizeof(cell), " | %10s %10s", "", "");
      }
      out << cell;
    }
    out << "\n";
  }
  out << "rom_dim";
  for (const auto &res : results)
  {
    out << " | " << res.workspace.rom_primal.Dim() << (res.converged ? "" : " (not converged)");
  }
  out << "\n";
  return 0;
}

}  // namespace

int RunCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Greedy reduced-order modelling with output error estimators"};
  app.require_subcommand(1);

  SourceOptions src;
  GreedyOptions greedy;
  std::string estimator = "delta2";
  std::string out_dir = "romgrid_run";
  auto *reduce = app.add_subcommand("reduce", "run the greedy and write trace, bases and ROM");
  AddSourceOptions(reduce, src);
  AddGreedyOptions(reduce, greedy);
  reduce->add_option("--estimator", estimator, "DeltaR, Delta1, Delta1Pr, Delta2, Delta2Pr, "
                                               "Delta3 or Delta3Pr")
      ->capture_default_str();
  reduce->add_option("--out", out_dir, "output directory")->capture_default_str();

  std::string run_dir;
  std::vector<std::string> grid;
  std::string validate_out;
  auto *validate = app.add_subcommand("validate", "effectivity report of a reduce run");
  validate->add_option("run", run_dir, "directory written by reduce")->required();
  validate->add_option("--grid", grid, "validation grid axes (default: the training grid)");
  validate->add_option("--out", validate_out, "output directory (default: the run directory)");

  SourceOptions cmp_src;
  GreedyOptions cmp_greedy;
  std::string estimators = "delta1,delta1pr,delta2,delta2pr,delta3,delta3pr";
  std::string cmp_out;
  auto *compare = app.add_subcommand("compare", "run several estimators side by side");
  AddSourceOptions(compare, cmp_src);
  AddGreedyOptions(compare, cmp_greedy);
  compare->add_option("--estimators", estimators, "comma-separated estimator list")
      ->capture_default_str();
  compare->add_option("--out", cmp_out, "optional directory for per-estimator runs");

  auto *demo = app.add_subcommand("demo", "rc_ladder end to end with Delta2");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    return app.exit(e, out, err);
  }

  try
  {
    if (*reduce)
    {
      return Reduce(src, estimator, greedy, out_dir, out);
    }
    if (*validate)
    {
      return ValidateRun(run_dir, grid, validate_out, out);
    }
    if (*compare)
    {
      return Compare(cmp_src, estimators, cmp_greedy, cmp_out, out);
    }
    if (*demo)
    {
      SourceOptions demo_src;
      demo_src.synthetic = "rc_ladder:200";
      const auto sys = LoadSource(demo_src);
      const auto cfg =
          MakeConfig(EstimatorKind::Delta2, GreedyOptions{}, io::ParseGrid(demo_src.train));
      out << "rc_ladder n=200, Delta2, tol " << Sci(cfg.tolerance) << ", "
          << cfg.training_set.size() << " training samples\n";
      PrintTrace(out, RunGreedy(sys, cfg));
      return 0;
    }
  }
  catch (const std::exception &e)
  {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  std::vector<const char *> argv = {"romgrid"};
  for (const auto &a : args)
  {
    argv.push_back(a.c_str());
  }
  return RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace romgrid
