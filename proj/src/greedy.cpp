// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include "romgrid/errors.hpp"
#include "romgrid/sweep.hpp"

namespace romgrid
{

namespace
{

using Getter = std::function<std::optional<double>(const EstimateBreakdown &)>;

std::optional<std::size_t> Argmax(const std::vector<std::optional<EstimateBreakdown>> &b,
                                  const Getter &get)
{
  std::optional<std::size_t> best;
  double best_value = 0.0;
  for (std::size_t k = 0; k < b.size(); k++)
  {
    if (!b[k])
    {
      continue;
    }
    const auto v = get(*b[k]);
    if (!v || std::isnan(*v))
    {
      continue;
    }
    if (!best || *v > best_value)
    {
      best = k;
      best_value = *v;
    }
  }
  return best;
}

bool SupportsSymmetricVariant(EstimatorKind kind)
{
  return kind == EstimatorKind::Delta1 || kind == EstimatorKind::Delta2 ||
         kind == EstimatorKind::Delta2Pr;
}

// First usable index at or after `idx`, wrapping around.
std::size_t NextActive(std::size_t idx, const std::vector<bool> &active)
{
  for (std::size_t k = 0; k < active.size(); k++)
  {
    const std::size_t j = (idx + k) % active.size();
    if (active[j])
    {
      return j;
    }
  }
  return idx;
}

void CheckConfig(const GreedyConfig &cfg)
{
  if (!(cfg.tolerance > 0.0))
  {
    throw InvalidConfigError("tolerance must be positive");
  }
  if (cfg.training_set.empty())
  {
    throw InvalidConfigError("training set is empty");
  }
  if (cfg.max_iterations < 0)
  {
    throw InvalidConfigError("max_iterations must be nonnegative");
  }
  if (cfg.symmetric_variant && !SupportsSymmetricVariant(cfg.kind))
  {
    throw InvalidConfigError("the separate-dual-point variant applies to Delta1, Delta2 and "
                             "Delta2Pr only, not " +
                             ToString(cfg.kind));
  }
  const auto &ip = cfg.initial_points;
  for (const auto &idx : {ip.main, ip.alpha, ip.beta, ip.gamma})
  {
    if (idx && *idx >= cfg.training_set.size())
    {
      throw InvalidConfigError("initial point index " + std::to_string(*idx) +
                               " outside the training set of size " +
                               std::to_string(cfg.training_set.size()));
    }
  }
}

}  // namespace

std::string ToString(StopReason reason)
{
  switch (reason)
  {
    case StopReason::ToleranceMet:
      return "ToleranceMet";
    case StopReason::MaxIterations:
      return "MaxIterations";
    case StopReason::StagnationAllPointsUsed:
      return "StagnationAllPointsUsed";
  }
  return "?";
}

PointSelection SelectPoints(EstimatorKind kind, bool symmetric_variant,
                            const std::vector<std::optional<EstimateBreakdown>> &breakdowns)
{
  const Getter total = [](const EstimateBreakdown &b) { return std::optional(b.total); };
  const Getter part1 = [](const EstimateBreakdown &b) { return std::optional(b.part1); };
  const Getter part2 = [](const EstimateBreakdown &b) { return std::optional(b.part2); };
  const Getter r_rpr = [](const EstimateBreakdown &b) { return b.aux.r_rpr_norm; };
  const Getter r_du = [](const EstimateBreakdown &b) { return b.aux.r_du_norm; };

  const auto main = Argmax(breakdowns, total);
  if (!main)
  {
    throw InvalidConfigError("no sample has an estimate to select from");
  }
  PointSelection sel;
  sel.main = *main;
  switch (kind)
  {
    case EstimatorKind::Delta2:
    case EstimatorKind::Delta2Pr:
      sel.alpha = Argmax(breakdowns, part2);
      break;
    case EstimatorKind::Delta1Pr:
      sel.alpha = Argmax(breakdowns, r_rpr);
      break;
    case EstimatorKind::Delta3:
      sel.alpha = Argmax(breakdowns, part1);
      break;
    case EstimatorKind::Delta3Pr:
      sel.alpha = Argmax(breakdowns, part1);
      sel.beta = Argmax(breakdowns, part2);
      break;
    default:
      break;
  }
  if (symmetric_variant)
  {
    if (kind == EstimatorKind::Delta1)
    {
      sel.gamma = Argmax(breakdowns, r_du);
    }
    else if (kind == EstimatorKind::Delta2 || kind == EstimatorKind::Delta2Pr)
    {
      sel.gamma = Argmax(breakdowns, part1);
    }
  }
  return sel;
}

BasisPlan PlanFor(EstimatorKind kind, bool symmetric_variant)
{
  BasisPlan plan;
  const auto req = Requirements(kind);
  plan.dual = req.dual;
  plan.dual_at_gamma = symmetric_variant && SupportsSymmetricVariant(kind);
  plan.dual_residual = req.dual_residual;
  plan.primal_residual = req.primal_residual;
  plan.primal_residual_residual = req.primal_residual_residual;
  return plan;
}

GreedyResult RunGreedy(const ParametricSystem &sys, const GreedyConfig &cfg)
{
  CheckConfig(cfg);
  const auto &train = cfg.training_set;
  const std::size_t N = train.size();
  const BasisPlan plan = PlanFor(cfg.kind, cfg.symmetric_variant);
  const int threads = cfg.parallel ? 0 : 1;

  GreedyResult result;
  const auto h_full = TransferFunctionSweep(sys, train, threads);
  std::vector<bool> active(N, false);
  std::vector<SamplePoint> active_points;
  std::vector<std::size_t> active_index;
  for (std::size_t k = 0; k < N; k++)
  {
    if (h_full[k])
    {
      active[k] = true;
      active_points.push_back(train[k]);
      active_index.push_back(k);
    }
    else
    {
      result.skipped_samples.push_back(k);
      result.warnings.push_back("training sample " + std::to_string(k) +
                                " skipped: system matrix is singular there");
    }
  }
  if (active_points.empty())
  {
    throw AllSamplesSingularError("the system matrix is singular at every training sample");
  }

  const auto &ip = cfg.initial_points;
  std::size_t main = NextActive(ip.main.value_or(0), active);
  std::size_t alpha = NextActive(ip.alpha.value_or(N - 1), active);
  std::size_t beta = NextActive(ip.beta.value_or(N / 2), active);
  std::size_t gamma = NextActive(ip.gamma.value_or(N / 2), active);

  const auto block = [&](std::size_t idx, Direction dir)
  {
    ComplexMatrix M = MomentBlock(sys, train[idx], dir, cfg.method, cfg.q, cfg.max_block_columns);
    return cfg.real_basis ? RealifyColumns(M) : M;
  };

  GreedyBases &bases = result.bases;
  std::set<std::size_t> used_v, used_du, used_rdu, used_rpr, used_rrpr;
  const auto &tol = cfg.deflation_tol;

  for (int it = 1; it <= cfg.max_iterations; it++)
  {
    IterationRecord rec;
    rec.iteration = it;
    rec.main_index = main;
    rec.selected_main = train[main];

    bases.V.Append(block(main, Direction::Primal), tol);
    used_v.insert(main);
    if (plan.dual)
    {
      const std::size_t at = plan.dual_at_gamma ? gamma : main;
      bases.Vdu.Append(block(at, Direction::Dual), tol);
      used_du.insert(at);
      if (plan.dual_at_gamma)
      {
        rec.selected_gamma = train[gamma];
      }
    }
    if (plan.dual_residual)
    {
      bases.Vrdu.Append(bases.Vdu.Columns(), tol);
      bases.Vrdu.Append(block(alpha, Direction::Dual), tol);
      used_rdu.insert(alpha);
      rec.selected_alpha = train[alpha];
    }
    if (plan.primal_residual)
    {
      bases.Vrpr.Append(bases.V.Columns(), tol);
      bases.Vrpr.Append(block(alpha, Direction::Primal), tol);
      used_rpr.insert(alpha);
      rec.selected_alpha = train[alpha];
    }
    if (plan.primal_residual_residual)
    {
      bases.Vrrpr.Append(bases.V.Columns(), tol);
      bases.Vrrpr.Append(bases.Vrpr.Columns(), tol);
      bases.Vrrpr.Append(block(beta, Direction::Primal), tol);
      used_rrpr.insert(beta);
      rec.selected_beta = train[beta];
    }

    WorkspaceBases wb;
    wb.V = bases.V;
    if (plan.dual)
    {
      wb.Vdu = bases.Vdu;
    }
    if (plan.dual_residual)
    {
      wb.Vrdu = bases.Vrdu;
    }
    if (plan.primal_residual)
    {
      wb.Vrpr = bases.Vrpr;
    }
    if (plan.primal_residual_residual)
    {
      wb.Vrrpr = bases.Vrrpr;
    }
    result.workspace = BuildWorkspace(cfg.kind, sys, wb);
    result.workspace.randomized = cfg.randomized;
    rec.rom_dimension = bases.V.cols();

    try
    {
      const auto z = ReducedPrimalSolve(result.workspace.rom_primal, train[main]).z;
      const ComplexMatrix h_hat = Assemble(result.workspace.rom_primal.c_hat, train[main]) * z;
      const ComplexMatrix &h = *h_full[main];
      rec.main_point_error = (h - h_hat).cwiseAbs().maxCoeff();
      rec.main_point_scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    }
    catch (const SingularMatrixError &e)
    {
      result.warnings.push_back("iteration " + std::to_string(it) +
                                ": reduced system singular at the expansion point: " + e.what());
    }

    const auto entries =
        cfg.parallel ? SweepParallel(cfg.kind, result.workspace, sys, active_points)
                     : SweepSerial(cfg.kind, result.workspace, sys, active_points);
    std::vector<std::optional<EstimateBreakdown>> breakdowns(N);
    double max_estimate = 0.0;
    double max_true = 0.0;
    bool any = false;
    for (std::size_t a = 0; a < entries.size(); a++)
    {
      const std::size_t k = active_index[a];
      if (!entries[a].estimate)
      {
        result.warnings.push_back("iteration " + std::to_string(it) + ": training sample " +
                                  std::to_string(k) + " skipped: " + entries[a].error);
        continue;
      }
      const auto &est = *entries[a].estimate;
      breakdowns[k] = est.combined;
      max_estimate = any ? std::max(max_estimate, est.combined.total) : est.combined.total;
      any = true;
      if (cfg.record_true_errors)
      {
        max_true = std::max(max_true, (*h_full[k] - est.h_hat).cwiseAbs().maxCoeff());
      }
    }
    if (!any)
    {
      throw SingularReducedSystemError("reduced system singular at every training sample");
    }
    rec.max_estimate = max_estimate;
    if (cfg.record_true_errors)
    {
      rec.max_true_error = max_true;
    }
    result.trace.push_back(rec);

    if (max_estimate <= cfg.tolerance)
    {
      result.converged = true;
      result.stop_reason = StopReason::ToleranceMet;
      break;
    }
    if (it == cfg.max_iterations)
    {
      result.stop_reason = StopReason::MaxIterations;
      break;
    }

    const auto sel = SelectPoints(cfg.kind, cfg.symmetric_variant, breakdowns);
    main = sel.main;
    alpha = sel.alpha.value_or(alpha);
    beta = sel.beta.value_or(beta);
    gamma = sel.gamma.value_or(gamma);

    // Blocks at points already used for the same basis are fully deflated, so the next
    // iteration would reproduce this one.
    bool fresh = used_v.count(main) == 0;
    if (plan.dual)
    {
      fresh = fresh || used_du.count(plan.dual_at_gamma ? gamma : main) == 0;
    }
    if (plan.dual_residual)
    {
      fresh = fresh || used_rdu.count(alpha) == 0;
    }
    if (plan.primal_residual)
    {
      fresh = fresh || used_rpr.count(alpha) == 0;
    }
    if (plan.primal_residual_residual)
    {
      fresh = fresh || used_rrpr.count(beta) == 0;
    }
    if (!fresh)
    {
      result.stop_reason = StopReason::StagnationAllPointsUsed;
      break;
    }
  }
  return result;
}

EffectivityReport Validate(const ParametricSystem &sys, const EstimatorWorkspace &ws,
                           EstimatorKind kind, const std::vector<SamplePoint> &validation_set,
                           double filter_threshold)
{
  ws.Require(kind);
  const long count = static_cast<long>(validation_set.size());
  std::vector<std::optional<EffectivityRow>> rows(validation_set.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(SweepThreadLimit())
  for (long k = 0; k < count; k++)
  {
    const auto &p = validation_set[static_cast<std::size_t>(k)];
    try
    {
      EffectivityRow row;
      row.sample = p;
      row.estimate = EvaluateMimo(kind, ws, sys, p);
      row.true_error = TrueError(sys, ws, p);
      if (row.true_error > 0.0)
      {
        row.effectivity = row.estimate / row.true_error;
      }
      rows[static_cast<std::size_t>(k)] = std::move(row);
    }
    catch (const SingularMatrixError &)
    {
    }
    catch (...)
    {
#pragma omp critical(romgrid_validate_failure)
      if (!failure)
      {
        failure = std::current_exception();
      }
    }
  }
  if (failure)
  {
    std::rethrow_exception(failure);
  }

  EffectivityReport rep;
  rep.kind = kind;
  auto &s = rep.summary;
  s.filter_threshold = filter_threshold;
  const auto widen = [](std::optional<double> &lo, std::optional<double> &hi, double v)
  {
    lo = lo ? std::min(*lo, v) : v;
    hi = hi ? std::max(*hi, v) : v;
  };
  for (auto &row : rows)
  {
    if (!row)
    {
      s.skipped_singular++;
      continue;
    }
    s.max_true_error = std::max(s.max_true_error, row->true_error);
    if (row->effectivity)
    {
      widen(s.min_eff_all, s.max_eff_all, *row->effectivity);
      if (row->true_error >= filter_threshold)
      {
        widen(s.min_eff_filtered, s.max_eff_filtered, *row->effectivity);
        s.filtered_empty = false;
      }
    }
    rep.rows.push_back(std::move(*row));
  }
  return rep;
}

}  // namespace romgrid
