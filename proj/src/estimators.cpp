// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/estimators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include "romgrid/errors.hpp"

namespace romgrid
{

namespace
{

struct ChainNeeds
{
  bool dual = false;
  bool dual_residual = false;
  bool primal_residual = false;
  bool primal_residual_residual = false;
};

ChainNeeds NeedsFor(EstimatorKind kind)
{
  const auto req = Requirements(kind);
  return {req.dual, req.dual_residual, req.primal_residual, req.primal_residual_residual};
}

ChainNeeds NeedsFromPresence(const EstimatorWorkspace &ws)
{
  ChainNeeds needs;
  needs.dual = ws.rom_dual.has_value();
  needs.dual_residual = needs.dual && ws.rom_dual_residual.has_value();
  needs.primal_residual = ws.rom_primal_residual.has_value();
  needs.primal_residual_residual =
      needs.primal_residual && ws.rom_primal_residual_residual.has_value();
  return needs;
}

EstimateChain RunChain(const ChainNeeds &needs, const EstimatorWorkspace &ws,
                       const ParametricSystem &sys, const SamplePoint &p)
{
  EstimateChain ch;
  const auto primal = ReducedPrimalSolve(ws.rom_primal, p);
  ch.z_pr = primal.z;
  ch.x_hat_pr = primal.x_hat;
  ch.r_pr = ReducedResidual(ws.rom_primal, p, primal.z, Assemble(sys.B(), p));
  ch.c = Assemble(sys.C(), p);
  ch.h_hat = Assemble(ws.rom_primal.c_hat, p) * primal.z;

  if (needs.dual)
  {
    const auto dual = ReducedDualSolve(*ws.rom_dual, p);
    ch.x_hat_du = dual.x_hat;
    ch.r_du = ReducedResidual(*ws.rom_dual, p, dual.z, ch.c.transpose());
    if (needs.dual_residual)
    {
      ch.x_hat_rdu = ReducedSolveWithRhs(*ws.rom_dual_residual, p, *ch.r_du).x_hat;
    }
  }
  if (needs.primal_residual)
  {
    const auto rpr = ReducedSolveWithRhs(*ws.rom_primal_residual, p, ch.r_pr);
    ch.x_hat_rpr = rpr.x_hat;
    // r_rpr = r_pr - Q V_rpr z_rpr through the cached trial products.
    ch.r_rpr = ReducedResidual(*ws.rom_primal_residual, p, rpr.z, ch.r_pr);
    if (needs.primal_residual_residual)
    {
      ch.x_hat_rrpr = ReducedSolveWithRhs(*ws.rom_primal_residual_residual, p, *ch.r_rpr).x_hat;
    }
  }
  return ch;
}

double NormOfSquares(const std::vector<double> &xi)
{
  double sum = 0.0;
  for (double v : xi)
  {
    sum += v * v;
  }
  return std::sqrt(sum);
}

SampleEstimate Breakdowns(EstimatorKind kind, const EstimateChain &ch, double deltar_factor)
{
  SampleEstimate est;
  est.outputs = ch.c.rows();
  est.inputs = ch.r_pr.cols();
  est.h_hat = ch.h_hat;

  Eigen::MatrixXd d1, d1pr, part2;
  if (ch.x_hat_du)
  {
    d1 = (ch.x_hat_du->transpose() * ch.r_pr).cwiseAbs();
  }
  if (ch.x_hat_rpr)
  {
    d1pr = (ch.c * *ch.x_hat_rpr).cwiseAbs();
  }
  switch (kind)
  {
    case EstimatorKind::Delta2:
      part2 = (ch.x_hat_rdu->transpose() * ch.r_pr).cwiseAbs();
      break;
    case EstimatorKind::Delta2Pr:
      part2 = (ch.r_du->transpose() * *ch.x_hat_rpr).cwiseAbs();
      break;
    case EstimatorKind::Delta3:
      part2 = (ch.x_hat_du->transpose() * *ch.r_rpr).cwiseAbs();
      break;
    case EstimatorKind::Delta3Pr:
      part2 = (ch.c * *ch.x_hat_rrpr).cwiseAbs();
      break;
    default:
      break;
  }

  est.channels.resize(static_cast<std::size_t>(est.outputs * est.inputs));
  for (Eigen::Index i = 0; i < est.outputs; i++)
  {
    for (Eigen::Index j = 0; j < est.inputs; j++)
    {
      EstimateBreakdown b;
      switch (kind)
      {
        case EstimatorKind::DeltaR:
          b.part1 = deltar_factor * d1(i, j);
          break;
        case EstimatorKind::Delta1:
        case EstimatorKind::Delta2:
        case EstimatorKind::Delta2Pr:
          b.part1 = d1(i, j);
          break;
        case EstimatorKind::Delta1Pr:
        case EstimatorKind::Delta3:
        case EstimatorKind::Delta3Pr:
          b.part1 = d1pr(i, j);
          break;
      }
      if (IsTwoPart(kind))
      {
        b.part2 = part2(i, j);
      }
      b.total = b.part1 + b.part2;
      b.aux.r_pr_norm = ch.r_pr.col(j).norm();
      if (ch.r_du)
      {
        b.aux.r_du_norm = ch.r_du->col(i).norm();
      }
      if (ch.r_rpr)
      {
        b.aux.r_rpr_norm = ch.r_rpr->col(j).norm();
      }
      est.channels[static_cast<std::size_t>(i * est.inputs + j)] = b;
    }
  }

  const auto max_opt = [](std::optional<double> a, std::optional<double> b)
  {
    if (!a)
    {
      return b;
    }
    if (!b)
    {
      return a;
    }
    return std::optional<double>(std::max(*a, *b));
  };
  for (std::size_t k = 0; k < est.channels.size(); k++)
  {
    const auto &b = est.channels[k];
    if (k == 0)
    {
      est.combined = b;
      continue;
    }
    est.combined.total = std::max(est.combined.total, b.total);
    est.combined.part1 = std::max(est.combined.part1, b.part1);
    est.combined.part2 = std::max(est.combined.part2, b.part2);
    est.combined.aux.r_pr_norm = max_opt(est.combined.aux.r_pr_norm, b.aux.r_pr_norm);
    est.combined.aux.r_du_norm = max_opt(est.combined.aux.r_du_norm, b.aux.r_du_norm);
    est.combined.aux.r_rpr_norm = max_opt(est.combined.aux.r_rpr_norm, b.aux.r_rpr_norm);
  }
  return est;
}

double MaxAbs(const ComplexMatrix &M)
{
  return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

}  // namespace

std::string ToString(EstimatorKind kind)
{
  switch (kind)
  {
    case EstimatorKind::DeltaR:
      return "DeltaR";
    case EstimatorKind::Delta1:
      return "Delta1";
    case EstimatorKind::Delta1Pr:
      return "Delta1Pr";
    case EstimatorKind::Delta2:
      return "Delta2";
    case EstimatorKind::Delta2Pr:
      return "Delta2Pr";
    case EstimatorKind::Delta3:
      return "Delta3";
    case EstimatorKind::Delta3Pr:
      return "Delta3Pr";
  }
  return "?";
}

EstimatorKind ParseEstimatorKind(const std::string &text)
{
  std::string key;
  for (char c : text)
  {
    if (c != '_' && c != '-')
    {
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  for (auto kind : {EstimatorKind::DeltaR, EstimatorKind::Delta1, EstimatorKind::Delta1Pr,
                    EstimatorKind::Delta2, EstimatorKind::Delta2Pr, EstimatorKind::Delta3,
                    EstimatorKind::Delta3Pr})
  {
    std::string name = ToString(kind);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (key == name)
    {
      return kind;
    }
  }
  throw InvalidConfigError("unknown estimator '" + text + "'");
}

bool IsTwoPart(EstimatorKind kind)
{
  return kind == EstimatorKind::Delta2 || kind == EstimatorKind::Delta2Pr ||
         kind == EstimatorKind::Delta3 || kind == EstimatorKind::Delta3Pr;
}

RomRequirements Requirements(EstimatorKind kind)
{
  RomRequirements r;
  switch (kind)
  {
    case EstimatorKind::DeltaR:
    case EstimatorKind::Delta1:
      r.dual = true;
      break;
    case EstimatorKind::Delta2:
      r.dual = true;
      r.dual_residual = true;
      break;
    case EstimatorKind::Delta2Pr:
    case EstimatorKind::Delta3:
      r.dual = true;
      r.primal_residual = true;
      break;
    case EstimatorKind::Delta1Pr:
      r.primal_residual = true;
      break;
    case EstimatorKind::Delta3Pr:
      r.primal_residual = true;
      r.primal_residual_residual = true;
      break;
  }
  return r;
}

void EstimatorWorkspace::Require(EstimatorKind k) const
{
  const auto req = Requirements(k);
  const auto missing = [&](const char *what)
  {
    throw MissingWorkspaceRomError(ToString(k) + " needs the " + std::string(what) +
                                   " reduced model");
  };
  if (req.dual && !rom_dual)
  {
    missing("dual");
  }
  if (req.dual_residual && !rom_dual_residual)
  {
    missing("dual-residual");
  }
  if (req.primal_residual && !rom_primal_residual)
  {
    missing("primal-residual");
  }
  if (req.primal_residual_residual && !rom_primal_residual_residual)
  {
    missing("primal-residual-residual");
  }
}

EstimatorWorkspace BuildWorkspace(EstimatorKind kind, const ParametricSystem &sys,
                                  const WorkspaceBases &bases)
{
  EstimatorWorkspace ws;
  ws.kind = kind;
  ws.rom_primal = Reduce(sys, bases.W.value_or(bases.V), bases.V);
  if (bases.Vdu || bases.Vrdu)
  {
    const ParametricSystem dual_sys = sys.Transposed();
    if (bases.Vdu)
    {
      ws.rom_dual = Reduce(dual_sys, bases.Wdu.value_or(*bases.Vdu), *bases.Vdu);
    }
    if (bases.Vrdu)
    {
      ws.rom_dual_residual = Reduce(dual_sys, bases.Wrdu.value_or(*bases.Vrdu), *bases.Vrdu);
    }
  }
  if (bases.Vrpr)
  {
    ws.rom_primal_residual = Reduce(sys, bases.Wrpr.value_or(*bases.Vrpr), *bases.Vrpr);
  }
  if (bases.Vrrpr)
  {
    ws.rom_primal_residual_residual =
        Reduce(sys, bases.Wrrpr.value_or(*bases.Vrrpr), *bases.Vrrpr);
  }
  return ws;
}

EstimateChain ComputeChain(EstimatorKind kind, const EstimatorWorkspace &ws,
                           const ParametricSystem &sys, const SamplePoint &p)
{
  ws.Require(kind);
  return RunChain(NeedsFor(kind), ws, sys, p);
}

SampleEstimate EvaluateSample(EstimatorKind kind, const EstimatorWorkspace &ws,
                              const ParametricSystem &sys, const SamplePoint &p)
{
  double factor = 0.0;
  if (kind == EstimatorKind::DeltaR)
  {
    const int K = ws.randomized.samples;
    if (K < 1)
    {
      throw InvalidConfigError("randomized estimator needs at least one sample");
    }
    factor = NormOfSquares(DrawStandardNormal(K, ws.randomized.seed)) / K;
  }
  return Breakdowns(kind, ComputeChain(kind, ws, sys, p), factor);
}

EstimateBreakdown Evaluate(EstimatorKind kind, const EstimatorWorkspace &ws,
                           const ParametricSystem &sys, const SamplePoint &p)
{
  return EvaluateSample(kind, ws, sys, p).combined;
}

double EvaluateMimo(EstimatorKind kind, const EstimatorWorkspace &ws,
                    const ParametricSystem &sys, const SamplePoint &p)
{
  return EvaluateSample(kind, ws, sys, p).combined.total;
}

std::vector<double> DrawStandardNormal(int K, std::uint64_t seed)
{
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> xi(static_cast<std::size_t>(std::max(K, 0)));
  for (auto &v : xi)
  {
    v = normal(gen);
  }
  return xi;
}

double DeltaR(const EstimatorWorkspace &ws, const ParametricSystem &sys, const SamplePoint &p,
              int K, std::uint64_t seed)
{
  return DeltaR(ws, sys, p, DrawStandardNormal(K, seed));
}

double DeltaR(const EstimatorWorkspace &ws, const ParametricSystem &sys, const SamplePoint &p,
              const std::vector<double> &xi)
{
  if (xi.empty())
  {
    throw InvalidConfigError("randomized estimator needs at least one sample");
  }
  const auto ch = ComputeChain(EstimatorKind::DeltaR, ws, sys, p);
  const ComplexMatrix delta = ch.x_hat_du->transpose() * ch.r_pr;
  const double K = static_cast<double>(xi.size());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < delta.rows(); i++)
  {
    for (Eigen::Index j = 0; j < delta.cols(); j++)
    {
      double sum = 0.0;
      for (double x : xi)
      {
        const double d = std::abs(x * delta(i, j));
        sum += d * d;
      }
      worst = std::max(worst, std::sqrt(sum) / K);
    }
  }
  return worst;
}

TrueErrorRoutes TrueErrorBothRoutes(const ParametricSystem &sys, const ReducedModel &rom,
                                    const SamplePoint &p)
{
  const auto lu = FactorAt(sys, p);
  const ComplexMatrix B = Assemble(sys.B(), p);
  const ComplexMatrix C = Assemble(sys.C(), p);
  TrueErrorRoutes out;
  out.h = C * lu.Solve(B);
  const auto primal = ReducedPrimalSolve(rom, p);
  out.direct = out.h - Assemble(rom.c_hat, p) * primal.z;
  const ComplexMatrix x_du = lu.SolveTransposed(C.transpose());
  const ComplexMatrix r_pr = PrimalResidual(sys, p, primal.x_hat);
  out.identity = x_du.transpose() * r_pr;
  return out;
}

double TrueError(const ParametricSystem &sys, const EstimatorWorkspace &ws,
                 const SamplePoint &p)
{
#ifndef NDEBUG
  const auto routes = TrueErrorBothRoutes(sys, ws.rom_primal, p);
  const double err = MaxAbs(routes.direct);
  const double gap = MaxAbs(routes.direct - routes.identity);
  if (gap > 1.0e-10 * err + 1.0e-13 * MaxAbs(routes.h))
  {
    throw Error("output error identity violated: direct " + std::to_string(err) + ", gap " +
                std::to_string(gap));
  }
  return err;
#else
  const auto lu = FactorAt(sys, p);
  const ComplexMatrix h = Assemble(sys.C(), p) * lu.Solve(Assemble(sys.B(), p));
  const auto primal = ReducedPrimalSolve(ws.rom_primal, p);
  return MaxAbs(h - Assemble(ws.rom_primal.c_hat, p) * primal.z);
#endif
}

SensitivityReport ComputeSensitivity(const ParametricSystem &sys, const EstimatorWorkspace &ws,
                                     const SamplePoint &p)
{
  if (sys.NumInputs() != 1 || sys.NumOutputs() != 1)
  {
    throw InvalidConfigError("sensitivity diagnostics are defined for SISO systems");
  }
  const auto ch = RunChain(NeedsFromPresence(ws), ws, sys, p);
  const auto lu = FactorAt(sys, p);
  const auto abs11 = [](const ComplexMatrix &M) { return std::abs(M(0, 0)); };

  SensitivityReport rep;
  const ComplexMatrix h = ch.c * lu.Solve(Assemble(sys.B(), p));
  rep.true_error = abs11(h - ch.h_hat);
  if (ch.x_hat_du)
  {
    const ComplexMatrix e_du = lu.SolveTransposed(ch.c.transpose()) - *ch.x_hat_du;
    rep.epsilon1 = abs11(e_du.transpose() * ch.r_pr);
    rep.epsilon3 = rep.epsilon1;
    if (ch.x_hat_rdu)
    {
      rep.delta2_term = abs11(ch.x_hat_rdu->transpose() * ch.r_pr);
      const ComplexMatrix e_rdu = lu.SolveTransposed(*ch.r_du) - *ch.x_hat_rdu;
      rep.epsilon2 = abs11(e_rdu.transpose() * ch.r_pr);
    }
    if (ch.r_rpr)
    {
      rep.delta3_term = abs11(ch.x_hat_du->transpose() * *ch.r_rpr);
      rep.epsilon3_rrpr = abs11(e_du.transpose() * *ch.r_rpr);
    }
  }
  if (ch.x_hat_rpr)
  {
    const ComplexMatrix e_rpr = lu.Solve(ch.r_pr) - *ch.x_hat_rpr;
    rep.epsilon1_pr = abs11(ch.c * e_rpr);
    if (ch.r_du)
    {
      rep.delta2_pr_term = abs11(ch.r_du->transpose() * *ch.x_hat_rpr);
      rep.epsilon2_pr = abs11(ch.r_du->transpose() * e_rpr);
    }
    if (ch.x_hat_rrpr)
    {
      rep.delta3_pr_term = abs11(ch.c * *ch.x_hat_rrpr);
      const ComplexMatrix e_rrpr = lu.Solve(*ch.r_rpr) - *ch.x_hat_rrpr;
      rep.epsilon3_pr = abs11(ch.c * e_rrpr);
    }
  }
  return rep;
}

}  // namespace romgrid
