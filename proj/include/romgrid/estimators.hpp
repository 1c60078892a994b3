// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_ESTIMATORS_HPP
#define ROMGRID_ESTIMATORS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include "romgrid/projection.hpp"

namespace romgrid
{

enum class EstimatorKind
{
  DeltaR,
  Delta1,
  Delta1Pr,
  Delta2,
  Delta2Pr,
  Delta3,
  Delta3Pr
};

std::string ToString(EstimatorKind kind);

// Accepts "delta2pr", "Delta2Pr", "delta2_pr" and so on. Throws InvalidConfigError.
EstimatorKind ParseEstimatorKind(const std::string &text);

// Estimators made of two nonnegative parts.
bool IsTwoPart(EstimatorKind kind);

struct RomRequirements
{
  bool dual = false;
  bool dual_residual = false;
  bool primal_residual = false;
  bool primal_residual_residual = false;
};

RomRequirements Requirements(EstimatorKind kind);

struct RandomizedOptions
{
  int samples = 20;
  std::uint64_t seed = 0;
};

// The reduced models an estimator needs. Dual-type models (dual, dual residual) are reduced
// models of the transposed system, so they are solved with the same code path.
struct EstimatorWorkspace
{
  EstimatorKind kind = EstimatorKind::Delta1;
  ReducedModel rom_primal;
  std::optional<ReducedModel> rom_dual;
  std::optional<ReducedModel> rom_dual_residual;
  std::optional<ReducedModel> rom_primal_residual;
  std::optional<ReducedModel> rom_primal_residual_residual;
  RandomizedOptions randomized;

  // Throws MissingWorkspaceRomError when a model required by `k` is absent.
  void Require(EstimatorKind k) const;
};

// Bases from which a workspace is reduced. Each test basis defaults to its trial basis.
struct WorkspaceBases
{
  Basis V{BasisLabel::V};
  std::optional<Basis> W;
  std::optional<Basis> Vdu, Wdu;
  std::optional<Basis> Vrdu, Wrdu;
  std::optional<Basis> Vrpr, Wrpr;
  std::optional<Basis> Vrrpr, Wrrpr;
};

// Reduces every model whose trial basis is present; missing ones stay empty.
EstimatorWorkspace BuildWorkspace(EstimatorKind kind, const ParametricSystem &sys,
                                  const WorkspaceBases &bases);

struct EstimateAux
{
  std::optional<double> r_pr_norm;
  std::optional<double> r_du_norm;
  std::optional<double> r_rpr_norm;
};

struct EstimateBreakdown
{
  double total = 0.0;
  double part1 = 0.0;
  double part2 = 0.0;
  EstimateAux aux;
};

// Every intermediate of an estimator evaluation, one column per input (primal quantities)
// or per output (dual quantities).
struct EstimateChain
{
  ComplexMatrix z_pr, x_hat_pr, r_pr;
  ComplexMatrix c;      // C(p), n_O x n
  ComplexMatrix h_hat;  // Ĉ(p) z_pr, n_O x n_I
  std::optional<ComplexMatrix> x_hat_du, r_du;
  std::optional<ComplexMatrix> x_hat_rdu;
  std::optional<ComplexMatrix> x_hat_rpr, r_rpr;
  std::optional<ComplexMatrix> x_hat_rrpr;
};

// Runs the reduced solves and residual evaluations the kind needs. Throws
// SingularReducedSystemError, MissingWorkspaceRomError.
EstimateChain ComputeChain(EstimatorKind kind, const EstimatorWorkspace &ws,
                           const ParametricSystem &sys, const SamplePoint &p);

struct SampleEstimate
{
  // Entry (i, j) of `channels` is stored at i * n_I + j for output i and input j.
  std::vector<EstimateBreakdown> channels;
  Eigen::Index outputs = 0;
  Eigen::Index inputs = 0;
  // Componentwise maximum over channels. For SISO systems this is the single channel.
  EstimateBreakdown combined;
  ComplexMatrix h_hat;

  const EstimateBreakdown &Channel(Eigen::Index output, Eigen::Index input) const
  {
    return channels[static_cast<std::size_t>(output * inputs + input)];
  }
};

// Per-channel estimates with shared bases. DeltaR draws ξ from ws.randomized.
SampleEstimate EvaluateSample(EstimatorKind kind, const EstimatorWorkspace &ws,
                              const ParametricSystem &sys, const SamplePoint &p);

// Estimate breakdown (channel maximum for MIMO systems).
EstimateBreakdown Evaluate(EstimatorKind kind, const EstimatorWorkspace &ws,
                           const ParametricSystem &sys, const SamplePoint &p);

// max over channels (i, j) of the total estimate.
double EvaluateMimo(EstimatorKind kind, const EstimatorWorkspace &ws,
                    const ParametricSystem &sys, const SamplePoint &p);

// K standard normal draws from a seeded generator.
std::vector<double> DrawStandardNormal(int K, std::uint64_t seed);

// (1/K) sqrt(Σ (ξ_k δ)²) with δ = x̂_duᵀ r_pr, per channel maximum.
double DeltaR(const EstimatorWorkspace &ws, const ParametricSystem &sys, const SamplePoint &p,
              int K, std::uint64_t seed);
double DeltaR(const EstimatorWorkspace &ws, const ParametricSystem &sys, const SamplePoint &p,
              const std::vector<double> &xi);

// Signed output error H - Ĥ computed two ways: directly from two transfer functions and
// as x_duᵀ r_pr with the full-order dual solution.
struct TrueErrorRoutes
{
  ComplexMatrix h;
  ComplexMatrix direct;
  ComplexMatrix identity;
};

TrueErrorRoutes TrueErrorBothRoutes(const ParametricSystem &sys, const ReducedModel &rom,
                                    const SamplePoint &p);

// max_ij |H_ij - Ĥ_ij|. Debug builds also check the dual identity. Throws
// SingularAtSampleError.
double TrueError(const ParametricSystem &sys, const EstimatorWorkspace &ws,
                 const SamplePoint &p);

// Full-order diagnostics for a SISO system. Quantities whose reduced model is absent from the
// workspace are left empty. `epsilon3` follows the published definition with r_pr;
// `epsilon3_rrpr` pairs the dual error with r_rpr, which is the term that closes the upper
// envelope of Delta3.
struct SensitivityReport
{
  std::optional<double> epsilon1, epsilon1_pr, epsilon2, epsilon2_pr;
  std::optional<double> epsilon3, epsilon3_rrpr, epsilon3_pr;
  std::optional<double> delta2_term, delta2_pr_term, delta3_term, delta3_pr_term;
  double true_error = 0.0;
};

// Throws InvalidConfigError for MIMO systems, SingularAtSampleError.
SensitivityReport ComputeSensitivity(const ParametricSystem &sys, const EstimatorWorkspace &ws,
                                     const SamplePoint &p);

}  // namespace romgrid

#endif  // ROMGRID_ESTIMATORS_HPP
