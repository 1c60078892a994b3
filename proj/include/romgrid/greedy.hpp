// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_GREEDY_HPP
#define ROMGRID_GREEDY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>
#include "romgrid/estimators.hpp"
#include "romgrid/moments.hpp"

namespace romgrid
{

enum class StopReason
{
  ToleranceMet,
  MaxIterations,
  StagnationAllPointsUsed
};

std::string ToString(StopReason reason);

// Indices into the training set. Unset entries take the defaults: main = first sample,
// alpha = last, beta = gamma = middle.
struct InitialPoints
{
  std::optional<std::size_t> main, alpha, beta, gamma;
};

struct GreedyConfig
{
  EstimatorKind kind = EstimatorKind::Delta2;
  double tolerance = 1.0e-3;
  int max_iterations = 30;
  // Moment order; negative selects the method default (3 Krylov, 1 multimoment).
  int q = -1;
  MomentMethod method = MomentMethod::Auto;
  std::vector<SamplePoint> training_set;
  // Build V_du at separate gamma points (only for Delta1, Delta2, Delta2Pr).
  bool symmetric_variant = false;
  InitialPoints initial_points;
  bool record_true_errors = true;
  // Split complex blocks into real and imaginary parts before orthonormalization, so every
  // basis is real.
  bool real_basis = true;
  double deflation_tol = kDefaultDeflationTol;
  Eigen::Index max_block_columns = kDefaultMaxBlockColumns;
  RandomizedOptions randomized;
  // Use the OpenMP sweep; the serial sweep gives identical results.
  bool parallel = true;
};

struct IterationRecord
{
  int iteration = 0;
  std::size_t main_index = 0;
  SamplePoint selected_main;
  std::optional<SamplePoint> selected_alpha, selected_beta, selected_gamma;
  // Largest estimate over the training set after this iteration's blocks were appended.
  double max_estimate = 0.0;
  std::optional<double> max_true_error;
  Eigen::Index rom_dimension = 0;
  // |H - Ĥ| at the main point right after its block was appended, and max(1, |H|) there.
  std::optional<double> main_point_error;
  std::optional<double> main_point_scale;
};

struct GreedyBases
{
  Basis V{BasisLabel::V};
  Basis Vdu{BasisLabel::Vdu};
  Basis Vrdu{BasisLabel::Vrdu};
  Basis Vrpr{BasisLabel::Vrpr};
  Basis Vrrpr{BasisLabel::Vrrpr};
};

struct GreedyResult
{
  EstimatorWorkspace workspace;
  GreedyBases bases;
  std::vector<IterationRecord> trace;
  bool converged = false;
  StopReason stop_reason = StopReason::MaxIterations;
  // Training samples skipped because the full-order operator is singular there.
  std::vector<std::size_t> skipped_samples;
  std::vector<std::string> warnings;
};

struct PointSelection
{
  std::size_t main = 0;
  std::optional<std::size_t> alpha, beta, gamma;
};

// Argmax rules over per-sample breakdowns; ties go to the lowest index. Empty entries
// (skipped samples) are never selected. Throws InvalidConfigError if every entry is empty.
PointSelection SelectPoints(EstimatorKind kind, bool symmetric_variant,
                            const std::vector<std::optional<EstimateBreakdown>> &breakdowns);

// Which auxiliary bases the greedy grows for a configuration.
struct BasisPlan
{
  bool dual = false;
  bool dual_at_gamma = false;
  bool dual_residual = false;
  bool primal_residual = false;
  bool primal_residual_residual = false;
};

BasisPlan PlanFor(EstimatorKind kind, bool symmetric_variant);

// Throws InvalidConfigError, AllSamplesSingularError.
GreedyResult RunGreedy(const ParametricSystem &sys, const GreedyConfig &cfg);

inline constexpr double kEffectivityFilter = 1.0e-11;

struct EffectivityRow
{
  SamplePoint sample;
  double estimate = 0.0;
  double true_error = 0.0;
  // Empty when the true error is exactly zero.
  std::optional<double> effectivity;
};

struct EffectivitySummary
{
  std::optional<double> min_eff_all, max_eff_all;
  std::optional<double> min_eff_filtered, max_eff_filtered;
  double filter_threshold = kEffectivityFilter;
  double max_true_error = 0.0;
  std::size_t skipped_singular = 0;
  // No sample has a true error at or above the filter threshold.
  bool filtered_empty = true;
};

struct EffectivityReport
{
  EstimatorKind kind = EstimatorKind::Delta1;
  std::vector<EffectivityRow> rows;
  EffectivitySummary summary;
};

// Estimate, true error and effectivity over a validation set. Singular samples are skipped
// and counted.
EffectivityReport Validate(const ParametricSystem &sys, const EstimatorWorkspace &ws,
                           EstimatorKind kind, const std::vector<SamplePoint> &validation_set,
                           double filter_threshold = kEffectivityFilter);

}  // namespace romgrid

#endif  // ROMGRID_GREEDY_HPP
