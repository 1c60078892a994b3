// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_SWEEP_HPP
#define ROMGRID_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>
#include "romgrid/estimators.hpp"

namespace romgrid
{

// Outcome of one sample of a sweep. A sample whose reduced operator is singular carries the
// error message instead of an estimate.
struct SweepEntry
{
  std::optional<SampleEstimate> estimate;
  std::string error;
};

// Reference implementation: evaluates the samples in order on the calling thread.
std::vector<SweepEntry> SweepSerial(EstimatorKind kind, const EstimatorWorkspace &ws,
                                    const ParametricSystem &sys,
                                    const std::vector<SamplePoint> &samples);

// OpenMP version; entry k always corresponds to samples[k], so results do not depend on the
// thread count. threads <= 0 uses SweepThreadLimit().
std::vector<SweepEntry> SweepParallel(EstimatorKind kind, const EstimatorWorkspace &ws,
                                      const ParametricSystem &sys,
                                      const std::vector<SamplePoint> &samples,
                                      int threads = 0);

// ROMGRID_THREADS if set to a positive integer, else the OpenMP default.
int SweepThreadLimit();

// Full-order transfer functions over a sample set, computed in parallel. Singular samples are
// left empty.
std::vector<std::optional<ComplexMatrix>>
TransferFunctionSweep(const ParametricSystem &sys, const std::vector<SamplePoint> &samples,
                      int threads = 0);

}  // namespace romgrid

#endif  // ROMGRID_SWEEP_HPP
