// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/sweep.hpp"

#include <cstdlib>
#include <omp.h>
#include "romgrid/errors.hpp"

namespace romgrid
{

namespace
{

SweepEntry EvaluateEntry(EstimatorKind kind, const EstimatorWorkspace &ws,
                         const ParametricSystem &sys, const SamplePoint &p)
{
  SweepEntry entry;
  try
  {
    entry.estimate = EvaluateSample(kind, ws, sys, p);
  }
  catch (const SingularMatrixError &e)
  {
    entry.error = e.what();
  }
  return entry;
}

int ResolveThreads(int threads)
{
  return threads > 0 ? threads : SweepThreadLimit();
}

}  // namespace

std::vector<SweepEntry> SweepSerial(EstimatorKind kind, const EstimatorWorkspace &ws,
                                    const ParametricSystem &sys,
                                    const std::vector<SamplePoint> &samples)
{
  ws.Require(kind);
  std::vector<SweepEntry> out;
  out.reserve(samples.size());
  for (const auto &p : samples)
  {
    out.push_back(EvaluateEntry(kind, ws, sys, p));
  }
  return out;
}

std::vector<SweepEntry> SweepParallel(EstimatorKind kind, const EstimatorWorkspace &ws,
                                      const ParametricSystem &sys,
                                      const std::vector<SamplePoint> &samples, int threads)
{
  ws.Require(kind);
  std::vector<SweepEntry> out(samples.size());
  const long count = static_cast<long>(samples.size());
  // Anything other than a singular solve is a bug or a config error; carry it out of the
  // parallel region and rethrow the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(ResolveThreads(threads))
  for (long k = 0; k < count; k++)
  {
    try
    {
      out[static_cast<std::size_t>(k)] =
          EvaluateEntry(kind, ws, sys, samples[static_cast<std::size_t>(k)]);
    }
    catch (...)
    {
#pragma omp critical(romgrid_sweep_failure)
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
  return out;
}

int SweepThreadLimit()
{
  if (const char *env = std::getenv("ROMGRID_THREADS"))
  {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
    {
      return static_cast<int>(v);
    }
  }
  return omp_get_max_threads();
}

std::vector<std::optional<ComplexMatrix>>
TransferFunctionSweep(const ParametricSystem &sys, const std::vector<SamplePoint> &samples,
                      int threads)
{
  std::vector<std::optional<ComplexMatrix>> out(samples.size());
  const long count = static_cast<long>(samples.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(ResolveThreads(threads))
  for (long k = 0; k < count; k++)
  {
    try
    {
      out[static_cast<std::size_t>(k)] =
          TransferFunction(sys, samples[static_cast<std::size_t>(k)]);
    }
    catch (const SingularMatrixError &)
    {
    }
    catch (...)
    {
#pragma omp critical(romgrid_sweep_failure)
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
  return out;
}

}  // namespace romgrid
