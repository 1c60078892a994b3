// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_IO_REPORT_HPP
#define ROMGRID_IO_REPORT_HPP

#include <optional>
#include <string>
#include <vector>
#include <nlohmann/json.hpp>
#include "romgrid/greedy.hpp"

namespace romgrid::io
{

inline constexpr const char *kTraceHeader =
    "iteration,main_point,alpha_point,beta_point,gamma_point,max_estimate,max_true_error,rom_dim";

// "re+imi" with 17 significant digits per part.
std::string FormatComplex(Complex v);

// Inverse of FormatComplex; also accepts plain reals and pure imaginaries ("2i").
// Throws InvalidConfigError.
Complex ParseComplex(const std::string &text);

// Parameter values in name order, separated by ';'.
std::string FormatPoint(const SamplePoint &p);
std::vector<Complex> ParsePointValues(const std::string &text);

std::string FormatDouble(double v);

// CSV text with kTraceHeader; an empty trace gives the header line only.
std::string TraceCsv(const std::vector<IterationRecord> &trace);

// Throws IoError.
void WriteTraceCsv(const std::string &path, const std::vector<IterationRecord> &trace);

struct TraceRow
{
  int iteration = 0;
  std::vector<Complex> main_point, alpha_point, beta_point, gamma_point;
  double max_estimate = 0.0;
  std::optional<double> max_true_error;
  long rom_dim = 0;
};

// Throws IoError, ParseError.
std::vector<TraceRow> ReadTrace(const std::string &path);

nlohmann::json PointJson(const SamplePoint &p);
SamplePoint PointFromJson(const nlohmann::json &j);

// Full-precision JSON mirror of a greedy run.
nlohmann::json TraceJson(const GreedyResult &result);
std::vector<IterationRecord> TraceFromJson(const nlohmann::json &j);

nlohmann::json EffectivityJson(const EffectivityReport &report);

// Columns: sample,estimate,true_error,effectivity (empty effectivity when undefined).
std::string EffectivityCsv(const EffectivityReport &report);

void WriteText(const std::string &path, const std::string &text);
void WriteJson(const std::string &path, const nlohmann::json &j);
nlohmann::json ReadJson(const std::string &path);

}  // namespace romgrid::io

#endif  // ROMGRID_IO_REPORT_HPP
