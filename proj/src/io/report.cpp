// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/io/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include "romgrid/errors.hpp"

namespace romgrid::io
{

using nlohmann::json;

namespace
{

std::vector<std::string> SplitKeepEmpty(const std::string &s, char sep)
{
  std::vector<std::string> out;
  std::string cur;
  for (char c : s)
  {
    if (c == sep)
    {
      out.push_back(cur);
      cur.clear();
    }
    else
    {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double ParseReal(const std::string &s, const std::string &context)
{
  try
  {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size())
    {
      return v;
    }
  }
  catch (const std::exception &)
  {
  }
  throw InvalidConfigError("'" + context + "' is not a number");
}

std::string OptionalPoint(const std::optional<SamplePoint> &p)
{
  return p ? FormatPoint(*p) : std::string();
}

json OptionalPointJson(const std::optional<SamplePoint> &p)
{
  return p ? PointJson(*p) : json(nullptr);
}

}  // namespace

std::string FormatDouble(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string FormatComplex(Complex v)
{
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

Complex ParseComplex(const std::string &text)
{
  if (text.empty())
  {
    throw InvalidConfigError("empty complex number");
  }
  if (text.back() != 'i')
  {
    return ParseReal(text, text);
  }
  const std::string body = text.substr(0, text.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign or the lead.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
  {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E')
    {
      split = k;
      break;
    }
  }
  if (split == std::string::npos)
  {
    const double im = body.empty() || body == "+" ? 1.0 : (body == "-" ? -1.0 : ParseReal(body, text));
    return {0.0, im};
  }
  const std::string im_s = body.substr(split);
  const double im = im_s == "+" ? 1.0 : (im_s == "-" ? -1.0 : ParseReal(im_s, text));
  return {ParseReal(body.substr(0, split), text), im};
}

std::string FormatPoint(const SamplePoint &p)
{
  std::string out;
  for (const auto &[name, v] : p.values)
  {
    if (!out.empty())
    {
      out += ";";
    }
    out += FormatComplex(v);
  }
  return out;
}

std::vector<Complex> ParsePointValues(const std::string &text)
{
  std::vector<Complex> out;
  if (text.empty())
  {
    return out;
  }
  for (const auto &item : SplitKeepEmpty(text, ';'))
  {
    out.push_back(ParseComplex(item));
  }
  return out;
}

std::string TraceCsv(const std::vector<IterationRecord> &trace)
{
  std::ostringstream out;
  out << kTraceHeader << "\n";
  for (const auto &r : trace)
  {
    out << r.iteration << "," << FormatPoint(r.selected_main) << ","
        << OptionalPoint(r.selected_alpha) << "," << OptionalPoint(r.selected_beta) << ","
        << OptionalPoint(r.selected_gamma) << "," << FormatDouble(r.max_estimate) << ","
        << (r.max_true_error ? FormatDouble(*r.max_true_error) : std::string()) << ","
        << r.rom_dimension << "\n";
  }
  return out.str();
}

void WriteTraceCsv(const std::string &path, const std::vector<IterationRecord> &trace)
{
  WriteText(path, TraceCsv(trace));
}

std::vector<TraceRow> ReadTrace(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot open trace '" + path + "'");
  }
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line) || line != kTraceHeader)
  {
    throw ParseError(path, 1, "unexpected trace header");
  }
  lineno++;
  std::vector<TraceRow> rows;
  while (std::getline(in, line))
  {
    lineno++;
    if (line.empty())
    {
      continue;
    }
    const auto f = SplitKeepEmpty(line, ',');
    if (f.size() != 8)
    {
      throw ParseError(path, lineno, "expected 8 fields, got " + std::to_string(f.size()));
    }
    try
    {
      TraceRow row;
      row.iteration = std::stoi(f[0]);
      row.main_point = ParsePointValues(f[1]);
      row.alpha_point = ParsePointValues(f[2]);
      row.beta_point = ParsePointValues(f[3]);
      row.gamma_point = ParsePointValues(f[4]);
      row.max_estimate = ParseReal(f[5], f[5]);
      if (!f[6].empty())
      {
        row.max_true_error = ParseReal(f[6], f[6]);
      }
      row.rom_dim = std::stol(f[7]);
      rows.push_back(std::move(row));
    }
    catch (const std::exception &e)
    {
      throw ParseError(path, lineno, e.what());
    }
  }
  return rows;
}

json PointJson(const SamplePoint &p)
{
  json j = json::object();
  for (const auto &[name, v] : p.values)
  {
    j[name] = json::array({v.real(), v.imag()});
  }
  return j;
}

SamplePoint PointFromJson(const json &j)
{
  SamplePoint p;
  for (const auto &[name, v] : j.items())
  {
    p.values[name] = Complex(v.at(0).get<double>(), v.at(1).get<double>());
  }
  return p;
}

json TraceJson(const GreedyResult &result)
{
  json rows = json::array();
  for (const auto &r : result.trace)
  {
    json row;
    row["iteration"] = r.iteration;
    row["main_index"] = r.main_index;
    row["main_point"] = PointJson(r.selected_main);
    row["alpha_point"] = OptionalPointJson(r.selected_alpha);
    row["beta_point"] = OptionalPointJson(r.selected_beta);
    row["gamma_point"] = OptionalPointJson(r.selected_gamma);
    row["max_estimate"] = r.max_estimate;
    row["max_true_error"] = r.max_true_error ? json(*r.max_true_error) : json(nullptr);
    row["rom_dim"] = r.rom_dimension;
    row["main_point_error"] = r.main_point_error ? json(*r.main_point_error) : json(nullptr);
    row["main_point_scale"] = r.main_point_scale ? json(*r.main_point_scale) : json(nullptr);
    rows.push_back(row);
  }
  json j;
  j["estimator"] = ToString(result.workspace.kind);
  j["converged"] = result.converged;
  j["stop_reason"] = ToString(result.stop_reason);
  j["trace"] = rows;
  j["skipped_samples"] = result.skipped_samples;
  j["warnings"] = result.warnings;
  return j;
}

std::vector<IterationRecord> TraceFromJson(const json &j)
{
  std::vector<IterationRecord> out;
  const auto opt_point = [](const json &v) -> std::optional<SamplePoint>
  {
    if (v.is_null())
    {
      return std::nullopt;
    }
    return PointFromJson(v);
  };
  const auto opt_double = [](const json &v) -> std::optional<double>
  {
    if (v.is_null())
    {
      return std::nullopt;
    }
    return v.get<double>();
  };
  for (const auto &row : j.at("trace"))
  {
    IterationRecord r;
    r.iteration = row.at("iteration").get<int>();
    r.main_index = row.value("main_index", std::size_t{0});
    r.selected_main = PointFromJson(row.at("main_point"));
    r.selected_alpha = opt_point(row.at("alpha_point"));
    r.selected_beta = opt_point(row.at("beta_point"));
    r.selected_gamma = opt_point(row.at("gamma_point"));
    r.max_estimate = row.at("max_estimate").get<double>();
    r.max_true_error = opt_double(row.at("max_true_error"));
    r.rom_dimension = row.at("rom_dim").get<long>();
    r.main_point_error = opt_double(row.value("main_point_error", json(nullptr)));
    r.main_point_scale = opt_double(row.value("main_point_scale", json(nullptr)));
    out.push_back(std::move(r));
  }
  return out;
}

json EffectivityJson(const EffectivityReport &report)
{
  const auto opt = [](const std::optional<double> &v) { return v ? json(*v) : json(nullptr); };
  json rows = json::array();
  for (const auto &r : report.rows)
  {
    rows.push_back({{"sample", PointJson(r.sample)},
                    {"estimate", r.estimate},
                    {"true_error", r.true_error},
                    {"effectivity", opt(r.effectivity)}});
  }
  const auto &s = report.summary;
  json j;
  j["estimator"] = ToString(report.kind);
  j["summary"] = {{"min_eff_all", opt(s.min_eff_all)},
                  {"max_eff_all", opt(s.max_eff_all)},
                  {"min_eff_filtered", opt(s.min_eff_filtered)},
                  {"max_eff_filtered", opt(s.max_eff_filtered)},
                  {"filter_threshold", s.filter_threshold},
                  {"filtered_empty", s.filtered_empty},
                  {"max_true_error", s.max_true_error},
                  {"skipped_singular", s.skipped_singular}};
  j["rows"] = rows;
  return j;
}

std::string EffectivityCsv(const EffectivityReport &report)
{
  std::ostringstream out;
  out << "sample,estimate,true_error,effectivity\n";
  for (const auto &r : report.rows)
  {
    out << FormatPoint(r.sample) << "," << FormatDouble(r.estimate) << ","
        << FormatDouble(r.true_error) << ","
        << (r.effectivity ? FormatDouble(*r.effectivity) : std::string()) << "\n";
  }
  return out.str();
}

void WriteText(const std::string &path, const std::string &text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw IoError("cannot write '" + path + "'");
  }
  out << text;
  if (!out)
  {
    throw IoError("write failed for '" + path + "'");
  }
}

void WriteJson(const std::string &path, const json &j)
{
  WriteText(path, j.dump(2) + "\n");
}

json ReadJson(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot open '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try
  {
    return json::parse(buf.str());
  }
  catch (const json::parse_error &e)
  {
    throw ParseError(path, 0, e.what());
  }
}

}  // namespace romgrid::io
