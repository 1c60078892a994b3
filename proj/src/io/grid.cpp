// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/io/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include "romgrid/errors.hpp"
#include "romgrid/io/report.hpp"

namespace romgrid::io
{

namespace
{

std::vector<std::string> Split(const std::string &s, char sep)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
  {
    out.push_back(item);
  }
  return out;
}

double ToDouble(const std::string &s, const std::string &spec)
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
  throw InvalidConfigError("grid spec '" + spec + "': '" + s + "' is not a number");
}

int ToCount(const std::string &s, const std::string &spec)
{
  const double v = ToDouble(s, spec);
  if (v < 1 || v != std::floor(v))
  {
    throw InvalidConfigError("grid spec '" + spec + "': count must be a positive integer");
  }
  return static_cast<int>(v);
}

}  // namespace

std::vector<double> Spaced(double start, double stop, int count, bool log)
{
  if (count < 1)
  {
    throw InvalidConfigError("grid needs at least one point");
  }
  if (log && !(start > 0.0 && stop > 0.0))
  {
    throw InvalidConfigError("log-spaced grid needs positive end points");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; k++)
  {
    const double t = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    out[static_cast<std::size_t>(k)] =
        log ? std::pow(10.0, std::log10(start) + t * (std::log10(stop) - std::log10(start)))
            : start + t * (stop - start);
  }
  return out;
}

std::vector<Complex> ParseAxis(const std::string &spec)
{
  auto parts = Split(spec, ':');
  bool frequency = false;
  if (!parts.empty() && parts[0] == "f")
  {
    frequency = true;
    parts.erase(parts.begin());
  }
  std::vector<Complex> out;
  if (parts.size() == 4)
  {
    const std::string &mode = parts[3];
    if (mode != "log" && mode != "lin")
    {
      throw InvalidConfigError("grid spec '" + spec + "': spacing must be log or lin");
    }
    for (double v : Spaced(ToDouble(parts[0], spec), ToDouble(parts[1], spec),
                           ToCount(parts[2], spec), mode == "log"))
    {
      out.push_back(frequency ? Complex(0.0, 2.0 * std::numbers::pi * v) : Complex(v));
    }
    return out;
  }
  if (parts.size() == 1 && !parts[0].empty())
  {
    for (const auto &item : Split(parts[0], ','))
    {
      const Complex v = ParseComplex(item);
      out.push_back(frequency ? Complex(0.0, 2.0 * std::numbers::pi) * v : v);
    }
    return out;
  }
  throw InvalidConfigError("cannot parse grid spec '" + spec + "'");
}

std::vector<SamplePoint> ParseGrid(const std::vector<std::string> &specs)
{
  if (specs.empty())
  {
    throw InvalidConfigError("empty grid");
  }
  std::vector<SamplePoint> points(1);
  for (const auto &spec : specs)
  {
    std::string name = "s";
    std::string axis = spec;
    const auto eq = spec.find('=');
    if (eq != std::string::npos)
    {
      name = spec.substr(0, eq);
      axis = spec.substr(eq + 1);
    }
    else if (spec.rfind("f:", 0) != 0)
    {
      throw InvalidConfigError("grid spec '" + spec + "' needs NAME= (only frequency axes "
                               "may omit it)");
    }
    const auto values = ParseAxis(axis);
    std::vector<SamplePoint> next;
    next.reserve(points.size() * values.size());
    for (const auto &p : points)
    {
      if (p.Contains(name))
      {
        throw InvalidConfigError("grid axis '" + name + "' given twice");
      }
      for (const auto &v : values)
      {
        SamplePoint q = p;
        q.values[name] = v;
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  return points;
}

std::vector<SamplePoint> LogFrequencyGrid(double f_start, double f_stop, int count)
{
  std::vector<SamplePoint> out;
  for (double f : Spaced(f_start, f_stop, count, true))
  {
    out.push_back(SamplePoint{{"s", Complex(0.0, 2.0 * std::numbers::pi * f)}});
  }
  return out;
}

}  // namespace romgrid::io
