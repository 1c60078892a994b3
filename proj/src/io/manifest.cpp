// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/io/manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <nlohmann/json.hpp>
#include "romgrid/errors.hpp"
#include "romgrid/io/matrix_market.hpp"

namespace romgrid::io
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

long LineOfByte(const std::string &text, std::size_t byte)
{
  byte = std::min(byte, text.size());
  return 1 + static_cast<long>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

const std::set<std::string> kRoles = {"Q", "B", "C", "E", "A", "M", "D", "T"};

ManifestForm ParseForm(const std::string &path, const std::string &s)
{
  if (s == "affine-Q")
  {
    return ManifestForm::AffineQ;
  }
  if (s == "first-order")
  {
    return ManifestForm::FirstOrder;
  }
  if (s == "second-order")
  {
    return ManifestForm::SecondOrder;
  }
  throw ParseError(path, 0, "unknown form '" + s + "' (expected affine-Q, first-order or "
                            "second-order)");
}

std::string FormName(ManifestForm f)
{
  switch (f)
  {
    case ManifestForm::AffineQ:
      return "affine-Q";
    case ManifestForm::FirstOrder:
      return "first-order";
    case ManifestForm::SecondOrder:
      return "second-order";
  }
  return "?";
}

Complex ParseCoefficient(const std::string &path, const json &j)
{
  if (j.is_number())
  {
    return j.get<double>();
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
  {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError(path, 0, "coefficient must be a number or [re, im]");
}

json CoefficientJson(Complex c)
{
  if (c.imag() == 0.0)
  {
    return c.real();
  }
  return json::array({c.real(), c.imag()});
}

template <typename T>
T Field(const std::string &path, const json &obj, const char *key)
{
  if (!obj.contains(key))
  {
    throw ParseError(path, 0, std::string("missing field '") + key + "'");
  }
  try
  {
    return obj.at(key).get<T>();
  }
  catch (const json::exception &e)
  {
    throw ParseError(path, 0, std::string("field '") + key + "': " + e.what());
  }
}

void CheckShape(const std::string &file, const ComplexMatrix &M, Eigen::Index rows,
                Eigen::Index cols, const std::string &role)
{
  if (M.rows() != rows || M.cols() != cols)
  {
    throw DimensionMismatchError(file + ": role " + role + " needs " + std::to_string(rows) +
                                 "x" + std::to_string(cols) + ", file has " +
                                 std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
  }
}

}  // namespace

SystemManifest ReadManifest(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot open manifest '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json j;
  try
  {
    j = json::parse(text);
  }
  catch (const json::parse_error &e)
  {
    throw ParseError(path, LineOfByte(text, e.byte), e.what());
  }
  if (!j.is_object())
  {
    throw ParseError(path, 1, "manifest must be a JSON object");
  }

  SystemManifest m;
  m.name = j.value("name", fs::path(path).stem().string());
  m.form = ParseForm(path, j.value("form", std::string("affine-Q")));
  m.n = Field<long>(path, j, "n");
  m.n_inputs = j.value("n_inputs", 1L);
  m.n_outputs = j.value("n_outputs", 1L);
  if (m.n < 1 || m.n_inputs < 1 || m.n_outputs < 1)
  {
    throw ParseError(path, 0, "dimensions must be positive");
  }
  if (j.contains("parameters"))
  {
    for (const auto &p : j.at("parameters"))
    {
      ParameterDecl d;
      if (p.is_string())
      {
        d.name = p.get<std::string>();
      }
      else
      {
        d.name = Field<std::string>(path, p, "name");
        if (p.contains("range"))
        {
          const auto r = p.at("range");
          if (!r.is_array() || r.size() != 2)
          {
            throw ParseError(path, 0, "range of '" + d.name + "' must be [lo, hi]");
          }
          d.range = std::make_pair(r[0].get<double>(), r[1].get<double>());
        }
      }
      m.parameters.push_back(d);
    }
  }
  if (!j.contains("matrices") || !j.at("matrices").is_array())
  {
    throw ParseError(path, 0, "missing 'matrices' array");
  }
  for (const auto &e : j.at("matrices"))
  {
    ManifestEntry entry;
    entry.role = Field<std::string>(path, e, "role");
    if (kRoles.count(entry.role) == 0)
    {
      throw ParseError(path, 0, "unknown role '" + entry.role + "'");
    }
    entry.file = Field<std::string>(path, e, "file");
    entry.term.coefficient = e.contains("coefficient") ? ParseCoefficient(path, e.at("coefficient"))
                                                       : Complex(1.0);
    if (e.contains("exponents"))
    {
      for (const auto &[name, exp] : e.at("exponents").items())
      {
        if (!exp.is_number_integer())
        {
          throw ParseError(path, 0, "exponent of '" + name + "' must be an integer");
        }
        if (exp.get<int>() != 0)
        {
          entry.term.exponents[name] = exp.get<int>();
        }
      }
    }
    m.matrices.push_back(entry);
  }
  return m;
}

ParametricSystem BuildSystem(const SystemManifest &m, const std::string &base_dir)
{
  std::set<std::string> declared;
  std::vector<std::string> names;
  for (const auto &p : m.parameters)
  {
    declared.insert(p.name);
    names.push_back(p.name);
  }
  const bool implicit_s = m.form != ManifestForm::AffineQ;

  std::map<std::string, AffineMatrix> roles;
  const auto shape = [&](const std::string &role) -> std::pair<Eigen::Index, Eigen::Index>
  {
    if (role == "B")
    {
      return {m.n, m.n_inputs};
    }
    if (role == "C")
    {
      return {m.n_outputs, m.n};
    }
    return {m.n, m.n};
  };
  for (const auto &e : m.matrices)
  {
    for (const auto &[name, exp] : e.term.exponents)
    {
      if (declared.count(name) == 0 && !(implicit_s && name == "s"))
      {
        throw UnknownParameterError("manifest '" + m.name + "': matrix " + e.file +
                                    " uses undeclared parameter '" + name + "'");
      }
    }
    const std::string file = (fs::path(base_dir) / e.file).string();
    const ComplexMatrix M = ReadMatrixMarket(file);
    const auto [rows, cols] = shape(e.role);
    CheckShape(file, M, rows, cols, e.role);
    auto it = roles.find(e.role);
    if (it == roles.end())
    {
      it = roles.emplace(e.role, AffineMatrix(rows, cols)).first;
    }
    it->second.AddTerm(e.term, M);
  }

  const auto need = [&](const std::string &role) -> const AffineMatrix &
  {
    auto it = roles.find(role);
    if (it == roles.end())
    {
      throw ParseError(m.name, 0, "form " + FormName(m.form) + " needs a matrix with role " + role);
    }
    return it->second;
  };
  const auto forbid = [&](std::initializer_list<const char *> list)
  {
    for (const char *role : list)
    {
      if (roles.count(role))
      {
        throw ParseError(m.name, 0, std::string("role ") + role + " is not used by form " +
                                        FormName(m.form));
      }
    }
  };
  switch (m.form)
  {
    case ManifestForm::AffineQ:
      forbid({"E", "A", "M", "D", "T"});
      return ParametricSystem(need("Q"), need("B"), need("C"), names);
    case ManifestForm::FirstOrder:
      forbid({"Q", "M", "D", "T"});
      return FromFirstOrder(need("E"), need("A"), need("B"), need("C"), names);
    case ManifestForm::SecondOrder:
      forbid({"Q", "E", "A"});
      return FromSecondOrder(need("M"), need("D"), need("T"), need("B"), need("C"), names);
  }
  throw ParseError(m.name, 0, "unknown form");
}

ParametricSystem LoadSystem(const std::string &manifest_path)
{
  const auto m = ReadManifest(manifest_path);
  return BuildSystem(m, fs::path(manifest_path).parent_path().string());
}

std::string WriteSystem(const ParametricSystem &sys, const std::string &dir,
                        const std::string &name)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
  {
    throw IoError("cannot create directory '" + dir + "': " + ec.message());
  }
  json j;
  j["name"] = name;
  j["form"] = "affine-Q";
  j["n"] = sys.n();
  j["n_inputs"] = sys.NumInputs();
  j["n_outputs"] = sys.NumOutputs();
  json params = json::array();
  for (const auto &p : sys.ParameterNames())
  {
    params.push_back({{"name", p}});
  }
  j["parameters"] = params;
  json mats = json::array();
  const auto emit = [&](const std::string &role, const AffineMatrix &A)
  {
    const std::string base_file = role + "_0.mtx";
    WriteMatrixMarket((fs::path(dir) / base_file).string(), A.Base());
    mats.push_back({{"role", role}, {"file", base_file}, {"coefficient", 1.0}});
    int k = 1;
    for (const auto &t : A.Terms())
    {
      const std::string file = role + "_" + std::to_string(k++) + ".mtx";
      WriteMatrixMarket((fs::path(dir) / file).string(), t.matrix);
      json exps = json::object();
      for (const auto &[pname, e] : t.h.exponents)
      {
        exps[pname] = e;
      }
      mats.push_back({{"role", role},
                      {"file", file},
                      {"coefficient", CoefficientJson(t.h.coefficient)},
                      {"exponents", exps}});
    }
  };
  emit("Q", sys.Q());
  emit("B", sys.B());
  emit("C", sys.C());
  j["matrices"] = mats;

  const std::string path = (fs::path(dir) / "manifest.json").string();
  std::ofstream out(path);
  if (!out)
  {
    throw IoError("cannot write manifest '" + path + "'");
  }
  out << j.dump(2) << "\n";
  return path;
}

}  // namespace romgrid::io
