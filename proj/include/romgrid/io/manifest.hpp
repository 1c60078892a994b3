// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_IO_MANIFEST_HPP
#define ROMGRID_IO_MANIFEST_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>
#include "romgrid/system.hpp"

namespace romgrid::io
{

enum class ManifestForm
{
  AffineQ,
  FirstOrder,
  SecondOrder
};

struct ParameterDecl
{
  std::string name;
  std::optional<std::pair<double, double>> range;
};

// One affine term: the matrix in `file` times `term`.
struct ManifestEntry
{
  std::string role;  // Q, B, C, E, A, M, D or T
  std::string file;  // relative to the manifest's directory
  Monomial term;
};

struct SystemManifest
{
  std::string name;
  ManifestForm form = ManifestForm::AffineQ;
  Eigen::Index n = 0;
  Eigen::Index n_inputs = 1;
  Eigen::Index n_outputs = 1;
  std::vector<ParameterDecl> parameters;
  std::vector<ManifestEntry> matrices;
};

// Parses the JSON manifest. Throws IoError, ParseError (line 0 for schema errors that are not
// tied to a JSON syntax position).
SystemManifest ReadManifest(const std::string &path);

// Reads the referenced Matrix Market files (relative to base_dir) and assembles the system.
// Throws ParseError, DimensionMismatchError, UnknownParameterError.
ParametricSystem BuildSystem(const SystemManifest &manifest, const std::string &base_dir);

ParametricSystem LoadSystem(const std::string &manifest_path);

// Writes `dir`/manifest.json plus one Matrix Market file per affine term, in affine-Q form.
// Returns the manifest path. Throws IoError.
std::string WriteSystem(const ParametricSystem &sys, const std::string &dir,
                        const std::string &name);

}  // namespace romgrid::io

#endif  // ROMGRID_IO_MANIFEST_HPP
