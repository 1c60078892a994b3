// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/io/synthetic.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>
#include "romgrid/errors.hpp"

namespace romgrid::io
{

namespace
{

void RequireSize(Eigen::Index n)
{
  if (n < 2)
  {
    throw InvalidConfigError("synthetic models need n >= 2, got " + std::to_string(n));
  }
}

Eigen::MatrixXd Gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &gen)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index j = 0; j < cols; j++)
  {
    for (Eigen::Index i = 0; i < rows; i++)
    {
      M(i, j) = normal(gen);
    }
  }
  return M;
}

// PᵀP/n + shift I.
Eigen::MatrixXd RandomSpd(Eigen::Index n, double shift, std::mt19937_64 &gen)
{
  const Eigen::MatrixXd P = Gaussian(n, n, gen);
  return P.transpose() * P / static_cast<double>(n) +
         shift * Eigen::MatrixXd::Identity(n, n);
}

AffineMatrix Constant(const Eigen::MatrixXd &M)
{
  return AffineMatrix(ComplexMatrix(M.cast<Complex>()));
}

AffineMatrix Term(const Eigen::MatrixXd &M, const Monomial &h)
{
  AffineMatrix out(M.rows(), M.cols());
  out.AddTerm(h, M.cast<Complex>());
  return out;
}

}  // namespace

ParametricSystem RcLadder(Eigen::Index n, double g, double c)
{
  RequireSize(n);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; i++)
  {
    G(i, i) = i + 1 < n ? 2.0 * g : g;
    if (i + 1 < n)
    {
      G(i, i + 1) = -g;
      G(i + 1, i) = -g;
    }
  }
  const Eigen::MatrixXd Cap = c * Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, 1);
  b(0, 0) = 1.0;
  return FromFirstOrder(Constant(Cap), Constant(-G), Constant(b), Constant(b.transpose()));
}

ParametricSystem RandomStable(Eigen::Index n, std::uint64_t seed)
{
  RequireSize(n);
  std::mt19937_64 gen(seed);
  const double nd = static_cast<double>(n);
  const Eigen::MatrixXd P = Gaussian(n, n, gen);
  const Eigen::MatrixXd S = Gaussian(n, n, gen);
  const Eigen::MatrixXd A = -P.transpose() * P / nd - Eigen::MatrixXd::Identity(n, n) +
                            (S - S.transpose()) / std::sqrt(nd);
  const Eigen::MatrixXd B = Gaussian(n, 1, gen);
  const Eigen::MatrixXd C = Gaussian(1, n, gen);
  return FromFirstOrder(Constant(Eigen::MatrixXd::Identity(n, n)), Constant(A), Constant(B),
                        Constant(C));
}

ParametricSystem SymmetricSecondOrder(Eigen::Index n, std::uint64_t seed)
{
  RequireSize(n);
  std::mt19937_64 gen(seed);
  const Eigen::MatrixXd M1 = RandomSpd(n, 1.0, gen);
  const Eigen::MatrixXd M2 = 0.1 * RandomSpd(n, 0.5, gen);
  const Eigen::MatrixXd T1 = RandomSpd(n, 2.0, gen);
  const Eigen::MatrixXd T2 = 0.1 * RandomSpd(n, 0.5, gen);
  const Eigen::MatrixXd T3 = 0.1 * RandomSpd(n, 0.5, gen);
  const Eigen::MatrixXd D1 = 0.05 * RandomSpd(n, 0.5, gen);
  const Eigen::MatrixXd D2 = 0.01 * RandomSpd(n, 0.5, gen);
  const Eigen::MatrixXd b = Gaussian(n, 1, gen);

  const auto d = Monomial::Power("d", 1);
  const AffineMatrix M = Constant(M1) + Term(M2, d);
  const AffineMatrix T = Constant(T1) + Term(T2, Monomial::Power("d", -1)) + Term(T3, d);
  const AffineMatrix D = (Constant(D1) + Term(D2, d)).TimesMonomial(Monomial::Power("theta", 1)) +
                         M.TimesMonomial(Monomial::Power("alpha", 1)) +
                         T.TimesMonomial(Monomial::Power("beta", 1));
  return FromSecondOrder(M, D, T, Constant(b), Constant(b.transpose()),
                         {"s", "d", "theta", "alpha", "beta"});
}

ParametricSystem MimoBlock(Eigen::Index n, Eigen::Index ports, std::uint64_t seed)
{
  RequireSize(n);
  if (ports < 1 || ports > n)
  {
    throw InvalidConfigError("mimo_block needs 1 <= ports <= n");
  }
  std::mt19937_64 gen(seed);
  const Eigen::MatrixXd A = -RandomSpd(n, 0.1, gen);
  const Eigen::MatrixXd B = Gaussian(n, ports, gen);
  return FromFirstOrder(Constant(Eigen::MatrixXd::Identity(n, n)), Constant(A), Constant(B),
                        Constant(B.transpose()));
}

ParametricSystem GenerateSynthetic(const std::string &spec)
{
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':'))
  {
    parts.push_back(item);
  }
  if (parts.empty())
  {
    throw InvalidConfigError("empty synthetic model spec");
  }
  const auto num = [&](std::size_t k, long fallback) -> long
  {
    if (k >= parts.size())
    {
      return fallback;
    }
    try
    {
      std::size_t used = 0;
      const long v = std::stol(parts[k], &used);
      if (used != parts[k].size())
      {
        throw std::invalid_argument(parts[k]);
      }
      return v;
    }
    catch (const std::exception &)
    {
      throw InvalidConfigError("synthetic spec '" + spec + "': '" + parts[k] +
                               "' is not an integer");
    }
  };
  const std::string &kind = parts[0];
  if (kind == "rc_ladder" && parts.size() <= 2)
  {
    return RcLadder(num(1, 200));
  }
  if (kind == "random_stable" && parts.size() <= 3)
  {
    return RandomStable(num(1, 50), static_cast<std::uint64_t>(num(2, 0)));
  }
  if (kind == "symmetric_second_order" && parts.size() <= 3)
  {
    return SymmetricSecondOrder(num(1, 20), static_cast<std::uint64_t>(num(2, 0)));
  }
  if (kind == "mimo_block" && parts.size() <= 4)
  {
    return MimoBlock(num(1, 60), num(2, 2), static_cast<std::uint64_t>(num(3, 0)));
  }
  throw InvalidConfigError("unknown synthetic model spec '" + spec + "'");
}

}  // namespace romgrid::io
