// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>
#include <cstdlib>
#include "romgrid/sweep.hpp"
#include "support/oracles.hpp"

using namespace romgrid;
using namespace romgrid::testing;

namespace
{

std::vector<SamplePoint> Samples(int count, Rng &rng)
{
  std::vector<SamplePoint> out;
  for (int k = 0; k < count; k++)
  {
    out.push_back(RandomAbPoint(rng));
  }
  return out;
}

}  // namespace

TEST_CASE("parallel sweep is identical to the serial reference", "[sweep]")
{
  Rng rng(81);
  const auto sys = RandomAffineSystem(40, 2, 2, rng);
  WorkspaceBases b;
  b.V = RandomBasis(BasisLabel::V, 40, 5, rng);
  b.Vrpr = RandomBasis(BasisLabel::Vrpr, 40, 7, rng);
  b.Vrrpr = RandomBasis(BasisLabel::Vrrpr, 40, 9, rng);
  const auto ws = BuildWorkspace(EstimatorKind::Delta3Pr, sys, b);
  const auto samples = Samples(37, rng);
  const auto serial = SweepSerial(EstimatorKind::Delta3Pr, ws, sys, samples);
  REQUIRE(serial.size() == samples.size());
  for (int threads : {1, 2, 4})
  {
    const auto par = SweepParallel(EstimatorKind::Delta3Pr, ws, sys, samples, threads);
    REQUIRE(par.size() == serial.size());
    for (std::size_t k = 0; k < serial.size(); k++)
    {
      REQUIRE(par[k].estimate);
      CHECK(par[k].estimate->combined.total == serial[k].estimate->combined.total);
      CHECK(par[k].estimate->combined.part2 == serial[k].estimate->combined.part2);
      CHECK(par[k].estimate->h_hat == serial[k].estimate->h_hat);
    }
  }
}

TEST_CASE("singular reduced samples are reported, not fatal", "[sweep]")
{
  // Full operator det = -a; the reduced one on e1 is 1 - a.
  ComplexMatrix Q0(2, 2), Q1(2, 2);
  Q0 << 1, 1, 1, 1;
  Q1 << -1, 0, 0, 0;
  AffineMatrix Q(Q0);
  Q.AddTerm(Monomial::Power("a", 1), Q1);
  const ParametricSystem sys(Q, AffineMatrix(ComplexMatrix(ComplexMatrix::Ones(2, 1))),
                             AffineMatrix(ComplexMatrix(ComplexMatrix::Ones(1, 2))), {"a"});
  WorkspaceBases b;
  b.V = Basis::FromOrthonormal(BasisLabel::V, ComplexMatrix::Identity(2, 1));
  b.Vrpr = b.V;
  const auto ws = BuildWorkspace(EstimatorKind::Delta1Pr, sys, b);
  const std::vector<SamplePoint> samples{{{"a", 0.5}}, {{"a", 1.0}}, {{"a", 2.0}}};
  for (const auto &entries : {SweepSerial(EstimatorKind::Delta1Pr, ws, sys, samples),
                              SweepParallel(EstimatorKind::Delta1Pr, ws, sys, samples, 2)})
  {
    CHECK(entries[0].estimate.has_value());
    CHECK_FALSE(entries[1].estimate.has_value());
    CHECK_FALSE(entries[1].error.empty());
    CHECK(entries[2].estimate.has_value());
  }
}

TEST_CASE("transfer function sweep leaves singular samples empty", "[sweep]")
{
  const auto sys = FromFirstOrder(AffineMatrix(ComplexMatrix(ComplexMatrix::Identity(3, 3))),
                                  AffineMatrix(ComplexMatrix(ComplexMatrix::Zero(3, 3))),
                                  AffineMatrix(ComplexMatrix(ComplexMatrix::Ones(3, 1))),
                                  AffineMatrix(ComplexMatrix(ComplexMatrix::Ones(1, 3))));
  const std::vector<SamplePoint> samples{{{"s", 1.0}}, {{"s", 0.0}}, {{"s", 2.0}}};
  const auto H = TransferFunctionSweep(sys, samples, 2);
  REQUIRE(H.size() == 3);
  REQUIRE(H[0]);
  CHECK(std::abs((*H[0])(0, 0) - 3.0) <= 1e-15);
  CHECK_FALSE(H[1]);
  REQUIRE(H[2]);
  CHECK(std::abs((*H[2])(0, 0) - 1.5) <= 1e-15);
}

TEST_CASE("thread limit honours the environment", "[sweep]")
{
  setenv("ROMGRID_THREADS", "3", 1);
  CHECK(SweepThreadLimit() == 3);
  setenv("ROMGRID_THREADS", "not-a-number", 1);
  CHECK(SweepThreadLimit() >= 1);
  unsetenv("ROMGRID_THREADS");
  CHECK(SweepThreadLimit() >= 1);
}
