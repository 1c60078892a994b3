// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>
#include <cmath>
#include "romgrid/errors.hpp"
#include "romgrid/io/synthetic.hpp"
#include "romgrid/moments.hpp"
#include "romgrid/projection.hpp"
#include "support/oracles.hpp"

using namespace romgrid;
using namespace romgrid::testing;

namespace
{

Complex ScalarH(const ParametricSystem &sys, const SamplePoint &p)
{
  return NaiveTransfer(sys, p)(0, 0);
}

Complex ScalarHhat(const ReducedModel &rom, const SamplePoint &p)
{
  return (Assemble(rom.c_hat, p) * ReducedPrimalSolve(rom, p).z)(0, 0);
}

}  // namespace

TEST_CASE("first Krylov column is the full-order solve", "[moments]")
{
  Rng rng(41);
  const auto sys = RandomFirstOrder(25, rng);
  const Complex s(0.0, 0.7);
  const ComplexMatrix K = KrylovBlock(sys, s, 1);
  const ComplexMatrix x = NaiveSolve(Assemble(sys.Q(), SamplePoint{{"s", s}}),
                                     Assemble(sys.B(), SamplePoint{{"s", s}}));
  REQUIRE(K.cols() == 1);
  CHECK((K - x).norm() <= 1e-12 * x.norm());
}

TEST_CASE("Krylov block on the RC ladder matches frozen values", "[moments]")
{
  // (sI + G)^{-1} e1 and (sI + G)^{-2} e1 at s = 1 for the three-node ladder, from an
  // independent rational computation: [5, 2, 1]/13 and [30, 25, 19]/169.
  const ComplexMatrix K = KrylovBlock(io::RcLadder(3), 1.0, 2);
  REQUIRE(K.cols() == 2);
  const double col0[] = {5.0 / 13.0, 2.0 / 13.0, 1.0 / 13.0};
  const double col1[] = {30.0 / 169.0, 25.0 / 169.0, 19.0 / 169.0};
  for (int i = 0; i < 3; i++)
  {
    CHECK(std::abs(K(i, 0) - col0[i]) <= 1e-15);
    CHECK(std::abs(K(i, 1) - col1[i]) <= 1e-15);
  }
}

TEST_CASE("Krylov columns collapse when E = I and A = 0 at s = 1", "[moments]")
{
  Rng rng(42);
  const ComplexMatrix b = RandomReal(6, 1, rng);
  const auto sys = FromFirstOrder(AffineMatrix(ComplexMatrix(ComplexMatrix::Identity(6, 6))),
                                  AffineMatrix(ComplexMatrix(ComplexMatrix::Zero(6, 6))),
                                  AffineMatrix(b), AffineMatrix(ComplexMatrix(b.transpose())));
  const ComplexMatrix K = KrylovBlock(sys, 1.0, 3);
  for (int j = 0; j < 3; j++)
  {
    CHECK((K.col(j) - b).norm() <= 1e-15 * b.norm());
  }
}

TEST_CASE("one factorization gives the same block as fresh solves", "[moments]")
{
  Rng rng(43);
  const auto sys = RandomFirstOrder(30, rng);
  const Complex s(0.05, 1.3);
  const auto split = *SplitFirstOrder(sys);
  const ComplexMatrix Q = s * split.E - split.A;
  ComplexMatrix level = LuFactorization(Q).Solve(split.B);
  const ComplexMatrix K = KrylovBlock(sys, s, 4);
  for (int k = 0; k < 4; k++)
  {
    if (k > 0)
    {
      level = LuFactorization(Q).Solve(split.E * level);
    }
    CHECK((K.col(k) - level).norm() <= 1e-13 * level.norm());
  }
}

TEST_CASE("Krylov ROM interpolates H and its derivatives", "[moments]")
{
  Rng rng(44);
  const auto sys = RandomFirstOrder(50, rng);
  const Complex s0(0.0, 0.3);
  const ReducedModel rom = Reduce(sys, Basis::Span(BasisLabel::V, KrylovBlock(sys, s0, 3)));
  const SamplePoint p0{{"s", s0}};
  const Complex H0 = ScalarH(sys, p0);
  CHECK(std::abs(H0 - ScalarHhat(rom, p0)) <= 1e-8 * std::abs(H0));

  const double h = 1e-4;
  const SamplePoint plus{{"s", s0 + Complex(0, h)}}, minus{{"s", s0 - Complex(0, h)}};
  const Complex dH = (ScalarH(sys, plus) - ScalarH(sys, minus)) / (2.0 * h);
  const Complex dHhat = (ScalarHhat(rom, plus) - ScalarHhat(rom, minus)) / (2.0 * h);
  CHECK(std::abs(dH - dHhat) <= 1e-6 * std::max(1.0, std::abs(dH)));

  // Away from the expansion point the approximation is not exact.
  const SamplePoint far{{"s", Complex(0.0, 5.0)}};
  CHECK(std::abs(ScalarH(sys, far) - ScalarHhat(rom, far)) > 1e-8);
}

TEST_CASE("dual Krylov block equals the primal one for symmetric systems", "[moments]")
{
  const auto sys = io::RcLadder(40);
  const Complex s(0.0, 0.2);
  const ComplexMatrix P = KrylovBlock(sys, s, 3);
  const ComplexMatrix D = DualKrylovBlock(sys, s, 3);
  CHECK((P - D).norm() <= 1e-12 * P.norm());
}

TEST_CASE("dual Krylov ROM interpolates the transposed system", "[moments]")
{
  Rng rng(45);
  const auto sys = RandomFirstOrder(40, rng);
  const Complex s0(0.0, 1.1);
  const ComplexMatrix D = DualKrylovBlock(sys, s0, 2);
  const ReducedModel rom_du = Reduce(sys.Transposed(), Basis::Span(BasisLabel::Vdu, D));
  const SamplePoint p0{{"s", s0}};
  const Complex H0 = ScalarH(sys, p0);
  CHECK(std::abs(H0 - ScalarHhat(rom_du, p0)) <= 1e-8 * std::abs(H0));
}

TEST_CASE("single-parameter multimoment spans the Krylov space", "[moments]")
{
  Rng rng(46);
  const auto sys = RandomFirstOrder(30, rng);
  const Complex s0(0.0, 0.9);
  ExpansionRequest req;
  req.point = SamplePoint{{"s", s0}};
  req.order = 2;
  const ComplexMatrix M = MultimomentBlock(sys, req);
  const ComplexMatrix K = KrylovBlock(sys, s0, 3);
  REQUIRE(M.cols() == 3);
  const Basis BM = Basis::Span(BasisLabel::V, M);
  const Basis BK = Basis::Span(BasisLabel::V, K);
  CHECK(SubspaceResidual(BM.Columns(), K) <= 1e-10);
  CHECK(SubspaceResidual(BK.Columns(), M) <= 1e-10);
}

TEST_CASE("zeroth-order multimoment is the solve of every input constituent", "[moments]")
{
  Rng rng(47);
  const auto sys = RandomAffineSystem(20, 1, 1, rng);
  const SamplePoint p = RandomAbPoint(rng);
  ExpansionRequest req;
  req.point = p;
  req.order = 0;
  const ComplexMatrix R0 = MultimomentBlock(sys, req);
  REQUIRE(R0.cols() == 2);
  const ComplexMatrix Q = Assemble(sys.Q(), p);
  CHECK((Q * R0.col(0) - sys.B().Base()).norm() <= 1e-12 * sys.B().Base().norm());
  CHECK((Q * R0.col(1) - sys.B().Terms()[0].matrix).norm() <=
        1e-12 * sys.B().Terms()[0].matrix.norm());
  // The exact solution lies in the span for these parameter values.
  const ComplexMatrix x = NaiveSolve(Q, Assemble(sys.B(), p));
  CHECK(SubspaceResidual(Basis::Span(BasisLabel::V, R0).Columns(), x) <= 1e-10);
}

TEST_CASE("multimoment ROM matches first parameter derivatives", "[moments]")
{
  Rng rng(48);
  const auto sys = RandomAffineSystem(30, 1, 1, rng);
  const SamplePoint p0{{"a", 1.0}, {"b", 1.2}};
  ExpansionRequest req;
  req.point = p0;
  req.order = 1;
  const ReducedModel rom = Reduce(sys, Basis::Span(BasisLabel::V, MultimomentBlock(sys, req)));
  const Complex H0 = ScalarH(sys, p0);
  CHECK(std::abs(H0 - ScalarHhat(rom, p0)) <= 1e-8 * std::abs(H0));

  const double h = 1e-4;
  for (const char *name : {"a", "b"})
  {
    SamplePoint plus = p0, minus = p0;
    plus.values[name] += h;
    minus.values[name] -= h;
    const Complex dH = (ScalarH(sys, plus) - ScalarH(sys, minus)) / (2.0 * h);
    const Complex dHhat = (ScalarHhat(rom, plus) - ScalarHhat(rom, minus)) / (2.0 * h);
    CHECK(std::abs(dH - dHhat) <= 1e-4 * std::max(1.0, std::abs(dH)));
  }
}

TEST_CASE("dual multimoment equals primal multimoment of the transposed system", "[moments]")
{
  Rng rng(49);
  const auto sys = RandomAffineSystem(15, 2, 2, rng);
  ExpansionRequest req;
  req.point = RandomAbPoint(rng);
  req.order = 1;
  const ComplexMatrix P = MultimomentBlock(sys.Transposed(), req);
  req.direction = Direction::Dual;
  const ComplexMatrix D = MultimomentBlock(sys, req);
  REQUIRE(P.cols() == D.cols());
  CHECK((P - D).norm() <= 1e-11 * P.norm());
}

TEST_CASE("multimoment blocks respect the column cap", "[moments]")
{
  Rng rng(50);
  const auto sys = RandomAffineSystem(100, 1, 1, rng);
  ExpansionRequest req;
  req.point = RandomAbPoint(rng);
  req.order = 3;  // 2 + 6 + 18 + 54 columns uncapped
  CHECK(MultimomentBlock(sys, req).cols() == 64);
  req.max_columns = 10;
  CHECK(MultimomentBlock(sys, req).cols() == 10);
  req.order = 1;
  req.max_columns = 64;
  CHECK(MultimomentBlock(sys, req).cols() == 8);
}

TEST_CASE("moment block configuration errors", "[moments]")
{
  Rng rng(51);
  const auto param = RandomAffineSystem(10, 1, 1, rng);
  CHECK_FALSE(SplitFirstOrder(param).has_value());
  CHECK(ResolveMethod(param, MomentMethod::Auto) == MomentMethod::Multimoment);
  CHECK_THROWS_AS(KrylovBlock(param, 1.0, 2), InvalidConfigError);
  const auto first = RandomFirstOrder(10, rng);
  CHECK(ResolveMethod(first, MomentMethod::Auto) == MomentMethod::Krylov);
  CHECK_THROWS_AS(KrylovBlock(first, 1.0, 0), InvalidConfigError);
  ExpansionRequest req;
  req.point = SamplePoint{{"s", 1.0}};
  req.order = -1;
  CHECK_THROWS_AS(MultimomentBlock(first, req), InvalidConfigError);
  // Explicit multimoment on a first-order system is allowed.
  CHECK(MomentBlock(first, SamplePoint{{"s", 1.0}}, Direction::Primal, MomentMethod::Multimoment,
                    2)
            .cols() == 3);
}

TEST_CASE("expansion at a singular point is reported", "[moments]")
{
  const auto sys = FromFirstOrder(AffineMatrix(ComplexMatrix(ComplexMatrix::Identity(3, 3))),
                                  AffineMatrix(ComplexMatrix(ComplexMatrix::Zero(3, 3))),
                                  AffineMatrix(ComplexMatrix(ComplexMatrix::Ones(3, 1))),
                                  AffineMatrix(ComplexMatrix(ComplexMatrix::Ones(1, 3))));
  CHECK_THROWS_AS(KrylovBlock(sys, 0.0, 2), SingularAtSampleError);
  ExpansionRequest req;
  req.point = SamplePoint{{"s", 0.0}};
  CHECK_THROWS_AS(MultimomentBlock(sys, req), SingularAtSampleError);
}
