// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include "romgrid/errors.hpp"
#include "romgrid/io/grid.hpp"
#include "romgrid/io/manifest.hpp"
#include "romgrid/io/matrix_market.hpp"
#include "romgrid/io/report.hpp"
#include "romgrid/io/synthetic.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"

using namespace romgrid;
using namespace romgrid::io;
using namespace romgrid::testing;

namespace
{

ComplexMatrix Parse(const std::string &text)
{
  std::istringstream in(text);
  return ParseMatrixMarket(in, "inline.mtx");
}

long ParseErrorLine(const std::string &text)
{
  try
  {
    Parse(text);
  }
  catch (const ParseError &e)
  {
    return e.Line();
  }
  return -1;
}

}  // namespace

TEST_CASE("Matrix Market coordinate files", "[io][mm]")
{
  const ComplexMatrix M = Parse("%%MatrixMarket matrix coordinate real general\n"
                                "% a comment\n"
                                "2 3 3\n"
                                "1 1 1.5\n"
                                "2 3 -2\n"
                                "1 1 0.5\n");
  REQUIRE(M.rows() == 2);
  REQUIRE(M.cols() == 3);
  // Duplicate entries are summed.
  CHECK(M(0, 0) == Complex(2.0));
  CHECK(M(1, 2) == Complex(-2.0));
  CHECK(M(0, 1) == Complex(0.0));

  const ComplexMatrix C = Parse("%%MatrixMarket matrix coordinate complex general\n"
                                "1 1 1\n1 1 1 -2\n");
  CHECK(C(0, 0) == Complex(1.0, -2.0));
  const ComplexMatrix P = Parse("%%MatrixMarket matrix coordinate pattern general\n"
                                "2 2 1\n2 1\n");
  CHECK(P(1, 0) == Complex(1.0));
  const ComplexMatrix I = Parse("%%MatrixMarket matrix coordinate integer general\n"
                                "1 1 1\n1 1 7\n");
  CHECK(I(0, 0) == Complex(7.0));
}

TEST_CASE("Matrix Market symmetry variants expand exactly", "[io][mm]")
{
  const ComplexMatrix S = Parse("%%MatrixMarket matrix coordinate real symmetric\n"
                                "3 3 3\n1 1 2\n2 1 -1\n3 2 0.25\n");
  CHECK(S == S.transpose());
  CHECK(S(0, 1) == Complex(-1.0));
  const ComplexMatrix K = Parse("%%MatrixMarket matrix coordinate real skew-symmetric\n"
                                "2 2 1\n2 1 3\n");
  CHECK(K(0, 1) == Complex(-3.0));
  CHECK(K(1, 0) == Complex(3.0));
  const ComplexMatrix H = Parse("%%MatrixMarket matrix coordinate complex hermitian\n"
                                "2 2 2\n1 1 1 0\n2 1 0 1\n");
  CHECK(H(0, 1) == Complex(0.0, -1.0));
  CHECK(H == H.adjoint());
}

TEST_CASE("Matrix Market array storage is column-major", "[io][mm]")
{
  const ComplexMatrix A = Parse("%%MatrixMarket matrix array real general\n"
                                "2 2\n1\n2\n3\n4\n");
  CHECK(A(1, 0) == Complex(2.0));
  CHECK(A(0, 1) == Complex(3.0));
  const ComplexMatrix S = Parse("%%MatrixMarket matrix array real symmetric\n"
                                "2 2\n1\n2\n3\n");
  CHECK(S(0, 1) == Complex(2.0));
  CHECK(S(1, 1) == Complex(3.0));
}

TEST_CASE("Matrix Market errors carry line numbers", "[io][mm]")
{
  CHECK(ParseErrorLine("%%NotMatrixMarket\n1 1 1\n") == 1);
  CHECK(ParseErrorLine("%%MatrixMarket matrix coordinate real general\n"
                       "2 2 2\n1 1 1\n3 1 1\n") == 4);
  CHECK(ParseErrorLine("%%MatrixMarket matrix coordinate real general\n"
                       "2 2 2\n1 1 1\n") > 0);
  CHECK(ParseErrorLine("%%MatrixMarket matrix coordinate real general\n"
                       "2 2 1\n1 1 abc\n") == 3);
  CHECK_THROWS_AS(ReadMatrixMarket("/nonexistent/file.mtx"), IoError);
}

TEST_CASE("Matrix Market round trip is exact", "[io][mm]")
{
  Rng rng(101);
  const auto dir = FreshDir("mm_roundtrip");
  const ComplexMatrix M = RandomComplex(5, 4, rng);
  WriteMatrixMarket((dir / "m.mtx").string(), M);
  CHECK(ReadMatrixMarket((dir / "m.mtx").string()) == M);
  const ComplexMatrix R = RandomReal(3, 3, rng);
  WriteMatrixMarket((dir / "r.mtx").string(), R);
  CHECK(ReadFile(dir / "r.mtx").find("real") != std::string::npos);
  CHECK(ReadMatrixMarket((dir / "r.mtx").string()) == R);
}

TEST_CASE("minimal manifest gives the identity system", "[io][manifest]")
{
  const auto dir = FreshDir("manifest_identity");
  WriteFile(dir / "I.mtx", "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n2 2 1\n");
  WriteFile(dir / "b.mtx", "%%MatrixMarket matrix array real general\n2 1\n1\n0\n");
  WriteFile(dir / "c.mtx", "%%MatrixMarket matrix array real general\n1 2\n1\n0\n");
  WriteFile(dir / "manifest.json", R"({
  "n": 2,
  "matrices": [
    {"role": "Q", "file": "I.mtx"},
    {"role": "B", "file": "b.mtx"},
    {"role": "C", "file": "c.mtx"}
  ]
})");
  const auto sys = LoadSystem((dir / "manifest.json").string());
  CHECK(TransferFunction(sys, SamplePoint{})(0, 0) == Complex(1.0));
}

TEST_CASE("first-order manifests assemble sE - A", "[io][manifest]")
{
  const auto dir = FreshDir("manifest_first_order");
  WriteFile(dir / "E.mtx", "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 2\n");
  WriteFile(dir / "A.mtx", "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 -3\n");
  WriteFile(dir / "b.mtx", "%%MatrixMarket matrix array real general\n1 1\n1\n");
  WriteFile(dir / "manifest.json", R"({
  "form": "first-order", "n": 1,
  "matrices": [
    {"role": "E", "file": "E.mtx"}, {"role": "A", "file": "A.mtx"},
    {"role": "B", "file": "b.mtx"}, {"role": "C", "file": "b.mtx"}
  ]
})");
  const auto sys = LoadSystem((dir / "manifest.json").string());
  const Complex s(0.5, 1.0);
  CHECK(std::abs(Assemble(sys.Q(), SamplePoint{{"s", s}})(0, 0) - (2.0 * s + 3.0)) <= 1e-15);
}

TEST_CASE("manifest errors", "[io][manifest]")
{
  const auto dir = FreshDir("manifest_errors");
  WriteFile(dir / "I.mtx", "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n2 2 1\n");
  WriteFile(dir / "b.mtx", "%%MatrixMarket matrix array real general\n2 1\n1\n0\n");
  WriteFile(dir / "b3.mtx", "%%MatrixMarket matrix array real general\n3 1\n1\n0\n0\n");

  WriteFile(dir / "undeclared.json", R"({"n": 2, "matrices": [
    {"role": "Q", "file": "I.mtx"},
    {"role": "Q", "file": "I.mtx", "exponents": {"theta": 1}},
    {"role": "B", "file": "b.mtx"}, {"role": "C", "file": "b.mtx"}]})");
  CHECK_THROWS_AS(LoadSystem((dir / "undeclared.json").string()), UnknownParameterError);

  WriteFile(dir / "mismatch.json", R"({"n": 2, "matrices": [
    {"role": "Q", "file": "I.mtx"}, {"role": "B", "file": "b3.mtx"},
    {"role": "C", "file": "b.mtx"}]})");
  CHECK_THROWS_AS(LoadSystem((dir / "mismatch.json").string()), DimensionMismatchError);

  WriteFile(dir / "syntax.json", "{\n  \"n\": 2,\n  \"matrices\": [,]\n}\n");
  try
  {
    ReadManifest((dir / "syntax.json").string());
    FAIL("expected a parse error");
  }
  catch (const ParseError &e)
  {
    CHECK(e.Line() == 3);
  }
  WriteFile(dir / "no_n.json", R"({"matrices": []})");
  CHECK_THROWS_AS(ReadManifest((dir / "no_n.json").string()), ParseError);
  CHECK_THROWS_AS(ReadManifest((dir / "absent.json").string()), IoError);
}

TEST_CASE("written systems load back with the same transfer function", "[io][manifest]")
{
  Rng rng(102);
  for (const std::string spec : {"symmetric_second_order:30:4", "random_stable:25:9"})
  {
    const auto sys = GenerateSynthetic(spec);
    const auto dir = FreshDir("manifest_roundtrip_" + std::to_string(sys.n()));
    const auto path = WriteSystem(sys, dir.string(), "roundtrip");
    const auto back = LoadSystem(path);
    CHECK(back.ParameterNames() == sys.ParameterNames());
    for (int k = 0; k < 10; k++)
    {
      SamplePoint p;
      for (const auto &name : sys.ParameterNames())
      {
        p.values[name] = Complex(0.5 + std::abs(Normal(rng)), 0.5 * Normal(rng));
      }
      const ComplexMatrix H = TransferFunction(sys, p);
      CHECK((TransferFunction(back, p) - H).norm() <= 1e-13 * H.norm());
    }
  }
}

TEST_CASE("synthetic generators have the advertised structure", "[io][synthetic]")
{
  const auto ladder = RcLadder(6);
  const ComplexMatrix Q = Assemble(ladder.Q(), SamplePoint{{"s", Complex(0.3, 0.7)}});
  CHECK(Q == Q.transpose());
  CHECK(ladder.B().Base() == ComplexMatrix(ladder.C().Base().transpose()));

  const auto stable = RandomStable(30, 5);
  const auto split = Assemble(stable.Q(), SamplePoint{{"s", 0.0}});  // = -A
  const Eigen::MatrixXd A = -split.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sym(0.5 * (A + A.transpose()));
  CHECK(sym.eigenvalues().maxCoeff() <= -1.0 + 1e-12);
  Eigen::EigenSolver<Eigen::MatrixXd> eig(A);
  CHECK(eig.eigenvalues().real().maxCoeff() < 0.0);
  // Seeds are reproducible.
  CHECK(Assemble(RandomStable(30, 5).Q(), SamplePoint{{"s", 1.0}}) ==
        Assemble(stable.Q(), SamplePoint{{"s", 1.0}}));

  const auto sso = SymmetricSecondOrder(20, 1);
  std::vector<std::string> names = sso.ParameterNames();
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"alpha", "beta", "d", "s", "theta"});
  const SamplePoint p{{"s", Complex(0, 2)}, {"d", 1.5}, {"theta", 1.0}, {"alpha", 0.1},
                      {"beta", 0.2}};
  const ComplexMatrix Qs = Assemble(sso.Q(), p);
  CHECK((Qs - Qs.transpose()).norm() <= 1e-14 * Qs.norm());

  const auto mimo = MimoBlock(24, 4, 2);
  CHECK(mimo.NumInputs() == 4);
  CHECK(mimo.NumOutputs() == 4);
  CHECK_THROWS_AS(GenerateSynthetic("no_such_model:10"), InvalidConfigError);
}

TEST_CASE("grids", "[io][grid]")
{
  const auto f = ParseAxis("f:1:100:3:log");
  REQUIRE(f.size() == 3);
  CHECK(f[0] == Complex(0.0, 2.0 * std::numbers::pi));
  CHECK(std::abs(f[1] - Complex(0.0, 20.0 * std::numbers::pi)) <= 1e-12);
  CHECK(std::abs(f[2] - Complex(0.0, 200.0 * std::numbers::pi)) <= 1e-12);
  const auto lin = ParseAxis("0:1:5:lin");
  CHECK(lin.size() == 5);
  CHECK(lin[2] == Complex(0.5));
  CHECK(ParseAxis("1,2.5,1-1i") == std::vector<Complex>{1.0, 2.5, Complex(1, -1)});

  const auto grid = ParseGrid({"s=f:1:10:2:log", "d=1,2,3"});
  REQUIRE(grid.size() == 6);
  // The last axis varies fastest.
  CHECK(grid[0].Value("d") == Complex(1.0));
  CHECK(grid[1].Value("d") == Complex(2.0));
  CHECK(grid[3].Value("s") == grid[5].Value("s"));
  CHECK(ParseGrid({"f:1:10:4:log"})[0].Contains("s"));
  CHECK(LogFrequencyGrid(1.0, 10.0, 7).size() == 7);

  CHECK_THROWS_AS(ParseAxis("f:1:10:3:cubic"), InvalidConfigError);
  CHECK_THROWS_AS(ParseAxis("f:0:10:3:log"), InvalidConfigError);
  CHECK_THROWS_AS(ParseGrid({"d=1", "d=2"}), InvalidConfigError);
  CHECK_THROWS_AS(ParseGrid({}), InvalidConfigError);
}

TEST_CASE("complex numbers format and parse exactly", "[io][report]")
{
  Rng rng(103);
  for (int k = 0; k < 100; k++)
  {
    const Complex v(Normal(rng) * std::pow(10.0, 20 * Normal(rng) / 3),
                    Normal(rng) * std::pow(10.0, 20 * Normal(rng) / 3));
    CHECK(ParseComplex(FormatComplex(v)) == v);
  }
  CHECK(ParseComplex("-2") == Complex(-2.0));
  CHECK(ParseComplex("1e-3-2.5e+4i") == Complex(1e-3, -2.5e4));
  CHECK(ParseComplex("-i") == Complex(0, -1));
  CHECK(FormatComplex(Complex(1, -2)) == "1-2i");
  CHECK_THROWS_AS(ParseComplex("abc"), InvalidConfigError);
}

TEST_CASE("trace CSV and JSON round trips", "[io][report]")
{
  CHECK(TraceCsv({}) == std::string(kTraceHeader) + "\n");

  std::vector<IterationRecord> trace;
  for (int it = 1; it <= 7; it++)
  {
    IterationRecord rec;
    rec.iteration = it;
    rec.main_index = static_cast<std::size_t>(it);
    rec.selected_main = SamplePoint{{"s", Complex(0.0, 0.1 * it)}, {"d", 1.0 / 3.0}};
    rec.selected_alpha = SamplePoint{{"s", Complex(0.0, -1.0 / it)}, {"d", 2.0}};
    rec.max_estimate = 1.0 / (it * 7.0);
    if (it % 2)
    {
      rec.max_true_error = 1.0 / (it * 11.0);
    }
    rec.rom_dimension = 3 * it;
    trace.push_back(rec);
  }
  const auto dir = FreshDir("trace");
  WriteTraceCsv((dir / "trace.csv").string(), trace);
  const auto rows = ReadTrace((dir / "trace.csv").string());
  REQUIRE(rows.size() == 7);
  for (std::size_t k = 0; k < 7; k++)
  {
    CHECK(rows[k].iteration == trace[k].iteration);
    CHECK(rows[k].max_estimate == trace[k].max_estimate);
    CHECK(rows[k].max_true_error == trace[k].max_true_error);
    CHECK(rows[k].rom_dim == trace[k].rom_dimension);
    // Points are listed by parameter name: d, then s.
    REQUIRE(rows[k].main_point.size() == 2);
    CHECK(rows[k].main_point[0] == Complex(1.0 / 3.0));
    CHECK(rows[k].main_point[1] == trace[k].selected_main.Value("s"));
    CHECK(rows[k].beta_point.empty());
  }

  GreedyResult result;
  result.trace = trace;
  const auto back = TraceFromJson(TraceJson(result));
  REQUIRE(back.size() == 7);
  CHECK(back[3].selected_main == trace[3].selected_main);
  CHECK(back[3].selected_alpha == trace[3].selected_alpha);
  CHECK(back[3].max_true_error == trace[3].max_true_error);
  CHECK(PointFromJson(PointJson(trace[0].selected_main)) == trace[0].selected_main);
}

TEST_CASE("malformed trace files are reported", "[io][report]")
{
  const auto dir = FreshDir("trace_bad");
  WriteFile(dir / "bad.csv", "not,a,trace\n");
  CHECK_THROWS_AS(ReadTrace((dir / "bad.csv").string()), ParseError);
  CHECK_THROWS_AS(ReadTrace((dir / "none.csv").string()), IoError);
}
