#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli_commands.hpp"
#include "test_support.hpp"

namespace {

using chpeakon::cli::json;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args, const std::string& input) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = chpeakon::cli::run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

const std::string two_equal =
    R"({"peaks":[{"x":0,"omega":2},{"x":"0.693147180559945309417232121458176568075500134360255254120680009","omega":2}]})";
const std::string mixed_three =
    R"({"peaks":[{"x":-1,"omega":3},{"x":0.5,"omega":-1,"upsilon":0.75},{"x":2,"omega":1.5}]})";

TEST(Cli, SpectrumOfEqualPairMatchesHandComputation) {
  const CliResult r = run({"spectrum"}, two_equal);
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  // W = 1 - 4z + 2z^2: roots 1 -+ sqrt(2)/2, both norming constants 2
  EXPECT_NEAR(j["eigenvalues"][0].get<double>(), 1 - std::sqrt(2.0) / 2, 1e-14);
  EXPECT_NEAR(j["eigenvalues"][1].get<double>(), 1 + std::sqrt(2.0) / 2, 1e-14);
  EXPECT_NEAR(j["norming"][0].get<double>(), 2, 1e-14);
  EXPECT_NEAR(j["norming"][1].get<double>(), 2, 1e-14);
  EXPECT_NEAR(j["I1"].get<double>(), 4, 1e-14);
  EXPECT_NEAR(j["I2"].get<double>(), 6, 1e-14);
}

TEST(Cli, InvertSymmetricSpectrumGivesPureDipole) {
  const CliResult r = run({"invert"}, R"({"spectrum":[{"lambda":-1,"gamma2":-1},{"lambda":1,"gamma2":1}]})");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["N"].get<int>(), 1);
  EXPECT_TRUE(j["is_collision"].get<bool>());
  EXPECT_NEAR(j["peaks"][0]["x"].get<double>(), std::log(2.0), 1e-14);
  EXPECT_NEAR(j["peaks"][0]["omega"].get<double>(), 0, 1e-14);
  EXPECT_NEAR(j["peaks"][0]["upsilon"].get<double>(), 1, 1e-14);
}

TEST(Cli, SinglePeakonAndEmptyDocuments) {
  const CliResult one = run({"spectrum"}, R"({"peaks":[{"x":0,"omega":2}]})");
  ASSERT_EQ(one.code, 0) << one.err;
  const json j = json::parse(one.out);
  EXPECT_EQ(j["eigenvalues"], json::array({0.5}));
  EXPECT_EQ(j["norming"], json::array({2.0}));

  const CliResult none = run({"spectrum"}, R"({"peaks":[]})");
  ASSERT_EQ(none.code, 0) << none.err;
  EXPECT_TRUE(json::parse(none.out)["eigenvalues"].empty());

  const CliResult inv = run({"invert"}, R"({"spectrum":[{"lambda":0.5,"gamma2":2}]})");
  ASSERT_EQ(inv.code, 0) << inv.err;
  const json p = json::parse(inv.out)["peaks"];
  ASSERT_EQ(p.size(), 1u);
  EXPECT_NEAR(p[0]["x"].get<double>(), 0, 1e-15);
  EXPECT_NEAR(p[0]["omega"].get<double>(), 2, 1e-15);
}

/// Rows of an evolve CSV whose upsilon column is positive, grouped by t.
std::vector<std::string> dipole_times(const std::string& csv) {
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> times;
  while (std::getline(lines, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) f.push_back(c);
    if (chpeakon::real(f[4]) > 0 && (times.empty() || times.back() != f[0])) times.push_back(f[0]);
  }
  return times;
}

TEST(Cli, EvolveDipoleRowsMatchTheCase) {
  const CliResult pp = run({"evolve", "--t-start", "-10", "--t-end", "10", "--steps", "40"}, two_equal);
  ASSERT_EQ(pp.code, 0) << pp.err;
  EXPECT_TRUE(dipole_times(pp.out).empty());

  // t_cross = 0 lies on the grid
  const CliResult pa = run({"evolve", "--t-start", "-10", "--t-end", "10", "--steps", "40"},
                           R"({"spectrum":[{"lambda":-1,"gamma2":-1},{"lambda":1,"gamma2":1}]})");
  ASSERT_EQ(pa.code, 0) << pa.err;
  EXPECT_EQ(dipole_times(pa.out).size(), 1u);
}

TEST(Cli, MalformedJsonIsValidationError) {
  const CliResult r = run({"spectrum"}, "{\"peaks\": [");
  EXPECT_EQ(r.code, 2);
  const json e = json::parse(r.err);
  EXPECT_EQ(e["error"], "ParseError");
  EXPECT_EQ(e["exit_code"], 2);
}

TEST(Cli, InconsistentSignIsValidationError) {
  const CliResult r = run({"invert"}, R"({"spectrum":[{"lambda":1,"gamma2":-1}]})");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.err)["error"], "InvalidSpectralData");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"spectrum", "--digits", "10"}, two_equal).code, 2);
  EXPECT_EQ(run({"nonsense"}, two_equal).code, 2);
  EXPECT_EQ(run({}, two_equal).code, 2);
  EXPECT_EQ(run({"spectrum", "--format", "xml"}, two_equal).code, 2);
}

TEST(Cli, NumericalFailureExitsThree) {
  // equal rates with cancelling coefficients: no dominance window exists
  const CliResult r = run({"collisions"},
                    R"({"spectrum":[{"lambda":-1,"gamma2":-2.5},{"lambda":0.25,"gamma2":2.5},)"
                    R"({"lambda":0.5,"gamma2":1},{"lambda":1,"gamma2":1}]})");
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_EQ(json::parse(r.err)["error"], "WindowDerivationFailure");
}

TEST(Cli, InvertOfSpectrumRoundTripsThroughJson) {
  const std::string doc =
      R"({"peaks":[{"x":-1.2,"omega":2.5},{"x":0.3,"omega":-0.7},{"x":1.9,"omega":1.1},{"x":2.4,"omega":-2}]})";
  const CliResult fwd = run({"spectrum"}, doc);
  ASSERT_EQ(fwd.code, 0) << fwd.err;
  const json s = json::parse(fwd.out);
  json spec = json::array();
  for (std::size_t i = 0; i < s["eigenvalues"].size(); ++i)
    spec.push_back({{"lambda", s["eigenvalues"][i]}, {"gamma2", s["norming"][i]}});
  const CliResult back = run({"invert"}, json{{"spectrum", spec}}.dump());
  ASSERT_EQ(back.code, 0) << back.err;
  const json p = json::parse(back.out)["peaks"];
  const json orig = json::parse(doc)["peaks"];
  ASSERT_EQ(p.size(), orig.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    EXPECT_NEAR(p[n]["x"].get<double>(), orig[n]["x"].get<double>(), 1e-9);
    EXPECT_NEAR(p[n]["omega"].get<double>(), orig[n]["omega"].get<double>(), 1e-9);
    EXPECT_EQ(p[n]["upsilon"].get<double>(), 0.0);
  }
}

TEST(Cli, DipoleSurvivesCsvRoundTripAtMatchingPrecision) {
  // CSV keeps 25 digits; re-reading at 30 puts the zero threshold above that rounding.
  const CliResult csv = run({"spectrum", "--format", "csv"}, mixed_three);
  ASSERT_EQ(csv.code, 0) << csv.err;
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "lambda,gamma2");
  json spec = json::array();
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    spec.push_back({{"lambda", line.substr(0, comma)}, {"gamma2", line.substr(comma + 1)}});
  }
  const CliResult back = run({"invert", "--digits", "30"}, json{{"spectrum", spec}}.dump());
  ASSERT_EQ(back.code, 0) << back.err;
  const json p = json::parse(back.out)["peaks"];
  ASSERT_EQ(p.size(), 3u);
  const double x[] = {-1, 0.5, 2}, w[] = {3, -1, 1.5}, v[] = {0, 0.75, 0};
  for (int n = 0; n < 3; ++n) {
    EXPECT_NEAR(p[n]["x"].get<double>(), x[n], 1e-12);
    EXPECT_NEAR(p[n]["omega"].get<double>(), w[n], 1e-12);
    EXPECT_NEAR(p[n]["upsilon"].get<double>(), v[n], 1e-12);
  }
}

TEST(Cli, EvolveKeepsInvariantsAndInsertsCollisions) {
  const CliResult r = run({"evolve", "--t-start", "-5", "--t-end", "5", "--steps", "20"}, mixed_three);
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "t,n,x_n,omega_n,upsilon_n,I1,I2");
  std::size_t rows = 0;
  bool saw_dipole = false;
  while (std::getline(lines, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) f.push_back(c);
    ASSERT_EQ(f.size(), 7u);
    EXPECT_REL(chpeakon::real(f[5]), chpeakon::real("3.5"), 1e-20);
    EXPECT_REL(chpeakon::real(f[6]), chpeakon::real("6.094956086987453513207279"), 1e-20);
    if (chpeakon::real(f[4]) > 0) saw_dipole = true;
    ++rows;
  }
  // the three collisions in [-5, 5] each add a frame
  const json j = json::parse(run({"collisions"}, mixed_three).out);
  EXPECT_EQ(j["collisions"].size(), 3u);
  EXPECT_TRUE(saw_dipole);
  EXPECT_GT(rows, 21u * 3u);

  const CliResult bare = run({"evolve", "--t-start", "-5", "--t-end", "5", "--steps", "20", "--no-collisions",
                        "--format", "json"},
                       mixed_three);
  ASSERT_EQ(bare.code, 0) << bare.err;
  const json frames = json::parse(bare.out)["frames"];
  for (const auto& frame : frames) {
    EXPECT_FALSE(frame["is_collision"].get<bool>() && frame["t"].get<double>() != 0.0);
  }
}

TEST(Cli, SampleReportsEnergyAndAtoms) {
  const CliResult r = run({"sample", "--format", "json", "--x-steps", "8"}, mixed_three);
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["x"].size(), 9u);
  ASSERT_EQ(j["atoms"].size(), 1u);
  EXPECT_NEAR(j["atoms"][0]["upsilon"].get<double>(), 0.75, 1e-15);
  EXPECT_NEAR(j["mu_total"].get<double>(), 6.094956086987453, 1e-12);
}

TEST(Cli, VerifyPassesOnConsistentDocument) {
  const CliResult r = run({"verify"}, mixed_three);
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, VerifyFailsOnCorruptedNorming) {
  const CliResult fwd = run({"spectrum"}, two_equal);
  ASSERT_EQ(fwd.code, 0);
  const json s = json::parse(fwd.out);
  json doc = json::parse(two_equal);
  doc["spectrum"] = json::array({{{"lambda", s["eigenvalues"][0]}, {"gamma2", 2.5}},
                                 {{"lambda", s["eigenvalues"][1]}, {"gamma2", 2.0}}});
  const CliResult r = run({"verify", "--tol", "1e-6"}, doc.dump());
  EXPECT_EQ(r.code, 1) << r.out << r.err;
  bool norming_failed = false;
  const json report = json::parse(r.out);
  for (const auto& c : report["checks"])
    if (c["name"] == "norming_law") norming_failed = !c["passed"].get<bool>();
  EXPECT_TRUE(norming_failed);
}

TEST(Cli, VerifyOfEmptyMeasureIsVacuous) {
  const CliResult r = run({"verify"}, R"({"peaks":[]})");
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, TwoPeakonReportsCollisionTime) {
  const CliResult r = run({"two-peakon", "--steps", "4"},
                    R"({"spectrum":[{"lambda":-1,"gamma2":-1},{"lambda":1,"gamma2":1}],"t0":-1})");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["case"], "peakon-antipeakon");
  // t0 + 2 l1 l2/(l2 - l1) log(-g1/g2) = -1 + (-1) log 1 = -1
  EXPECT_NEAR(j["collision_time"].get<double>(), -1, 1e-15);
  EXPECT_TRUE(j["frames"][0]["is_collision"].get<bool>());
}

}  // namespace
