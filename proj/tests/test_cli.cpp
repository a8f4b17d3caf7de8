#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QHH_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& f) { return (fs::path(QHH_DATA_DIR) / f).string(); }

}  // namespace

TEST(Cli, Theorem1DualNumbersAuto) {
  const auto r = run("theorem1 " + data("dual_numbers_f7.json") + " --N 3 --auto-field --nmax 6");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("status: pass"), std::string::npos);
}

TEST(Cli, Theorem1CaseB) {
  const auto r = run("theorem1 " + data("dual_numbers_f3.json") + " --N 3 --p 3 --q 1 --nmax 6");
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, Theorem1JsonIsByteIdentical) {
  const std::string args = "theorem1 " + data("dual_numbers_f7.json") + " --N 3 --p 7 --q 2 --nmax 5 --format json";
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["schema"], "qhh.report/1");
  EXPECT_EQ(j["status"], "pass");
  EXPECT_FALSE(j["checks"].empty());
}

TEST(Cli, MalformedAlgebraNamesTriple) {
  const auto r = run("theorem1 " + data("nonassociative_f7.json") + " --N 3 --auto-field");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("(1,1,1)"), std::string::npos) << r.out;
}

TEST(Cli, MissingFileIsInputError) {
  EXPECT_EQ(run("theorem1 " + data("nope.json") + " --N 3 --auto-field").code, 2);
  EXPECT_EQ(run("homology " + data("nope.json")).code, 2);
}

TEST(Cli, NotNilpotentComplexRejected) {
  const auto r = run("homology " + data("not_nilpotent.json"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("d^2"), std::string::npos) << r.out;
}

TEST(Cli, UnknownIdentityRejected) { EXPECT_EQ(run("verify no-such-identity").code, 2); }

TEST(Cli, H1RequiredIsInputError) { EXPECT_EQ(run("verify lemma55 --N 3 --p 7 --q 1").code, 2); }

TEST(Cli, VerifyIdentitiesPass) {
  for (const std::string args : {"lemma55 --N 4 --auto-field", "eq56 --N 5 --auto-field",
                                 "delta-nilpotent --N 3 --seed 3 --count 5", "hexagon --N 3 --seed 1 --count 3",
                                 "snake --N 4 --seed 2 --count 3", "kapranov --N 3 --seed 5 --count 3",
                                 "cor33 --N 3 --p 7 --q 2 --nmax 4", "cor46 --N 3 --p 7 --q 2 --nmax 4",
                                 "tor-symmetry --N 3 --p 7 --q 2 --nmax 4"}) {
    const auto r = run("verify " + args);
    EXPECT_EQ(r.code, 0) << args << "\n" << r.out;
  }
}

TEST(Cli, ModulesFromFiles) {
  const auto r = run("verify cor33 --N 3 --p 7 --q 2 --nmax 4 --algebra " + data("dual_numbers_f7.json") +
                     " --right-module " + data("trivial_right_f7.json") + " --left-module " +
                     data("trivial_left_f7.json"));
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, SeedIsReportedAndReproducible) {
  const auto a = run("verify hexagon --N 4 --seed 99 --count 3 --format json");
  const auto b = run("verify hexagon --N 4 --seed 99 --count 3 --format json");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("99"), std::string::npos);
}

TEST(Cli, DumpThenHomologyRoundTrip) {
  const auto path = fs::temp_directory_path() / "qhh_cli_dump.json";
  const auto d = run("dump hochschild --algebra " + data("dual_numbers_f7.json") + " --N 3 --p 7 --q 2 --nmax 3 --dump " +
                     path.string());
  ASSERT_EQ(d.code, 0) << d.out;
  const auto h = run("homology " + path.string() + " --format json");
  EXPECT_EQ(h.code, 0) << h.out;
  const auto j = nlohmann::json::parse(h.out);
  // _1H_0 of the dual numbers is two-dimensional
  bool found = false;
  for (const auto& c : j["checks"])
    if (c["dims"]["p"] == 1 && c["dims"]["n"] == 0) {
      EXPECT_EQ(c["dims"]["dim"], 2);
      found = true;
    }
  EXPECT_TRUE(found);
  fs::remove(path);
}

TEST(Cli, QcalcTable) {
  const auto r = run("qcalc --N 3 --p 7 --q 2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("H1"), std::string::npos);
}
