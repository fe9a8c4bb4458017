#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "matchlab/cli.hpp"

using namespace matchlab;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("matchlab_test_" + name)).string();
}

}  // namespace

TEST_CASE("solve sjbc+ on EX1") {
  const Run r = cli({"solve", "--mechanism", "sjbc+", "ex1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"i1\": \"s2\"") != std::string::npos);
  CHECK(r.out.find("\"i5\": \"s3\"") != std::string::npos);
}

TEST_CASE("solve output round-trips through analyze") {
  const std::string path = temp("plus.json");
  CHECK(cli({"solve", "--mechanism", "sjbc+", "ex1", "--out", path}).code == 0);
  const Run a = cli({"analyze", "ex1", path, "--claim", "i1:s4"});
  CHECK(a.code == 0);
  CHECK(a.out.find("justifiable: true") != std::string::npos);
  CHECK(a.out.find("chain: i1=>s4, i6=>s6, i3=>s3, i5=>s1, i2=>s2") != std::string::npos);
  const Run again = cli({"solve", "--mechanism", "sjbc+", "ex1"});
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == again.out);
}

TEST_CASE("analyze exits 1 on the full-consent EADA outcome") {
  const std::string path = temp("eada.json");
  CHECK(cli({"solve", "--mechanism", "eada", "--consent", "all", "ex1", "--out", path}).code == 0);
  const Run a = cli({"analyze", "ex1", path});
  CHECK(a.code == 1);
  CHECK(a.out.find("justifiable: false") != std::string::npos);
  CHECK(a.out.find("i3 by i1 at s6 [improvable-non-beneficiary]") != std::string::npos);
}

TEST_CASE("input errors exit 2") {
  CHECK(cli({"solve", "--mechanism", "da", "missing.json"}).code == 2);
  CHECK(cli({"solve", "--mechanism", "bogus", "ex1"}).code == 2);
  CHECK(cli({"solve", "--mechanism", "jbc", "--consent", "all", "ex1"}).code == 2);
  CHECK(cli({"solve", "--mechanism", "eada", "ex1"}).code == 2);
  CHECK(cli({"solve", "--mechanism", "eada", "--consent", "i9", "ex1"}).code == 2);
  CHECK(cli({"simulate", "--n", "5", "--reps", "2"}).code == 2);  // no seed
  CHECK(cli({"simulate", "--n", "5", "--reps", "2", "--seed", "1", "--model", "correlated"}).code == 2);
  CHECK(cli({"simulate", "--n", "5", "--reps", "2", "--seed", "1", "--rho", "0.5"}).code == 2);
  CHECK(cli({"--unknown"}).code == 2);
  CHECK(cli({}).code == 2);
  const std::string bad = temp("bad.json");
  std::ofstream(bad) << "{not json";
  const Run r = cli({"trace", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") == 0);
  const std::string worse = temp("worse.json");
  std::ofstream(worse) << R"({"assignment":{"i1":"s1"}})";
  CHECK(cli({"analyze", "ex1", worse}).code == 2);  // others lose their DA seat
}

TEST_CASE("help lists every subcommand and flag") {
  const Run top = cli({"--help"});
  CHECK(top.code == 0);
  for (const char* sub : {"solve", "analyze", "trace", "envy", "oracle", "eada-orbit", "simulate"})
    CHECK(top.out.find(sub) != std::string::npos);
  const Run solve = cli({"solve", "--help"});
  for (const char* flag : {"--mechanism", "--consent", "--graph", "--log-phases", "--out", "--table"})
    CHECK(solve.out.find(flag) != std::string::npos);
  const Run sim = cli({"simulate", "--help"});
  for (const char* flag : {"--n", "--model", "--rho", "--reps", "--consent-frac", "--seed", "--out", "--per-instance",
                           "--jobs", "--full"})
    CHECK(sim.out.find(flag) != std::string::npos);
  CHECK(cli({"oracle", "--help"}).out.find("--budget") != std::string::npos);
}

TEST_CASE("graph and phase log go to stderr") {
  const Run r = cli({"solve", "--mechanism", "sjbc+", "--graph", "--log-phases", "ex1"});
  CHECK(r.code == 0);
  CHECK(r.err.find("cycle (s1 -> s5 -> s4)") != std::string::npos);
  CHECK(r.err.find("expansion 1 B={i1,i2,i3,i4,i5,i6}") != std::string::npos);
  CHECK(r.out.find("school graph") == std::string::npos);
}

TEST_CASE("trace, envy, oracle and orbit") {
  const Run t = cli({"trace", "ex1", "--table"});
  CHECK(t.code == 0);
  CHECK(t.out.find("round 13") != std::string::npos);
  CHECK(t.out.find("(i7,s4)@12") != std::string::npos);
  CHECK(cli({"trace", "ex1"}).out.find("\"interrupters\"") != std::string::npos);

  const Run e = cli({"envy", "ex1"});
  CHECK(e.out.find("i1 -> i6 [i3,i5]\n") != std::string::npos);
  CHECK(e.out.find("i5 -> i4 [i1,i6]\n") != std::string::npos);

  const Run o = cli({"oracle", "ex1", "--nested-consent"});
  CHECK(o.code == 0);
  CHECK(o.out.find("FAIL") == std::string::npos);
  CHECK(cli({"oracle", "ex1", "--budget", "5"}).code == 2);

  const Run orbit = cli({"eada-orbit", "ex1"});
  CHECK(orbit.code == 0);
  CHECK(orbit.out.find("consent sets: 128") != std::string::npos);
}

TEST_CASE("solve tables and simulate output") {
  const Run t = cli({"solve", "--mechanism", "jbc", "--table", "ex1"});
  CHECK(t.out.find("i1        s4        2") != std::string::npos);
  const std::string per = temp("per.csv");
  const Run s = cli({"simulate", "--n", "6", "--reps", "4", "--seed", "3", "--jobs", "1", "--per-instance", per});
  CHECK(s.code == 0);
  CHECK(s.out.rfind("mechanism,metric,mean,stderr\n", 0) == 0);
  CHECK(s.out.find("SJBC+,justifiable_rate,100.000000,0.000000") != std::string::npos);
  std::ifstream in(per);
  std::string header;
  std::getline(in, header);
  CHECK(header == "replication,mechanism,avg_rank,beneficiaries,pe,justifiable");
  const Run again = cli({"simulate", "--n", "6", "--reps", "4", "--seed", "3"});
  CHECK(again.out == s.out);
}
