// Drives the command-line tool as a subprocess and checks exit codes and the
// documented output formats.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Output {
  int code = -1;
  std::string out;
};

Output cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(SSSP_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Output o;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return o;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) o.out.append(buf, got);
  const int status = pclose(p);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sssp_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    graph_ = (dir_ / "g.bin").string();
    ASSERT_EQ(cli("gen --n 2000 --m 8000 --seed 3 --out " + graph_).code, 0);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  std::string graph_;
};

TEST_F(Cli, GenSummaryLine) {
  const auto o = cli("gen --n 100 --m 300 --seed 1 --out " + (dir_ / "x.bin").string());
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out.rfind("n=100 m=300 arcs=600 directed=0 L=", 0), 0u) << o.out;
}

TEST_F(Cli, GenIsByteIdenticalForSameSeed) {
  const auto a = dir_ / "a.bin", b = dir_ / "b.bin", c = dir_ / "c.bin";
  ASSERT_EQ(cli("gen --n 500 --m 2000 --seed 9 --out " + a.string()).code, 0);
  ASSERT_EQ(cli("gen --n 500 --m 2000 --seed 9 --out " + b.string()).code, 0);
  ASSERT_EQ(cli("gen --n 500 --m 2000 --seed 10 --out " + c.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NE(slurp(a), slurp(c));
}

TEST_F(Cli, GenTextFormatLoadsBack) {
  const auto t = dir_ / "g.txt";
  ASSERT_EQ(cli("gen --n 50 --m 100 --seed 2 --format text --out " + t.string()).code, 0);
  EXPECT_EQ(cli("verify --graph " + t.string() + " --algo delta-star --delta 100000").code, 0);
}

TEST_F(Cli, GenInfeasibleIsUsageError) {
  EXPECT_EQ(cli("gen --n 2 --m 5 --out " + (dir_ / "x.bin").string()).code, 2);
}

TEST_F(Cli, UnknownSubcommandOrOptionIsUsageError) {
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("run --graph " + graph_ + " --algo astar").code, 2);
  EXPECT_EQ(cli("run --graph " + graph_ + " --algo delta-star").code, 2);
}

TEST_F(Cli, MissingOrCorruptGraphIsIoError) {
  EXPECT_EQ(cli("run --graph " + (dir_ / "missing.bin").string()).code, 3);
  const auto bad = dir_ / "bad.txt";
  std::ofstream(bad) << "0 1 2\nnot an edge\n";
  const auto o = cli("run --graph " + bad.string(), true);
  EXPECT_EQ(o.code, 3);
  EXPECT_NE(o.out.find("line 2"), std::string::npos) << o.out;
}

TEST_F(Cli, RunCsvHeaderAndRows) {
  const auto o = cli("run --graph " + graph_ + " --algo rho --rho 64 --sources random:3:9 --repeats 2");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(first_line(o.out),
            "source,repeat,algo,backend,threads,time_s,steps,substeps,rounds,relax_attempted,"
            "relax_succeeded,visited_v,visited_e,checksum");
  EXPECT_EQ(std::count(o.out.begin(), o.out.end(), '\n'), 7);
}

TEST_F(Cli, RunChecksumDeterministicAcrossThreadsAndBackends) {
  auto checksum = [&](const std::string& extra) {
    const auto o = cli("run --graph " + graph_ + " --algo delta-star --delta 30000 --sources 5 " + extra);
    EXPECT_EQ(o.code, 0);
    const std::string row = o.out.substr(o.out.find('\n') + 1);
    return row.substr(row.rfind(',') + 1);
  };
  const auto base = checksum("--threads 1");
  EXPECT_EQ(checksum("--threads 4"), base);
  EXPECT_EQ(checksum("--backend array"), base);
}

TEST_F(Cli, VerifyPassesEveryAlgorithm) {
  for (const char* algo : {"dijkstra", "bellman-ford", "delta --delta 50000",
                           "delta-star --delta 50000", "rho --rho 100",
                           "rho --rho 100 --exact-rho", "radius --rho 16"}) {
    const auto o = cli("verify --graph " + graph_ + " --algo " + algo + " --sources 0,17");
    EXPECT_EQ(o.code, 0) << algo;
    EXPECT_EQ(o.out, "PASS source=0\nPASS source=17\n") << algo;
  }
}

TEST_F(Cli, VerifyDetectsCorruption) {
  const auto o = cli("verify --graph " + graph_ + " --sources 0 --debug-corrupt 12");
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(o.out.rfind("FAIL source=0 vertex=12 got=", 0), 0u) << o.out;
}

TEST_F(Cli, RadiusWithoutRhoIsUsageError) {
  EXPECT_EQ(cli("run --graph " + graph_ + " --algo radius").code, 2);
}

TEST_F(Cli, StatsCsv) {
  const auto o = cli("stats --graph " + graph_ + " --algo bellman-ford --source 0");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(first_line(o.out), "step,mode,theta,visited_v,visited_e");
  EXPECT_NE(o.out.find(",inf,"), std::string::npos);
  const auto d = cli("stats --graph " + graph_ + " --algo delta-star --delta 40000 --threshold 0");
  EXPECT_NE(d.out.find(",dense,"), std::string::npos);
}

TEST_F(Cli, KRhoJson) {
  const auto out = dir_ / "k.json";
  ASSERT_EQ(cli("krho --graph " + graph_ + " --rho 10 100 --samples 20 --out " + out.string()).code, 0);
  const auto s = slurp(out);
  for (const char* key : {"\"graph\"", "\"samples\"", "\"seed\"", "\"estimates\"", "\"k_rho_hat\"",
                          "\"schema_version\": 1"})
    EXPECT_NE(s.find(key), std::string::npos) << key << "\n" << s;
  const auto grid = cli("krho --graph " + graph_ + " --samples 5");
  EXPECT_EQ(grid.code, 0);
  EXPECT_NE(grid.out.find("sqrt n"), std::string::npos) << grid.out;
}

TEST_F(Cli, BoundsReportPasses) {
  const auto o = cli("bounds --graph " + graph_ + " --algo rho --rho 100 --exact-rho --source 0");
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("\"pass\": true"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("\"schema_version\": 1"), std::string::npos) << o.out;
  const auto bf = cli("bounds --graph " + graph_ + " --algo bellman-ford --krho none");
  EXPECT_EQ(bf.code, 0);
}

TEST_F(Cli, ThreadsFromEnvironment) {
  const auto o = cli("run --graph " + graph_ + " --sources 0", false);
  const std::string env_cmd = "env SSSP_THREADS=3 " + std::string(SSSP_CLI_PATH) +
                              " run --graph " + graph_ + " --sources 0 2>/dev/null";
  FILE* p = popen(env_cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  std::string out;
  char buf[1024];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  pclose(p);
  const std::string row = out.substr(out.find('\n') + 1);
  // source,repeat,algo,backend,threads,...
  std::stringstream ss(row);
  std::string field;
  for (int i = 0; i < 5; ++i) std::getline(ss, field, ',');
  EXPECT_EQ(field, "3");
  EXPECT_EQ(o.code, 0);
}

TEST(CliHelp, HelpExitsZero) {
  const auto o = cli("--help");
  EXPECT_EQ(o.code, 0);
  for (const char* sub : {"gen", "run", "verify", "stats", "krho", "bounds"})
    EXPECT_NE(o.out.find(sub), std::string::npos) << sub;
}

}  // namespace
