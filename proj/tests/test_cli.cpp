#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DYNCLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("portrait subcommand") {
  Run r = run("portrait --c=-91/36");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["label"] == "8(2,1,1)");
  CHECK(j["points"].size() == 8);
  CHECK(j["edges"].size() == 8);
  Run q = run("portrait --c=0 --disc=-1");
  CHECK(q.code == 0);
  CHECK(nlohmann::json::parse(q.out)["points"].size() == 5);
  CHECK(nlohmann::json::parse(run("portrait --c=1").out)["label"] == "∅");
}

TEST_CASE("census subcommand") {
  Run r = run("census --degree=1 --B=50 --format=tsv");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("label\tB\tdegree\tmode\tcount\tanomaly_count", 0) == 0);
  Run j = run("census --degree=1 --B=50 --mode=exhaustive --labels=8_2_1_1 --format=json");
  CHECK(j.code == 0);
  auto t = nlohmann::json::parse(j.out);
  CHECK(t["rows"].size() >= 1);
  const auto path = std::filesystem::temp_directory_path() / "dyncli_census_test.tsv";
  CHECK(run("census --degree=1 --B=1e2 --out=" + path.string()).code == 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "label\tB\tdegree\tmode\tcount\tanomaly_count");
  std::filesystem::remove(path);
}

TEST_CASE("constants and compare subcommands") {
  Run r = run("constants --label=8_2_1_1 --degree=1");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["a"] == "1/2");
  CHECK(j["c"]["value"].get<double>() > 0);
  Run c = run("compare --label=8_2_1_1 --degree=1 --B=100,1000 --format=json");
  CHECK(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["rows"].size() == 2);
}

TEST_CASE("verify subcommand") {
  Run r = run("verify --suite=dynatomic");
  CHECK(r.code == 0);
  CHECK(run("verify --suite=gcd").code == 0);
}

TEST_CASE("exit codes") {
  CHECK(run("census --B=abc").code == 2);
  CHECK(run("census --labels=8_2_1").code == 2);
  CHECK(run("portrait --c=1/0").code == 2);
  CHECK(run("portrait").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("census --degree=1 --B=50 --out=/nonexistent/dir/x.tsv").code == 3);
  CHECK(run("constants --label=10_2_1_1a --degree=2").code == 4);
  CHECK(run("constants --label=other").code != 0);
}
