#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef KEYHORN_CLI_PATH
#error "KEYHORN_CLI_PATH must point at the keyhorn executable"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(KEYHORN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("keyhorn_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text = {}) const {
    fs::path p = path / name;
    if (!text.empty()) std::ofstream(p) << text;
    return p.string();
  }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("minimize on the triangle") {
  TempDir dir;
  std::string in = dir.file("tri.bodies", "c triangle\np keyhorn 3 3\n1 2\n2 3\n1 3\n");
  Run r = run("minimize --in " + in + " --measure L");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["format"] == 1);
  CHECK(j["results"]["L"]["size"] == 9);
  CHECK(j["results"]["L"]["lower_bound"] == 9);
  CHECK(j["results"]["L"]["ratio_num"] == 1);
  CHECK(j["results"]["L"]["ratio_den"] == 1);
  CHECK_FALSE(j.contains("timings_ms"));

  Run all = run("minimize --in " + in + " --measure all --out " + dir.file("tri.horn"));
  REQUIRE(all.code == 0);
  json ja = json::parse(all.out);
  CHECK(ja["results"].size() == 6);
  CHECK(ja["results"]["C"]["size"] == 3);
  CHECK(ja["results"]["BC"]["size"] == 6);
  CHECK(ja["results"]["TA"]["size"] == 9);
  for (const char* mu : {"B", "BA", "TA", "C", "BC", "L"}) {
    std::string formula = dir.file(std::string("tri.") + mu + ".horn");
    CHECK(fs::exists(formula));
    Run v = run("verify --in " + in + " --formula " + formula);
    CHECK(v.code == 0);
    CHECK(v.out == "accept\n");
  }

  Run again = run("minimize --in " + in + " --measure all");
  CHECK(again.out == all.out);

  Run timed = run("minimize --in " + in + " --measure C --timings");
  CHECK(json::parse(timed.out).contains("timings_ms"));
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run("minimize --in " + dir.file("missing.bodies") + " --measure C").code == 2);
  std::string bad = dir.file("bad.bodies", "p keyhorn 2 1\n1 2\n");
  CHECK(run("minimize --in " + bad + " --measure C").code == 2);
  CHECK(run("minimize --measure C").code == 2);

  std::string in = dir.file("tri.bodies", "p keyhorn 3 3\n1 2\n2 3\n1 3\n");
  std::string partial = dir.file("partial.horn", "p horn 3 1\n1 2 -> 3\n");
  Run v = run("verify --in " + in + " --formula " + partial);
  CHECK(v.code == 3);
  CHECK(v.out.rfind("reject\n", 0) == 0);
  CHECK(run("minimize --in " + in + " --measure X").code == 1);
}

TEST_CASE("price, bounds, exact") {
  TempDir dir;
  std::string in = dir.file("p.bodies", "p keyhorn 4 2\n1 2\n2 3 4\n");
  Run c = run("price --in " + in + " --measure C --from \"1 2\" --to \"2 3 4\"");
  REQUIRE(c.code == 0);
  CHECK(json::parse(c.out)["value"] == 2);
  Run l = run("price --in " + in + " --measure L --from \"1 2\" --to \"2 3 4\" --exact");
  REQUIRE(l.code == 0);
  CHECK(json::parse(l.out)["exact"] == 6);

  std::string tri = dir.file("tri.bodies", "p keyhorn 3 3\n1 2\n2 3\n1 3\n");
  Run b = run("bounds --in " + tri + " --measure C");
  REQUIRE(b.code == 0);
  CHECK(json::parse(b.out)["C"]["best"] == 3);
  Run e = run("exact --in " + tri + " --measure L");
  REQUIRE(e.code == 0);
  CHECK(json::parse(e.out)["L"]["value"] == 9);
}

TEST_CASE("generators round-trip through files") {
  TempDir dir;
  std::string r1 = dir.file("r1.bodies"), r2 = dir.file("r2.bodies");
  REQUIRE(run("gen random --n 20 --m 6 --k 4 --seed 7 --out " + r1).code == 0);
  REQUIRE(run("gen random --n 20 --m 6 --k 4 --seed 7 --out " + r2).code == 0);
  CHECK(slurp(r1) == slurp(r2));
  Run m = run("minimize --in " + r1 + " --measure all");
  CHECK(m.code == 0);

  Run hydra = run("gen hydra --n 4 --edges \"1-2 1-3 1-4\"");
  REQUIRE(hydra.code == 0);
  CHECK(hydra.out == "p keyhorn 4 3\n1 2\n1 3\n1 4\n");

  std::string proj = dir.file("proj.bodies"), cert = dir.file("proj.horn");
  REQUIRE(run("gen projective --d 4 --out " + proj + " --certificate " + cert).code == 0);
  CHECK(run("verify --in " + proj + " --formula " + cert).code == 0);
  Run w = run("mwscs --in " + proj);
  REQUIRE(w.code == 0);
  json jw = json::parse(w.out);
  CHECK(jw["projective"] == true);
  CHECK(jw["hyperplane_lower_bound"] == 248);
  CHECK(jw["weight"].get<long long>() >= 248);

  std::string cnf = dir.file("f.cnf", "p cnf 3 1\n1 2 3 0\n");
  std::string sat = dir.file("sat.bodies"), summary = dir.file("sat.json");
  REQUIRE(run("gen sat3 --in " + cnf + " --out " + sat + " --summary " + summary).code == 0);
  CHECK(json::parse(slurp(summary))["alpha"] == 98);
  CHECK(slurp(sat).rfind("p keyhorn ", 0) == 0);
}
