#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Workspace {
  Workspace() {
    dir = fs::temp_directory_path() / ("stringctl_cli_" + std::to_string(::getpid()) + "_" +
                                       std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
  }

  static inline int counter = 0;
  fs::path dir;
};

int run(const std::string& args) {
  const std::string cmd = std::string(STRINGCTL_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

std::string value_of(const fs::path& summary, const std::string& key) {
  std::istringstream in(slurp(summary));
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + " = ", 0) == 0) return line.substr(key.size() + 3);
  }
  return {};
}

const char* kConstantTwo =
    "problem = stop-moving\n"
    "horizon = 12.566370614359172\n"
    "[initial]\n"
    "breakpoints = 0,2,0\n";

}  // namespace

TEST_CASE("simulate stops the constant field at rate one") {
  Workspace ws;
  const fs::path cfg = ws.write("s.cfg", kConstantTwo);
  const fs::path out = ws.dir / "out";
  REQUIRE(run("simulate " + cfg.string() + " --out " + out.string() + " --snapshot t=3.0") == 0);
  CHECK(first_line(out / "flow.csv") == "t,rho,phi_at_0,u");
  CHECK(first_line(out / "energy.csv") == "t,E,uptick");
  CHECK(fs::exists(out / "snapshot_3.0.pwl"));
  CHECK(std::stod(value_of(out / "summary.txt", "rate")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(std::stod(value_of(out / "summary.txt", "rhoT"))) < 1e-12);
}

TEST_CASE("outputs are byte-identical across runs") {
  Workspace ws;
  const fs::path cfg = ws.write("s.cfg",
                                "problem = damping\nhorizon = 20\n[initial]\ncosine = 0, 1.5, -0.7, 0.2\n");
  REQUIRE(run("simulate " + cfg.string() + " --out " + (ws.dir / "a").string()) == 0);
  REQUIRE(run("simulate " + cfg.string() + " --out " + (ws.dir / "b").string()) == 0);
  for (const char* f : {"flow.csv", "energy.csv", "summary.txt"}) {
    CHECK(slurp(ws.dir / "a" / f) == slurp(ws.dir / "b" / f));
  }
}

TEST_CASE("reachable and spectral write their tables") {
  Workspace ws;
  const fs::path r = ws.write("r.cfg",
                              "problem = damping\n[reachable]\nhorizons = 3, 6.5, 20\n"
                              "[dual]\nphi = 0, 1, 0.5\npsi = 0.2, -1\n");
  REQUIRE(run("reachable " + r.string() + " --out " + (ws.dir / "r").string()) == 0);
  CHECK(first_line(ws.dir / "r" / "support_scan.csv") == "T,H_full,H_reduced,H_normalized,H_limit");
  const fs::path s = ws.write("s.cfg", "problem = complete-stop\n[spectral]\norders = 2, 10\ncount = 2\n");
  REQUIRE(run("spectral " + s.string() + " --out " + (ws.dir / "s").string()) == 0);
  CHECK(first_line(ws.dir / "s" / "secular.csv") == "N,k,mu_N,mu_limit,gap");
}

TEST_CASE("invalid input exits with status two") {
  Workspace ws;
  CHECK(run("simulate " + ws.write("a.cfg", "problem = damping\nhorizon = 3\n").string()) == 2);
  CHECK(run("simulate " + ws.write("b.cfg", "problem = damping\nhorizon = -1\n[initial]\nbreakpoints = 0,1,0\n")
                              .string()) == 2);
  CHECK(run("simulate " + ws.write("c.cfg", "problem = damping\nhorizon = 3\nspeed = 2\n[initial]\n"
                                            "breakpoints = 0,1,0\n")
                              .string()) == 2);
  CHECK(run("simulate " + (ws.dir / "missing.cfg").string()) == 2);
  CHECK(run("verify bogus") == 2);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("verify writes a report") {
  Workspace ws;
  CHECK(run("verify decay --out " + ws.dir.string()) == 0);
  CHECK(slurp(ws.dir / "verify.json").find("\"checks\"") != std::string::npos);
}
