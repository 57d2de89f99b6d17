#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "nkcp3/commands.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nkcp3");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = nkcp3::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("nkcp3_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name)) << text;
    return file(name);
  }

 private:
  fs::path path_;
};

const char* kGrid[] = {"--grid-n", "21"};

std::vector<std::string> with_grid(std::vector<std::string> args) {
  args.insert(args.begin(), {kGrid[0], kGrid[1]});
  return args;
}

}  // namespace

TEST_CASE("generate writes curve files") {
  TempDir dir;
  Result r = run_cli({"generate", "--f", "z^3", "--g", "z"});
  CHECK(r.code == 0);
  CHECK(r.parsed() == json{{"kind", "weierstrass"}, {"f", "z^3"}, {"g", "z"}});

  const std::string path = dir.file("w.json");
  CHECK(run_cli({"generate", "--f", "z^3", "--g", "z", "-o", path}).code == 0);
  r = run_cli({"generate", "--partner-of", path});
  CHECK(r.code == 0);
  CHECK(r.parsed()["kind"] == "partner");
  CHECK(r.parsed()["inner"]["f"] == "z^3");

  r = run_cli({"generate", "--fiber", "1", "0", "i", "0"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["base"][2] == json{0.0, 1.0});

  r = run_cli({"generate", "--explicit", "1", "zb^2", "0", "0"});
  CHECK(r.parsed()["components"][1] == "zb^2");
}

TEST_CASE("generate errors") {
  Result r = run_cli({"generate", "--f", "1", "--g", "2"});
  CHECK(r.code == 3);
  CHECK(r.parsed()["error"]["kind"] == "degenerate_weierstrass");

  r = run_cli({"generate", "--f", "z+", "--g", "z"});
  CHECK(r.code == 2);
  CHECK(r.parsed()["error"]["kind"] == "parse_error");

  r = run_cli({"generate", "--f", "z^2"});
  CHECK(r.code == 2);
  CHECK(r.parsed()["error"]["kind"] == "invalid_argument");

  r = run_cli({"generate", "--fiber", "0", "0", "0", "0"});
  CHECK(r.code == 2);
}

TEST_CASE("check classifies") {
  TempDir dir;
  const std::string w = dir.file("w.json"), p = dir.file("p.json");
  run_cli({"generate", "--f", "z^3", "--g", "z", "-o", w});
  run_cli({"generate", "--partner-of", w, "-o", p});
  const std::string fib = dir.write("fib.json", R"({"kind":"fiber","base":[[1,0],[0,0],[0,0],[0,0]]})");
  const std::string bad = dir.write("bad.json", R"({"kind":"explicit","components":["1","z^2","0","0"]})");

  Result r = run_cli(with_grid({"check", w}));
  CHECK(r.code == 0);
  CHECK(r.parsed()["classification"] == "horizontal");
  CHECK(r.parsed()["max_torsion"].is_null());

  r = run_cli(with_grid({"classify", p}));
  CHECK(r.code == 0);
  CHECK(r.parsed()["classification"] == "null_torsion");
  CHECK(r.parsed()["config"]["tol"] == 1e-7);
  CHECK(r.parsed()["grid"]["samples"] == 21);

  CHECK(run_cli(with_grid({"check", fib})).parsed()["classification"] == "vertical");

  r = run_cli(with_grid({"check", bad}));
  CHECK(r.code == 1);
  CHECK(r.parsed()["classification"] == "not_pseudoholomorphic");
}

TEST_CASE("divisors and chern") {
  TempDir dir;
  const std::string v = dir.write("v.json", R"({"kind":"explicit","components":["1","zb^2","0","0"]})");
  const std::string line = dir.write("line.json", R"({"kind":"explicit","components":["1","z","0","0"]})");

  Result r = run_cli({"divisors", v, "--invariant", "I2"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["total_order"] == 2);
  CHECK(r.parsed()["invariant"] == "I2");

  r = run_cli({"chern", line});
  CHECK(r.code == 0);
  CHECK(r.parsed()["degree"] == 1);
  CHECK(r.parsed()["drift"].get<double>() < 0.02);

  r = run_cli({"divisors", v, "--invariant", "I3"});
  CHECK(r.code == 2);
  CHECK(r.parsed()["error"]["kind"] == "usage");
}

TEST_CASE("project") {
  TempDir dir;
  const std::string s = dir.file("s.json");
  run_cli({"generate", "--f", "0", "--g", "z", "-o", s});
  Result r = run_cli(with_grid({"project", s}));
  CHECK(r.code == 0);
  double worst = 0.0;
  int rows = 0;
  const json report = r.parsed();
  for (const json& row : report["samples"]) {
    ++rows;
    if (!row["harmonic_residual"].is_null()) worst = std::max(worst, row["harmonic_residual"].get<double>());
  }
  CHECK(rows > 0);
  CHECK(worst < 1e-4);

  const std::string csv = dir.file("s.csv");
  r = run_cli(with_grid({"--format", "csv", "project", s, "-o", csv}));
  CHECK(r.code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "z_re,z_im,s0,s1,s2,s3,s4,E,F,G,conformal_residual,harmonic_residual,chart");
}

TEST_CASE("partner point") {
  TempDir dir;
  const std::string w = dir.file("w.json");
  run_cli({"generate", "--f", "z^3", "--g", "z", "-o", w});
  Result r = run_cli({"partner", w, "--at", "0.3+0.1i"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["flag_defect"].get<double>() < 1e-12);
  CHECK(r.parsed()["antipodal_residual"].get<double>() < 1e-10);

  const std::string fib = dir.write("fib.json", R"({"kind":"fiber","base":[[1,0],[0,0],[0,0],[0,0]]})");
  r = run_cli({"partner", fib, "--at", "0.3"});
  CHECK(r.code == 3);
  CHECK(r.parsed()["error"]["kind"] == "no_horizontal_tangent");
}

TEST_CASE("usage and input errors") {
  TempDir dir;
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  Result r = run_cli({"check", dir.file("missing.json")});
  CHECK(r.code == 2);
  CHECK(r.parsed()["error"]["kind"] == "io_error");
  r = run_cli({"check", dir.write("junk.json", "{not json")});
  CHECK(r.code == 2);
  CHECK(r.parsed()["error"]["kind"] == "parse_error");
  r = run_cli({"check", dir.write("odd.json", R"({"kind":"torus"})")});
  CHECK(r.code == 2);
  CHECK(r.parsed()["error"]["kind"] == "invalid_argument");
  CHECK(run_cli({"--tol", "0.5", "check", dir.file("missing.json")}).code == 2);
  CHECK(run_cli({"--jobs", "0", "check", dir.file("missing.json")}).code == 2);
}

TEST_CASE("output does not depend on the thread count") {
  TempDir dir;
  const std::string w = dir.file("w.json"), p = dir.file("p.json");
  run_cli({"generate", "--f", "z^4 + z", "--g", "z^2", "-o", w});
  run_cli({"generate", "--partner-of", w, "-o", p});
  for (const std::vector<std::string> cmd : {std::vector<std::string>{"check", p},
                                            std::vector<std::string>{"divisors", w, "--invariant", "I1"},
                                            std::vector<std::string>{"project", w}}) {
    auto one = with_grid(cmd), four = with_grid(cmd);
    one.insert(one.begin(), {"--jobs", "1"});
    four.insert(four.begin(), {"--jobs", "4"});
    CHECK(run_cli(one).out == run_cli(four).out);
  }
}
