// Copyright 2026 The qrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qrt/cli.hpp"
#include "qrt/io.hpp"
#include "qrt/oracle.hpp"

using namespace qrt;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run qrt_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("qrt_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  std::string state(const std::string& name, const DensityMatrix& rho) const {
    write_state_file(path(name), StateFile{rho.matrix(), name});
    return path(name);
  }

 private:
  fs::path dir_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("state files round-trip bit for bit") {
  Scratch s;
  std::mt19937_64 rng(17);
  for (int k = 0; k < 5; ++k) {
    const DensityMatrix rho = states::random_state(3, rng);
    const StateFile f{rho.matrix(), std::string("r") + std::to_string(k)};
    write_state_file(s.path("a.json"), f);
    const StateFile g = read_state_file(s.path("a.json"));
    CHECK(g.matrix == f.matrix);
    CHECK(g.label == f.label);
    write_state_file(s.path("b.json"), g);
    CHECK(slurp(s.path("a.json")) == slurp(s.path("b.json")));
  }
}

TEST_CASE("malformed state files name the problem") {
  Scratch s;
  auto message = [&](const std::string& text) {
    try {
      to_density_matrix(read_state_file(s.write("bad.json", text)));
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("{").find("not valid JSON") != std::string::npos);
  CHECK(message("[]").find("object") != std::string::npos);
  CHECK(message("{\"dim\": 2}").find("matrix") != std::string::npos);
  CHECK(message("{\"matrix\": [[[1,0],[0,0]]]}").find("square") != std::string::npos);
  CHECK(message("{\"dim\": 3, \"matrix\": [[[1,0]]]}").find("dim") != std::string::npos);
  CHECK(message("{\"matrix\": [[[1,0],[0,1]],[[0,0],[0,0]]]}").find("Hermitian") != std::string::npos);
  CHECK(message("{\"matrix\": [[[0.7,0],[0,0]],[[0,0],[0.7,0]]]}").find("trace") != std::string::npos);
  CHECK(message("{\"matrix\": [[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]}").find("positive semidefinite") !=
        std::string::npos);
  CHECK(message("{\"matrix\": [[[1,0],[0,0]],[[0,0],\"x\"]]}").find("[re, im]") != std::string::npos);
  CHECK_THROWS_AS(read_state_file(s.path("missing.json")), ValidationError);
}

TEST_CASE("exit codes") {
  Scratch s;
  const std::string half = s.state("half.json", states::noisy_plus(0.5));
  const std::string plus = s.state("plus.json", DensityMatrix::pure(states::maximally_coherent(2)));

  CHECK(qrt_run({"--help"}).code == cli::kOk);
  CHECK(qrt_run({}).code == cli::kUsage);
  CHECK(qrt_run({"monotone"}).code == cli::kUsage);
  CHECK(qrt_run({"monotone", "--theory", "coherence", "--state", s.path("nope.json")}).code == cli::kUsage);
  CHECK(qrt_run({"monotone", "--theory", "tofu", "--state", half}).code == cli::kUsage);
  CHECK(qrt_run({"distill", "--theory", "coherence", "--state", half, "--epsilon", "1.5"}).code == cli::kUsage);
  // An infinite Omega has no distillable index.
  const Run inf = qrt_run({"distill", "--theory", "coherence", "--state", plus, "--epsilon", "0.1"});
  CHECK(inf.code == cli::kInfinite);
  CHECK_FALSE(inf.err.empty());

  const Run ok = qrt_run({"monotone", "--theory", "coherence", "--state", half, "--measure", "omega"});
  REQUIRE(ok.code == cli::kOk);
  const json j = json::parse(ok.out);
  CHECK(j["omega"].get<double>() == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(j["status"] == "optimal");
  CHECK(j["witness"]["ratio"].get<double>() == doctest::Approx(3.0).epsilon(1e-5));

  const Run pinf = qrt_run({"monotone", "--theory", "coherence", "--state", plus});
  REQUIRE(pinf.code == cli::kOk);
  CHECK(json::parse(pinf.out)["status"] == "infinite");
}

TEST_CASE("check, distill and overhead subcommands") {
  Scratch s;
  const std::string a = s.state("a.json", states::noisy_plus(0.3));
  const std::string b = s.state("b.json", states::noisy_plus(0.6));
  const std::string half = s.state("half.json", states::noisy_plus(0.5));

  Run r = qrt_run({"check", "--theory", "coherence", "--from", a, "--to", b});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["verdict"] == "possible");
  r = qrt_run({"check", "--theory", "coherence", "--from", b, "--to", a});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["verdict"] == "impossible");

  r = qrt_run({"distill", "--theory", "coherence", "--state", half, "--epsilon", "0.5,0.25"});
  REQUIRE(r.code == cli::kOk);
  json j = json::parse(r.out);
  CHECK(j["epsilon_threshold"].get<double>() == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(j["distillable"][0]["m"] == 4);
  CHECK(j["distillable"][1]["m"] == 2);

  r = qrt_run({"overhead", "--theory", "coherence", "--state", half, "--epsilon", "0.01"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("4.18") != std::string::npos);
}

TEST_CASE("coherence damping sweep") {
  const std::vector<double> gammas = cli::Grid::parse("0:1:0.1").values();
  REQUIRE(gammas.size() == 11);
  CHECK(gammas.back() == doctest::Approx(1.0));
  const std::string csv = cli::sweep_coherence_damping(gammas, 0.1);
  CHECK(csv == cli::sweep_coherence_damping(gammas, 0.1));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "gamma,omega,eps_threshold,m_at_eps");
  double prev = -1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ls(line);
    std::string g, om, eps, m;
    std::getline(ls, g, ',');
    std::getline(ls, om, ',');
    std::getline(ls, eps, ',');
    std::getline(ls, m, ',');
    const double e = std::stod(eps);
    CHECK(e > prev);
    prev = e;
    if (std::stod(g) == 0.0) CHECK(om == "inf");
    if (std::abs(std::stod(g) - 0.5) < 1e-12) {
      // Amplitude damping at gamma = 1/2 applied to |+>.
      HermitianMatrix m2(2, 2);
      m2 << 0.75, std::sqrt(0.5) / 2.0, std::sqrt(0.5) / 2.0, 0.25;
      const auto coh2 = make_theory(TheoryKind::Coherence, {2});
      const OracleResult o = omega_grid(coh2, DensityMatrix(m2), 100000);
      CHECK(e == doctest::Approx(1.0 / (o.upper + 1.0)).epsilon(1e-6));
    }
  }
  CHECK(rows == 11);

  Scratch s;
  const Run r = qrt_run({"sweep", "--experiment", "coh_amplitude_damping", "--grid", "0:1:0.1", "--out", s.path("f.csv")});
  REQUIRE(r.code == cli::kOk);
  CHECK(slurp(s.path("f.csv")) == csv);
}

TEST_CASE("magic overhead sweep") {
  const std::vector<double> eps = cli::parse_real_list("1e-2,1e-3,...,1e-12");
  REQUIRE(eps.size() == 11);
  CHECK(eps.back() == doctest::Approx(1e-12));
  const std::string csv = cli::sweep_magic_overhead(states::noisy_t(0.25), eps);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "epsilon,omega,n_lower");
  double prev = -1.0;
  while (std::getline(in, line)) {
    const double n = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("formatting and list parsing") {
  CHECK(cli::format_real(0.25) == "0.25");
  CHECK(cli::format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(cli::parse_real_list("0.5, 0.25") == std::vector<double>{0.5, 0.25});
  CHECK_THROWS(cli::parse_real_list("0.5,abc"));
  CHECK_THROWS(cli::Grid::parse("0:1"));
  CHECK_THROWS(cli::Grid::parse("0:1:0"));
}

TEST_CASE("verify reports a consistent bracket") {
  Scratch s;
  const std::string half = s.state("half.json", states::noisy_plus(0.5));
  const Run r = qrt_run({"verify", "--theory", "coherence", "--state", half, "--trials", "5"});
  REQUIRE(r.code == cli::kOk);
  const json j = json::parse(r.out);
  CHECK(j["consistent"] == true);
  CHECK(j["monotonicity"]["violations"] == 0);
}
