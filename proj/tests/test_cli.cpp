#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "lfwave/io.hpp"
#include "support.hpp"

using namespace lfwave;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(LFWAVE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& name) { return std::string(LFWAVE_FIXTURES) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string temp_path(const std::string& name) {
  return std::string(LFWAVE_BINARY_DIR) + "/" + name;
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("build haar over Q_3 emits two generators") {
  const Run r = cli("build --kind qp --p 3");
  REQUIRE(r.code == 0);
  const auto j = io::Json::parse(r.out);
  CHECK(j["generators"].size() == 2);
  CHECK(j["sigmas"].size() == 3);
  CHECK(j["d_convention"] == "standard-digits");
  CHECK(j["truncation"]["n_iters"] == 0);
}

TEST_CASE("build output is byte-identical across runs") {
  const Run a = cli("build --system example --example qpwave3");
  const Run b = cli("build --system example --example qpwave3");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = io::Json::parse(a.out);
  CHECK(j["truncation"]["epsilon"] == "1/1099511627776");
  CHECK(j["truncation"].contains("dropped_measure"));
  CHECK(j["generators"].size() == 1);
}

TEST_CASE("transform of the 1_H fixture is the 1_{H-perp} fixture") {
  const Run r = cli("transform " + fixture("indicator_H.json"));
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(fixture("indicator_Hperp.json")));
  const Run back = cli("transform " + fixture("indicator_Hperp.json"));
  CHECK(back.out == slurp(fixture("indicator_H.json")));
}

TEST_CASE("transform twice returns the original") {
  std::mt19937_64 rng(31);
  for (const auto& g : {GroupDescriptor::qp(3), GroupDescriptor::fp_laurent(2, 2), GroupDescriptor::qp_quad(3, 2)}) {
    const StepFunction f = testsupport::random_step(g, Side::Time, 1, 1, rng);
    const std::string p0 = temp_path("cli_f.json");
    const std::string p1 = temp_path("cli_F.json");
    write(p0, io::to_json(f).dump());
    const Run once = cli("transform " + p0);
    REQUIRE(once.code == 0);
    write(p1, once.out);
    const Run twice = cli("transform " + p1);
    REQUIRE(twice.code == 0);
    const StepFunction back = io::step_function_from_json(io::Json::parse(twice.out));
    CHECK(back.side() == Side::Time);
    CHECK(max_abs_difference(back, f) < 1e-10);
    // The transform of conj(f) at gamma is conj of the transform at -gamma.
    const StepFunction big = io::step_function_from_json(io::Json::parse(once.out));
    const CellCodec codec = big.codec();
    for (std::uint64_t k = 0; k < big.cell_count(); k += 3) {
      const Element gamma = codec.element_of(k);
      const Element minus = negate(g, gamma, big.m() * g.r0() + 8);
      StepFunction fc(g, Side::Time, f.m(), f.r());
      for (const auto& [idx, v] : f.cells()) fc.set(idx, std::conj(v));
      CHECK(std::abs(transform(fc).eval(gamma) - std::conj(big.eval(minus))) < 1e-10);
    }
  }
}

TEST_CASE("eval reads a point") {
  const Run in = cli("eval " + fixture("indicator_H.json") + " --x 1:2");
  REQUIRE(in.code == 0);
  CHECK(io::Json::parse(in.out)["value"]["re"] == 1.0);
  const Run out = cli("eval " + fixture("indicator_H.json") + " --x -1:2 --out csv");
  CHECK(out.out == "re,im\n0,0\n");
}

TEST_CASE("exit codes") {
  CHECK(cli("gram --kind qp --p 2 --nmin 0 --nmax 0 --depth 0").code == 0);
  CHECK(cli("gram --kind qp --p 2 --depth 2 --corrupt 1.1").code == 1);
  CHECK(cli("compare --example nosuch").code == 2);
  CHECK(cli("gram --kind qp --p 4").code == 2);
  CHECK(cli("eval " + fixture("malformed.json") + " --x 0:1").code == 2);
  CHECK(cli("transform /nonexistent.json").code == 2);
  CHECK(cli("gram --kind qp --p 2 --depth 12 --max-cells 1000").code == 3);
  CHECK(cli("--bogus").code == 2);
}

TEST_CASE("gram singleton and CSV layout") {
  const Run r = cli("gram --kind qp --p 2 --nmin 0 --nmax 0 --depth 0 --no-timing");
  const auto j = io::Json::parse(r.out);
  CHECK(j["matrix_size"] == 1);
  CHECK(j["matrix"][0][0][0] == 1.0);
  CHECK(j["runtime_ms"] == 0.0);
  const Run csv = cli("gram --kind qp --p 3 --nmin 0 --nmax 0 --depth 1 --out csv");
  CHECK(csv.out.rfind("row,col,n1,s1,i1,n2,s2,i2,re,im\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 1 + 36);
}

TEST_CASE("parseval and compare subcommands") {
  const Run p = cli("parseval --kind qp --p 2 --nmin -20 --nmax 5 --depth 4 --threshold 0.9999");
  REQUIRE(p.code == 0);
  const auto j = io::Json::parse(p.out);
  CHECK(j["captured_energy"].back().get<double>() > 0.9999);
  CHECK(j["target"] == "indicator:H");
  CHECK(cli("parseval --kind qp --p 3 --f ball --center 0:1 --scale 1 --nmin -2 --nmax 0 --threshold 0.9999").code ==
        1);
  const Run c = cli("compare --example fptwave --ex-p 3 --samples 81 --tol 1e-8 --out csv");
  CHECK(c.code == 0);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 82);
}
