// End-to-end exercises of the command-line tool: every subcommand runs
// against real files in a scratch directory, and identical invocations must
// produce byte-identical artifacts.

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "s3radon/io.hpp"

#ifndef S3RADON_CLI_PATH
#error "S3RADON_CLI_PATH must point at the built binary"
#endif

namespace {

std::string scratch_dir() {
  static int counter = 0;
  std::string dir = std::string("cli_scratch_") + std::to_string(counter++);
  const int rc = std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
  REQUIRE(rc == 0);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(S3RADON_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("simulate on the uniform model yields all-one samples") {
  const std::string dir = scratch_dir();
  write_file(dir + "/uniform.json", R"({"type":"uniform"})");
  REQUIRE(run_cli("simulate --model " + dir + "/uniform.json --output " + dir +
                  "/samples.csv --grid 4x4x3 --seed 7") == 0);
  const auto samples = s3radon::parse_samples_file(dir + "/samples.csv");
  REQUIRE(samples.size() == 48);
  for (const auto& s : samples) CHECK(s.value == 1.0);
}

TEST_CASE("identical seeds give byte-identical outputs") {
  const std::string dir = scratch_dir();
  write_file(dir + "/model.json",
             R"({"type":"rbf","components":[
                 {"kernel":"dlvp","kappa":4,"center":[0.2,0.4,-0.8,0.4],"weight":1.0}]})");
  const std::string base =
      "simulate --model " + dir + "/model.json --grid 5x5x4 --sigma 0.01 --output ";
  REQUIRE(run_cli(base + dir + "/a.csv --seed 42") == 0);
  REQUIRE(run_cli(base + dir + "/b.csv --seed 42") == 0);
  CHECK(slurp(dir + "/a.csv") == slurp(dir + "/b.csv"));
  REQUIRE(run_cli(base + dir + "/c.csv --seed 43") == 0);
  CHECK(slurp(dir + "/a.csv") != slurp(dir + "/c.csv"));
}

TEST_CASE("simulate then fit recovers the generating mixture") {
  const std::string dir = scratch_dir();
  // Put the truth on the same center dictionary the fit will use, so the
  // round trip is exact up to solver tolerance.
  const auto centers = s3radon::s3_center_grid(40, 3);
  const s3radon::Quat c1 = centers[10], c2 = centers[20];
  std::ostringstream truth;
  truth << R"({"type":"rbf","components":[)"
        << R"({"kernel":"dlvp","kappa":20,"center":[)" << s3radon::format_double(c1.w) << ','
        << s3radon::format_double(c1.x) << ',' << s3radon::format_double(c1.y) << ','
        << s3radon::format_double(c1.z) << R"(],"weight":0.6},)"
        << R"({"kernel":"dlvp","kappa":20,"center":[)" << s3radon::format_double(c2.w) << ','
        << s3radon::format_double(c2.x) << ',' << s3radon::format_double(c2.y) << ','
        << s3radon::format_double(c2.z) << R"(],"weight":0.4}]})";
  write_file(dir + "/truth.json", truth.str());
  REQUIRE(run_cli("simulate --model " + dir + "/truth.json --output " + dir +
                  "/samples.csv --grid 12x12x4 --seed 9") == 0);
  REQUIRE(run_cli("fit --input " + dir + "/samples.csv --output " + dir +
                  "/fitted.json --method rbf --kernel dlvp --kappa 20 --centers 40 --seed 3 " +
                  "--nonneg --report " + dir + "/report.json") == 0);
  const auto fitted = s3radon::parse_model_file(dir + "/fitted.json");
  const auto& mix = std::get<s3radon::RbfMixture>(fitted);
  REQUIRE(mix.components.size() == 40);
  double total = 0.0;
  for (const auto& comp : mix.components) total += comp.weight;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::fabs(mix.components[10].weight - 0.6) < 1e-4);
  CHECK(std::fabs(mix.components[20].weight - 0.4) < 1e-4);
  CHECK(slurp(dir + "/report.json").find("rms_residual") != std::string::npos);
}

TEST_CASE("transform tabulates the radon transform of a harmonic model") {
  const std::string dir = scratch_dir();
  write_file(dir + "/hm.json", R"({"type":"harmonic","L":2,"coeffs":[[0,0,0,12.566370614359172],
                                   [2,1,-1,0.25]]})");
  REQUIRE(run_cli("transform --model " + dir + "/hm.json --output " + dir +
                  "/table.csv --which w --grid 3x3x2 --seed 5") == 0);
  const std::string text = slurp(dir + "/table.csv");
  CHECK(text.find("# config_hash:") != std::string::npos);
  CHECK(text.find("hx,hy,hz,rx,ry,rz,rho,value") != std::string::npos);
  // radon of the same model through the quadrature path
  REQUIRE(run_cli("transform --model " + dir + "/hm.json --output " + dir +
                  "/radon.csv --which radon --grid 3x3x2 --seed 5 --circle-nodes 64 "
                  "--sphere-degree 12") == 0);
  CHECK(slurp(dir + "/radon.csv").find("value") != std::string::npos);
}

TEST_CASE("kernels subcommand emits coefficient and profile tables") {
  const std::string dir = scratch_dir();
  REQUIRE(run_cli("kernels --output-prefix " + dir + "/k --kernel dlvp --kappa 4 --lmax 8") == 0);
  const std::string coeffs = slurp(dir + "/k_coeffs.csv");
  CHECK(coeffs.find("kappa,l,a_l") != std::string::npos);
  // a_5 and beyond vanish for kappa = 4
  std::istringstream in(coeffs);
  std::string line;
  int zero_rows = 0;
  while (std::getline(in, line)) {
    if (line.rfind("4,", 0) == 0) {
      const auto second_comma = line.find(',', 2);
      const int l = std::stoi(line.substr(2, second_comma - 2));
      const double a = std::stod(line.substr(second_comma + 1));
      if (l > 4) {
        CHECK(std::fabs(a) < 1e-10);
        ++zero_rows;
      }
    }
  }
  CHECK(zero_rows == 4);
  CHECK(slurp(dir + "/k_profiles.csv").find("double_radon_diag") != std::string::npos);
}

TEST_CASE("malformed inputs exit nonzero with a diagnostic") {
  const std::string dir = scratch_dir();
  write_file(dir + "/bad.json", "{not json");
  CHECK(run_cli("simulate --model " + dir + "/bad.json --output " + dir + "/x.csv") == 2);
  write_file(dir + "/bad.csv", "hx,hy,hz\n1,2\n");
  CHECK(run_cli("fit --input " + dir + "/bad.csv --output " + dir + "/y.json") == 2);
  CHECK(run_cli("fit --input " + dir + "/missing.csv --output " + dir + "/y.json") == 2);
}
