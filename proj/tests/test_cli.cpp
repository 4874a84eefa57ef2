// End-to-end checks of the installed binary: output bytes, exit codes,
// error prefixes, help snapshots and thread-count determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string temp_path(const std::string& name) {
  return std::string("/tmp/goldbach_cli_test_") + name;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  const std::string err_file = temp_path("stderr");
  const std::string cmd =
      env_prefix + std::string(GOLDBACH_CLI_PATH) + " " + args + " 2>" + err_file;
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> chunk;
  size_t got;
  while ((got = fread(chunk.data(), 1, chunk.size(), pipe)) > 0) {
    r.out.append(chunk.data(), got);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream ef(err_file);
  std::stringstream ss;
  ss << ef.rdbuf();
  r.err = ss.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("count prints n and G") {
  const auto r = run("count --n 100");
  CHECK(r.code == 0);
  CHECK(r.out == "100 6\n");
}

TEST_CASE("odd n is a usage-class failure with exit 1") {
  const auto r = run("count --n 7");
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error:domain:", 0) == 0);
  CHECK(r.out.empty());
}

TEST_CASE("unknown flags are rejected") {
  const auto r = run("count --n 100 --frobnicate");
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error:usage:", 0) == 0);
}

TEST_CASE("missing subcommand is a usage error") {
  const auto r = run("");
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error:usage:", 0) == 0);
}

TEST_CASE("scan emits the documented csv bytes") {
  const auto r = run("scan --start 6 --end 12 --format csv");
  CHECK(r.code == 0);
  CHECK(r.out == "n,G\n6,1\n8,1\n10,2\n12,1\n");
}

TEST_CASE("scan json") {
  const auto r = run("scan --start 6 --end 12 --format json");
  CHECK(r.code == 0);
  CHECK(r.out == "{\"start\":6,\"end\":12,\"entries\":[[6,1],[8,1],[10,2],[12,1]]}\n");
}

TEST_CASE("scan range errors carry exit 1") {
  const auto r = run("scan --start 10 --end 6");
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error:domain:", 0) == 0);
}

TEST_CASE("capacity guard exits 2") {
  const auto r = run("scan --start 4 --end 4000000000");
  CHECK(r.code == 2);
  CHECK(r.err.rfind("error:capacity:", 0) == 0);
}

TEST_CASE("witness prints the smallest pair") {
  CHECK(run("witness --n 48").out == "48 5 43\n");
  CHECK(run("witness --n 4").out == "4 2 2\n");
  CHECK(run("witness --n 6").out == "6 3 3\n");
}

TEST_CASE("constant matches the known product to print precision") {
  const auto r = run("constant --prime-limit 1000000");
  CHECK(r.code == 0);
  const double v = std::strtod(r.out.c_str(), nullptr);
  CHECK(std::fabs(v - 0.6601618158) < 5e-7);
}

TEST_CASE("estimate json exposes every breakdown field") {
  const auto r = run("estimate --n 64 --prime-limit 1000");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("n") == 64);
  CHECK(j.at("singular") == 1.0);  // power of two
  for (const char* key : {"s0", "s1", "s2", "li2", "hl", "strong_lower"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("sieve-info reports pi") {
  const auto r = run("sieve-info --limit 1000");
  CHECK(r.code == 0);
  CHECK(r.out.find("limit 1000\n") != std::string::npos);
  CHECK(r.out.find("pi 168\n") != std::string::npos);
}

TEST_CASE("help text snapshots") {
  const std::string dir = std::string(GOLDBACH_SNAPSHOT_DIR) + "/";
  CHECK(run("--help").out == slurp(dir + "help_main.txt"));
  for (const std::string sub :
       {"sieve-info", "count", "scan", "witness", "estimate", "check-strong",
        "check-chebyshev", "constant", "envelope", "fit", "funceq"}) {
    CAPTURE(sub);
    const auto r = run(sub + " --help");
    CHECK(r.code == 0);
    CHECK(r.out == slurp(dir + "help_" + sub + ".txt"));
  }
}

TEST_CASE("thread count never changes output bytes") {
  const std::string scan1 = run("--threads 1 scan --start 4 --end 20000").out;
  CHECK(scan1 == run("--threads 2 scan --start 4 --end 20000").out);
  CHECK(scan1 == run("--threads 7 scan --start 4 --end 20000").out);

  const std::string strong1 = run("--threads 1 check-strong --start 6 --end 5000").out;
  CHECK(strong1 == run("--threads 2 check-strong --start 6 --end 5000").out);
  CHECK(strong1 == run("--threads 5 check-strong --start 6 --end 5000").out);

  const std::string cheb1 = run("--threads 1 check-chebyshev --start 2 --end 50000").out;
  CHECK(cheb1 == run("--threads 2 check-chebyshev --start 2 --end 50000").out);
  CHECK(cheb1 == run("--threads 3 check-chebyshev --start 2 --end 50000").out);

  // the documented env cap routes through the same deterministic kernels
  const std::string env_route =
      run("scan --start 4 --end 20000", "GOLDBACH_MAX_THREADS=1 ").out;
  CHECK(env_route == scan1);
}

TEST_CASE("pipeline: scan to envelope to fit to funceq") {
  const std::string scan_csv = temp_path("scan.csv");
  const std::string env_json = temp_path("env.json");
  const std::string fit_json = temp_path("fit.json");

  CHECK(run("scan --start 4 --end 50000 --out " + scan_csv).code == 0);
  CHECK(run("envelope --in " + scan_csv + " --out " + env_json).code == 0);

  const auto env = nlohmann::json::parse(slurp(env_json));
  CHECK(env.at("source_range")[0] == 4);
  CHECK(env.at("source_range")[1] == 50000);
  CHECK(env.at("lower").size() > 10);
  CHECK(env.at("upper").size() > 10);

  const auto fit_run = run("fit --in " + env_json + " --side lower --calibrate --out " + fit_json);
  CHECK(fit_run.code == 0);
  const auto fit = nlohmann::json::parse(slurp(fit_json));
  CHECK(fit.at("alpha").get<double>() > 0.0);
  const double beta = fit.at("beta").get<double>();
  CHECK(beta > 0.0);
  CHECK(beta < 1.0);
  CHECK(fit.at("converged") == true);
  CHECK(fit.at("points_used").get<int>() >= 3);

  const auto feq = run("funceq --in " + fit_json + " --a 10 --b 1000 --grid 1:40:10");
  CHECK(feq.code == 0);
  const auto rep = nlohmann::json::parse(feq.out);
  CHECK(rep.at("max_abs").get<double>() > 0.0);
  CHECK(rep.at("evaluated").get<int>() > 10);

  const auto feq_env = run("funceq --in " + env_json + " --a 100 --b 1000 --side lower");
  CHECK(feq_env.code == 0);

  // identical side fit without calibration stays above the calibrated alpha
  const auto plain = run("fit --in " + env_json + " --side lower");
  CHECK(plain.code == 0);
  const auto plain_fit = nlohmann::json::parse(plain.out);
  CHECK(plain_fit.at("alpha").get<double>() >= fit.at("alpha").get<double>());
}

TEST_CASE("fit insufficient data exits 1") {
  const std::string env_json = temp_path("tiny_env.json");
  std::ofstream(env_json)
      << "{\"source_range\":[6,20],\"lower\":[[6,1],[20,1]],\"upper\":[[6,1]]}\n";
  const auto r = run("fit --in " + env_json + " --side lower --min-n 0");
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error:domain:", 0) == 0);
}

TEST_CASE("missing input file exits 1") {
  const auto r = run("envelope --in /tmp/goldbach_does_not_exist.csv");
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error:domain:", 0) == 0);
}

TEST_CASE("funceq domain exceedance names the offender") {
  const std::string scan_csv = temp_path("scan_small.csv");
  const std::string env_json = temp_path("env_small.json");
  CHECK(run("scan --start 4 --end 2000 --out " + scan_csv).code == 0);
  CHECK(run("envelope --in " + scan_csv + " --out " + env_json).code == 0);
  const auto r = run("funceq --in " + env_json + " --a 100 --b 100 --grid 100:900:5");
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error:domain:", 0) == 0);
}
