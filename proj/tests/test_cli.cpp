#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "circtv/cli.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = circtv::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("synth, noise, denoise and metrics") {
  const auto dir = testutil::scratch_dir("cli_pipeline");
  const std::string clean = (dir / "clean.csv").string();
  const std::string noisy = (dir / "noisy.csv").string();
  const std::string out = (dir / "out.csv").string();

  auto r = call({"synth", "--signal1d", "--n", "200", "--out", clean});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["n"] == 200);

  r = call({"noise", "--in", clean, "--out", noisy, "--sigma", "0.2", "--seed", "3"});
  REQUIRE(r.code == 0);

  r = call({"denoise1d", "--in", noisy, "--out", out, "--alpha", "0.25", "--beta", "0.5",
            "--cycles", "300", "--truth", clean});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "denoise1d");
  CHECK(j["cycles"] == 300);
  CHECK(j["energy"].get<double>() < j["energy_input"].get<double>());
  CHECK(j["cmse"].get<double>() > 0.0);
  CHECK(fs::exists(out));

  r = call({"metrics", "--a", out, "--b", out});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["cmse"] == 0.0);
}

TEST_CASE("denoising is deterministic") {
  const auto dir = testutil::scratch_dir("cli_determinism");
  const std::string clean = (dir / "s.txt").string();
  const std::string noisy = (dir / "n.bin").string();
  REQUIRE(call({"synth", "--surface2d", "--rows", "24", "--cols", "20", "--out", clean}).code == 0);
  REQUIRE(call({"noise", "--in", clean, "--out", noisy, "--sigma", "0.3", "--seed", "1"}).code == 0);
  const std::vector<std::string> base{"denoise2d", "--in",      noisy,  "--alpha1", "0.25",
                                      "--alpha2",  "0.25",      "--gamma", "0.1", "--cycles",
                                      "50"};
  auto a = base;
  a.insert(a.end(), {"--out", (dir / "a.bin").string()});
  auto b = base;
  b.insert(b.end(), {"--out", (dir / "b.bin").string(), "--png", (dir / "b.png").string()});
  REQUIRE(call(a).code == 0);
  REQUIRE(call(b).code == 0);
  CHECK(slurp(dir / "a.bin") == slurp(dir / "b.bin"));
  CHECK(fs::exists(dir / "b.png"));

  const auto n1 = (dir / "n1.bin").string();
  REQUIRE(call({"noise", "--in", clean, "--out", n1, "--sigma", "0.3", "--seed", "1"}).code == 0);
  CHECK(slurp(noisy) == slurp(n1));
}

TEST_CASE("exit codes") {
  const auto dir = testutil::scratch_dir("cli_exit");
  CHECK(call({}).code == 1);
  CHECK(call({"denoise1d", "--bogus"}).code == 1);
  CHECK(call({"denoise1d", "--in", "x.csv"}).code == 1);
  CHECK(call({"frobnicate"}).code == 1);

  const auto missing = (dir / "missing.csv").string();
  auto r = call({"denoise1d", "--in", missing, "--out", (dir / "o.csv").string(), "--alpha", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("missing.csv") != std::string::npos);

  {
    std::ofstream bad(dir / "bad.csv");
    bad << "0.1\nzzz\n";
  }
  r = call({"denoise1d", "--in", (dir / "bad.csv").string(), "--out", (dir / "o.csv").string(),
            "--alpha", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("bad.csv:2:") != std::string::npos);

  {
    std::ofstream ok(dir / "ok.csv");
    ok << "0.1\n0.2\n0.3\n";
  }
  const auto ok = (dir / "ok.csv").string();
  CHECK(call({"denoise1d", "--in", ok, "--out", (dir / "o.csv").string()}).code == 1);
  CHECK(call({"denoise1d", "--in", ok, "--out", (dir / "o.csv").string(), "--alpha", "1", "--p",
              "3"})
            .code == 1);
  CHECK(call({"denoise1d", "--in", ok, "--out", (dir / "o.unknown").string(), "--alpha", "1"})
            .code == 1);
  CHECK(call({"synth", "--out", (dir / "s.csv").string()}).code == 1);
  CHECK(call({"noise", "--in", ok, "--out", (dir / "n.csv").string(), "--sigma", "-1"}).code == 1);
  CHECK(call({"denoise1d", "--in", ok, "--out", (dir / "o.csv").string(), "--alpha", "1"}).code ==
        0);
}

TEST_CASE("out-of-range input produces a warning") {
  const auto dir = testutil::scratch_dir("cli_warn");
  {
    std::ofstream f(dir / "w.csv");
    f << "0.1\n7.0\n0.2\n";
  }
  const auto r = call({"denoise1d", "--in", (dir / "w.csv").string(), "--out",
                       (dir / "o.csv").string(), "--alpha", "0.1", "--cycles", "5"});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("check reports the three conditions") {
  const auto dir = testutil::scratch_dir("cli_check");
  const auto in = (dir / "s.txt").string();
  REQUIRE(call({"synth", "--surface2d", "--rows", "16", "--cols", "16", "--out", in}).code == 0);
  const auto r = call({"check", "--in", in, "--alpha1", "1", "--alpha2", "1", "--epsilon", "0.1"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["c"] == 15);
  CHECK(j["neighbor_condition"] == false);
  CHECK(j["all"] == false);
  CHECK(call({"check", "--in", in, "--epsilon", "0"}).code == 1);
}

TEST_CASE("help exits cleanly") {
  const auto r = call({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("denoise2d") != std::string::npos);
}
