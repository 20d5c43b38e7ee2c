// Copyright 2026 The arrowtime Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "arrowtime/cli/cli.hpp"
#include "arrowtime/serialize.hpp"
#include "oracle.hpp"

using namespace arrowtime;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "arrowtime");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = ARROWTIME_TEST_TMPDIR;
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string simulate_to(const std::string& name, const std::string& state,
                        const std::string& channel) {
  const std::string path = (scratch() / name).string();
  const Result r =
      run_cli({"simulate", "--state", state, "--channel", channel, "-o", path});
  REQUIRE(r.code == 0);
  return path;
}

}  // namespace

TEST_CASE("simulate presets", "[cli][simulate]") {
  SECTION("|0> through identity") {
    const Result r = run_cli({"simulate", "--state", "|0>", "--channel", "identity"});
    REQUIRE(r.code == 0);
    const CorrelatorTable t = table_from_json(Json::parse(r.out));
    CHECK(t.value(PauliLabel::parse("Z"), PauliLabel::parse("Z")) ==
          Catch::Approx(1.0));
  }
  SECTION("rhoA with the decohering channel reproduces R") {
    const Result r =
        run_cli({"simulate", "--state", "rhoA:a=0.5", "--channel", "decohere"});
    REQUIRE(r.code == 0);
    const CorrelatorTable t = table_from_json(Json::parse(r.out));
    Matrix expected(4, 4);
    const double a = 0.5;
    expected << 4 - 2 * a, 0, a, 0, 0, 0, 0, a, a, 0, 0, 0, 0, a, 0, 2 * a;
    expected /= 4.0;
    CHECK((pdm_from_correlators(t, Direction::Forward).matrix() - expected)
              .norm() < 1e-14);
  }
  SECTION("shot sampling is deterministic and close to exact") {
    const std::vector<std::string> args{"simulate", "--state", "rhoA:a=0.5",
                                        "--channel", "decohere", "--shots",
                                        "10000", "--seed", "7"};
    const Result a = run_cli(args);
    const Result b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const CorrelatorTable noisy = table_from_json(Json::parse(a.out));
    const CorrelatorTable exact = correlators_from_process(
        DensityMatrix(oracle::rho_a(0.5)), oracle::decohering_channel());
    REQUIRE(noisy.shots.has_value());
    for (std::size_t k = 0; k < exact.values().size(); ++k) {
      CHECK(std::abs(noisy.values()[k] - exact.values()[k]) <= 5.0 / 100.0);
    }
  }
  SECTION("other presets") {
    CHECK(run_cli({"simulate", "--state", "mixed:n=2", "--channel",
                   "depolarize:p=0.2"})
              .code == 0);
    CHECK(run_cli({"simulate", "--state", "|0+>", "--channel", "decohere"})
              .code == 0);
    const std::string u = write(
        "u.json", matrix_to_json(oracle::random_unitary(2, 3)).dump());
    CHECK(run_cli({"simulate", "--state", "|1>", "--channel", "unitary:file=" + u})
              .code == 0);
    const std::string rho = matrix_to_json(oracle::rho_a(0.3)).dump();
    CHECK(run_cli({"simulate", "--state", rho, "--channel",
                   channel_to_json(oracle::decohering_channel()).dump()})
              .code == 0);
    const std::string ch = write(
        "ch.json", channel_to_json(oracle::random_cptp_channel(1, 2, 4)).dump());
    CHECK(run_cli({"simulate", "--state", "@" + write("rho.json", rho),
                   "--channel", "@" + ch})
              .code == 0);
  }
  SECTION("malformed specs exit with 2") {
    for (const auto& [state, channel] :
         std::vector<std::pair<std::string, std::string>>{
             {"|2>", "identity"},
             {"rhoA:a=2", "identity"},
             {"rhoA:b=1", "identity"},
             {"bogus", "identity"},
             {"{not json", "identity"},
             {"|0>", "depolarize:p=x"},
             {"|0>", "warp"},
             {"|0>", "unitary:file=/nonexistent.json"},
             {"|00>", R"({"kind":"unitary","U":{"rows":2,"cols":2,"re":[1,0,0,1]}})"}}) {
      const Result r =
          run_cli({"simulate", "--state", state, "--channel", channel});
      CHECK(r.code == 2);
      CHECK_FALSE(r.err.empty());
    }
    CHECK(run_cli({"simulate", "--state", "|0>"}).code == 2);
  }
}

TEST_CASE("infer", "[cli][infer]") {
  const std::string example = simulate_to("example.json", "rhoA:a=0.5", "decohere");
  SECTION("decohering example is forward") {
    const Result r = run_cli({"infer", example, "--json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["verdict"] == "FORWARD");
    CHECK(j["arrow_measure"].get<double>() > 0.0);
    CHECK(j["entropy_delta"].is_null());
    for (const char* key : {"min_eig_fwd_T1", "min_eig_bwd_T1", "rank_rho",
                            "rank_gamma", "notes"}) {
      CHECK(j.contains(key));
    }
  }
  SECTION("swapped table is backward") {
    const std::string swapped = (scratch() / "swapped.json").string();
    REQUIRE(run_cli({"swap", example, "-o", swapped}).code == 0);
    const Json j = Json::parse(run_cli({"infer", swapped}).out);
    CHECK(j["verdict"] == "BACKWARD");
  }
  SECTION("identity on |0> is indeterminate") {
    const std::string eq23 = simulate_to("eq23.json", "|0>", "identity");
    const Json j = Json::parse(run_cli({"infer", eq23}).out);
    CHECK(j["verdict"] == "INDETERMINATE");
    CHECK(j["rank_rho"] == 1);
    CHECK(j["arrow_measure"].is_null());
  }
  SECTION("pretty output") {
    const Result r = run_cli({"infer", example, "--pretty"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FORWARD") != std::string::npos);
    CHECK(run_cli({"infer", example, "--pretty", "--json"}).code == 2);
  }
  SECTION("sampled tables default to a shot-based tolerance") {
    const std::string noisy = (scratch() / "noisy.json").string();
    REQUIRE(run_cli({"simulate", "--state", "rhoA:a=0.5", "--channel",
                     "decohere", "--shots", "10000", "--seed", "3", "-o",
                     noisy})
                .code == 0);
    const Json j = Json::parse(run_cli({"infer", noisy}).out);
    CHECK(j["psd_tol"].get<double>() == Catch::Approx(0.03));
    CHECK(j["verdict"] == "FORWARD");
    const Json strict =
        Json::parse(run_cli({"infer", noisy, "--psd-tol", "1e-3"}).out);
    CHECK(strict["psd_tol"].get<double>() == Catch::Approx(1e-3));
  }
  SECTION("input errors exit with 2, corrupt data with 3") {
    CHECK(run_cli({"infer", "/nonexistent/table.json"}).code == 2);
    CHECK(run_cli({"infer", write("garbage.json", "{ nope")}).code == 2);
    Json t = Json::parse(slurp(example));
    t["entries"].erase(5);
    const Result missing = run_cli({"infer", write("missing.json", t.dump())});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("missing") != std::string::npos);

    Json corrupt = Json::parse(slurp(simulate_to("c.json", "|0>", "identity")));
    for (auto& e : corrupt["entries"]) {
      if (e["a"] == "Z" && e["b"] == "X") e["value"] = 0.5;
    }
    CHECK(run_cli({"infer", write("corrupt.json", corrupt.dump())}).code == 3);
    CHECK(run_cli({"infer"}).code == 2);
  }
  SECTION("batch mode") {
    const fs::path dir = scratch() / "batch";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::copy_file(example, dir / "a.json");
    REQUIRE(run_cli({"swap", example, "-o", (dir / "b.json").string()}).code == 0);
    std::ofstream(dir / "c.json") << "[]";
    std::ofstream(dir / "ignored.txt") << "x";
    const Result r = run_cli({"infer", "--batch", dir.string()});
    CHECK(r.code == 2);
    std::istringstream lines(r.out);
    std::vector<Json> rows;
    for (std::string line; std::getline(lines, line);) rows.push_back(Json::parse(line));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["report"]["verdict"] == "FORWARD");
    CHECK(rows[1]["report"]["verdict"] == "BACKWARD");
    CHECK(rows[2]["exit_code"] == 2);
  }
}

TEST_CASE("extract", "[cli][extract]") {
  const std::string example = simulate_to("ex.json", "rhoA:a=0.5", "decohere");
  SECTION("forward with the Sylvester solver") {
    const Result r = run_cli({"extract", example, "--direction", "fwd",
                              "--method", "sylvester"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 1.0;
    CHECK((matrix_from_json(j["choi"]) - expected).norm() < 1e-12);
    CHECK(j["mode"] == "full");
  }
  SECTION("backward with the explicit inverse") {
    const Json j = Json::parse(run_cli({"extract", example, "--direction", "bwd",
                                        "--method", "inverse"})
                                   .out);
    Matrix expected(4, 4);
    expected << 1, 1.0 / 6, 0, 0, 1.0 / 6, 0, 0, 0, 0, 0, 0, 0.5, 0, 0, 0.5, 1;
    CHECK((matrix_from_json(j["choi"]) - expected).norm() < 1e-12);
    CHECK(j["min_eig_T1"].get<double>() ==
          Catch::Approx((1 - std::sqrt(2.0)) / 2));
  }
  SECTION("rank-deficient marginal") {
    const std::string eq23 = simulate_to("eq23x.json", "|0>", "identity");
    const Json j =
        Json::parse(run_cli({"extract", eq23, "--method", "pinv"}).out);
    CHECK(j["mode"] == "projected");
    const Result r = run_cli({"extract", eq23, "--method", "sylvester"});
    CHECK(r.code == 2);
    CHECK(r.err.find("pseudoinverse") != std::string::npos);
    CHECK(run_cli({"extract", eq23, "--method", "lu"}).code == 2);
  }
}

TEST_CASE("swap", "[cli][swap]") {
  const std::string t = simulate_to("sw.json", "rhoA:a=0.3", "depolarize:p=0.4");
  const std::string once = (scratch() / "once.json").string();
  const std::string twice = (scratch() / "twice.json").string();
  REQUIRE(run_cli({"swap", t, "-o", once}).code == 0);
  REQUIRE(run_cli({"swap", once, "-o", twice}).code == 0);
  CHECK(slurp(twice) == slurp(t));

  Json j = Json::parse(slurp(t));
  for (auto& e : j["entries"]) {
    if (e["a"] == "X" && e["b"] == "Z") e["value"] = 0.125;
    if (e["a"] == "Z" && e["b"] == "X") e["value"] = -0.25;
  }
  const Result r = run_cli({"swap", write("xz.json", j.dump())});
  const CorrelatorTable s = table_from_json(Json::parse(r.out));
  CHECK(s.value(PauliLabel::parse("Z"), PauliLabel::parse("X")) == 0.125);
  CHECK(s.value(PauliLabel::parse("X"), PauliLabel::parse("Z")) == -0.25);
  CHECK(run_cli({"swap", write("bad.json", "{}")}).code == 2);
}

TEST_CASE("pdm and recover", "[cli][recover]") {
  const std::string t = simulate_to("pd.json", "|0>", "identity");
  const Json p = Json::parse(run_cli({"pdm", t}).out);
  CHECK(p["negativity"].get<double>() == Catch::Approx(0.5));
  CHECK(p["orientation"] == "as-recorded");

  const Json dil = Json::parse(
      run_cli({"recover", "--state", "rhoA:a=0.5", "--channel", "decohere"}).out);
  CHECK(dil["method"] == "dilation");
  CHECK(dil["is_T1_psd"] == false);
  CHECK(dil["entropy_delta"].get<double>() > 0.0);

  const Json petz = Json::parse(run_cli({"recover", "--state", "rhoA:a=0.5",
                                         "--channel", "decohere", "--method",
                                         "petz"})
                                    .out);
  CHECK(petz["is_T1_psd"] == true);

  const std::string u =
      write("u2.json", matrix_to_json(oracle::random_unitary(2, 5)).dump());
  const Json uni = Json::parse(run_cli({"recover", "--state", "mixed",
                                        "--channel", "unitary:file=" + u,
                                        "--method", "unitary"})
                                   .out);
  CHECK(uni["is_T1_psd"] == true);
  CHECK(run_cli({"recover", "--state", "mixed", "--channel", "decohere",
                 "--method", "unitary"})
            .code == 2);
}

TEST_CASE("help and usage", "[cli]") {
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
}
