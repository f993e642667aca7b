//------------------------------------------------------------------------------
//
//   Copyright 2026 The myfdiv Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#include "myfdiv/io.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <sys/wait.h>

using namespace myfdiv;

namespace {

struct Run
{
  int code = -1;
  std::string out;
};

Run run(const std::string& args)
{
  const std::string cmd = std::string(MYFDIV_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const char* name)
{
  return std::string(MYFDIV_DATA) + "/" + name;
}

}  // namespace

TEST_CASE("divergence command")
{
  const Run r = run("divergence --phi kl --mu " + data("mu.json") + " --nu " + data("nu.json"));
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.contains("exact"));
  CHECK(j.contains("estimate"));
  CHECK(j.contains("gap"));
  CHECK(std::abs(j["gap"].get<double>()) <= 1e-9);

  const Run same = run("divergence --phi chi2 --mu " + data("mu.json") + " --nu " + data("mu.json"));
  REQUIRE(same.code == 0);
  const Json s = Json::parse(same.out);
  CHECK(s["exact"].get<double>() == 0.0);
  CHECK(std::abs(s["estimate"].get<double>()) <= 1e-6);
}

TEST_CASE("unknown generator is an input error")
{
  const std::string cmd = std::string(MYFDIV_CLI) + " divergence --phi unknown --mu " + data("mu.json") + " --nu " +
                          data("nu.json") + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(out.find("reverse_chi2") != std::string::npos);
}

TEST_CASE("conjugate command")
{
  Run r = run("conjugate --phi kl --f 0,0 --nu-weights 0.5,0.5");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["gamma"].get<double>() == 0.0);
  CHECK(j["value"].get<double>() == 0.0);
  CHECK(j["grad"][0].get<double>() == 0.5);
  CHECK(j["grad"][1].get<double>() == 0.5);
  CHECK(j["closed_form_diff"].get<double>() <= 1e-10);

  r = run("conjugate --phi kl --f 1,2 --nu-weights 0.3,0.7");
  j = Json::parse(r.out);
  CHECK(j["closed_form_diff"].get<double>() <= 1e-10);

  r = run("conjugate --phi total_variation --f 0.2,-0.5 --nu-weights 0.5,0.5");
  j = Json::parse(r.out);
  CHECK(j["solver"] == "closed-form");
  CHECK(j["gamma"].get<double>() == doctest::Approx(-0.8));

  r = run("conjugate --phi jeffreys --f 0.1,-0.3,0.7 --nu " + data("nu3.json"));
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["solver"] == "newton");

  CHECK(run("conjugate --phi kl --f 0,0 --nu-weights 0.5,0.6").code == 2);
}

TEST_CASE("my command")
{
  Run r = run("my --phi trivial --alpha 2 --lambda 1 --mu " + data("mu.json") + " --nu " + data("nu.json"));
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  const double w = j["w1"].get<double>();
  CHECK(j["primal"]["value"].get<double>() == doctest::Approx(w * w).epsilon(1e-2));
  CHECK(j["dual"]["value"].get<double>() == doctest::Approx(w * w).epsilon(1e-2));
  CHECK(j["structure"]["passed"] == true);

  r = run("my --phi kl --alpha 1 --lambda 1 --mu " + data("mu.json") + " --nu " + data("mu.json"));
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["primal"]["value"].get<double>() == 0.0);
  CHECK(j["dual"]["value"].get<double>() == 0.0);

  CHECK(run("my --phi kl --alpha inf --lambda 1 --mu " + data("mu.json") + " --nu " + data("nu.json")).code == 2);
  r = run("my --phi trivial --alpha inf --beta 100 --mu " + data("mu.json") + " --nu " + data("nu.json"));
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["dual"]["value"].get<double>() == 0.0);
  r = run("my --phi trivial --alpha inf --beta 1e-6 --mu " + data("mu.json") + " --nu " + data("nu.json"));
  CHECK(Json::parse(r.out)["dual"]["value"] == "inf");

  r = run("my --phi chi2 --alpha 2 --lambda 0.5 --format csv --mu " + data("mu.json") + " --nu " + data("nu.json"));
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("generator,alpha,lambda", 0) == 0);
}

TEST_CASE("gaussian command writes plot data")
{
  const Run r = run("gaussian --phi kl --grid-n 64 --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("x,f_learned,f_closed", 0) == 0);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 65);
  CHECK(run("gaussian --phi total_variation").code == 2);
}

TEST_CASE("output is deterministic")
{
  const std::string args = "my --phi jensen_shannon --alpha 2 --lambda 0.5 --seed 3 --mu " + data("mu.json") +
                           " --nu " + data("nu.json");
  CHECK(run(args).out == run(args).out);
  const std::string div = "divergence --phi jeffreys --mu " + data("mu.json") + " --nu " + data("nu.json");
  CHECK(run(div).out == run(div).out);
}

TEST_CASE("selftest filtering and fault injection")
{
  Run r = run("selftest --filter lambert");
  CHECK(r.code == 0);
  CHECK(r.out.find("[PASS] 10 lambert") != std::string::npos);

  r = run("selftest --filter gaussian --format json");
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["criteria"].size() == 1);
  CHECK(j["criteria"][0]["name"] == "gaussian");

  r = run("selftest --filter categorical --inject kl");
  CHECK(r.code != 0);
  CHECK(r.out.find("[FAIL] 1 categorical") != std::string::npos);

  CHECK(run("selftest --filter nothing").code == 2);
}

TEST_CASE("usage errors")
{
  CHECK(run("").code == 2);
  CHECK(run("divergence --phi kl").code == 2);
  CHECK(run("divergence --phi kl --mu /nonexistent.json --nu /nonexistent.json").code == 2);
  CHECK(run("--help").code == 0);
}
