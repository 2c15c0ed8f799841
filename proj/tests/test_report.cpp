#include "qcc/report.hpp"

#include <doctest.h>

using namespace qcc;

namespace {

RunConfig config(const std::string& cmd, const std::string& target, int a, int b) {
  RunConfig c;
  c.command = cmd;
  c.target = target;
  c.n_first = a;
  c.n_last = b;
  return c;
}

const Json* find_check(const Json& j, const std::string& id) {
  for (const auto& c : j["checks"])
    if (c["id"] == id) return &c;
  return nullptr;
}

}  // namespace

TEST_SUITE("cli_reporting") {
  TEST_CASE("analyze n = 1 report") {
    const Report r = run(config("analyze", "", 1, 1));
    CHECK(r.passed());
    const Json j = r.to_json();
    CHECK(j["schema"] == "qc-cartan/1");
    CHECK(j["status"] == "pass");
    const Json* c = find_check(j, "n=1/cartan_test");
    REQUIRE(c != nullptr);
    CHECK((*c)["witness"]["D_closed"] == 112);
    CHECK((*c)["witness"]["D_nullity"] == 112);
    CHECK((*c)["witness"]["v"] == Json::parse("[0,10,12,9,4]"));
    CHECK((*c)["witness"]["involutive"] == true);
    CHECK_FALSE((*c).contains("elapsed_ms"));
  }

  TEST_CASE("reports are deterministic and ordered") {
    RunConfig c = config("verify", "circulant", 1, 12);
    c.jobs = 4;
    const std::string a = run(c).to_json().dump();
    const std::string b = run(c).to_json().dump();
    CHECK(a == b);
    const Json j = Json::parse(a);
    CHECK(j["checks"].front()["id"] == "n=1/circulant.nondegeneracy");
    CHECK(j["checks"].back()["id"] == "n=12/circulant.det3");
    CHECK(find_check(j, "n=2/circulant.det3")->at("status") == "skipped");
    CHECK(find_check(j, "n=1/circulant.nondegeneracy")->at("witness")["det_product"] == "3");
  }

  TEST_CASE("verify targets pass") {
    for (const char* t : {"counts", "dsquared", "shift", "bianchi"}) {
      INFO(t);
      RunConfig c = config("verify", t, 1, 1);
      c.seed = 42;
      CHECK(run(c).passed());
    }
    const Report d = run(config("verify", "dsquared", 1, 1));
    CHECK(find_check(d.to_json(), "n=1/dsquared")->at("witness")["nonzero_residuals"] == 0);
    CHECK_THROWS_AS(run(config("verify", "nope", 1, 1)), std::invalid_argument);
  }

  TEST_CASE("failed record fails the report and text output") {
    Report r;
    r.config = config("verify", "counts", 1, 1);
    r.checks.push_back({"a", "x", Status::pass, Json::object(), 0});
    CHECK(r.passed());
    r.checks.push_back({"b", "y", Status::fail, Json::object(), 0});
    CHECK_FALSE(r.passed());
    CHECK(r.to_json()["status"] == "fail");
    CHECK(r.to_text().find("overall: fail") != std::string::npos);
    r.checks.back().status = Status::skipped;
    CHECK(r.passed());
  }
}
