#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "brauerkit/cli.hpp"

using namespace bk;
using nlohmann::json;

namespace {

const std::string kData = BK_TEST_DATA;

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "brauerkit");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

}  // namespace

TEST_CASE("blocks command") {
  Run r = run_cli({"blocks", "--group", data("s3.grp"), "--prime", "2"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  // same data as the library call
  auto lib = blocks(Group::named("S3"), Field::prime(2));
  REQUIRE(j["blocks"].size() == lib.size());
  std::multiset<std::size_t> got, want;
  for (const auto& b : j["blocks"]) got.insert(b["defect_order"].get<std::size_t>());
  for (const auto& b : lib) want.insert(b.defect.order());
  CHECK(got == want);
  CHECK(j["field"]["p"] == 2);
  CHECK(j["seed"] == 0);

  Run c4 = run_cli({"blocks", "--group", data("c4.grp"), "--prime", "2"});
  REQUIRE(c4.code == 0);
  json jc = json::parse(c4.out);
  REQUIRE(jc["blocks"].size() == 1);
  CHECK(jc["blocks"][0]["defect_order"] == 4);
  CHECK(jc["blocks"][0]["source_algebra_dim"] == 4);

  CHECK(run_cli({"blocks", "--group", data("missing.grp"), "--prime", "2"}).code == 2);
  CHECK(run_cli({"blocks", "--group", data("bad.grp"), "--prime", "2"}).code == 2);
  CHECK(run_cli({"blocks", "--group", data("s3.grp")}).code == 2);
  CHECK(run_cli({"blocks", "--group", data("s3.grp"), "--prime", "6"}).code == 2);
  CHECK(run_cli({"blocks", "--group", data("a4.grp"), "--prime", "2", "--max-order", "6"}).code == 3);
  CHECK(run_cli({"blocks", "--group", data("s3.grp"), "--prime", "2", "--field-poly", "1,0,1"}).code == 2);
  CHECK(run_cli({"blocks", "--bogus"}).code == 2);
  CHECK(run_cli({}).code == 2);
}

TEST_CASE("extension fields from the command line") {
  Run r = run_cli({"blocks", "--group", data("c5.grp"), "--prime", "2", "--degree", "4"});
  REQUIRE(r.code == 0);
  // x^5 - 1 splits over GF(16)
  CHECK(json::parse(r.out)["blocks"].size() == 5);
  Run p = run_cli({"blocks", "--group", data("c5.grp"), "--prime", "2", "--field-poly", "1,1,0,0,1"});
  REQUIRE(p.code == 0);
  CHECK(json::parse(p.out)["field"]["n"] == 4);
}

TEST_CASE("vertex command") {
  Run t = run_cli({"vertex", "--group", data("s3.grp"), "--module", data("s3_trivial_p2.mod")});
  REQUIRE(t.code == 0);
  json j = json::parse(t.out);
  CHECK(j["vertex_order"] == 2);
  CHECK(j["sources"].size() == 1);
  CHECK(j["sources"][0]["endopermutation"] == true);

  Run f = run_cli({"vertex", "--group", data("c2.grp"), "--module", data("c2_free.mod")});
  REQUIRE(f.code == 0);
  CHECK(json::parse(f.out)["vertex_order"] == 1);

  Run d = run_cli({"vertex", "--group", data("c2.grp"), "--module", data("c2_trivial_sum.mod")});
  CHECK(d.code == 4);
  json jd = json::parse(d.out);
  REQUIRE(jd["summands"].size() == 1);
  CHECK(jd["summands"][0]["multiplicity"] == 2);

  Run j2 = run_cli({"vertex", "--group", data("c5.grp"), "--module", data("c5_j2.mod")});
  REQUIRE(j2.code == 0);
  CHECK(json::parse(j2.out)["sources"][0]["endopermutation"] == false);

  CHECK(run_cli({"vertex", "--group", data("c2.grp")}).code == 2);
  CHECK(run_cli({"vertex", "--group", data("c2.grp"), "--module", data("c5_j2.mod")}).code == 2);
  CHECK(run_cli({"vertex", "--group", data("c2.grp"), "--module", data("c2_free.mod"), "--max-dim", "1"}).code == 3);
  CHECK(run_cli({"vertex", "--group", data("c2.grp"), "--module", data("c2_free.mod"), "--prime", "3"}).code == 2);
}

TEST_CASE("verify command and report schema") {
  Run r = run_cli({"verify", "--suite", "lemma3-summands"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["suite"] == "lemma3-summands");
  CHECK(j["pass"] == true);
  REQUIRE(!j["instances"].empty());
  for (const auto& inst : j["instances"]) {
    CHECK(inst.contains("input_refs"));
    REQUIRE(inst.contains("checks"));
    for (const auto& c : inst["checks"]) {
      CHECK(c["name"].is_string());
      CHECK(c["pass"].is_boolean());
    }
  }
  CHECK(run_cli({"verify", "--suite", "nosuch"}).code == 2);
  CHECK(run_cli({"verify"}).code == 2);
  CHECK(run_cli({"verify", "--suite", "section5", "--module", data("c2_free.mod")}).code == 2);
}

TEST_CASE("user instances join the built-in set") {
  Run base = run_cli({"verify", "--suite", "lemma2-basis"});
  Run more = run_cli({"verify", "--suite", "lemma2-basis", "--group", data("c5.grp"), "--prime", "5"});
  REQUIRE(base.code == 0);
  REQUIRE(more.code == 0);
  json a = json::parse(base.out), b = json::parse(more.out);
  // C5 at p = 5 has two p-subgroup classes
  CHECK(b["instances"].size() == a["instances"].size() + 2);
  CHECK(b["field"]["p"] == 5);

  Run defect = run_cli({"verify", "--suite", "prop3-defect", "--group", data("s3.grp"), "--prime", "3"});
  CHECK(defect.code == 0);
  // a user module that is not over a p-group violates the harness precondition
  CHECK(run_cli({"verify", "--suite", "section5", "--group", data("s3.grp"), "--prime", "2", "--module",
                 data("s3_trivial_p2.mod")})
            .code == 4);
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  Run a = run_cli({"verify", "--suite", "prop2-points", "--seed", "7"});
  Run b = run_cli({"verify", "--suite", "prop2-points", "--seed", "7"});
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["seed"] == 7);
  SuiteReport one = run_suite("lemma4-galois", {}, 3, 1);
  SuiteReport four = run_suite("lemma4-galois", {}, 3, 4);
  CHECK(to_json(one).dump() == to_json(four).dump());
  Run v1 = run_cli({"vertex", "--group", data("s3.grp"), "--module", data("s3_trivial_p2.mod"), "--seed", "11"});
  Run v2 = run_cli({"vertex", "--group", data("s3.grp"), "--module", data("s3_trivial_p2.mod"), "--seed", "11"});
  CHECK(v1.out == v2.out);
}

TEST_CASE("pretty output and the out file") {
  Run p = run_cli({"blocks", "--group", data("c4.grp"), "--prime", "2", "--pretty"});
  REQUIRE(p.code == 0);
  CHECK(p.out.find("defect") != std::string::npos);
  CHECK_FALSE(json::accept(p.out));

  std::string path = "cli_test_out.json";
  Run o = run_cli({"blocks", "--group", data("c4.grp"), "--prime", "2", "--out", path});
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  CHECK(json::parse(s.str())["blocks"].size() == 1);
  std::remove(path.c_str());
}

TEST_CASE("worker count from the environment") {
  setenv("BRAUERKIT_THREADS", "1", 1);
  CHECK(cli::worker_count() == 1);
  setenv("BRAUERKIT_THREADS", "zero", 1);
  CHECK_THROWS_AS(cli::worker_count(), InputError);
  CHECK(run_cli({"verify", "--suite", "lemma3-summands"}).code == 2);
  unsetenv("BRAUERKIT_THREADS");
  CHECK(cli::worker_count() >= 1);
}

TEST_CASE("field selection") {
  cli::RunConfig cfg;
  CHECK_THROWS_AS(cli::select_field(cfg), InputError);
  cfg.prime = 3;
  CHECK(cli::select_field(cfg) == Field::prime(3));
  cfg.degree = 2;
  CHECK(cli::select_field(cfg).q() == 9);
  cfg.degree = 0;
  CHECK_THROWS_AS(cli::select_field(cfg), InputError);
  cfg.field_poly = "2,2,1";
  CHECK(cli::select_field(cfg).q() == 9);
}
