#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "polycm/cli.hpp"
#include "polycm/report.hpp"

using polycm::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "polycm");
  std::ostringstream out;
  std::ostringstream err;
  const int code = polycm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  const Run r = run(std::move(args));
  return Json::parse(r.out);
}

}  // namespace

TEST_CASE("classify 6x6 reproduces the classification") {
  const Run r = run({"classify", "--m-max", "6", "--n-max", "6"});
  CHECK(r.code == 0);
  const Json doc = Json::parse(r.out);
  REQUIRE(doc["entries"].size() == 36);
  int nontrivial = 0;
  for (const Json& e : doc["entries"]) {
    CHECK(e["matches_rule"] == true);
    if (e["verdict"] == "CM_nontrivial") {
      ++nontrivial;
      CHECK(e["m"] == 1);
      CHECK(e["n"] == 2);
    }
  }
  CHECK(nontrivial == 1);
  CHECK(doc["findings"].empty());
  CHECK(doc["config"]["m_max"] == 6);
}

TEST_CASE("classify small matrices") {
  const Json one = run_json({"classify", "--m-max", "1", "--n-max", "1"});
  REQUIRE(one["entries"].size() == 1);
  CHECK(one["entries"][0]["verdict"] == "CM_trivial");

  const Json two = run_json({"classify", "--m-max", "2", "--n-max", "2"});
  const Json& e22 = two["entries"][3];
  CHECK(e22["m"] == 2);
  CHECK(e22["n"] == 2);
  CHECK(e22["verdict"] == "sign_changing_nonmonotonic");
  CHECK(e22["sign_change"]["certified"] == true);
  CHECK(e22["non_monotonic"]["certified"] == true);
  CHECK(e22["sign_change"]["f_pos"].contains("abs_error"));
}

TEST_CASE("classify output is deterministic") {
  const std::vector<std::string> args = {"classify", "--m-max", "3", "--n-max", "4"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("json round-trips") {
  const std::string out = run({"check-cm", "--grid-count", "20", "--orders", "3"}).out;
  CHECK(Json::parse(out).dump(2) + "\n" == out);
}

TEST_CASE("check-cm") {
  const Run r = run({"check-cm"});
  CHECK(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["summary"]["verdict"] == "consistent_with_CM");
  CHECK(doc["entries"].size() == 9 * 200);
  CHECK(doc["entries"][0]["signed_value"].contains("abs_error"));

  const Run bad = run({"check-cm", "--m", "2", "--n", "2", "--orders", "0"});
  CHECK(bad.code == 1);
  CHECK_FALSE(Json::parse(bad.out)["findings"].empty());
}

TEST_CASE("kernels") {
  const Run r = run({"kernels", "--kernel", "omega"});
  CHECK(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["summary"]["monotonicity"] == "increasing");
  CHECK(doc["entries"].size() == 64);
  for (int k = -3; k <= 2; ++k) {
    CHECK(run({"kernels", "--kernel", "h", "--k", std::to_string(k)}).code == 0);
  }
}

TEST_CASE("inequalities") {
  const Run r = run({"inequalities"});
  CHECK(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["summary"]["failures"] == 0);
  CHECK(doc["entries"].size() == 900);
}

TEST_CASE("bounds") {
  const Run r = run({"bounds", "--m", "1", "--n", "1"});
  CHECK(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["summary"]["derived_violations"] == 0);
  REQUIRE_FALSE(doc["findings"].empty());
  CHECK(doc["findings"][0]["variant"] == "q_printed");
  CHECK(run({"bounds", "--grid-count", "20"}).code == 0);
}

TEST_CASE("csv output") {
  const Run r = run({"check-cm", "--grid-count", "5", "--orders", "1", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("m,n,order,x,signed_value,abs_error,status\r\n", 0) == 0);
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = r.out.find("\r\n", pos)) != std::string::npos; pos += 2) ++lines;
  CHECK(lines == 1 + 2 * 5);

  CHECK(polycm::CsvWriter::escape("plain") == "plain");
  CHECK(polycm::CsvWriter::escape("a,b") == "\"a,b\"");
  CHECK(polycm::CsvWriter::escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  polycm::CsvWriter w({"a", "b"});
  CHECK_THROWS(w.row({"only one"}));
}

TEST_CASE("text output") {
  const Run r = run({"classify", "--m-max", "1", "--n-max", "2", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out.find("CM_nontrivial") != std::string::npos);
}

TEST_CASE("--out writes the report to a file") {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "polycm_cli_test.json";
  std::filesystem::remove(path);
  const Run r = run({"kernels", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const Json doc = Json::parse(in);
  CHECK(doc["config"]["command"] == "kernels");
  std::filesystem::remove(path);

  CHECK(run({"kernels", "--out", "/nonexistent-dir/x.json"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"classify", "--m-max", "0"}).code == 2);
  CHECK(run({"classify", "--grid-scale", "cubic"}).code == 2);
  CHECK(run({"classify", "--format", "xml"}).code == 2);
  CHECK(run({"kernels", "--kernel", "sinc"}).code == 2);
  CHECK(run({"check-cm", "--grid-min", "-1"}).code == 2);
  CHECK(run({"check-cm", "--grid-count", "1"}).code == 2);
  CHECK(run({"check-cm", "--precision", "0"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("numeric capability errors exit 3") {
  const Run r = run({"check-cm", "--orders", "70"});
  CHECK(r.code == 3);
  CHECK(r.err.find("numeric error") != std::string::npos);
}
