#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>
#include <string>

#include "json.hpp"
#include "modspace/report.hpp"
#include "modspace/weight_class.hpp"

using nlohmann::json;
using namespace modspace;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("envelope carries schema, command and timestamp") {
  const json env = report_envelope("norm");
  CHECK(env.at("schema_version").get<int>() == kSchemaVersion);
  CHECK(env.at("command").get<std::string>() == "norm");
  const std::string stamp =
      env.at("generated").at("timestamp").get<std::string>();
  const std::regex iso(R"(^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z$)");
  CHECK(std::regex_match(stamp, iso));
  CHECK(!env.at("generated").at("tool").get<std::string>().empty());
}

TEST_CASE("non-finite numbers serialize as strings") {
  json raw{
      {"ok", 1.5},
      {"bad", std::numeric_limits<double>::quiet_NaN()},
      {"hi", std::numeric_limits<double>::infinity()},
      {"lo", -std::numeric_limits<double>::infinity()},
      {"nested", json::array({1.0, std::numeric_limits<double>::infinity()})},
  };
  const json clean = sanitize_json(raw);
  CHECK(clean.at("ok").get<double>() == 1.5);
  CHECK(clean.at("bad").get<std::string>() == "nan");
  CHECK(clean.at("hi").get<std::string>() == "inf");
  CHECK(clean.at("lo").get<std::string>() == "-inf");
  CHECK(clean.at("nested")[1].get<std::string>() == "inf");
  // The serialized form is valid standard JSON.
  CHECK_NOTHROW(json::parse(clean.dump()));
}

TEST_CASE("json reports land atomically and parse back") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "modspace_report_json";
  fs::create_directories(dir);
  const fs::path path = dir / "out.json";

  json doc = report_envelope("constants");
  doc["report"] = {{"value", 2.25},
                   {"tail", std::numeric_limits<double>::infinity()}};
  write_json_report(path, doc);

  CHECK(fs::exists(path));
  CHECK(!fs::exists(path.string() + ".tmp"));
  const std::string text = slurp(path);
  CHECK(!text.empty());
  CHECK(text.back() == '\n');
  const json back = json::parse(text);
  CHECK(back.at("report").at("value").get<double>() == 2.25);
  CHECK(back.at("report").at("tail").get<std::string>() == "inf");
  fs::remove_all(dir);
}

TEST_CASE("csv reports round-trip full precision") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "modspace_report_csv";
  fs::create_directories(dir);
  const fs::path path = dir / "out.csv";

  const double awkward = 0.1 + 1.0 / 3.0;
  write_csv_report(path, {"p", "value"},
                   {{1.0, awkward}, {2.0, 1e-300}, {3.0, -7.25}});

  std::ifstream in(path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "p,value");
  REQUIRE(std::getline(in, line));
  const auto comma = line.find(',');
  REQUIRE(comma != std::string::npos);
  CHECK(std::stod(line.substr(0, comma)) == 1.0);
  CHECK(std::stod(line.substr(comma + 1)) == awkward);  // bit-exact text form
  REQUIRE(std::getline(in, line));
  CHECK(std::stod(line.substr(line.find(',') + 1)) == 1e-300);

  CHECK_THROWS(write_csv_report(path, {"a", "b"}, {{1.0}}));
  fs::remove_all(dir);
}

TEST_CASE("domain types serialize with their field names") {
  DoublingResult dr;
  dr.found = true;
  dr.D = 3.84;
  const json jd = dr;
  CHECK(jd.at("found").get<bool>());
  CHECK(jd.at("D").get<double>() == 3.84);

  ConditionResult cond;
  cond.verdict = Verdict::pass;
  cond.witness = 2.5;
  cond.note = "checked";
  const json jc = cond;
  CHECK(jc.at("verdict").get<std::string>() == "pass");
  CHECK(jc.at("witness").get<double>() == 2.5);

  ClassReport rep;
  rep.verdicts["A1"] = cond;
  rep.subclass = "W1";
  const json jr = rep;
  CHECK(jr.at("verdicts").at("A1").at("verdict").get<std::string>() ==
        "pass");
  CHECK(jr.at("subclass").get<std::string>() == "W1");
}
