#include "abssep/error.hpp"
#include "abssep/fixtures.hpp"
#include "abssep/report_json.hpp"
#include "doctest.h"

using namespace abssep;

TEST_CASE("reports survive a JSON round trip") {
  std::vector<Spectrum> spectra;
  for (const auto& f : worked_examples()) spectra.push_back(f.spectrum());
  for (int i = 0; i < 40; ++i) {
    const int m = 2 + i % 5;
    spectra.push_back(sample_spectrum(Dims(m, m + i % 2), 12, static_cast<std::uint64_t>(i)));
  }
  spectra.push_back(max_mixed(Dims(5, 6)));
  for (const auto& s : spectra) {
    const Report r = classify(s);
    const auto text = to_json(r).dump();
    CHECK(report_from_json(nlohmann::json::parse(text)) == r);
  }
}

TEST_CASE("report JSON uses the fixed field names") {
  const auto j = to_json(classify(worked_example("qutrit-abs-ppt").spectrum()));
  CHECK(j.at("dims").contains("m"));
  CHECK(j.at("dims").contains("swapped"));
  CHECK(j.at("verdict").at("kind") == "absolutely-ppt-exact");
  CHECK(j.at("verdict").at("by") == "exact_qutrit");
  CHECK(j.at("verdict").contains("witness"));
  for (const auto& c : j.at("criteria")) {
    CHECK(c.contains("name"));
    CHECK(c.contains("fired"));
    CHECK(c.contains("margin"));
  }
  for (const char* key :
       {"purity", "gurvits_ball", "jivulescu_sum3", "ratio_bound", "purity_lower", "purity_upper"})
    CHECK(j.at("diagnostics").contains(key));
}

TEST_CASE("malformed report JSON is rejected") {
  CHECK_THROWS_AS(report_from_json(nlohmann::json::parse(R"({"dims": {}})")), Error);
  auto j = to_json(classify(max_mixed(Dims(2, 2))));
  j["verdict"]["kind"] = "perhaps";
  CHECK_THROWS_AS(report_from_json(j), Error);
}
