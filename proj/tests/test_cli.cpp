#include <catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include <json.hpp>

#include "dosc/cli/config.hpp"
#include "dosc/cli/scenarios.hpp"

using namespace dosc;
using namespace dosc::cli;

namespace {

ScenarioConfig from_text(const std::string& text) {
  ScenarioConfig c;
  std::istringstream in(text);
  parse_config(c, in);
  resolve(c);
  return c;
}

std::string render(const Table& t, Format f = Format::csv) {
  std::ostringstream out;
  write_table(t, out, f);
  return out.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = from_text("# comment\nN = 4\n r=0.25 \nrepresentation = fw\ntimes = 0, 2.5\nkinds = total,c3\n");
  CHECK(c.sim.n_mean == 4.0);
  CHECK(c.sim.r == 0.25);
  CHECK(c.sim.representation == Representation::foldy_wouthuysen);
  CHECK(c.times == std::vector<double>{0.0, 2.5});
  REQUIRE(c.kinds.size() == 2);
  CHECK(c.kinds[1] == DensityKind::row(3));

  CHECK_THROWS_AS(from_text("bogus = 1\n"), usage_error);
  CHECK_THROWS_AS(from_text("N = abc\n"), usage_error);
  CHECK_THROWS_AS(from_text("just words\n"), usage_error);
  CHECK_THROWS_AS(from_text("r = -1\n"), usage_error);
  CHECK_THROWS_AS(from_text("kinds = c9\n"), usage_error);
}

TEST_CASE("Bloch angles set the spin") {
  const auto c = from_text("spin_theta = 0\n");
  CHECK(std::abs(c.sim.alpha - 1.0) < 1e-15);
  CHECK(std::abs(c.sim.beta) < 1e-15);
}

TEST_CASE("spins output is reproducible from its own header") {
  const auto c = from_text("N = 4\nr = 0.3\nalpha_re = 0.6\nbeta_im = 0.8\nbeta_re = 0\nt_end = 3\nt_steps = 7\n");
  const std::string first = render(run_spins(c));
  CHECK(first == render(run_spins(c)));
  CHECK(first.rfind("# dosc spins\n", 0) == 0);
  const auto again = from_text(first);
  CHECK(render(run_spins(again)) == first);
}

TEST_CASE("json output") {
  const auto c = from_text("N = 4\nt_steps = 3\n");
  const auto j = nlohmann::json::parse(render(run_spins(c), Format::json));
  CHECK(j["scenario"] == "spins");
  CHECK(j["columns"].size() == 10);
  CHECK(j["rows"].size() == 3);
  CHECK(j["config"]["N"] == "4");
}

TEST_CASE("scenario contracts") {
  auto c = from_text("N = 4\nrepresentation = fw\nkinds = negative\n");
  CHECK_THROWS_AS(run_density(c), usage_error);
  c = from_text("N = 20\nbasis_cap = 5\n");
  CHECK_THROWS_AS(run_oracle_check(c), truncation_error);
}

TEST_CASE("oracle check passes on a small packet") {
  const auto rep = run_oracle_check(from_text("N = 4\nr = 0.5\ntimes = 1,5,10\n"));
  CHECK(rep.passed());
  CHECK(rep.max_deviation < 1e-10);
  CHECK(rep.table.rows.size() == 3);
}

TEST_CASE("decompose and compare columns") {
  const auto c = from_text("N = 4\ntimes = 0, 1\nphi_points = 8\n");
  const auto d = run_decompose(c);
  CHECK(d.columns.size() == 9);
  CHECK(d.rows.size() == 16);
  for (const auto& row : d.rows) CHECK(std::abs(row[2] - (row[3] + row[4] + row[5] + row[6])) < 1e-14);
  const auto cmp = run_compare_representations(c);
  CHECK(cmp.columns.size() == 14);
  const auto dens = run_density(c);
  CHECK(dens.size() == 2);
  CHECK(dens[0].first == "t0_total");
}
