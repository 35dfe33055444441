#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "shellkit/cli.hpp"

using namespace shellkit;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path tmp_file(const std::string& name) {
  auto dir = fs::temp_directory_path() / "shellkit_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int run_cfg(const json& cfg, const fs::path& out) {
  std::ostringstream err;
  json c = cfg;
  c["output"] = {{"path", out.string()}, {"format", c.value("format_override", "csv")}};
  c.erase("format_override");
  int status = cli::run(c, err);
  INFO(err.str());
  return status;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("identities command on the unit sphere") {
  json cfg = {{"command", "identities"},
              {"surface", {{"kind", "sphere"}, {"radius", 1.0}}},
              {"grid", {{"n1", 9}, {"n2", 9}, {"domain", {0.1, 1.0, 0.1, 1.0}}}}};
  auto out = tmp_file("identities.csv");
  REQUIRE(run_cfg(cfg, out) == 0);
  auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 1 + 81);
  REQUIRE(rows[0].back() == "max_residual");
  for (std::size_t k = 1; k < rows.size(); ++k)
    REQUIRE(std::stod(rows[k].back()) <= 1e-11);
}

TEST_CASE("invariance command reports an all-pass stretch-invariant row") {
  json cfg = {{"command", "invariance"},
              {"surface", {{"kind", "sphere"}, {"radius", 1.0}}},
              {"grid", {{"n1", 3}, {"n2", 3}, {"domain", {0.2, 0.8, 0.2, 0.8}}}}};
  auto out = tmp_file("invariance.csv");
  REQUIRE(run_cfg(cfg, out) == 0);
  auto rows = parse_csv(slurp(out));
  REQUIRE(rows[0] == std::vector<std::string>{"kind", "case", "requirement", "residual", "pass"});
  bool saw_infinity = false, infinity_all_pass = true, koiter_failed_stretch = false;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k][0] == "InfinityFlat") {
      saw_infinity = true;
      infinity_all_pass = infinity_all_pass && rows[k][4] == "1";
    }
    if (rows[k][0] == "KoiterPulled" && rows[k][2] == "stretch_invariance" && rows[k][4] == "0")
      koiter_failed_stretch = true;
  }
  REQUIRE(saw_infinity);
  REQUIRE(infinity_all_pass);
  REQUIRE(koiter_failed_stretch);
}

TEST_CASE("validation errors name the failing field") {
  auto out = tmp_file("invalid.csv");
  std::ostringstream err;

  json bad_h = {{"command", "energy"},
                {"surface", {{"kind", "plane"}}},
                {"deformation", {{"kind", "plane"}}},
                {"variant", "Koiter"},
                {"material", {{"h", -0.5}}},
                {"output", {{"path", out.string()}}}};
  REQUIRE(cli::run(bad_h, err) == 1);
  REQUIRE(err.str().find("h") != std::string::npos);

  err.str("");
  json no_surface = {{"command", "identities"}};
  REQUIRE(cli::run(no_surface, err) == 1);
  REQUIRE(err.str().find("surface") != std::string::npos);

  err.str("");
  json bad_cmd = {{"command", "frobnicate"}};
  REQUIRE(cli::run(bad_cmd, err) == 1);
  REQUIRE(err.str().find("command") != std::string::npos);
}

TEST_CASE("numerical failures exit with status 2") {
  // constrained (non-modified) energy of a shearing deformation violates the
  // symmetry constraint and is rejected as infinite
  json cfg = {{"command", "energy"},
              {"surface",
               {{"kind", "graph"}, {"terms", {{2, 0, 0.3}, {0, 2, -0.2}, {1, 1, 0.25}}}}},
              {"deformation",
               {{"kind", "graph"}, {"terms", {{2, 0, -0.1}, {0, 2, 0.4}, {1, 1, 0.1}}}}},
              {"variant", "ConstrainedH5"},
              {"material", {{"h", 0.1}, {"mu_c", "inf"}}},
              {"grid", {{"n1", 3}, {"n2", 3}, {"domain", {-0.4, 0.4, -0.4, 0.4}}}},
              {"output", {{"path", tmp_file("inf_energy.csv").string()}}}};
  std::ostringstream err;
  REQUIRE(cli::run(cfg, err) == 2);
  REQUIRE(err.str().find("at point") != std::string::npos);
}

TEST_CASE("identical config and seed give byte-identical output") {
  json cfg = {{"command", "coercivity"},
              {"surface", {{"kind", "sphere"}, {"radius", 1.0}}},
              {"variant", "UnconstrainedH5"},
              {"material", {{"h", 0.5}, {"mu_c", 1.0}}},
              {"grid", {{"n1", 9}, {"n2", 9}, {"domain", {0.1, 1.0, 0.1, 1.0}}}},
              {"seed", 42}};
  auto out1 = tmp_file("coercivity1.csv"), out2 = tmp_file("coercivity2.csv");
  REQUIRE(run_cfg(cfg, out1) == 0);
  REQUIRE(run_cfg(cfg, out2) == 0);
  std::string a = slurp(out1), b = slurp(out2);
  REQUIRE(!a.empty());
  REQUIRE(a == b);
}

TEST_CASE("json reports embed the resolved config") {
  json cfg = {{"command", "energy"},
              {"surface", {{"kind", "cylinder"}, {"radius", 2.0}}},
              {"deformation", {{"kind", "cylinder"}, {"radius", 2.5}}},
              {"variant", "ModifiedConstrainedH5"},
              {"material", {{"h", 0.1}, {"mu_c", "inf"}}},
              {"grid", {{"n1", 3}, {"n2", 3}}},
              {"format_override", "json"}};
  auto out = tmp_file("energy.json");
  REQUIRE(run_cfg(cfg, out) == 0);
  json doc = json::parse(slurp(out));
  REQUIRE(doc.contains("config"));
  REQUIRE(doc["config"]["surface"]["radius"] == 2.0);
  REQUIRE(doc.contains("summary"));
  REQUIRE(doc["summary"]["integrated"]["total"].get<double>() > 0.0);
  REQUIRE(doc["rows"].size() == 9);
}

TEST_CASE("minimize command exports nodes and a summary") {
  json cfg = {{"command", "minimize"},
              {"surface", {{"kind", "plane"}}},
              {"variant", "ModifiedConstrainedPlate"},
              {"material", {{"h", 0.01}, {"mu_c", "inf"}}},
              {"grid", {{"n1", 5}, {"n2", 5}}},
              {"dirichlet",
               {{"edges", {"x1min", "x1max", "x2min", "x2max"}},
                {"target",
                 {{"kind", "radial_scale"}, {"base", {{"kind", "plane"}}}, {"factor", 1.01}}}}},
              {"optimizer", {{"max_iters", 50}, {"grad_tol", 1e-7}}},
              {"format_override", "json"}};
  auto out = tmp_file("minimize.json");
  REQUIRE(run_cfg(cfg, out) == 0);
  json doc = json::parse(slurp(out));
  REQUIRE(doc["rows"].size() == 25);
  REQUIRE(doc["summary"]["objective"].get<double>() > 0.0);
  REQUIRE(doc["summary"].contains("converged"));
}

#ifdef SHELLKIT_BIN
TEST_CASE("binary smoke test") {
  json cfg = {{"surface", {{"kind", "sphere"}, {"radius", 1.0}}},
              {"grid", {{"n1", 5}, {"n2", 5}, {"domain", {0.1, 1.0, 0.1, 1.0}}}}};
  auto cfg_path = tmp_file("bin_cfg.json");
  auto out = tmp_file("bin_out.csv");
  std::ofstream(cfg_path) << cfg.dump();
  std::string cmd = std::string(SHELLKIT_BIN) + " identities --config " + cfg_path.string() +
                    " --out " + out.string();
  REQUIRE(std::system(cmd.c_str()) == 0);
  auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 1 + 25);

  std::string bad = std::string(SHELLKIT_BIN) + " identities --config /nonexistent.json 2>/dev/null";
  int status = std::system(bad.c_str());
  REQUIRE(WIFEXITED(status));
  REQUIRE(WEXITSTATUS(status) == 1);
}
#endif
