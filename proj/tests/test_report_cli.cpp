#include "ncurv/cli.hpp"
#include "ncurv/report.hpp"
#include "ncurv/vf_calculus.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ncurv;

namespace {

struct Golden {
  const char* file;
  JobSpec job;
  int exit_code;
};

JobSpec job(Command c) {
  JobSpec j;
  j.command = c;
  return j;
}

std::vector<Golden> goldens() {
  std::vector<Golden> g;
  JobSpec symbol = job(Command::symbol);
  symbol.pfaff = "dx4 - x3*dx1; dx3 - x2*dx1";
  g.push_back({"symbol_engel.txt", symbol, kExitOk});
  JobSpec martinet = job(Command::symbol);
  martinet.pfaff = "dx3 - x2^2*dx1";
  martinet.points = "(0,1,0);(0,0,0)";
  g.push_back({"symbol_martinet.txt", martinet, kExitCheckFailed});
  JobSpec prolong = job(Command::prolong);
  prolong.builtin = "heisenberg:1";
  prolong.cap = 3;
  g.push_back({"prolong_heis1.txt", prolong, kExitOk});
  JobSpec coh = job(Command::cohomology);
  coh.builtin = "abelian:3";
  coh.g0 = "o";
  g.push_back({"cohomology_abelian3_o.txt", coh, kExitOk});
  JobSpec flat = job(Command::flat_check);
  flat.pfaff = "dx1 + x2*dx3 - x3*dx2";
  g.push_back({"flat_check_contact.txt", flat, kExitOk});
  g.push_back({"verify_engel.txt", job(Command::verify_engel), kExitCheckFailed});
  g.push_back({"verify_contact_r1.txt", job(Command::verify_contact), kExitOk});
  return g;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("algebra JSON round-trip") {
  for (const char* name : {"abelian:3", "heisenberg:2", "engel"}) {
    const GradedLieAlgebra g = builtin(name);
    const Json j = algebra_to_json(g);
    const GradedLieAlgebra back = algebra_from_json(Json::parse(j.dump()));
    CHECK(back.structure_constants() == g.structure_constants());
    CHECK(back.dim() == g.dim());
    CHECK(algebra_to_json(back) == j);
  }
  const Json engel = algebra_to_json(engel_symbol());
  CHECK(engel.dump() ==
        R"j({"schema":"ncurv.algebra/1","basis":[{"label":"y1","degree":-1},{"label":"y2","degree":-1},)j"
        R"j({"label":"y3","degree":-2},{"label":"y4","degree":-3}],"brackets":[{"i":0,"j":1,"value":["0","0","1","0"]},)j"
        R"j({"i":0,"j":2,"value":["0","0","0","1"]}]})j");
}

TEST_CASE("algebra JSON errors") {
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"j({"basis":[{"label":"a","degree":-1}],"brackets":[{"i":0,"j":3,"value":["1"]}]})j")),
                  std::invalid_argument);
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"j({"schema":"ncurv.tower/1","basis":[]})j")), std::invalid_argument);
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"j({"brackets":[]})j")), std::invalid_argument);
  CHECK_THROWS_AS(vector_from_json(Json::parse(R"(["1/0"])"), 1), std::invalid_argument);
  CHECK_THROWS_AS(vector_from_json(Json::parse(R"([0.5])"), 1), std::invalid_argument);
  // Brackets with i > j are folded with a sign.
  const GradedLieAlgebra h = algebra_from_json(Json::parse(
      R"j({"basis":[{"label":"p","degree":-1},{"label":"q","degree":-1},{"label":"z","degree":-2}],)j"
      R"j("brackets":[{"i":1,"j":0,"value":["0","0","-1"]}]})j"));
  CHECK(h.structure_constants() == heisenberg(1).structure_constants());
}

TEST_CASE("distribution job JSON") {
  const DistributionInput in = distribution_input_from_json(
      Json::parse(R"j({"schema":"ncurv.distribution/1","pfaff":"dx4 - x3*dx1; dx3 - x2*dx1","points":["(0,0,0,0);(1,1,1,1)"]})j"));
  CHECK(in.points.size() == 2);
  CHECK(distribution_input_to_json(in).dump() ==
        R"j({"schema":"ncurv.distribution/1","pfaff":"dx4 - x3*dx1; dx3 - x2*dx1","points":["(0,0,0,0)","(1,1,1,1)"]})j");
  CHECK(make_distribution(in).rank() == 2);
  CHECK_THROWS_AS(distribution_input_from_json(Json::parse(R"j({"pfaff":"dx1","fields":["d2"]})j")), std::invalid_argument);
  CHECK_THROWS_AS(distribution_input_from_json(Json::parse(R"j({})j")), std::invalid_argument);
  DistributionInput f;
  f.fields = {"d1", "x1*d3"};
  CHECK(make_distribution(f).n_vars() == 3);
}

TEST_CASE("text tables") {
  CHECK(format_columns({{"a", "1", "10"}, {"bbb", "22", "3"}}) == "a     1  10\nbbb  22   3\n");
  CHECK(algebra_table(heisenberg(1)) == "degree -2: z\ndegree -1: p1 q1\n[p1, q1] = z\n");
}

TEST_CASE("order ranges") {
  CHECK(parse_orders("-1..6") == std::pair{-1, 6});
  CHECK_THROWS_AS(parse_orders("3..1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_orders("1-3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_orders("1..x"), std::invalid_argument);
  CHECK(parse_command("flat-check") == Command::flat_check);
  CHECK_FALSE(parse_command("integrate").has_value());
}

TEST_CASE("golden reports") {
  for (const auto& g : goldens()) {
    CAPTURE(g.file);
    std::ostringstream out, err;
    const int rc = run(g.job, out, err);
    CHECK(rc == g.exit_code);
    CHECK(out.str() == slurp(std::filesystem::path(NCURV_GOLDEN_DIR) / g.file));
  }
}

TEST_CASE("reports are byte-stable across runs and schedules") {
  JobSpec j = job(Command::cohomology);
  j.builtin = "engel";
  j.orders = std::pair{-1, 4};
  std::ostringstream a, b, c, e;
  run(j, a, e);
  run(j, b, e);
  j.parallel = false;
  run(j, c, e);
  CHECK(a.str() == b.str());
  CHECK(a.str() == c.str());
}

TEST_CASE("JSON outputs") {
  const auto dir = std::filesystem::temp_directory_path();
  JobSpec j = job(Command::prolong);
  j.builtin = "engel";
  j.cap = 2;
  j.json_path = (dir / "ncurv_test_tower.json").string();
  std::ostringstream out, err;
  REQUIRE(run(j, out, err) == kExitOk);
  const Json t = Json::parse(slurp(j.json_path));
  CHECK(t["schema"] == kTowerSchema);
  CHECK(t["components"].size() == 6);
  CHECK(t["jacobi"]["ok"] == true);
  std::remove(j.json_path.c_str());

  JobSpec a = job(Command::cohomology);
  a.input_path = (dir / "ncurv_test_algebra.json").string();
  {
    std::ofstream f(a.input_path);
    f << algebra_to_json(heisenberg(1)).dump();
  }
  a.orders = std::pair{0, 2};
  std::ostringstream o2, e2;
  CHECK(run(a, o2, e2) == kExitOk);
  CHECK(o2.str().find("total dim H^2: 0") != std::string::npos);
  std::remove(a.input_path.c_str());
}

TEST_CASE("error exits") {
  std::ostringstream out, err;
  JobSpec j = job(Command::cohomology);
  j.builtin = "engel";
  j.orders = std::pair{0, 4};
  j.cap = 2;
  CHECK(run(j, out, err) == kExitError);
  CHECK(err.str().find("use --cap 3") != std::string::npos);

  JobSpec both = job(Command::prolong);
  both.builtin = "engel";
  both.pfaff = "dx1";
  CHECK(run(both, out, err) == kExitError);

  JobSpec bad = job(Command::symbol);
  bad.pfaff = "dx1 +";
  CHECK(run(bad, out, err) == kExitError);

  JobSpec none = job(Command::prolong);
  CHECK(run(none, out, err) == kExitError);

  JobSpec missing = job(Command::prolong);
  missing.input_path = "/nonexistent/algebra.json";
  CHECK(run(missing, out, err) == kExitError);

  JobSpec o = job(Command::prolong);
  o.builtin = "heisenberg:1";
  o.g0 = "o";
  CHECK(run(o, out, err) == kExitError);
}
