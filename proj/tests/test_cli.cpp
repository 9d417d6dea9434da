#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "orchard/measures.hpp"
#include "orchard/projgeom.hpp"
#include "support.hpp"

using namespace orchard;
namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "orchard_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

int run(const std::string& args) {
  const std::string cmd = std::string(ORCHARD_CLI) + " " + args + " >" + path("stdout.txt") + " 2>" + path("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json load(const std::string& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("example-verify report") {
  REQUIRE(run("example-verify --p 7 --k 2 --out " + path("r.json")) == 0);
  const auto r = load(path("r.json"));
  CHECK(r["schema"] == 1);
  CHECK(r["family_count"] == 1225);
  CHECK(r["all_collinear"] == true);
  CHECK(r["in_sets"] == 1029);
  CHECK(r["triple_count"] == 1029);
  CHECK(r["dichotomy_ok"] == true);
}

TEST_CASE("example-build and orchard-threeplanes") {
  REQUIRE(run("example-build --p 7 --k 2 --dir " + path("ex")) == 0);
  const auto m = load(path("ex/manifest.json"));
  CHECK(m["N"] == 2);
  CHECK(m["d"] == 3);
  CHECK(m["sizes"] == nlohmann::json::array({35, 35, 35}));
  CHECK(m["family_count"] == 1225);
  CHECK(read_points_file(path("ex/x1.pts")).points.size() == 35);

  const std::string sets = " --x1 " + path("ex/x1.pts") + " --x2 " + path("ex/x2.pts") + " --x3 " + path("ex/x3.pts");
  REQUIRE(run("orchard-threeplanes --field 7" + sets + " --report " + path("tp.json")) == 0);
  const auto tp = load(path("tp.json"));
  for (const char* key : {"schema", "total", "by_line", "witness", "max_line", "pencil_max", "census"})
    CHECK_MESSAGE(tp.contains(key), key);
  CHECK(tp["total"] == 1029);
  CHECK(tp["max_line"]["x1"]["value"] == 7);
  CHECK(tp["pencil_max"]["value"] == 7);
  CHECK(tp["census"]["pairs"] == 1225);

  REQUIRE(run("orchard-threeplanes --kernel brute" + sets + " --t 1/2 --report " + path("tpb.json")) == 0);
  const auto tpb = load(path("tpb.json"));
  CHECK(tpb["total"] == 1029);
  CHECK(tpb["omega_size_bound_ok"] == true);
  CHECK(tpb["omega_mass_bound_ok"] == true);

  CHECK(run("orchard-threeplanes --field 11" + sets) == 1);
  CHECK(run("orchard-threeplanes" + sets + " --t 3/2") == 1);
}

TEST_CASE("flatten CSV") {
  const std::string args = "flatten --group affine --field 11 --gen-count 2 --m-max 4 --seed 1 --out ";
  REQUIRE(run(args + path("f1.csv")) == 0);
  REQUIRE(run(args + path("f2.csv")) == 0);
  const std::string csv = slurp(path("f1.csv"));
  CHECK(csv == slurp(path("f2.csv")));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("m,l2_sq,", 0) == 0);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    REQUIRE(cols.size() == 11);
    CHECK(parse_rational(cols[5]) <= 1);
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("bsg-verify") {
  REQUIRE(run("bsg-verify --group affine --field 5 --support 15 --K 2 --seed 4 --report " + path("b1.json")) == 0);
  REQUIRE(run("bsg-verify --group affine --field 5 --support 15 --K 2 --seed 4 --report " + path("b2.json")) == 0);
  CHECK(slurp(path("b1.json")) == slurp(path("b2.json")));
  const auto b = load(path("b1.json"));
  CHECK(b["ok"] == true);
  CHECK(b["rows"].size() == 11);
  for (const auto& row : b["rows"])
    for (const char* key : {"name", "lhs", "rhs", "relation", "pass", "hypothesis_met"}) CHECK(row.contains(key));

  {
    std::ofstream m(path("delta.measure"));
    m << "# a point mass\n5\n";
  }
  CHECK(run("bsg-verify --group cyclic --order 12 --measure " + path("delta.measure")) == 1);
  {
    std::ofstream m(path("delta.measure"));
    m << "# a point mass\n5 1/1\n";
  }
  REQUIRE(run("bsg-verify --group cyclic --order 12 --measure " + path("delta.measure") + " --report " +
              path("d.json")) == 0);
  const auto d = load(path("d.json"));
  CHECK(d["hyp_lin"] == true);
  CHECK(d["a_size"] == 1);
  CHECK(run("bsg-verify --group affine --field 5 --K 1/2") == 1);
  CHECK(run("bsg-verify --group affine") == 1);
}

TEST_CASE("orchard-quadric") {
  const Field f = Field::prime(5);
  const QuadricForm q = QuadricForm::sum_of_squares(f);
  std::vector<ProjPoint> on, off;
  for (const auto& p : enumerate_p3(f)) (on_quadric(p, q) ? on : off).push_back(p);
  off.resize(10);
  {
    std::ofstream a(path("q.pts")), b(path("s.pts"));
    write_points(a, f, on);
    write_points(b, f, off);
  }
  REQUIRE(run("orchard-quadric --x " + path("q.pts") + " --s " + path("s.pts") + " --report " + path("q.json")) == 0);
  const auto r = load(path("q.json"));
  CHECK(r["encoding_matches"] == true);
  CHECK(r["total"] == r["encoding_count"]);
  CHECK(r["total"].get<std::uint64_t>() > 0);
  CHECK(r["normalization"]["verified"] == true);
  // S and X swapped: X is no longer on Q.
  CHECK(run("orchard-quadric --x " + path("s.pts") + " --s " + path("q.pts")) == 1);
}

TEST_CASE("lemma-suite and usage errors") {
  REQUIRE(run("lemma-suite --suite commutator --suite census --report " + path("s.json")) == 0);
  const auto s = load(path("s.json"));
  CHECK(s["ok"] == true);
  CHECK(s["suites"].size() == 2);
  CHECK(run("lemma-suite --suite nope") == 1);
  CHECK(run("no-such-command") == 1);
  CHECK(run("") == 1);
  CHECK(run("example-verify --p 5 --k 2") == 1);
  CHECK(run("example-verify --p 7 --k 1") == 1);
  CHECK(run("orchard-threeplanes --x1 missing.pts --x2 missing.pts --x3 missing.pts") == 1);
  CHECK(run("example-build --p 7 --k 2 --dir /proc/forbidden") == 1);
}
