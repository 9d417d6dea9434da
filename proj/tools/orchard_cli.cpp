// Batch runner over the orchard library. Every JSON report carries
// "schema": 1. Exit codes: 0 success, 1 usage or IO error, 2 a checked
// identity or inequality failed.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "orchard/bsg.hpp"
#include "orchard/constructions.hpp"
#include "orchard/group_traits.hpp"
#include "orchard/incidence.hpp"
#include "orchard/measures.hpp"
#include "orchard/suites.hpp"

using namespace orchard;
using json = nlohmann::ordered_json;

namespace {

constexpr int kUsage = 1;
constexpr int kFailed = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json rational_json(const Rational& r) { return rational_text(r); }

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("write failed for " + path);
}

void write_json(const std::string& path, json doc) {
  json out{{"schema", 1}};
  out.update(doc);
  write_text(path, out.dump(2) + "\n");
}

/// k as u/v with u/v > 1.
std::pair<unsigned, unsigned> parse_k(const std::string& text) {
  const Rational k = parse_rational(text);
  if (k <= 1) throw UsageError("--k must exceed 1");
  if (!k.get_num().fits_uint_p() || !k.get_den().fits_uint_p()) throw UsageError("--k is too large");
  return {static_cast<unsigned>(k.get_num().get_ui()), static_cast<unsigned>(k.get_den().get_ui())};
}

Rational parse_big_k(const std::string& text) {
  const Rational k = parse_rational(text);
  if (k < 1) throw UsageError("--K must be at least 1");
  return k;
}

std::pair<unsigned, unsigned> parse_t(const std::string& text) {
  const Rational t = parse_rational(text);
  if (t <= 0 || t >= 1) throw UsageError("--t must lie in (0, 1)");
  return {static_cast<unsigned>(t.get_num().get_ui()), static_cast<unsigned>(t.get_den().get_ui())};
}

PointSet load_points(const std::string& path, const std::string& field, bool allow_dup) {
  PointSet s = read_points_file(path, allow_dup);
  if (!field.empty() && Field::parse(field) != s.field)
    throw UsageError(path + " is over " + s.field.descriptor() + ", not " + field);
  return s;
}

json concentration_json(const ConcentrationReport& r) {
  json j{{"value", r.max_line}, {"witness", nullptr}};
  if (r.line_witness) j["witness"] = r.line_witness->to_string();
  return j;
}

json triples_json(const TripleCount& t) {
  std::vector<std::pair<ProjLine, std::uint64_t>> lines(t.by_line.begin(), t.by_line.end());
  std::stable_sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  json by_line = json::array();
  for (const auto& [l, c] : lines) by_line.push_back({{"line", l.to_string()}, {"count", c}});
  return {{"total", t.total},
          {"by_line", by_line},
          {"witness", lines.empty() ? json(nullptr) : json(lines.front().first.to_string())}};
}

// ---------------------------------------------------------------------------

struct ThreePlanesOpts {
  std::string field, x1, x2, x3, report, t, kernel = "hash";
  bool allow_dup = false;
};

int run_threeplanes(const ThreePlanesOpts& o) {
  const PointSet a = load_points(o.x1, o.field, o.allow_dup);
  const PointSet b = load_points(o.x2, o.field, o.allow_dup);
  const PointSet c = load_points(o.x3, o.field, o.allow_dup);
  if (a.field != b.field || a.field != c.field) throw UsageError("point sets are over different fields");
  const auto kernel = o.kernel == "brute" ? TripleKernel::Brute : TripleKernel::LineHash;
  const TripleCount t = count_collinear_triples(a.points, b.points, c.points, kernel);
  json doc{{"command", "orchard-threeplanes"},
           {"field", a.field.descriptor()},
           {"kernel", o.kernel},
           {"sizes", {a.points.size(), b.points.size(), c.points.size()}}};
  doc.update(triples_json(t));
  // Unordered counts only make sense when the three sets coincide.
  const bool same = a.points == b.points && a.points == c.points;
  doc["unordered"] = same ? json(t.total / 6) : json(nullptr);
  doc["max_line"] = {{"x1", concentration_json(line_concentration(a.points))},
                     {"x2", concentration_json(line_concentration(b.points))},
                     {"x3", concentration_json(line_concentration(c.points))}};
  const auto frame = StdThreePlaneFrame::make(a.field);
  const auto pencil = pencil_plane_concentration(c.points, frame.p1, frame.p2);
  doc["pencil_max"] = {{"value", pencil.max_pencil_plane},
                       {"witness", pencil.plane_witness ? json(pencil.plane_witness->to_string()) : json(nullptr)}};
  const bool on_p1 = std::all_of(a.points.begin(), a.points.end(), [](const ProjPoint& p) { return p[0].is_zero(); });
  if (on_p1) {
    const auto census = stabilizer_census_affine(a.points);
    doc["census"] = {{"pairs", census.pairs}, {"nontrivial", census.nontrivial}, {"lemma_count", census.lemma_count}};
  } else {
    doc["census"] = nullptr;
  }
  bool ok = true;
  if (!o.t.empty()) {
    if (!on_p1) throw UsageError("--t needs X1 on the plane {x0 = 0}");
    const auto [u, v] = parse_t(o.t);
    const AffineGroup g{a.field};
    const auto all = affine_group_elements(a.field);
    const auto act = [](const AffElem& h, const ProjPoint& p) { return aff_act(h, p); };
    const auto xt = free_tuples(g, a.points, std::span<const AffElem>(all), 2, act);
    const auto om = omega_set(g, xt, all, u, v, act);
    ok = om.mass_bound_ok && om.size_bound_ok;
    doc["t"] = rational_text(Rational(u, v));
    doc["free_pairs"] = om.free_size;
    doc["omega_size"] = om.members.size();
    doc["omega_mass"] = om.omega_mass;
    doc["omega_mass_bound_ok"] = om.mass_bound_ok;
    doc["omega_size_bound_ok"] = om.size_bound_ok;
  }
  write_json(o.report, doc);
  return ok ? 0 : kFailed;
}

struct QuadricOpts {
  std::string field, x, s, report, quadric = "sum-of-squares";
  bool allow_dup = false;
};

int run_quadric(const QuadricOpts& o) {
  const PointSet xs = load_points(o.x, o.field, o.allow_dup);
  const PointSet ss = load_points(o.s, o.field, o.allow_dup);
  if (xs.field != ss.field) throw UsageError("point sets are over different fields");
  const Field& f = xs.field;
  const QuadricForm q = o.quadric == "segre" ? QuadricForm::segre(f) : QuadricForm::sum_of_squares(f);
  for (const auto& p : xs.points)
    if (!on_quadric(p, q)) throw Error(ErrorKind::PointOffQuadric, p.to_string() + " in X is off Q");
  for (const auto& p : ss.points)
    if (on_quadric(p, q)) throw Error(ErrorKind::PointOnQuadric, p.to_string() + " in S lies on Q");

  const TripleCount t = count_collinear_triples(xs.points, xs.points, ss.points, TripleKernel::LineHash);
  // A line through s meets Q in at most two points, so the triples are exactly
  // the pairs (x, s) with gamma_s(x) in X and gamma_s(x) != x.
  const std::set<ProjPoint> in_x(xs.points.begin(), xs.points.end());
  std::uint64_t encoded = 0;
  for (const auto& s : ss.points)
    for (const auto& x : xs.points) {
      const ProjPoint y = gamma_x(s, x, q);
      encoded += y != x && in_x.contains(y);
    }
  const auto norm = normalize_to_segre(q);
  json doc{{"command", "orchard-quadric"},
           {"field", f.descriptor()},
           {"quadric", o.quadric},
           {"sizes", {xs.points.size(), ss.points.size()}}};
  doc.update(triples_json(t));
  doc["encoding_count"] = encoded;
  doc["encoding_matches"] = encoded == t.total;
  doc["max_line"] = {{"x", concentration_json(line_concentration(xs.points))},
                     {"s", concentration_json(line_concentration(ss.points))}};
  doc["normalization"] = {{"chain", norm.chain}, {"verified", norm.verified}};
  write_json(o.report, doc);
  return encoded == t.total && norm.verified ? 0 : kFailed;
}

struct ExampleOpts {
  std::uint32_t p = 0;
  std::string k, dir, out;
  bool no_count = false;
};

int run_example_build(const ExampleOpts& o) {
  const auto [u, v] = parse_k(o.k);
  const ExampleConfig cfg = build_example(o.p, u, v);
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(o.dir, ec);
  if (ec) throw UsageError("cannot create " + o.dir);
  json files = json::array();
  const std::array<const std::vector<ProjPoint>*, 3> sets{&cfg.x1, &cfg.x2, &cfg.x3};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string name = "x" + std::to_string(i + 1) + ".pts";
    std::ostringstream text;
    write_points(text, cfg.field, *sets[i], "X" + std::to_string(i + 1));
    write_text((fs::path(o.dir) / name).string(), text.str());
    files.push_back(name);
  }
  const std::size_t size = cfg.x1.size();
  write_json(o.out.empty() ? (fs::path(o.dir) / "manifest.json").string() : o.out,
             {{"command", "example-build"},
              {"p", cfg.p},
              {"k", rational_text(Rational(u, v))},
              {"N", cfg.n},
              {"d", cfg.d},
              {"sizes", {size, size, size}},
              {"size_approx", std::pow(double(cfg.p), 1.0 + double(v) / double(u))},
              {"family_count", cfg.family_count()},
              {"files", files}});
  return 0;
}

int run_example_verify(const ExampleOpts& o) {
  const auto [u, v] = parse_k(o.k);
  const ExampleConfig cfg = build_example(o.p, u, v);
  const ExampleReport r = verify_example(cfg, !o.no_count);
  json doc{{"command", "example-verify"},
           {"p", cfg.p},
           {"k", rational_text(Rational(u, v))},
           {"N", cfg.n},
           {"d", cfg.d},
           {"sizes", {cfg.x1.size(), cfg.x2.size(), cfg.x3.size()}},
           {"family_count", r.family_count},
           {"collinear", r.collinear},
           {"distinct", r.distinct},
           {"all_collinear", r.all_collinear},
           {"all_distinct", r.all_distinct},
           {"in_x1", r.in_x1},
           {"in_x2", r.in_x2},
           {"in_x3", r.in_x3},
           {"in_sets", r.in_sets},
           {"all_in_sets", r.all_in_sets},
           {"first_outside", r.first_outside ? json(*r.first_outside) : json(nullptr)},
           {"max_line", r.max_line},
           {"dichotomy_bound", r.dichotomy_bound},
           {"dichotomy_ok", r.dichotomy_ok},
           {"triple_count", r.triple_count ? json(*r.triple_count) : json(nullptr)},
           {"count_covers_family", r.count_covers_family}};
  write_json(o.out, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// Measures over a group chosen on the command line.

struct GroupOpts {
  std::string group = "affine";
  std::string field;
  std::uint32_t order = 0;
};

template <class Fn>
int with_group(const GroupOpts& o, Fn&& fn) {
  if (o.group == "affine") {
    if (o.field.empty()) throw UsageError("--field is required for the affine group");
    const AffineGroup g{Field::parse(o.field)};
    return fn(g, [&g](std::mt19937_64& rng) {
      const Field& f = g.field;
      auto pick = [&](std::uint32_t lo) { return f.from_index(lo + static_cast<std::uint32_t>(rng() % (f.order() - lo))); };
      return aff_make(pick(0), pick(0), pick(1));
    });
  }
  if (o.group == "cyclic") {
    if (o.order == 0) throw UsageError("--order is required for the cyclic group");
    const CyclicGroup g{o.order};
    return fn(g, [&g](std::mt19937_64& rng) { return static_cast<std::uint32_t>(rng() % g.n); });
  }
  throw UsageError("unknown group " + o.group);
}

template <class Group>
GroupMeasure<Group> load_measure(const Group& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return read_measure(in, g);
}

struct FlattenOpts {
  GroupOpts group;
  std::string measure, out, report;
  unsigned gen_count = 2;
  unsigned m_max = 4;
  std::uint64_t seed = 0;
};

int run_flatten(const FlattenOpts& o) {
  return with_group(o.group, [&](const auto& g, auto&& draw) {
    using Group = std::decay_t<decltype(g)>;
    using Elem = typename Group::Elem;
    GroupMeasure<Group> mu;
    std::vector<Elem> gens;
    if (!o.measure.empty()) {
      mu = load_measure(g, o.measure);
      gens = mu.support();
    } else {
      if (o.gen_count == 0) throw UsageError("--gen-count must be positive");
      std::mt19937_64 rng(o.seed);
      std::set<Elem> s;
      for (std::size_t tries = 0; s.size() < o.gen_count && tries < 100000; ++tries) s.insert(draw(rng));
      if (s.size() < o.gen_count) throw UsageError("group too small for --gen-count");
      gens.assign(s.begin(), s.end());
      mu = GroupMeasure<Group>::uniform(g, gens);
    }
    const auto rows = flattening_report(mu, o.m_max);
    std::ostringstream csv;
    write_flattening_csv(csv, rows);
    write_text(o.out, csv.str());
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.linf_l2 && r.young && r.monotone;
    if (!o.report.empty()) {
      json gen_text = json::array();
      for (const auto& x : gens) gen_text.push_back(g.format(x));
      const auto cl = group_closure(g, gens);
      write_json(o.report, {{"command", "flatten"},
                            {"group", g.name()},
                            {"seed", o.seed},
                            {"generators", gen_text},
                            {"generated_size", cl.elements.size()},
                            {"generated_truncated", cl.truncated},
                            {"rows", rows.size()},
                            {"final_l2_sq", rows.empty() ? json(nullptr) : rational_json(rows.back().l2_sq_next)},
                            {"ok", ok}});
    }
    return ok ? 0 : kFailed;
  });
}

struct BsgOpts {
  GroupOpts group;
  std::string measure, report, k = "1";
  std::size_t support = 20;
  std::uint64_t seed = 0;
};

int run_bsg(const BsgOpts& o) {
  const Rational k = parse_big_k(o.k);
  return with_group(o.group, [&](const auto& g, auto&& draw) {
    using Group = std::decay_t<decltype(g)>;
    using Elem = typename Group::Elem;
    GroupMeasure<Group> nu;
    if (!o.measure.empty()) {
      nu = load_measure(g, o.measure);
    } else {
      std::mt19937_64 rng(o.seed);
      std::map<Elem, Rational> m;
      for (std::size_t tries = 0; m.size() < o.support && tries < 100000; ++tries)
        m[draw(rng)] = Rational(static_cast<long>(1 + rng() % 50));
      Rational total = 0;
      for (const auto& kv : m) total += kv.second;
      for (auto& kv : m) kv.second /= total;
      nu = GroupMeasure<Group>::from_masses(g, m);
    }
    if (!nu.is_probability()) throw UsageError("the measure must have total mass 1");
    const auto d = decompose(nu, k);
    const BsgReport rep = verify_decomposition(nu, k);
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"name", r.name},
                      {"lhs", rational_json(r.lhs)},
                      {"rhs", rational_json(r.rhs)},
                      {"lhs_approx", to_double(r.lhs)},
                      {"rhs_approx", to_double(r.rhs)},
                      {"relation", r.relation},
                      {"pass", r.pass},
                      {"hypothesis_met", r.hypothesis_met}});
    json boundary = json::array();
    for (const auto& x : d.boundary) boundary.push_back(g.format(x));
    write_json(o.report, {{"command", "bsg-verify"},
                          {"group", g.name()},
                          {"K", rational_text(k)},
                          {"support", nu.support_size()},
                          {"l2_sq", rational_json(d.l2_sq)},
                          {"a_size", d.a.size()},
                          {"nu1_support", d.nu1.support_size()},
                          {"nu2_support", d.nu2.support_size()},
                          {"boundary", boundary},
                          {"hyp_lin", rep.hyp_lin},
                          {"hyp_sq", rep.hyp_sq},
                          {"ok", rep.ok()},
                          {"rows", rows}});
    return rep.ok() ? 0 : kFailed;
  });
}

struct SuiteOpts {
  std::vector<std::string> suites;
  std::string report;
  std::uint64_t seed = 1;
};

int run_lemma_suite(const SuiteOpts& o) {
  const std::vector<std::string> names = o.suites.empty() ? suite_names() : o.suites;
  json list = json::array();
  bool ok = true;
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, o.seed);
    ok = ok && r.ok();
    list.push_back({{"name", r.name},
                    {"cases", r.cases},
                    {"failures", r.failures},
                    {"ok", r.ok()},
                    {"first_failure", r.failures ? json(r.first_failure) : json(nullptr)},
                    {"detail", r.detail}});
  }
  write_json(o.report, {{"command", "lemma-suite"}, {"seed", o.seed}, {"suites", list}, {"ok", ok}});
  return ok ? 0 : kFailed;
}

void add_group_flags(CLI::App* app, GroupOpts& g) {
  app->add_option("--group", g.group, "affine or cyclic")->check(CLI::IsMember({"affine", "cyclic"}));
  app->add_option("--field", g.field, "field descriptor for the affine group, e.g. 7 or 3^2");
  app->add_option("--order", g.order, "order of the cyclic group");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orchard: exact finite-geometry experiments"};
  app.require_subcommand(1);

  ThreePlanesOpts tp;
  auto* c_tp = app.add_subcommand("orchard-threeplanes", "count collinear triples across three point sets");
  c_tp->add_option("--field", tp.field, "expected field descriptor");
  c_tp->add_option("--x1", tp.x1)->required();
  c_tp->add_option("--x2", tp.x2)->required();
  c_tp->add_option("--x3", tp.x3)->required();
  c_tp->add_option("--t", tp.t, "rational t in (0, 1): report Omega_t for free pairs of X1");
  c_tp->add_option("--kernel", tp.kernel)->check(CLI::IsMember({"hash", "brute"}));
  c_tp->add_flag("--allow-dup", tp.allow_dup, "collapse duplicate points");
  c_tp->add_option("--report,--out", tp.report, "JSON output path (stdout if absent)");

  QuadricOpts qd;
  auto* c_qd = app.add_subcommand("orchard-quadric", "count triples in X x X x S for X on a quadric");
  c_qd->add_option("--field", qd.field, "expected field descriptor");
  c_qd->add_option("--x", qd.x, "points on Q")->required();
  c_qd->add_option("--s", qd.s, "points off Q")->required();
  c_qd->add_option("--quadric", qd.quadric)->check(CLI::IsMember({"sum-of-squares", "segre"}));
  c_qd->add_flag("--allow-dup", qd.allow_dup, "collapse duplicate points");
  c_qd->add_option("--report,--out", qd.report, "JSON output path (stdout if absent)");

  ExampleOpts eb;
  auto* c_eb = app.add_subcommand("example-build", "write the three-plane example point sets");
  c_eb->add_option("--p", eb.p)->required();
  c_eb->add_option("--k", eb.k, "rational k > 1")->required();
  c_eb->add_option("--dir", eb.dir, "output directory for x1.pts, x2.pts, x3.pts")->required();
  c_eb->add_option("--report,--out", eb.out, "manifest path (default <dir>/manifest.json)");

  ExampleOpts ev;
  auto* c_ev = app.add_subcommand("example-verify", "verify the three-plane example");
  c_ev->add_option("--p", ev.p)->required();
  c_ev->add_option("--k", ev.k, "rational k > 1")->required();
  c_ev->add_flag("--no-count", ev.no_count, "skip the full triple count");
  c_ev->add_option("--report,--out", ev.out, "JSON output path (stdout if absent)");

  FlattenOpts fl;
  auto* c_fl = app.add_subcommand("flatten", "L2-flattening rows of the symmetric powers of mu_S");
  add_group_flags(c_fl, fl.group);
  c_fl->add_option("--gen-count", fl.gen_count, "size of the random set S");
  c_fl->add_option("--measure", fl.measure, "measure file instead of a random S");
  c_fl->add_option("--m-max", fl.m_max);
  c_fl->add_option("--seed", fl.seed);
  c_fl->add_option("--out", fl.out, "CSV output path (stdout if absent)");
  c_fl->add_option("--report", fl.report, "JSON summary path");

  BsgOpts bs;
  auto* c_bs = app.add_subcommand("bsg-verify", "decomposition inequalities for a probability measure");
  add_group_flags(c_bs, bs.group);
  c_bs->add_option("--measure", bs.measure, "measure file instead of a random measure");
  c_bs->add_option("--support", bs.support, "support size of the random measure");
  c_bs->add_option("--K", bs.k, "rational K >= 1");
  c_bs->add_option("--seed", bs.seed);
  c_bs->add_option("--report,--out", bs.report, "JSON output path (stdout if absent)");

  SuiteOpts su;
  auto* c_su = app.add_subcommand("lemma-suite", "seeded identity and inequality suites");
  c_su->add_option("--suite", su.suites, "suite names (default: all)")->check(CLI::IsMember(suite_names()));
  c_su->add_option("--seed", su.seed);
  c_su->add_option("--report,--out", su.report, "JSON output path (stdout if absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*c_tp) return run_threeplanes(tp);
    if (*c_qd) return run_quadric(qd);
    if (*c_eb) return run_example_build(eb);
    if (*c_ev) return run_example_verify(ev);
    if (*c_fl) return run_flatten(fl);
    if (*c_bs) return run_bsg(bs);
    if (*c_su) return run_lemma_suite(su);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::VerificationFailure ? kFailed : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
