#include <random>
#include <sstream>

#include "doctest.h"
#include "orchard/measures.hpp"
#include "support.hpp"

using namespace orchard;
using namespace testing;

namespace {

using AffMeasure = GroupMeasure<AffineGroup>;

AffElem aff(const Field& f, int a, int b, int c) { return aff_make(f.from_int(a), f.from_int(b), f.from_int(c)); }

AffMeasure random_measure(const AffineGroup& g, std::mt19937_64& rng, std::size_t max_support = 8) {
  std::map<AffElem, Rational> m;
  const std::size_t n = 1 + rng() % max_support;
  while (m.size() < n) m[random_aff(g.field, rng)] = Rational(static_cast<long>(1 + rng() % 9));
  Rational total = 0;
  for (const auto& kv : m) total += kv.second;
  for (auto& kv : m) kv.second /= total;
  return AffMeasure::from_masses(g, m);
}

/// f*h(x) = sum_y f(y) h(y^-1 x), evaluated pointwise over the whole group.
std::map<AffElem, Rational> convolve_oracle(const AffMeasure& f, const AffMeasure& h) {
  std::map<AffElem, Rational> out;
  for (const auto& x : affine_group_elements(f.group().field)) {
    Rational s = 0;
    for (const auto& [y, fy] : f.atoms()) s += fy * h.mass(aff_compose(aff_inverse(y), x));
    if (s != 0) out[x] = s;
  }
  return out;
}

}  // namespace

TEST_CASE("uniform measures") {
  const Field f = Field::prime(5);
  const AffineGroup g{f};
  const std::vector<AffElem> s{aff(f, 0, 0, 1), aff(f, 1, 0, 1), aff(f, 0, 1, 2), aff(f, 3, 3, 3)};
  const auto mu = AffMeasure::uniform(g, s);
  for (const auto& x : s) CHECK(mu.mass(x) == Rational(1, 4));
  CHECK(l2_norm_sq(mu) == Rational(1, 4));
  CHECK(mu.is_probability());
  const std::vector<AffElem> id{aff_identity(f)};
  CHECK(AffMeasure::uniform(g, id) == AffMeasure::delta(g, aff_identity(f)));
  const std::vector<AffElem> dup{aff(f, 1, 0, 1), aff(f, 6, 5, 6)};
  CHECK(kind_of([&] { (void)AffMeasure::uniform(g, dup); }) == ErrorKind::DuplicateElements);
  CHECK(kind_of([&] { (void)AffMeasure::uniform(g, std::vector<AffElem>{}); }) == ErrorKind::EmptySupport);
  const auto ind = AffMeasure::indicator(g, s);
  CHECK(ind.total() == 4);
  CHECK_FALSE(ind.is_probability());
}

TEST_CASE("convolution examples") {
  const Field f = Field::prime(7);
  const AffineGroup g{f};
  const AffElem x = aff(f, 1, 2, 3);
  const std::vector<AffElem> s{x, aff_inverse(x)};
  const auto mu = AffMeasure::uniform(g, s);
  CHECK(convolve(AffMeasure::delta(g, aff_identity(f)), mu) == mu);
  const auto sigma = convolve(reverse(mu), mu);
  CHECK(sigma.support_size() == 3);
  CHECK(sigma.mass(aff_identity(f)) == Rational(1, 2));
  CHECK(sigma.mass(aff_compose(x, x)) == Rational(1, 4));
  CHECK(sigma.mass(aff_inverse(aff_compose(x, x))) == Rational(1, 4));
  CHECK(sigma.atoms() == convolve_oracle(reverse(mu), mu));
  const AffineGroup other{Field::prime(5)};
  CHECK(kind_of([&] { (void)convolve(mu, AffMeasure::delta(other, aff_identity(other.field))); }) ==
        ErrorKind::MixedGroups);
}

TEST_CASE("convolution matches the pointwise oracle") {
  const AffineGroup g{Field::prime(5)};
  std::mt19937_64 rng(10);
  for (int n = 0; n < 40; ++n) {
    const auto a = random_measure(g, rng), b = random_measure(g, rng);
    CHECK(convolve(a, b).atoms() == convolve_oracle(a, b));
  }
}

TEST_CASE("support guard") {
  const AffineGroup g{Field::prime(5)};
  std::mt19937_64 rng(3);
  const auto a = random_measure(g, rng, 20), b = random_measure(g, rng, 20);
  CHECK(kind_of([&] { (void)convolve(a, b, 2); }) == ErrorKind::SupportBlowup);
}

TEST_CASE("norms") {
  const AffineGroup g{Field::prime(5)};
  CHECK(linf_norm(AffMeasure::delta(g, aff_identity(g.field))) == 1);
  std::mt19937_64 rng(4);
  for (int n = 0; n < 50; ++n) {
    const auto mu = random_measure(g, rng);
    CHECK(l2_norm_sq(reverse(mu)) == l2_norm_sq(mu));
    CHECK(reverse(reverse(mu)) == mu);
    CHECK(l1_norm(mu) == 1);
    CHECK(linf_norm(mu) * linf_norm(mu) <= l2_norm_sq(mu));
  }
}

TEST_CASE("measure invariants on random instances") {
  std::mt19937_64 rng(99);
  for (const char* desc : {"5", "7"}) {
    const AffineGroup g{Field::parse(desc)};
    for (int n = 0; n < 30; ++n) {
      const auto a = random_measure(g, rng, 6), b = random_measure(g, rng, 6), c = random_measure(g, rng, 6);
      CHECK(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)));
      const auto ab = convolve(a, b);
      CHECK(ab.is_probability());
      CHECK(l2_norm_sq(ab) <= l1_norm(a) * l1_norm(a) * l2_norm_sq(b));
    }
  }
}

TEST_CASE("symmetric powers") {
  const Field f = Field::prime(5);
  const AffineGroup g{f};
  const std::vector<AffElem> id{aff_identity(f)};
  CHECK(sym_power(AffMeasure::uniform(g, id), 1) == AffMeasure::delta(g, aff_identity(f)));
  const std::vector<AffElem> s{aff(f, 1, 0, 2), aff(f, 0, 1, 3)};
  const auto mu = AffMeasure::uniform(g, s);
  const auto sigma = sym_power(mu, 1);
  const auto sigma2 = sym_power(mu, 2);
  CHECK(sigma2 == convolve(sigma, sigma));
  std::set<AffElem> prod;
  for (const auto& x : sigma.support())
    for (const auto& y : sigma.support()) prod.insert(aff_compose(x, y));
  for (const auto& x : sigma2.support()) CHECK(prod.contains(x));
  for (unsigned m = 1; m <= 6; ++m) {
    const auto p = sym_power(mu, m);
    CHECK(reverse(p) == p);
    CHECK(p.is_probability());
  }
  CHECK(sym_power(mu, 5) == convolve(sym_power(mu, 2), sym_power(mu, 3)));
  CHECK(kind_of([&] { (void)sym_power(mu, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("coset mass") {
  const Field f = Field::prime(5);
  const AffineGroup g{f};
  const auto h = group_closure(g, {aff(f, 1, 0, 1)}).elements;  // translations along a
  const auto mu_h = AffMeasure::uniform(g, h);
  CHECK(coset_mass(mu_h, aff_identity(f), h) == 1);
  CHECK(coset_mass(mu_h, aff(f, 0, 1, 1), h) == 0);
  const std::vector<AffElem> s{aff(f, 0, 0, 1), aff(f, 2, 0, 1), aff(f, 0, 3, 1), aff(f, 1, 1, 2)};
  CHECK(coset_mass(AffMeasure::uniform(g, s), aff_identity(f), h) == Rational(1, 2));
  const std::vector<AffElem> not_group{aff_identity(f), aff(f, 1, 0, 1)};
  CHECK(kind_of([&] { (void)coset_mass(mu_h, aff_identity(f), not_group); }) == ErrorKind::NotASubgroup);
  const auto w = max_coset_mass(AffMeasure::uniform(g, s), h);
  CHECK(w.mass == Rational(1, 2));
}

TEST_CASE("flattening on a subgroup is stationary") {
  const Field f = Field::prime(5);
  const AffineGroup g{f};
  const auto h = group_closure(g, {aff(f, 1, 0, 1), aff(f, 0, 0, 2)}).elements;
  const auto rows = flattening_report(AffMeasure::uniform(g, h), 3);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.ratio_sq == 1);
    CHECK(r.l2_sq == Rational(1, static_cast<long>(h.size())));
    CHECK(r.linf_l2);
    CHECK(r.young);
  }
}

TEST_CASE("flattening of a point mass") {
  const CyclicGroup c12{12};
  const auto rows = flattening_report(GroupMeasure<CyclicGroup>::delta(c12, 1), 4);
  for (const auto& r : rows) {
    CHECK(r.l2_sq == 1);
    CHECK(r.ratio_sq == 1);
  }
}

TEST_CASE("flattening towards uniform on the F_7 affine group") {
  const Field f = Field::prime(7);
  const AffineGroup g{f};
  std::mt19937_64 rng(1);
  // Two elements only ever generate a group of homotheties preserving a
  // parallel class of lines, so three are needed to reach the whole group.
  CHECK(group_closure(g, {random_aff(f, rng), random_aff(f, rng)}).elements.size() < g.order());
  std::vector<AffElem> s;
  do s = {random_aff(f, rng), random_aff(f, rng), random_aff(f, rng)};
  while (group_closure(g, s).elements.size() != g.order());
  const auto rows = flattening_report(AffMeasure::uniform(g, s), 4);
  const Rational floor_l2(1, static_cast<long>(g.order()));
  bool reached = false;
  for (const auto& r : rows) {
    CHECK(r.linf_l2);
    CHECK(r.young);
    CHECK(r.monotone);
    CHECK(r.l2_sq_next >= floor_l2);
    if (!reached) CHECK(r.ratio_sq < 1);
    if (r.l2_sq_next * static_cast<unsigned long>(g.order()) < Rational(101, 100)) reached = true;
  }
  CHECK(non_uniform(AffMeasure::uniform(g, s), 1));
}

TEST_CASE("uniform measure on the whole group is a fixed point") {
  const Field f = Field::prime(3);
  const AffineGroup g{f};
  const auto all = affine_group_elements(f);
  const auto mu = AffMeasure::uniform(g, all);
  for (unsigned m = 1; m <= 3; ++m) CHECK(sym_power(mu, m) == mu);
  CHECK_FALSE(non_uniform(mu, 1));
}

TEST_CASE("measure files") {
  const Field f = Field::prime(5);
  const AffineGroup g{f};
  std::mt19937_64 rng(5);
  const auto mu = random_measure(g, rng);
  std::stringstream ss;
  write_measure(ss, mu);
  CHECK(read_measure(ss, g) == mu);
  std::istringstream bad("0;0;1 1/2 extra\n");
  CHECK(kind_of([&] { (void)read_measure(bad, g); }) == ErrorKind::Parse);
  std::istringstream dup("0;0;1 1/2\n0;0;1 1/2\n");
  CHECK(kind_of([&] { (void)read_measure(dup, g); }) == ErrorKind::DuplicateElements);
  CHECK(rational_text(Rational(3, 6)) == "1/2");
  CHECK(parse_rational("4/8") == Rational(1, 2));
  CHECK(kind_of([] { (void)parse_rational("1/0"); }) == ErrorKind::Parse);
}

TEST_CASE("flattening csv") {
  const CyclicGroup c{6};
  const std::vector<std::uint32_t> s{0, 1};
  std::ostringstream out;
  write_flattening_csv(out, flattening_report(GroupMeasure<CyclicGroup>::uniform(c, s), 2));
  std::istringstream in(out.str());
  std::string line;
  int n = 0;
  while (std::getline(in, line)) ++n;
  CHECK(n == 4);
}
