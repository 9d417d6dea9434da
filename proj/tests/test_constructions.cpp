#include <random>

#include "doctest.h"
#include "orchard/constructions.hpp"
#include "support.hpp"

using namespace orchard;
using namespace testing;

namespace {

using Mat2 = std::array<std::array<FieldElem, 2>, 2>;

Mat4 diag(const Field& f, std::initializer_list<int> d) {
  Vec4 v;
  std::size_t i = 0;
  for (int x : d) v[i++] = f.from_int(x);
  return linalg::diagonal(v);
}

Mat4 random_symmetric(const Field& f, std::mt19937_64& rng) {
  while (true) {
    Mat4 b;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) b[i][j] = b[j][i] = random_elem(f, rng);
    if (!linalg::det(b).is_zero()) return b;
  }
}

Mat2 random_gl2(const Field& f, std::mt19937_64& rng) {
  while (true) {
    Mat2 a{{{random_elem(f, rng), random_elem(f, rng)}, {random_elem(f, rng), random_elem(f, rng)}}};
    if (!(a[0][0] * a[1][1] - a[0][1] * a[1][0]).is_zero()) return a;
  }
}

FieldElem det2(const Mat2& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }

/// Conjugates O(sum of squares) into the Segre similitude group via T.
Mat4 to_segre_coords(const Mat4& r, const Mat4& t) { return linalg::mul(linalg::inverse(t), linalg::mul(r, t)); }

ProjPoint random_off_quadric(const Field& f, std::mt19937_64& rng) {
  const QuadricForm q = QuadricForm::sum_of_squares(f);
  while (true) {
    Vec4 v{random_elem(f, rng), random_elem(f, rng), random_elem(f, rng), random_elem(f, rng)};
    if (v == Vec4{f.zero(), f.zero(), f.zero(), f.zero()}) continue;
    const ProjPoint p = normalize(v);
    if (!on_quadric(p, q)) return p;
  }
}

}  // namespace

TEST_CASE("example sizes over the grid") {
  struct Case {
    std::uint32_t p;
    unsigned k;
    std::uint32_t n;
  };
  for (const Case c : {Case{7, 2, 2}, Case{11, 2, 3}, Case{13, 3, 2}, Case{31, 2, 5}}) {
    const auto cfg = build_example(c.p, c.k);
    CHECK(cfg.n == c.n);
    const std::size_t size = (2 * c.n + 1) * c.p;
    CHECK(cfg.x1.size() == size);
    CHECK(cfg.x2.size() == size);
    CHECK(cfg.x3.size() == size);
    CHECK(cfg.family_count() == static_cast<std::uint64_t>(size) * size);
    for (const auto* x : {&cfg.x1, &cfg.x2, &cfg.x3}) CHECK(std::set<ProjPoint>(x->begin(), x->end()).size() == size);
  }
  CHECK(build_example(7, 2).d == 3);
  CHECK(build_example(11, 2).d == 2);
  CHECK(build_example(31, 2).d == 3);
}

TEST_CASE("example parameter errors") {
  CHECK(kind_of([] { (void)build_example(5, 2); }) == ErrorKind::DegenerateParameters);
  CHECK(kind_of([] { (void)build_example(9, 2); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { (void)build_example(2, 2); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { (void)build_example(7, 1); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { (void)build_example(7, 3, 3); }) == ErrorKind::InvalidArgument);
  // k = 3/2 over p = 11: N = floor(11^(2/3)) = 4, 9 <= 10.
  CHECK(build_example(11, 3, 2).n == 4);
}

TEST_CASE("example spot triple") {
  const auto cfg = build_example(7, 2);
  const Field& f = cfg.field;
  const auto tri = family_triple(cfg, 0, 0, 1, 1);
  CHECK(tri[0] == pt(f, {0, 1, 1, 0}));
  CHECK(tri[1] == pt(f, {-1, 0, 0, -1}));
  CHECK(tri[2] == pt(f, {1, 1, 1, 1}));
  CHECK(collinear(tri[0], tri[1], tri[2]));
}

TEST_CASE("example verification, p = 7") {
  // Frozen from tests/oracles/example_oracle.py.
  const auto rep = verify_example(build_example(7, 2));
  CHECK(rep.family_count == 1225);
  CHECK(rep.collinear == 1225);
  CHECK(rep.distinct == 1225);
  CHECK(rep.all_collinear);
  CHECK(rep.all_distinct);
  CHECK(rep.in_x1 == 1225);
  CHECK(rep.in_x3 == 1225);
  CHECK(rep.in_sets == 1029);
  CHECK_FALSE(rep.all_in_sets);
  REQUIRE(rep.first_outside);
  CHECK(rep.max_line == std::array<std::uint64_t, 3>{7, 7, 7});
  CHECK(rep.dichotomy_bound == 7);
  CHECK(rep.dichotomy_ok);
  REQUIRE(rep.triple_count);
  CHECK(*rep.triple_count == 1029);
  CHECK_FALSE(rep.count_covers_family);

  const auto& o = *rep.first_outside;
  const auto cfg = build_example(7, 2);
  const auto tri = family_triple(cfg, o[0], o[1], static_cast<std::uint32_t>(o[2]), static_cast<std::uint32_t>(o[3]));
  CHECK_FALSE(std::binary_search(cfg.x2.begin(), cfg.x2.end(), tri[1]));
  CHECK(std::abs(o[0] + o[1]) > 2);
}

TEST_CASE("example verification, p = 11") {
  const auto rep = verify_example(build_example(11, 2));
  CHECK(rep.family_count == 5929);
  CHECK(rep.all_collinear);
  CHECK(rep.in_sets == 4477);
  CHECK(rep.max_line == std::array<std::uint64_t, 3>{11, 11, 11});
  CHECK(*rep.triple_count == 4477);
}

TEST_CASE("family collinear over the grid") {
  for (auto [p, k] : {std::pair{13u, 3u}, std::pair{31u, 2u}}) {
    const auto rep = verify_example(build_example(p, k), false);
    CHECK(rep.all_collinear);
    CHECK(rep.all_distinct);
    CHECK(rep.dichotomy_ok);
    CHECK_FALSE(rep.triple_count);
  }
}

TEST_CASE("diagonalize examples") {
  const Field f5 = Field::prime(5);
  const auto id = diagonalize_quadric(QuadricForm(linalg::identity(f5)));
  CHECK(id.verified);
  CHECK(id.field == f5);
  CHECK(id.chain == std::vector<std::string>{"5"});
  CHECK(id.transform == linalg::identity(f5));

  const auto ext = diagonalize_quadric(QuadricForm(diag(f5, {1, 1, 1, 3})));
  CHECK(ext.verified);
  CHECK(ext.field.order() == 25);
  CHECK(ext.chain.size() == 2);
  const Field& f25 = ext.field;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) CHECK(ext.transform[i][j].is_zero());
  for (std::size_t i = 0; i < 3; ++i) CHECK(ext.transform[i][i] == f25.one());
  CHECK(ext.transform[3][3] * ext.transform[3][3] * f25.from_int(3) == f25.one());

  const auto four = diagonalize_quadric(QuadricForm(diag(f5, {1, 1, 1, 4})));
  CHECK(four.field == f5);
  CHECK(four.transform == diag(f5, {1, 1, 1, 3}));

  CHECK(kind_of([&] { (void)diagonalize_quadric(QuadricForm(diag(f5, {1, 1, 1, 0}))); }) == ErrorKind::SingularForm);
  const Field f2 = Field::prime(2);
  CHECK(kind_of([&] { (void)diagonalize_quadric(QuadricForm(linalg::identity(f2))); }) == ErrorKind::CharTwo);
}

TEST_CASE("diagonalize random smooth forms") {
  std::mt19937_64 rng(29);
  for (std::uint32_t p : {5u, 7u})
    for (int it = 0; it < 50; ++it) {
      const Field f = Field::prime(p);
      const Mat4 b = random_symmetric(f, rng);
      const auto d = diagonalize_quadric(QuadricForm(b));
      CHECK(d.verified);
      CHECK(d.chain.size() <= 2);
      CHECK_FALSE(linalg::det(d.transform).is_zero());
      const auto s = normalize_to_segre(QuadricForm(b));
      CHECK(s.verified);
      CHECK(s.chain.size() <= 3);
      CHECK(s.target == TargetForm::Segre);
    }
}

TEST_CASE("segre substitution") {
  const Field f5 = Field::prime(5);
  const Mat4 t = segre_substitution(f5);
  const Vec4 img = linalg::apply(t, Vec4{f5.one(), f5.zero(), f5.one(), f5.zero()});
  CHECK(normalize(img) == pt(f5, {1, 2, 1, 2}));

  // (x, y, w, z): sum (T v)_k^2 = 4 (xz - yw) on all of F5^4.
  std::size_t points = 0;
  for (const auto& x : f5.elements())
    for (const auto& y : f5.elements())
      for (const auto& w : f5.elements())
        for (const auto& z : f5.elements()) {
          const Vec4 tv = linalg::apply(t, Vec4{x, y, w, z});
          CHECK(linalg::dot(tv, tv) == f5.from_int(4) * (x * z - y * w));
          ++points;
        }
  CHECK(points == 625);

  const auto n = to_segre_form(f5);
  CHECK(n.verified);
  CHECK(n.scalar == f5.from_int(2));
  CHECK(kind_of([] { (void)segre_substitution(Field::prime(7)); }) == ErrorKind::NoSqrtMinusOne);
  CHECK(kind_of([] { (void)segre_substitution(Field::prime(2)); }) == ErrorKind::CharTwo);
  CHECK(to_segre_form(Field::extension(7, 2)).verified);
}

TEST_CASE("fixed points of diag(1, 2, 1, 2)") {
  const Field f5 = Field::prime(5);
  const auto c = classify_fixed_points(pgl_canonical(diag(f5, {1, 2, 1, 2})));
  CHECK(c.kind == FixedKind::TwoLines);
  CHECK(c.status == PsoStatus::Unverified);
  CHECK(c.lambda == f5.from_int(2));
  CHECK(c.fixed.size() == 12);
  REQUIRE(c.lines.size() == 2);
  std::size_t on_first = 0, on_second = 0;
  for (const auto& p : c.fixed) {
    on_first += p[1].is_zero() && p[3].is_zero();
    on_second += p[0].is_zero() && p[2].is_zero();
  }
  CHECK(on_first == 6);
  CHECK(on_second == 6);
  CHECK(segre_quadric_points(f5).size() == 36);
}

TEST_CASE("classifier errors and simple shapes") {
  const Field f3 = Field::prime(3);
  CHECK(kind_of([&] { (void)classify_fixed_points(pgl_identity(f3)); }) == ErrorKind::IdentityElement);
  CHECK(kind_of([&] { (void)classify_fixed_points(pgl_canonical(diag(f3, {1, 1, 1, 2}))); }) ==
        ErrorKind::NotOnQuadricGroup);

  // x^2 + 1 is irreducible over F3, so A has no eigenline and A (x) I fixes nothing.
  const Mat2 a{{{f3.zero(), -f3.one()}, {f3.one(), f3.zero()}}};
  const Mat2 i2{{{f3.one(), f3.zero()}, {f3.zero(), f3.one()}}};
  const auto none = classify_fixed_points(pgl_canonical(kronecker(a, i2)));
  CHECK(none.kind == FixedKind::Finite);
  CHECK(none.fixed.empty());
  CHECK(none.status == PsoStatus::Verified);

  // diag(1, 2) (x) I fixes the two rulings {u} x P1 for the eigenlines u.
  const Mat2 e{{{f3.one(), f3.zero()}, {f3.zero(), f3.from_int(2)}}};
  CHECK(classify_fixed_points(pgl_canonical(kronecker(e, i2))).kind == FixedKind::TwoLines);

  // A unipotent factor has a single eigenline: one ruling.
  const Mat2 u{{{f3.one(), f3.one()}, {f3.zero(), f3.one()}}};
  const auto one = classify_fixed_points(pgl_canonical(kronecker(u, i2)));
  CHECK(one.kind == FixedKind::OneLine);
  CHECK(one.fixed.size() == 4);

  // Swapping the factors is improper.
  const Field f5 = Field::prime(5);
  Mat4 swap = linalg::identity(f5);
  std::swap(swap[1], swap[2]);
  CHECK(classify_fixed_points(pgl_canonical(swap)).status == PsoStatus::Improper);
}

TEST_CASE("kronecker products preserve the Segre quadric") {
  std::mt19937_64 rng(31);
  const Field f5 = Field::prime(5);
  const auto line = enumerate_p1(f5);
  for (int it = 0; it < 20; ++it) {
    const Mat2 a = random_gl2(f5, rng), b = random_gl2(f5, rng);
    const Mat4 k = kronecker(a, b);
    const auto lambda = orthogonal_multiplier(k, QuadricForm::segre(f5).matrix());
    REQUIRE(lambda);
    CHECK(*lambda == det2(a) * det2(b));
    const auto& u = line[rng() % line.size()];
    const auto& w = line[rng() % line.size()];
    const ProjPoint1 au = normalize(std::array<FieldElem, 2>{a[0][0] * u[0] + a[0][1] * u[1], a[1][0] * u[0] + a[1][1] * u[1]});
    const ProjPoint1 bw = normalize(std::array<FieldElem, 2>{b[0][0] * w[0] + b[0][1] * w[1], b[1][0] * w[0] + b[1][1] * w[1]});
    CHECK(pgl_act(pgl_canonical(k), segre(u, w)) == segre(au, bw));
  }
}

TEST_CASE("verified elements never give OTHER") {
  std::mt19937_64 rng(37);
  std::size_t verified = 0;
  for (const Field f : {Field::prime(5), Field::extension(3, 2)}) {
    const Mat4 t = segre_substitution(f);
    const PGLElem id = pgl_identity(f);
    for (int it = 0; it < 50; ++it) {
      const Mat2 a = random_gl2(f, rng), b = random_gl2(f, rng);
      const PGLElem g = pgl_canonical(kronecker(a, b));
      if (g == id || !is_square(det2(a) * det2(b))) continue;
      const auto c = classify_fixed_points(g);
      CHECK(c.status == PsoStatus::Verified);
      CHECK(c.kind != FixedKind::Other);
      ++verified;
    }
    // Products of two reflections in the sum-of-squares form, moved to Segre
    // coordinates by T, have square multiplier.
    for (int it = 0; it < 50; ++it) {
      const Mat4 r = linalg::mul(reflection_matrix(random_off_quadric(f, rng)),
                                 reflection_matrix(random_off_quadric(f, rng)));
      const PGLElem g = pgl_canonical(to_segre_coords(r, t));
      if (g == id) continue;
      const auto c = classify_fixed_points(g);
      CHECK(is_square(c.lambda));
      CHECK(c.status == PsoStatus::Verified);
      CHECK(c.kind != FixedKind::Other);
      ++verified;
    }
  }
  CHECK(verified >= 100);
}
