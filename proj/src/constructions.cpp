#include "orchard/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include <gmpxx.h>

namespace orchard {

// ---------------------------------------------------------------------------
// Extremal three-plane configuration

namespace {

FieldElem d_pow(const ExampleConfig& cfg, std::int64_t e) {
  const std::int64_t order = cfg.p - 1;
  const std::int64_t r = ((e % order) + order) % order;
  return pow(cfg.field.from_int(cfg.d), static_cast<std::uint64_t>(r));
}

}  // namespace

ExampleConfig build_example(std::uint32_t p, unsigned ku, unsigned kv) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorKind::InvalidArgument, "p must be an odd prime");
  if (kv == 0 || ku <= kv) throw Error(ErrorKind::InvalidArgument, "k = u/v must exceed 1");
  ExampleConfig cfg;
  cfg.p = p;
  cfg.ku = ku;
  cfg.kv = kv;
  // N = floor(p^(v/u)): the largest N with N^u <= p^v.
  mpz_class bound, root;
  mpz_ui_pow_ui(bound.get_mpz_t(), p, kv);
  mpz_root(root.get_mpz_t(), bound.get_mpz_t(), ku);
  cfg.n = static_cast<std::uint32_t>(root.get_ui());
  if (2ull * cfg.n + 1 > p - 1)
    throw Error(ErrorKind::DegenerateParameters,
                "2N+1 = " + std::to_string(2 * cfg.n + 1) + " exceeds p-1 = " + std::to_string(p - 1));
  cfg.d = least_primitive_root(p);
  cfg.field = Field::prime(p);
  const Field& f = cfg.field;
  const FieldElem z = f.zero(), o = f.one();
  cfg.p1 = ProjPlane::from_dual({o, z, z, z});
  cfg.p2 = ProjPlane::from_dual({z, o, z, z});
  cfg.p3 = ProjPlane::from_dual({z, z, o, -o});
  const auto n = static_cast<std::int64_t>(cfg.n);
  for (std::int64_t i = -n; i <= n; ++i) {
    const FieldElem di = d_pow(cfg, i);
    for (const auto& t : f.elements()) {
      cfg.x1.push_back(normalize(Vec4{z, di, t, t - o}));
      cfg.x2.push_back(normalize(Vec4{-di, z, t, t - o}));
      cfg.x3.push_back(normalize(Vec4{di, o, t, t}));
    }
  }
  return cfg;
}

std::array<ProjPoint, 3> family_triple(const ExampleConfig& cfg, std::int64_t i, std::int64_t j, std::uint32_t t,
                                       std::uint32_t z) {
  const Field& f = cfg.field;
  const FieldElem di = d_pow(cfg, i), dj = d_pow(cfg, j), dij = d_pow(cfg, i + j);
  const FieldElem tt = f.from_int(t), zz = f.from_int(z), o = f.one(), zero = f.zero();
  return {normalize(Vec4{zero, dj, zz, zz - o}), normalize(Vec4{-dij, zero, zz - tt * dj, zz - o - tt * dj}),
          normalize(Vec4{di, o, tt, tt})};
}

ExampleReport verify_example(const ExampleConfig& cfg, bool count_triples) {
  ExampleReport rep;
  const std::unordered_set<ProjPoint> s1(cfg.x1.begin(), cfg.x1.end());
  const std::unordered_set<ProjPoint> s2(cfg.x2.begin(), cfg.x2.end());
  const std::unordered_set<ProjPoint> s3(cfg.x3.begin(), cfg.x3.end());
  const auto n = static_cast<std::int64_t>(cfg.n);
  for (std::int64_t i = -n; i <= n; ++i)
    for (std::int64_t j = -n; j <= n; ++j)
      for (std::uint32_t t = 0; t < cfg.p; ++t)
        for (std::uint32_t z = 0; z < cfg.p; ++z) {
          const auto [a, b, c] = family_triple(cfg, i, j, t, z);
          ++rep.family_count;
          const bool col = collinear(a, b, c);
          const bool dis = a != b && b != c && a != c;
          if (!col || !dis)
            throw Error(ErrorKind::VerificationFailure,
                        "family triple (" + a.to_string() + ", " + b.to_string() + ", " + c.to_string() + ") at i=" +
                            std::to_string(i) + " j=" + std::to_string(j) + " t=" + std::to_string(t) +
                            " z=" + std::to_string(z) + (col ? " repeats a point" : " is not collinear"));
          ++rep.collinear;
          ++rep.distinct;
          const bool m1 = s1.contains(a), m2 = s2.contains(b), m3 = s3.contains(c);
          rep.in_x1 += m1;
          rep.in_x2 += m2;
          rep.in_x3 += m3;
          if (m1 && m2 && m3) ++rep.in_sets;
          else if (!rep.first_outside) rep.first_outside = std::array<std::int64_t, 4>{i, j, t, z};
        }
  rep.all_collinear = rep.collinear == rep.family_count;
  rep.all_distinct = rep.distinct == rep.family_count;
  rep.all_in_sets = rep.in_sets == rep.family_count;

  rep.dichotomy_bound = std::max<std::uint64_t>(2ull * cfg.n + 1, cfg.p);
  rep.dichotomy_ok = true;
  const std::array<const std::vector<ProjPoint>*, 3> sets{&cfg.x1, &cfg.x2, &cfg.x3};
  for (std::size_t k = 0; k < 3; ++k) {
    rep.max_line[k] = line_concentration(*sets[k]).max_line;
    if (rep.max_line[k] > rep.dichotomy_bound) rep.dichotomy_ok = false;
  }
  if (!rep.dichotomy_ok)
    throw Error(ErrorKind::VerificationFailure, "a line meets some X_i in more than max(2N+1, p) points");

  if (count_triples) {
    rep.triple_count = count_collinear_triples(cfg.x1, cfg.x2, cfg.x3).total;
    rep.count_covers_family = *rep.triple_count >= rep.family_count;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Quadric normalization

namespace {

Mat4 embed(const Mat4& m, const Embedding& e) {
  return linalg::map(m, [&](const FieldElem& x) { return e(x); });
}

Vec4 column(const Mat4& m, std::size_t j) { return {m[0][j], m[1][j], m[2][j], m[3][j]}; }

void require_odd(const Field& f) {
  if (f.characteristic() == 2) throw Error(ErrorKind::CharTwo, "quadric normalization needs characteristic != 2");
}

}  // namespace

QuadricNormalization diagonalize_quadric(const QuadricForm& form) {
  const Mat4& b = form.matrix();
  const Field f = b[0][0].field();
  require_odd(f);
  if (linalg::det(b).is_zero()) throw Error(ErrorKind::SingularForm, "quadric form is degenerate");

  // Orthogonal basis by symmetric Gram-Schmidt.
  std::vector<Vec4> rest;
  for (std::size_t i = 0; i < 4; ++i) rest.push_back(column(linalg::identity(f), i));
  std::vector<Vec4> basis;
  std::vector<FieldElem> diag;
  while (!rest.empty()) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < rest.size() && !pick; ++i)
      if (!linalg::bilinear(b, rest[i], rest[i]).is_zero()) pick = i;
    if (!pick) {
      // Every remaining vector is isotropic; w_i + w_j is not when B(w_i, w_j) != 0.
      for (std::size_t i = 0; i < rest.size() && !pick; ++i)
        for (std::size_t j = i + 1; j < rest.size(); ++j)
          if (!linalg::bilinear(b, rest[i], rest[j]).is_zero()) {
            for (std::size_t k = 0; k < 4; ++k) rest[i][k] += rest[j][k];
            pick = i;
            break;
          }
      if (!pick) throw Error(ErrorKind::SingularForm, "quadric form is degenerate");
    }
    const Vec4 v = rest[*pick];
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(*pick));
    const FieldElem qv = linalg::bilinear(b, v, v);
    for (auto& w : rest) {
      const FieldElem c = linalg::bilinear(b, w, v) / qv;
      for (std::size_t k = 0; k < 4; ++k) w[k] -= c * v[k];
    }
    basis.push_back(v);
    diag.push_back(qv);
  }

  QuadricNormalization out;
  out.source = b;
  out.base = f;
  out.field = f;
  out.embedding = Embedding::identity(f);
  out.chain.push_back(f.descriptor());
  // One quadratic extension makes every element of the base field a square.
  for (const auto& d : diag)
    if (!is_square(d)) {
      const AdjoinedRoot adj = adjoin_sqrt(f, d);
      out.field = adj.field;
      out.embedding = adj.embedding;
      out.chain.push_back(adj.field.descriptor());
      break;
    }
  Mat4 p;
  for (std::size_t j = 0; j < 4; ++j) {
    const FieldElem s = inv(*sqrt(out.embedding(diag[j])));
    for (std::size_t i = 0; i < 4; ++i) p[i][j] = out.embedding(basis[j][i]) * s;
  }
  out.transform = p;
  out.target = TargetForm::SumOfSquares;
  out.scalar = out.field.one();
  const Mat4 check = linalg::mul(linalg::transpose(p), linalg::mul(embed(b, out.embedding), p));
  out.verified = check == linalg::identity(out.field);
  return out;
}

Mat4 segre_substitution(const Field& f) {
  require_odd(f);
  const auto i = sqrt(-f.one());
  if (!i) throw Error(ErrorKind::NoSqrtMinusOne, "-1 is not a square in " + f.descriptor());
  const FieldElem z = f.zero(), o = f.one();
  return {Vec4{o, z, z, o}, Vec4{*i, z, z, -*i}, Vec4{z, -o, o, z}, Vec4{z, *i, *i, z}};
}

QuadricNormalization to_segre_form(const Field& f) {
  QuadricNormalization out;
  out.source = linalg::identity(f);
  out.base = f;
  out.field = f;
  out.embedding = Embedding::identity(f);
  out.chain.push_back(f.descriptor());
  out.target = TargetForm::Segre;
  out.transform = segre_substitution(f);
  out.scalar = f.from_int(2);
  const Mat4 check = linalg::mul(linalg::transpose(out.transform), out.transform);
  out.verified = check == linalg::scale(QuadricForm::segre(f).matrix(), out.scalar);
  return out;
}

QuadricNormalization normalize_to_segre(const QuadricForm& form) {
  QuadricNormalization out = diagonalize_quadric(form);
  if (!is_square(-out.field.one())) {
    const AdjoinedRoot adj = adjoin_sqrt(out.field, -out.field.one());
    out.embedding = out.embedding.then(adj.embedding);
    out.transform = embed(out.transform, adj.embedding);
    out.field = adj.field;
    out.chain.push_back(adj.field.descriptor());
  }
  out.transform = linalg::mul(out.transform, segre_substitution(out.field));
  out.target = TargetForm::Segre;
  out.scalar = out.field.from_int(2);
  const Mat4& m = out.transform;
  const Mat4 check = linalg::mul(linalg::transpose(m), linalg::mul(embed(out.source, out.embedding), m));
  out.verified = check == linalg::scale(QuadricForm::segre(out.field).matrix(), out.scalar);
  return out;
}

// ---------------------------------------------------------------------------
// Fixed points on the Segre quadric

std::string to_string(FixedKind k) {
  switch (k) {
    case FixedKind::Finite: return "FINITE";
    case FixedKind::OneLine: return "ONE_LINE";
    case FixedKind::TwoLines: return "TWO_LINES";
    case FixedKind::Other: return "OTHER";
  }
  return "?";
}

std::string to_string(PsoStatus s) {
  switch (s) {
    case PsoStatus::Verified: return "verified";
    case PsoStatus::Unverified: return "unverified";
    case PsoStatus::Improper: return "improper";
  }
  return "?";
}

std::vector<ProjPoint> segre_quadric_points(const Field& f) {
  std::vector<ProjPoint> out;
  const auto line = enumerate_p1(f);
  for (const auto& u : line)
    for (const auto& w : line) out.push_back(segre(u, w));
  std::sort(out.begin(), out.end());
  return out;
}

Mat4 kronecker(const std::array<std::array<FieldElem, 2>, 2>& a, const std::array<std::array<FieldElem, 2>, 2>& b) {
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m[i][j] = a[i / 2][j / 2] * b[i % 2][j % 2];
  return m;
}

PsoStatus pso_status(const Mat4& m, const FieldElem& lambda) {
  const FieldElem det = linalg::det(m);
  const FieldElem l2 = lambda * lambda;
  if (det == l2) return is_square(lambda) ? PsoStatus::Verified : PsoStatus::Unverified;
  if (det == -l2) return PsoStatus::Improper;
  throw Error(ErrorKind::NotOnQuadricGroup, "determinant is not +-lambda^2");
}

FixedPointClass classify_fixed_points(const PGLElem& g) {
  const Field f = g.field();
  if (f.characteristic() == 2) throw Error(ErrorKind::CharTwo, "classification needs characteristic != 2");
  if (g == pgl_identity(f)) throw Error(ErrorKind::IdentityElement, "the identity fixes all of Q");
  const auto lambda = orthogonal_multiplier(g.matrix(), QuadricForm::segre(f).matrix());
  if (!lambda) throw Error(ErrorKind::NotOnQuadricGroup, "element does not preserve x1 x4 - x2 x3");

  FixedPointClass out;
  out.lambda = *lambda;
  out.status = pso_status(g.matrix(), *lambda);
  for (const auto& p : segre_quadric_points(f))
    if (pgl_act(g, p) == p) out.fixed.push_back(p);

  // Lines on Q are the rulings {u} x P1 and P1 x {w}.
  const std::size_t full = f.order() + 1;
  std::map<ProjPoint1, std::vector<ProjPoint>> rows, cols;
  for (const auto& p : out.fixed) {
    const auto [u, w] = segre_inverse(p);
    rows[u].push_back(p);
    cols[w].push_back(p);
  }
  std::set<ProjPoint> on_lines;
  for (const auto* family : {&rows, &cols})
    for (const auto& [key, pts] : *family)
      if (pts.size() == full) {
        out.lines.push_back(line_through(pts[0], pts[1]));
        on_lines.insert(pts.begin(), pts.end());
      }
  const bool union_of_lines = !out.lines.empty() && on_lines.size() == out.fixed.size();
  if (union_of_lines && out.lines.size() == 1) out.kind = FixedKind::OneLine;
  else if (union_of_lines && out.lines.size() == 2) out.kind = FixedKind::TwoLines;
  else if (out.fixed.size() <= 4) out.kind = FixedKind::Finite;
  else out.kind = FixedKind::Other;
  if (out.kind != FixedKind::OneLine && out.kind != FixedKind::TwoLines) out.lines.clear();

  if (out.kind == FixedKind::Other && out.status == PsoStatus::Verified)
    throw Error(ErrorKind::VerificationFailure,
                "fixed set of " + g.to_string() + " has " + std::to_string(out.fixed.size()) +
                    " points and is neither finite, a line nor two lines");
  return out;
}

}  // namespace orchard
