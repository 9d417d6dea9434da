#include "orchard/groups.hpp"

#include <sstream>

namespace orchard {

// ---------------------------------------------------------------------------
// G_a^2 x| G_m

std::string AffElem::to_string() const { return a.to_string() + ";" + b.to_string() + ";" + c.to_string(); }

AffElem AffElem::parse(const Field& f, const std::string& text) {
  std::stringstream ss(text);
  std::string tok;
  std::vector<FieldElem> parts;
  while (std::getline(ss, tok, ';')) parts.push_back(f.parse_elem(tok));
  if (parts.size() != 3) throw Error(ErrorKind::Parse, "affine element '" + text + "' needs a;b;c");
  return aff_make(parts[0], parts[1], parts[2]);
}

AffElem aff_identity(const Field& f) { return {f.zero(), f.zero(), f.one()}; }

AffElem aff_make(const FieldElem& a, const FieldElem& b, const FieldElem& c) {
  if (a.ctx() != b.ctx() || a.ctx() != c.ctx()) throw Error(ErrorKind::MixedContexts, "affine element fields differ");
  if (c.is_zero()) throw Error(ErrorKind::InvalidArgument, "affine element needs c != 0");
  return {a, b, c};
}

AffElem aff_compose(const AffElem& g, const AffElem& h) {
  return {h.a + g.a * h.c, h.b + g.b * h.c, g.c * h.c};
}

AffElem aff_inverse(const AffElem& g) {
  const FieldElem ic = inv(g.c);
  return {-(g.a * ic), -(g.b * ic), ic};
}

ProjPoint aff_act(const AffElem& g, const ProjPoint& p) {
  if (!p[0].is_zero()) throw Error(ErrorKind::PointOffPlane, "star action is defined on P1 = {x0 = 0}");
  return normalize(Vec4{p[0], g.c * p[1], p[2] + g.a * p[1], p[3] + g.b * p[1]});
}

AffElem aff_commutator(const AffElem& g, const AffElem& h) {
  return aff_compose(aff_compose(aff_inverse(g), aff_inverse(h)), aff_compose(g, h));
}

AffElem commutator_formula(const AffElem& g, const AffElem& gp) {
  const FieldElem cm1 = gp.c - gp.c.field().one();
  return {g.a * cm1, g.b * cm1, gp.c.field().one()};
}

AffElem commutator_formula_check(const AffElem& g, const AffElem& gp) {
  if (!g.c.is_one()) throw Error(ErrorKind::NotApplicable, "commutator formula needs g = (a, b, 1)");
  return aff_commutator(g, gp);
}

bool aff_centralizer_member(const AffElem& h, const AffElem& g) {
  if (g.c.is_one()) throw Error(ErrorKind::NotApplicable, "centralizer formula needs m != 1");
  const FieldElem one = g.c.field().one();
  const FieldElem k = (h.c - one) / (g.c - one);
  return h.a == g.a * k && h.b == g.b * k;
}

std::vector<AffElem> affine_group_elements(const Field& f) {
  const auto elems = f.elements();
  std::vector<AffElem> out;
  out.reserve(static_cast<std::size_t>(f.order()) * f.order() * (f.order() - 1));
  for (const auto& a : elems)
    for (const auto& b : elems)
      for (const auto& c : elems)
        if (!c.is_zero()) out.push_back({a, b, c});
  return out;
}

StdThreePlaneFrame StdThreePlaneFrame::make(const Field& f) {
  const FieldElem z = f.zero();
  const FieldElem o = f.one();
  return {ProjPlane::from_dual({o, z, z, z}), ProjPlane::from_dual({z, o, z, z})};
}

ProjPoint eta(const ProjPoint& x, const ProjPlane& from, const ProjPlane& to, const ProjPoint& a) {
  if (from.contains(x) || to.contains(x)) throw Error(ErrorKind::BadCenter, "center lies on one of the planes");
  if (!from.contains(a)) throw Error(ErrorKind::PointOffPlane, "point is not on the source plane");
  if (to.contains(a)) return a;
  return meet_line_plane(line_through(a, x), to);
}

AffElem gamma_xy(const ProjPoint& x, const ProjPoint& y) {
  if (x[0].is_zero() || x[1].is_zero() || y[0].is_zero() || y[1].is_zero())
    throw Error(ErrorKind::OnExcludedPlane, "gamma_xy needs x, y off P1 ∪ P2");
  if (x[0].ctx() != y[0].ctx()) throw Error(ErrorKind::MixedContexts, "points from different fields");
  // x = [a:1:c:d], y = [1:b':c':d']
  const FieldElem sx = inv(x[1]);
  const FieldElem a = x[0] * sx, c = x[2] * sx, d = x[3] * sx;
  const FieldElem sy = inv(y[0]);
  const FieldElem bp = y[1] * sy, cp = y[2] * sy, dp = y[3] * sy;
  return {cp * a - c, dp * a - d, bp * a};
}

// ---------------------------------------------------------------------------
// PGL_4

std::string PGLElem::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i || j) s += ";";
      s += m_[i][j].to_string();
    }
  return s;
}

PGLElem PGLElem::parse(const Field& f, const std::string& text) {
  std::stringstream ss(text);
  std::string tok;
  std::vector<FieldElem> parts;
  while (std::getline(ss, tok, ';')) parts.push_back(f.parse_elem(tok));
  if (parts.size() != 16) throw Error(ErrorKind::Parse, "PGL element needs 16 entries");
  Mat4 m;
  for (std::size_t i = 0; i < 16; ++i) m[i / 4][i % 4] = parts[i];
  return pgl_canonical(m);
}

PGLElem pgl_canonical(const Mat4& m) {
  if (linalg::det(m).is_zero()) throw Error(ErrorKind::Singular, "PGL element must be invertible");
  FieldElem lead;
  for (const auto& row : m) {
    for (const auto& x : row) {
      if (!x.is_zero()) {
        lead = x;
        break;
      }
    }
    if (lead.ctx() != nullptr) break;
  }
  PGLElem g;
  g.m_ = linalg::scale(m, inv(lead));
  return g;
}

PGLElem pgl_identity(const Field& f) { return pgl_canonical(linalg::identity(f)); }

PGLElem pgl_compose(const PGLElem& g, const PGLElem& h) { return pgl_canonical(linalg::mul(g.matrix(), h.matrix())); }

PGLElem pgl_inverse(const PGLElem& g) { return pgl_canonical(linalg::inverse(g.matrix())); }

ProjPoint pgl_act(const PGLElem& g, const ProjPoint& p) { return normalize(linalg::apply(g.matrix(), p.coords())); }

std::optional<FieldElem> orthogonal_multiplier(const Mat4& m, const Mat4& b) {
  const Mat4 lhs = linalg::mul(linalg::transpose(m), linalg::mul(b, m));
  std::optional<FieldElem> lambda;
  for (std::size_t i = 0; i < 4 && !lambda; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!b[i][j].is_zero()) {
        lambda = lhs[i][j] / b[i][j];
        break;
      }
  if (!lambda || lambda->is_zero()) return std::nullopt;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!(lhs[i][j] == *lambda * b[i][j])) return std::nullopt;
  return lambda;
}

bool is_orthogonal_mod_scalar(const Mat4& m, const Mat4& b) { return orthogonal_multiplier(m, b).has_value(); }

Mat4 reflection_matrix(const ProjPoint& x) {
  const Field f = x.field();
  if (f.characteristic() == 2) throw Error(ErrorKind::CharTwo, "reflections need characteristic != 2");
  const Vec4& v = x.coords();
  const FieldElem n = linalg::dot(v, v);
  if (n.is_zero()) throw Error(ErrorKind::PointOnQuadric, "center lies on the quadric");
  const FieldElem k = f.from_int(2) / n;
  Mat4 m = linalg::identity(f);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m[i][j] -= k * v[i] * v[j];
  return m;
}

PGLElem reflection_lift(const ProjPoint& x, const QuadricForm& q) {
  if (!(q.matrix() == linalg::identity(x.field())))
    throw Error(ErrorKind::InvalidArgument, "reflection_lift expects the sum-of-squares form");
  return pgl_canonical(reflection_matrix(x));
}

ProjPoint gamma_x(const ProjPoint& x, const ProjPoint& y, const QuadricForm& q) {
  if (x.field().characteristic() == 2) throw Error(ErrorKind::CharTwo, "quadric involutions need characteristic != 2");
  const FieldElem qx = q.value(x.coords());
  if (qx.is_zero()) throw Error(ErrorKind::PointOnQuadric, "center lies on the quadric");
  if (!q.value(y.coords()).is_zero()) throw Error(ErrorKind::PointOffQuadric, "y is not on the quadric");
  // Along u v_y + s v_x the form is s (2u B(x,y) + s Q(x)); the second root is
  // (s, u) = (-2 B(x,y), Q(x)), which collapses to y on a tangent line.
  const FieldElem bxy = q.polar(x.coords(), y.coords());
  const FieldElem two = x.field().from_int(2);
  Vec4 z;
  for (std::size_t i = 0; i < 4; ++i) z[i] = qx * y[i] - two * bxy * x[i];
  return normalize(z);
}

// ---------------------------------------------------------------------------
// Segre embedding

ProjPoint segre(const ProjPoint1& u, const ProjPoint1& w) {
  if (u[0].ctx() != w[0].ctx()) throw Error(ErrorKind::MixedContexts, "segre factors from different fields");
  return normalize(Vec4{u[0] * w[0], u[0] * w[1], u[1] * w[0], u[1] * w[1]});
}

std::pair<ProjPoint1, ProjPoint1> segre_inverse(const ProjPoint& p) {
  if (!(p[0] * p[3] == p[1] * p[2])) throw Error(ErrorKind::NotOnSegreQuadric, "point violates x1 x4 = x2 x3");
  // Columns of [[x1, x2], [x3, x4]] are multiples of u, rows of w.
  const ProjPoint1 u = (!p[0].is_zero() || !p[2].is_zero()) ? normalize(std::array{p[0], p[2]})
                                                            : normalize(std::array{p[1], p[3]});
  const ProjPoint1 w = (!p[0].is_zero() || !p[1].is_zero()) ? normalize(std::array{p[0], p[1]})
                                                            : normalize(std::array{p[2], p[3]});
  return {u, w};
}

}  // namespace orchard
