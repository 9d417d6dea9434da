#pragma once

// The two group encodings of collinear triples.
//
// Three planes: with P1 = {x0 = 0} and P2 = {x1 = 0}, the composed central
// projection eta_y^{-1} o eta_x : P1 -> P1 is the element (a, b, c) of
// G_a^2 x| G_m acting by (a,b,c) * [0:s1:s2:s3] = [0 : c s1 : s2 + a s1 : s3 + b s1].
//
// Quadrics: for x off Q, gamma_x swaps the two points of Q on each line through
// x; for the sum-of-squares form it lifts to the orthogonal reflection in v_x.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orchard/projgeom.hpp"

namespace orchard {

/// Element (a, b, c) of G_a(K)^2 x| G_m(K); c != 0.
struct AffElem {
  FieldElem a;
  FieldElem b;
  FieldElem c;

  bool operator==(const AffElem&) const = default;
  auto operator<=>(const AffElem&) const = default;

  /// "a;b;c" with the coordinate encoding of point files.
  std::string to_string() const;
  static AffElem parse(const Field& f, const std::string& text);
};

AffElem aff_identity(const Field& f);
AffElem aff_make(const FieldElem& a, const FieldElem& b, const FieldElem& c);
/// g o h, i.e. aff_act(aff_compose(g, h), p) == aff_act(g, aff_act(h, p)).
AffElem aff_compose(const AffElem& g, const AffElem& h);
AffElem aff_inverse(const AffElem& g);
/// Star action on P1 = {x0 = 0}; throws PointOffPlane.
ProjPoint aff_act(const AffElem& g, const ProjPoint& p);
/// [g, h] = g^-1 h^-1 g h
AffElem aff_commutator(const AffElem& g, const AffElem& h);
/// Closed form (a(c'-1), b(c'-1), 1) of [g, g'] for g = (a, b, 1), g' = (a', b', c').
AffElem commutator_formula(const AffElem& g, const AffElem& gp);
/// Commutator computed through compose/inverse for g = (a, b, 1); throws
/// NotApplicable if g has c != 1.
AffElem commutator_formula_check(const AffElem& g, const AffElem& gp);
/// For g = (a, b, m) with m != 1: h = (x, y, z) satisfies x = a(z-1)/(m-1) and
/// y = b(z-1)/(m-1). Throws NotApplicable when m == 1.
bool aff_centralizer_member(const AffElem& h, const AffElem& g);
/// Every element of G_a^2 x| G_m over f, q^2 (q-1) of them.
std::vector<AffElem> affine_group_elements(const Field& f);

/// The standard frame P1 = {x0 = 0}, P2 = {x1 = 0}.
struct StdThreePlaneFrame {
  ProjPlane p1;
  ProjPlane p2;
  static StdThreePlaneFrame make(const Field& f);
};

/// Central projection from x: the point line(a, x) ∩ to. Throws BadCenter
/// when x lies on either plane and PointOffPlane when a is not on `from`.
ProjPoint eta(const ProjPoint& x, const ProjPlane& from, const ProjPlane& to, const ProjPoint& a);
/// gamma_{x,y} = eta_y^{-1} o eta_x as (c'a - c, d'a - d, b'a) for
/// x = [a:1:c:d], y = [1:b':c':d']. Throws OnExcludedPlane.
AffElem gamma_xy(const ProjPoint& x, const ProjPoint& y);

/// Element of PGL_4 with canonical scaling: first nonzero entry (row-major) is 1.
class PGLElem {
 public:
  PGLElem() = default;
  const Mat4& matrix() const noexcept { return m_; }
  Field field() const { return m_[0][0].field(); }

  bool operator==(const PGLElem&) const = default;
  auto operator<=>(const PGLElem&) const = default;

  /// 16 coordinates, row-major, semicolon-separated.
  std::string to_string() const;
  static PGLElem parse(const Field& f, const std::string& text);

 private:
  friend PGLElem pgl_canonical(const Mat4& m);
  Mat4 m_{};
};

/// Throws Singular.
PGLElem pgl_canonical(const Mat4& m);
PGLElem pgl_identity(const Field& f);
PGLElem pgl_compose(const PGLElem& g, const PGLElem& h);
PGLElem pgl_inverse(const PGLElem& g);
ProjPoint pgl_act(const PGLElem& g, const ProjPoint& p);
/// Returns lambda with M^T B M = lambda B when it exists.
std::optional<FieldElem> orthogonal_multiplier(const Mat4& m, const Mat4& b);
bool is_orthogonal_mod_scalar(const Mat4& m, const Mat4& b);

/// O_4 matrix v -> v - 2 (v.v_x)/(v_x.v_x) v_x. Throws PointOnQuadric, CharTwo.
Mat4 reflection_matrix(const ProjPoint& x);
/// reflection_matrix(x) as an element of PGL_4. Q must be the sum-of-squares form.
PGLElem reflection_lift(const ProjPoint& x, const QuadricForm& q);
/// Second intersection of line(x, y) with Q; y itself on a tangent line.
/// Throws PointOnQuadric (x ∈ Q) and PointOffQuadric (y ∉ Q).
ProjPoint gamma_x(const ProjPoint& x, const ProjPoint& y, const QuadricForm& q);

/// ([x:y], [w:z]) -> [xw : xz : yw : yz]
ProjPoint segre(const ProjPoint1& u, const ProjPoint1& w);
/// Inverse on x1 x4 = x2 x3; throws NotOnSegreQuadric.
std::pair<ProjPoint1, ProjPoint1> segre_inverse(const ProjPoint& p);

}  // namespace orchard
