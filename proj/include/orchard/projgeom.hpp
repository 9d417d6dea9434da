#pragma once

// Canonical projective objects in P^1 and P^3 over a finite field.
//
// Points are stored with their first nonzero coordinate equal to 1, lines as
// the reduced row-echelon form of a 2x4 basis and planes by a canonical dual
// vector. Equal geometric objects are therefore equal structurally, which is
// what the hashing kernels in incidence rely on.

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "orchard/field.hpp"

namespace orchard {

using Vec4 = std::array<FieldElem, 4>;
using Mat4 = std::array<Vec4, 4>;

namespace linalg {

Mat4 identity(const Field& f);
Mat4 zero(const Field& f);
Mat4 diagonal(const Vec4& d);
Mat4 mul(const Mat4& a, const Mat4& b);
Mat4 transpose(const Mat4& a);
Mat4 scale(const Mat4& a, const FieldElem& s);
Vec4 apply(const Mat4& m, const Vec4& v);
FieldElem dot(const Vec4& a, const Vec4& b);
/// v^T B w
FieldElem bilinear(const Mat4& b, const Vec4& v, const Vec4& w);
FieldElem det(const Mat4& m);
/// Throws Singular.
Mat4 inverse(const Mat4& m);
/// Rank of the given rows (each of length 4).
std::size_t rank(std::span<const Vec4> rows);
/// Reduced row-echelon form in place; returns the rank.
std::size_t rref(std::vector<Vec4>& rows);
/// Applies f coordinate-wise (used to carry matrices along field embeddings).
Mat4 map(const Mat4& m, const std::function<FieldElem(const FieldElem&)>& f);

}  // namespace linalg

template <std::size_t N>
class HomPoint {
 public:
  using Coords = std::array<FieldElem, N>;

  HomPoint() = default;

  /// Canonical representative (first nonzero coordinate 1). Throws ZeroVector.
  static HomPoint normalize(const Coords& coords) {
    std::size_t lead = N;
    for (std::size_t i = 0; i < N; ++i) {
      if (!coords[i].is_zero()) {
        lead = i;
        break;
      }
    }
    if (lead == N) throw Error(ErrorKind::ZeroVector, "all homogeneous coordinates are zero");
    const Field f = coords[lead].field();
    for (const auto& c : coords)
      if (c.ctx() != f.data()) throw Error(ErrorKind::MixedContexts, "coordinates from different fields");
    HomPoint out;
    const FieldElem s = inv(coords[lead]);
    for (std::size_t i = 0; i < N; ++i) out.c_[i] = coords[i] * s;
    return out;
  }

  const Coords& coords() const noexcept { return c_; }
  const FieldElem& operator[](std::size_t i) const { return c_[i]; }
  Field field() const { return c_[0].field(); }

  bool operator==(const HomPoint&) const = default;
  auto operator<=>(const HomPoint&) const = default;

  /// Colon-separated coordinate text, e.g. "0:1:2:1".
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < N; ++i) {
      if (i) s += ":";
      s += c_[i].to_string();
    }
    return s;
  }

 private:
  Coords c_{};
};

using ProjPoint = HomPoint<4>;
using ProjPoint1 = HomPoint<2>;

class ProjLine {
 public:
  ProjLine() = default;
  /// Line spanned by two independent vectors; canonical RREF basis.
  static ProjLine span(const Vec4& a, const Vec4& b);

  const std::array<Vec4, 2>& basis() const noexcept { return rows_; }
  bool contains(const ProjPoint& p) const;
  /// The q+1 points of the line, in parameter order.
  std::vector<ProjPoint> points() const;

  bool operator==(const ProjLine&) const = default;
  auto operator<=>(const ProjLine&) const = default;
  std::string to_string() const;

 private:
  std::array<Vec4, 2> rows_{};
};

class ProjPlane {
 public:
  ProjPlane() = default;
  /// Plane {x : dual . x = 0}; throws ZeroVector on a zero dual vector.
  static ProjPlane from_dual(const Vec4& dual);
  static ProjPlane through(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c);

  const Vec4& dual() const noexcept { return dual_; }
  bool contains(const ProjPoint& p) const;

  bool operator==(const ProjPlane&) const = default;
  auto operator<=>(const ProjPlane&) const = default;
  std::string to_string() const;

 private:
  Vec4 dual_{};
};

/// Quadric {v : v^T B v = 0} given by its symmetric matrix.
class QuadricForm {
 public:
  QuadricForm() = default;
  /// Throws InvalidArgument when B is not symmetric.
  explicit QuadricForm(const Mat4& b);
  /// x1^2 + x2^2 + x3^2 + x4^2
  static QuadricForm sum_of_squares(const Field& f);
  /// x1 x4 - x2 x3, scaled by 2 so that it exists in every characteristic.
  static QuadricForm segre(const Field& f);

  const Mat4& matrix() const noexcept { return b_; }
  bool smooth() const;
  FieldElem value(const Vec4& v) const;
  FieldElem polar(const Vec4& v, const Vec4& w) const;

 private:
  Mat4 b_{};
};

ProjPoint normalize(const Vec4& coords);
ProjPoint1 normalize(const std::array<FieldElem, 2>& coords);
/// Throws EqualPoints.
ProjLine line_through(const ProjPoint& p, const ProjPoint& q);
/// rank(v_p, v_q, v_r) <= 2; repeated points are collinear.
bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r);
/// Throws LineInPlane.
ProjPoint meet_line_plane(const ProjLine& line, const ProjPlane& plane);
/// Line P1 ∩ P2; throws EqualPlanes.
ProjLine meet_planes(const ProjPlane& a, const ProjPlane& b);
bool on_quadric(const ProjPoint& p, const QuadricForm& q);

std::vector<ProjPoint> enumerate_p3(const Field& f);
std::vector<ProjPoint1> enumerate_p1(const Field& f);
/// Planes of the pencil through the line a ∩ b (q+1 of them, a and b included).
std::vector<ProjPlane> pencil(const ProjPlane& a, const ProjPlane& b);
/// Every line of P^3 contained in the plane.
std::vector<ProjLine> lines_in_plane(const ProjPlane& plane);

/// A parsed point-set file.
struct PointSet {
  Field field;
  std::vector<ProjPoint> points;
};

ProjPoint parse_point(const Field& f, const std::string& text);
/// Reads the text point-set format. Duplicate canonical points raise
/// DuplicateElements unless allow_dup collapses them.
PointSet read_points(std::istream& in, bool allow_dup = false);
PointSet read_points_file(const std::string& path, bool allow_dup = false);
void write_points(std::ostream& out, const Field& f, std::span<const ProjPoint> points,
                  const std::string& comment = "");

}  // namespace orchard

template <std::size_t N>
struct std::hash<orchard::HomPoint<N>> {
  std::size_t operator()(const orchard::HomPoint<N>& p) const noexcept {
    std::size_t h = 0;
    for (const auto& c : p.coords()) h = h * 1'000'003u + c.index();
    return h;
  }
};

template <>
struct std::hash<orchard::ProjLine> {
  std::size_t operator()(const orchard::ProjLine& l) const noexcept {
    std::size_t h = 0;
    for (const auto& row : l.basis())
      for (const auto& c : row) h = h * 1'000'003u + c.index();
    return h;
  }
};

template <>
struct std::hash<orchard::ProjPlane> {
  std::size_t operator()(const orchard::ProjPlane& pl) const noexcept {
    std::size_t h = 0;
    for (const auto& c : pl.dual()) h = h * 1'000'003u + c.index();
    return h;
  }
};
