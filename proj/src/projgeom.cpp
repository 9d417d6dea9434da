#include "orchard/projgeom.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace orchard {

namespace linalg {

Mat4 zero(const Field& f) {
  Mat4 m;
  for (auto& row : m) row.fill(f.zero());
  return m;
}

Mat4 identity(const Field& f) {
  Mat4 m = zero(f);
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = f.one();
  return m;
}

Mat4 diagonal(const Vec4& d) {
  Mat4 m = zero(d[0].field());
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = d[i];
  return m;
}

Mat4 mul(const Mat4& a, const Mat4& b) {
  Mat4 out = zero(a[0][0].field());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < 4; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Mat4 transpose(const Mat4& a) {
  Mat4 out = a;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i][j] = a[j][i];
  return out;
}

Mat4 scale(const Mat4& a, const FieldElem& s) {
  Mat4 out = a;
  for (auto& row : out)
    for (auto& x : row) x *= s;
  return out;
}

Vec4 apply(const Mat4& m, const Vec4& v) {
  Vec4 out;
  for (std::size_t i = 0; i < 4; ++i) {
    FieldElem acc = v[0].field().zero();
    for (std::size_t j = 0; j < 4; ++j) acc += m[i][j] * v[j];
    out[i] = acc;
  }
  return out;
}

FieldElem dot(const Vec4& a, const Vec4& b) {
  FieldElem acc = a[0] * b[0];
  for (std::size_t i = 1; i < 4; ++i) acc += a[i] * b[i];
  return acc;
}

FieldElem bilinear(const Mat4& b, const Vec4& v, const Vec4& w) { return dot(v, apply(b, w)); }

FieldElem det(const Mat4& m) {
  std::vector<Vec4> rows(m.begin(), m.end());
  const Field f = m[0][0].field();
  FieldElem d = f.one();
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t piv = col;
    while (piv < 4 && rows[piv][col].is_zero()) ++piv;
    if (piv == 4) return f.zero();
    if (piv != col) {
      std::swap(rows[piv], rows[col]);
      d = -d;
    }
    d *= rows[col][col];
    const FieldElem ic = inv(rows[col][col]);
    for (std::size_t r = col + 1; r < 4; ++r) {
      if (rows[r][col].is_zero()) continue;
      const FieldElem factor = rows[r][col] * ic;
      for (std::size_t c = col; c < 4; ++c) rows[r][c] -= factor * rows[col][c];
    }
  }
  return d;
}

Mat4 inverse(const Mat4& m) {
  const Field f = m[0][0].field();
  Mat4 a = m;
  Mat4 b = identity(f);
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t piv = col;
    while (piv < 4 && a[piv][col].is_zero()) ++piv;
    if (piv == 4) throw Error(ErrorKind::Singular, "matrix is not invertible");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const FieldElem ic = inv(a[col][col]);
    for (std::size_t c = 0; c < 4; ++c) {
      a[col][c] *= ic;
      b[col][c] *= ic;
    }
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const FieldElem factor = a[r][col];
      for (std::size_t c = 0; c < 4; ++c) {
        a[r][c] -= factor * a[col][c];
        b[r][c] -= factor * b[col][c];
      }
    }
  }
  return b;
}

std::size_t rref(std::vector<Vec4>& rows) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < 4 && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const FieldElem ic = inv(rows[r][col]);
    for (auto& x : rows[r]) x *= ic;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][col].is_zero()) continue;
      const FieldElem factor = rows[k][col];
      for (std::size_t c = 0; c < 4; ++c) rows[k][c] -= factor * rows[r][c];
    }
    ++r;
  }
  return r;
}

std::size_t rank(std::span<const Vec4> rows) {
  std::vector<Vec4> tmp(rows.begin(), rows.end());
  return rref(tmp);
}

Mat4 map(const Mat4& m, const std::function<FieldElem(const FieldElem&)>& f) {
  Mat4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i][j] = f(m[i][j]);
  return out;
}

}  // namespace linalg

namespace {

void check_same(const Vec4& a, const Vec4& b) {
  if (a[0].ctx() != b[0].ctx()) throw Error(ErrorKind::MixedContexts, "points from different fields");
}

// Kernel basis of the given rows, as vectors of F^4.
std::vector<Vec4> kernel(std::vector<Vec4> rows, const Field& f) {
  const std::size_t r = linalg::rref(rows);
  std::array<int, 4> pivot_of_col{-1, -1, -1, -1};
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (!rows[i][c].is_zero()) {
        pivot_of_col[c] = static_cast<int>(i);
        break;
      }
    }
  }
  std::vector<Vec4> out;
  for (std::size_t free = 0; free < 4; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    Vec4 v;
    v.fill(f.zero());
    v[free] = f.one();
    for (std::size_t c = 0; c < 4; ++c) {
      if (pivot_of_col[c] >= 0) v[c] = -rows[static_cast<std::size_t>(pivot_of_col[c])][free];
    }
    out.push_back(v);
  }
  return out;
}

Vec4 combine(const FieldElem& s, const Vec4& a, const FieldElem& u, const Vec4& b) {
  Vec4 out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = s * a[i] + u * b[i];
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

ProjLine ProjLine::span(const Vec4& a, const Vec4& b) {
  check_same(a, b);
  std::vector<Vec4> rows{a, b};
  if (linalg::rref(rows) != 2) throw Error(ErrorKind::EqualPoints, "vectors do not span a line");
  ProjLine l;
  l.rows_ = {rows[0], rows[1]};
  return l;
}

bool ProjLine::contains(const ProjPoint& p) const {
  if (p[0].ctx() != rows_[0][0].ctx()) throw Error(ErrorKind::MixedContexts, "point and line fields differ");
  std::size_t c0 = 0;
  while (rows_[0][c0].is_zero()) ++c0;
  std::size_t c1 = c0 + 1;
  while (rows_[1][c1].is_zero()) ++c1;
  const FieldElem s = p[c0];
  const FieldElem u = p[c1];
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(s * rows_[0][i] + u * rows_[1][i] == p[i])) return false;
  }
  return true;
}

std::vector<ProjPoint> ProjLine::points() const {
  std::vector<ProjPoint> out;
  for (const auto& t : enumerate_p1(rows_[0][0].field()))
    out.push_back(normalize(combine(t[0], rows_[0], t[1], rows_[1])));
  return out;
}

std::string ProjLine::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < 2; ++r) {
    if (r) s += "|";
    for (std::size_t i = 0; i < 4; ++i) {
      if (i) s += ":";
      s += rows_[r][i].to_string();
    }
  }
  return s;
}

ProjPlane ProjPlane::from_dual(const Vec4& dual) {
  ProjPlane pl;
  pl.dual_ = normalize(dual).coords();
  return pl;
}

ProjPlane ProjPlane::through(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
  const auto k = kernel({a.coords(), b.coords(), c.coords()}, a.field());
  if (k.size() != 1) throw Error(ErrorKind::InvalidArgument, "points do not span a plane");
  return from_dual(k[0]);
}

bool ProjPlane::contains(const ProjPoint& p) const { return linalg::dot(dual_, p.coords()).is_zero(); }

std::string ProjPlane::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) s += ":";
    s += dual_[i].to_string();
  }
  return s;
}

QuadricForm::QuadricForm(const Mat4& b) : b_(b) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!(b[i][j] == b[j][i])) throw Error(ErrorKind::InvalidArgument, "quadric matrix must be symmetric");
}

QuadricForm QuadricForm::sum_of_squares(const Field& f) { return QuadricForm(linalg::identity(f)); }

QuadricForm QuadricForm::segre(const Field& f) {
  Mat4 b = linalg::zero(f);
  b[0][3] = b[3][0] = f.one();
  b[1][2] = b[2][1] = -f.one();
  return QuadricForm(b);
}

bool QuadricForm::smooth() const { return !linalg::det(b_).is_zero(); }

FieldElem QuadricForm::value(const Vec4& v) const { return linalg::bilinear(b_, v, v); }

FieldElem QuadricForm::polar(const Vec4& v, const Vec4& w) const { return linalg::bilinear(b_, v, w); }

// ---------------------------------------------------------------------------

ProjPoint normalize(const Vec4& coords) { return ProjPoint::normalize(coords); }

ProjPoint1 normalize(const std::array<FieldElem, 2>& coords) { return ProjPoint1::normalize(coords); }

ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
  if (p == q) throw Error(ErrorKind::EqualPoints, "line_through needs two distinct points");
  return ProjLine::span(p.coords(), q.coords());
}

bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
  check_same(p.coords(), q.coords());
  check_same(p.coords(), r.coords());
  const std::array<Vec4, 3> rows{p.coords(), q.coords(), r.coords()};
  return linalg::rank(rows) <= 2;
}

ProjPoint meet_line_plane(const ProjLine& line, const ProjPlane& plane) {
  const auto& [r0, r1] = line.basis();
  const FieldElem alpha = linalg::dot(plane.dual(), r0);
  const FieldElem beta = linalg::dot(plane.dual(), r1);
  if (alpha.is_zero() && beta.is_zero()) throw Error(ErrorKind::LineInPlane, "line lies in the plane");
  return normalize(combine(beta, r0, -alpha, r1));
}

ProjLine meet_planes(const ProjPlane& a, const ProjPlane& b) {
  if (a == b) throw Error(ErrorKind::EqualPlanes, "planes coincide");
  const auto k = kernel({a.dual(), b.dual()}, a.dual()[0].field());
  return ProjLine::span(k[0], k[1]);
}

bool on_quadric(const ProjPoint& p, const QuadricForm& q) { return q.value(p.coords()).is_zero(); }

std::vector<ProjPoint> enumerate_p3(const Field& f) {
  const std::uint64_t q = f.order();
  if (q * q * q * q > 100'000'000ULL) throw Error(ErrorKind::TooLarge, "P^3 enumeration guard (q^4 <= 10^8)");
  const auto elems = f.elements();
  std::vector<ProjPoint> out;
  out.reserve((q * q * q * q - 1) / (q - 1));
  for (std::size_t lead = 0; lead < 4; ++lead) {
    const std::size_t free = 3 - lead;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < free; ++i) count *= q;
    for (std::uint64_t k = 0; k < count; ++k) {
      Vec4 v;
      v.fill(f.zero());
      v[lead] = f.one();
      std::uint64_t rest = k;
      for (std::size_t i = 4; i-- > lead + 1;) {
        v[i] = elems[rest % q];
        rest /= q;
      }
      out.push_back(ProjPoint::normalize(v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPoint1> enumerate_p1(const Field& f) {
  std::vector<ProjPoint1> out;
  out.push_back(ProjPoint1::normalize({f.zero(), f.one()}));
  for (const auto& a : f.elements()) out.push_back(ProjPoint1::normalize({f.one(), a}));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPlane> pencil(const ProjPlane& a, const ProjPlane& b) {
  if (a == b) throw Error(ErrorKind::EqualPlanes, "pencil needs two distinct planes");
  std::vector<ProjPlane> out;
  for (const auto& t : enumerate_p1(a.dual()[0].field()))
    out.push_back(ProjPlane::from_dual(combine(t[0], a.dual(), t[1], b.dual())));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjLine> lines_in_plane(const ProjPlane& plane) {
  const Field f = plane.dual()[0].field();
  const auto basis = kernel({plane.dual()}, f);  // three vectors spanning the plane
  // Lines of the plane are the kernels of nonzero functionals on span(basis).
  std::vector<ProjLine> out;
  const auto elems = f.elements();
  for (std::size_t lead = 0; lead < 3; ++lead) {
    const std::size_t free = 2 - lead;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < free; ++i) count *= f.order();
    for (std::uint64_t k = 0; k < count; ++k) {
      std::array<FieldElem, 3> w{f.zero(), f.zero(), f.zero()};
      w[lead] = f.one();
      std::uint64_t rest = k;
      for (std::size_t i = 3; i-- > lead + 1;) {
        w[i] = elems[rest % f.order()];
        rest /= f.order();
      }
      // kernel of w in coefficient space: two independent solutions
      std::vector<Vec4> coeff_rows{{w[0], w[1], w[2], f.zero()}};
      auto ker = kernel(coeff_rows, f);  // includes the dummy 4th coordinate direction
      std::vector<Vec4> vecs;
      for (const auto& c : ker) {
        if (!c[3].is_zero()) continue;
        Vec4 v;
        v.fill(f.zero());
        for (std::size_t j = 0; j < 3; ++j)
          for (std::size_t i = 0; i < 4; ++i) v[i] += c[j] * basis[j][i];
        vecs.push_back(v);
      }
      out.push_back(ProjLine::span(vecs.at(0), vecs.at(1)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// point-set files

ProjPoint parse_point(const Field& f, const std::string& text) {
  Vec4 v;
  std::stringstream ss(text);
  std::string tok;
  std::size_t i = 0;
  while (std::getline(ss, tok, ':')) {
    if (i == 4) throw Error(ErrorKind::Parse, "point '" + text + "' has more than 4 coordinates");
    v[i++] = f.parse_elem(tok);
  }
  if (i != 4) throw Error(ErrorKind::Parse, "point '" + text + "' needs 4 coordinates");
  return normalize(v);
}

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

PointSet read_points(std::istream& in, bool allow_dup) {
  PointSet out;
  std::string line;
  std::set<ProjPoint> seen;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    if (!out.field.valid()) {
      if (line.rfind("field ", 0) != 0) throw Error(ErrorKind::Parse, "first line must be 'field <descriptor>'");
      out.field = Field::parse(strip(line.substr(6)));
      continue;
    }
    const ProjPoint p = parse_point(out.field, line);
    if (!seen.insert(p).second) {
      if (allow_dup) continue;
      throw Error(ErrorKind::DuplicateElements,
                  "duplicate point " + p.to_string() + " at line " + std::to_string(lineno));
    }
    out.points.push_back(p);
  }
  if (!out.field.valid()) throw Error(ErrorKind::Parse, "missing 'field' header");
  return out;
}

PointSet read_points_file(const std::string& path, bool allow_dup) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  return read_points(in, allow_dup);
}

void write_points(std::ostream& out, const Field& f, std::span<const ProjPoint> points,
                  const std::string& comment) {
  out << "field " << f.descriptor() << "\n";
  if (!comment.empty()) out << "# " << comment << "\n";
  for (const auto& p : points) out << p.to_string() << "\n";
}

}  // namespace orchard
