#include "orchard/incidence.hpp"

#include <unordered_map>
#include <unordered_set>

namespace orchard {

namespace {

void check_fields(std::initializer_list<std::span<const ProjPoint>> sets) {
  const detail::FieldData* ctx = nullptr;
  for (const auto& s : sets)
    for (const auto& p : s) {
      if (ctx == nullptr) ctx = p[0].ctx();
      if (p[0].ctx() != ctx) throw Error(ErrorKind::MixedContexts, "point sets over different fields");
    }
}

TripleCount brute_kernel(std::span<const ProjPoint> x1, std::span<const ProjPoint> x2, std::span<const ProjPoint> x3) {
  TripleCount out;
  for (const auto& a : x1)
    for (const auto& b : x2) {
      if (a == b) continue;
      std::uint64_t here = 0;
      for (const auto& c : x3)
        if (c != a && c != b && collinear(a, b, c)) ++here;
      if (here) {
        out.total += here;
        out.by_line[line_through(a, b)] += here;
      }
    }
  return out;
}

TripleCount hash_kernel(std::span<const ProjPoint> x1, std::span<const ProjPoint> x2, std::span<const ProjPoint> x3) {
  TripleCount out;
  const std::unordered_set<ProjPoint> in3(x3.begin(), x3.end());
  std::unordered_map<ProjLine, std::uint64_t> acc;
  std::unordered_map<ProjLine, std::uint64_t> through;
  for (const auto& a : x1) {
    through.clear();
    for (const auto& c : x3)
      if (c != a) ++through[line_through(a, c)];
    for (const auto& b : x2) {
      if (b == a) continue;
      const ProjLine l = line_through(a, b);
      const auto it = through.find(l);
      if (it == through.end()) continue;
      const std::uint64_t here = it->second - (in3.contains(b) ? 1 : 0);
      if (here) {
        out.total += here;
        acc[l] += here;
      }
    }
  }
  out.by_line.insert(acc.begin(), acc.end());
  return out;
}

}  // namespace

TripleCount count_collinear_triples(std::span<const ProjPoint> x1, std::span<const ProjPoint> x2,
                                    std::span<const ProjPoint> x3, TripleKernel kernel) {
  check_fields({x1, x2, x3});
  if (static_cast<double>(x1.size()) * static_cast<double>(x2.size()) > 1e8)
    throw Error(ErrorKind::TooLarge, "|X1||X2| exceeds 10^8");
  if (x1.empty() || x2.empty() || x3.empty()) return {};
  return kernel == TripleKernel::Brute ? brute_kernel(x1, x2, x3) : hash_kernel(x1, x2, x3);
}

ConcentrationReport line_concentration(std::span<const ProjPoint> x) {
  check_fields({x});
  ConcentrationReport out;
  const std::set<ProjPoint> pts(x.begin(), x.end());
  out.max_line = pts.empty() ? 0 : 1;
  std::map<ProjLine, std::uint64_t> through;
  for (auto i = pts.begin(); i != pts.end(); ++i) {
    through.clear();
    for (auto j = std::next(i); j != pts.end(); ++j) ++through[line_through(*i, *j)];
    for (const auto& [l, c] : through) {
      const std::uint64_t total = c + 1;
      if (total > out.max_line || (total == out.max_line && out.line_witness && l < *out.line_witness)) {
        out.max_line = total;
        out.line_witness = l;
      }
    }
  }
  return out;
}

ConcentrationReport pencil_plane_concentration(std::span<const ProjPoint> x, const ProjPlane& p1,
                                               const ProjPlane& p2, bool include_frame) {
  check_fields({x});
  ConcentrationReport out;
  for (const auto& plane : pencil(p1, p2)) {
    if (!include_frame && (plane == p1 || plane == p2)) continue;
    std::uint64_t c = 0;
    for (const auto& p : x)
      if (plane.contains(p)) ++c;
    if (!out.plane_witness || c > out.max_pencil_plane) {
      out.max_pencil_plane = c;
      out.plane_witness = plane;
    }
  }
  return out;
}

namespace {

void require_on_p1(const ProjPoint& p) {
  if (!p[0].is_zero()) throw Error(ErrorKind::PointOffPlane, "census points must lie on {x0 = 0}");
}

}  // namespace

bool pair_stabilizer_nontrivial(const ProjPoint& p, const ProjPoint& pp) {
  require_on_p1(p);
  require_on_p1(pp);
  // xi1 = 0 is fixed by the whole group. A point with xi1 != 0 has a
  // one-parameter stabilizer {(xi2 (c-1), xi3 (c-1), c)}, and two distinct
  // such points share only the identity.
  const bool z = p[1].is_zero();
  const bool zp = pp[1].is_zero();
  if (z && zp) return true;
  if (p.field().order() == 2) return false;
  return z || zp || p == pp;
}

bool pair_stabilizer_nontrivial_brute(const ProjPoint& p, const ProjPoint& pp) {
  require_on_p1(p);
  require_on_p1(pp);
  const Field f = p.field();
  const AffElem id = aff_identity(f);
  for (const auto& g : affine_group_elements(f))
    if (g != id && aff_act(g, p) == p && aff_act(g, pp) == pp) return true;
  return false;
}

bool lemma_condition(const ProjPoint& p, const ProjPoint& pp) {
  require_on_p1(p);
  require_on_p1(pp);
  for (std::size_t i = 1; i < 4; ++i)
    if (p[i].is_zero() || pp[i].is_zero()) return true;
  return p[2] * pp[3] == pp[2] * p[3];
}

StabilizerCensus stabilizer_census_affine(std::span<const ProjPoint> x) {
  for (const auto& p : x) require_on_p1(p);
  StabilizerCensus out;
  for (const auto& p : x)
    for (const auto& pp : x) {
      ++out.pairs;
      if (pair_stabilizer_nontrivial(p, pp)) ++out.nontrivial;
      if (lemma_condition(p, pp)) ++out.lemma_count;
    }
  return out;
}

bool omega_threshold(std::uint64_t overlap, std::uint64_t n, unsigned u, unsigned v) {
  mpz_class lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), 2 * overlap, v);
  mpz_ui_pow_ui(rhs.get_mpz_t(), n, v - u);
  return lhs > rhs;
}

bool omega_size_bound(std::uint64_t m, std::uint64_t n, unsigned u, unsigned v) {
  mpz_class lhs, two, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), m, v);
  mpz_ui_pow_ui(two.get_mpz_t(), 2, v);
  mpz_ui_pow_ui(rhs.get_mpz_t(), n, v + u);
  return lhs <= two * rhs;
}

}  // namespace orchard
