#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "orchard/group_traits.hpp"
#include "orchard/projgeom.hpp"

namespace orchard {

/// Ordered triples (x1, x2, x3), pairwise distinct and collinear.
struct TripleCount {
  std::uint64_t total = 0;
  std::map<ProjLine, std::uint64_t> by_line;
};

enum class TripleKernel { Brute, LineHash };

/// Throws TooLarge when |X1||X2| > 10^8 and MixedContexts on mixed fields.
TripleCount count_collinear_triples(std::span<const ProjPoint> x1, std::span<const ProjPoint> x2,
                                    std::span<const ProjPoint> x3, TripleKernel kernel = TripleKernel::LineHash);

struct ConcentrationReport {
  std::uint64_t max_line = 0;
  std::optional<ProjLine> line_witness;
  std::uint64_t max_pencil_plane = 0;
  std::optional<ProjPlane> plane_witness;
};

/// max |X ∩ l| over lines; ties go to the least canonical line.
ConcentrationReport line_concentration(std::span<const ProjPoint> x);
/// max |X ∩ P| over planes P containing P1 ∩ P2. With include_frame false
/// the planes P1 and P2 themselves are skipped. Throws EqualPlanes.
ConcentrationReport pencil_plane_concentration(std::span<const ProjPoint> x, const ProjPlane& p1,
                                               const ProjPlane& p2, bool include_frame = true);

// Pair stabilizers for the star action on P1 = {x0 = 0}.

/// Closed form: Stab(p, p') != {id}.
bool pair_stabilizer_nontrivial(const ProjPoint& p, const ProjPoint& pp);
/// Oracle: scans every non-identity group element.
bool pair_stabilizer_nontrivial_brute(const ProjPoint& p, const ProjPoint& pp);
/// The coarser test "some coordinate vanishes or xi2/xi3 = xi2'/xi3'",
/// which contains every pair with nontrivial stabilizer.
bool lemma_condition(const ProjPoint& p, const ProjPoint& pp);

struct StabilizerCensus {
  std::uint64_t pairs = 0;        // |X|^2
  std::uint64_t nontrivial = 0;   // exact
  std::uint64_t lemma_count = 0;  // pairs meeting lemma_condition
};

/// Throws PointOffPlane.
StabilizerCensus stabilizer_census_affine(std::span<const ProjPoint> x);

using Tuple = std::vector<ProjPoint>;

struct FreeTupleSet {
  std::size_t k = 0;
  std::vector<Tuple> tuples;  // lexicographic
  std::uint64_t complement = 0;
  /// Set when G_set came from a truncated closure, so freeness is only
  /// relative to G_set.
  bool relative_to_gset = false;
};

template <class Group, class Action>
Tuple act_tuple(const Group&, const typename Group::Elem& g, const Tuple& t, const Action& act) {
  Tuple out;
  out.reserve(t.size());
  for (const auto& x : t) out.push_back(act(g, x));
  return out;
}

template <class Group, class Action>
bool tuple_is_free(const Group& group, std::span<const typename Group::Elem> gset, const Tuple& t,
                   const Action& act) {
  const auto id = group.identity();
  for (const auto& g : gset) {
    if (g == id) continue;
    if (act_tuple(group, g, t, act) == t) return false;
  }
  return true;
}

/// k-tuples of X whose pointwise stabilizer within gset is trivial.
template <class Group, class Action>
FreeTupleSet free_tuples(const Group& group, std::span<const ProjPoint> x, std::span<const typename Group::Elem> gset,
                         std::size_t k, const Action& act, bool gset_truncated = false) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "free_tuples needs k >= 1");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    count *= x.size();
    if (count > 10'000'000) throw Error(ErrorKind::TooLarge, "more than 10^7 tuples");
  }
  const std::set<ProjPoint> uniq(x.begin(), x.end());
  const std::vector<ProjPoint> pts(uniq.begin(), uniq.end());
  // fixed[g][i]: g fixes pts[i]
  const auto id = group.identity();
  std::vector<std::vector<char>> fixed;
  for (const auto& g : gset) {
    if (g == id) continue;
    std::vector<char> row(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) row[i] = act(g, pts[i]) == pts[i];
    fixed.push_back(std::move(row));
  }
  FreeTupleSet out;
  out.k = k;
  out.relative_to_gset = gset_truncated;
  std::vector<std::size_t> idx(k, 0);
  if (pts.empty()) return out;
  while (true) {
    bool free = true;
    for (const auto& row : fixed) {
      bool all = true;
      for (std::size_t i : idx)
        if (!row[i]) {
          all = false;
          break;
        }
      if (all) {
        free = false;
        break;
      }
    }
    if (free) {
      Tuple t;
      for (std::size_t i : idx) t.push_back(pts[i]);
      out.tuples.push_back(std::move(t));
    } else {
      ++out.complement;
    }
    std::size_t pos = k;
    while (pos > 0 && ++idx[pos - 1] == pts.size()) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

struct OmegaResult {
  std::uint64_t free_size = 0;  // |X~|
  std::vector<std::size_t> members;  // indices into the deduplicated candidates
  std::vector<std::uint64_t> overlaps;  // |g X~ ∩ X~| per member
  std::uint64_t omega_mass = 0;  // sum of overlaps over members
  std::uint64_t candidate_mass = 0;  // sum of overlaps over all candidates
  bool mass_bound_ok = false;  // candidate_mass <= |X~|^2
  bool size_bound_ok = false;  // |Omega| <= 2 |X~|^{1+t}
};

/// true iff (2c)^v > n^(v-u), i.e. c > n^(1-t)/2 for t = u/v.
bool omega_threshold(std::uint64_t overlap, std::uint64_t n, unsigned u, unsigned v);
/// true iff m^v <= 2^v n^(v+u), i.e. m <= 2 n^(1+t).
bool omega_size_bound(std::uint64_t m, std::uint64_t n, unsigned u, unsigned v);

/// Omega_t restricted to candidates (duplicates removed), t = u/v in (0, 1).
template <class Group, class Action>
OmegaResult omega_set(const Group& group, const FreeTupleSet& xt, std::vector<typename Group::Elem> candidates,
                      unsigned u, unsigned v, const Action& act) {
  if (u == 0 || u >= v) throw Error(ErrorKind::InvalidArgument, "t = u/v must lie in (0, 1)");
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  const std::set<Tuple> members(xt.tuples.begin(), xt.tuples.end());
  OmegaResult out;
  out.free_size = members.size();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::uint64_t c = 0;
    for (const auto& t : xt.tuples)
      if (members.contains(act_tuple(group, candidates[i], t, act))) ++c;
    out.candidate_mass += c;
    if (omega_threshold(c, out.free_size, u, v)) {
      out.members.push_back(i);
      out.overlaps.push_back(c);
      out.omega_mass += c;
    }
  }
  out.mass_bound_ok = out.candidate_mass <= out.free_size * out.free_size;
  out.size_bound_ok = omega_size_bound(out.members.size(), out.free_size, u, v);
  return out;
}

}  // namespace orchard
