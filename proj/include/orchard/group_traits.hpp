#pragma once

// Group descriptors used by measures, closures and the free-tuple machinery.
// A descriptor supplies identity/mul/inverse on canonical element values plus
// text encoding; two descriptors are compatible iff they compare equal.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "orchard/groups.hpp"

namespace orchard {

struct AffineGroup {
  using Elem = AffElem;
  Field field;

  static constexpr const char* name() { return "affine"; }
  Elem identity() const { return aff_identity(field); }
  Elem mul(const Elem& g, const Elem& h) const { return aff_compose(g, h); }
  Elem inverse(const Elem& g) const { return aff_inverse(g); }
  std::uint64_t order() const {
    const std::uint64_t q = field.order();
    return q * q * (q - 1);
  }
  std::size_t hash(const Elem& g) const {
    return (static_cast<std::size_t>(g.a.index()) * 1'000'003u + g.b.index()) * 1'000'003u + g.c.index();
  }
  std::string format(const Elem& g) const { return g.to_string(); }
  Elem parse(const std::string& s) const { return AffElem::parse(field, s); }
  bool operator==(const AffineGroup& o) const { return field == o.field; }
};

struct PGLGroup {
  using Elem = PGLElem;
  Field field;

  static constexpr const char* name() { return "pgl4"; }
  Elem identity() const { return pgl_identity(field); }
  Elem mul(const Elem& g, const Elem& h) const { return pgl_compose(g, h); }
  Elem inverse(const Elem& g) const { return pgl_inverse(g); }
  std::uint64_t order() const { return 0; }  // not tracked
  std::size_t hash(const Elem& g) const {
    std::size_t h = 0;
    for (const auto& row : g.matrix())
      for (const auto& x : row) h = h * 1'000'003u + x.index();
    return h;
  }
  std::string format(const Elem& g) const { return g.to_string(); }
  Elem parse(const std::string& s) const { return PGLElem::parse(field, s); }
  bool operator==(const PGLGroup& o) const { return field == o.field; }
};

/// Z/n, written multiplicatively.
struct CyclicGroup {
  using Elem = std::uint32_t;
  std::uint32_t n = 1;

  static constexpr const char* name() { return "cyclic"; }
  Elem identity() const { return 0; }
  Elem mul(Elem g, Elem h) const { return (g + h) % n; }
  Elem inverse(Elem g) const { return (n - g) % n; }
  std::uint64_t order() const { return n; }
  std::size_t hash(Elem g) const { return g; }
  std::string format(Elem g) const { return std::to_string(g); }
  Elem parse(const std::string& s) const { return static_cast<Elem>(std::stoul(s) % n); }
  bool operator==(const CyclicGroup& o) const { return n == o.n; }
};

template <class Group>
struct Closure {
  std::vector<typename Group::Elem> elements;  // sorted
  bool truncated = false;
};

/// Subgroup generated by gens (breadth-first, right multiplication by
/// generators and their inverses), stopping at cap elements.
template <class Group>
Closure<Group> group_closure(const Group& group, const std::vector<typename Group::Elem>& gens,
                             std::size_t cap = 1'000'000) {
  using Elem = typename Group::Elem;
  std::vector<Elem> steps;
  for (const auto& g : gens) {
    steps.push_back(g);
    steps.push_back(group.inverse(g));
  }
  std::set<Elem> seen{group.identity()};
  std::deque<Elem> frontier{group.identity()};
  Closure<Group> out;
  while (!frontier.empty()) {
    const Elem cur = frontier.front();
    frontier.pop_front();
    for (const auto& s : steps) {
      Elem next = group.mul(cur, s);
      if (seen.contains(next)) continue;
      if (seen.size() >= cap) {
        out.truncated = true;
        frontier.clear();
        break;
      }
      seen.insert(next);
      frontier.push_back(std::move(next));
    }
  }
  out.elements.assign(seen.begin(), seen.end());
  return out;
}

/// Checks closure under products and inverses for an explicit finite set.
template <class Group>
bool is_subgroup(const Group& group, const std::vector<typename Group::Elem>& h) {
  const std::set<typename Group::Elem> s(h.begin(), h.end());
  if (s.empty() || !s.contains(group.identity())) return false;
  for (const auto& x : s) {
    if (!s.contains(group.inverse(x))) return false;
    for (const auto& y : s)
      if (!s.contains(group.mul(x, y))) return false;
  }
  return true;
}

}  // namespace orchard
