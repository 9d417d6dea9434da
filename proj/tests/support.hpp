#pragma once

// Small helpers shared by the unit tests.

#include <initializer_list>
#include <random>

#include "orchard/groups.hpp"

namespace testing {

using namespace orchard;

inline ProjPoint pt(const Field& f, std::initializer_list<int> c) {
  Vec4 v;
  std::size_t i = 0;
  for (int x : c) v[i++] = f.from_int(x);
  return normalize(v);
}

/// Kind of the Error thrown by fn; InvalidArgument doubles as "nothing thrown"
/// only in tests that never expect InvalidArgument from fn.
template <class Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

inline FieldElem random_elem(const Field& f, std::mt19937_64& rng) {
  return f.from_index(static_cast<std::uint32_t>(rng() % f.order()));
}

inline FieldElem random_unit(const Field& f, std::mt19937_64& rng) {
  return f.from_index(1 + static_cast<std::uint32_t>(rng() % (f.order() - 1)));
}

inline Mat4 random_invertible(const Field& f, std::mt19937_64& rng) {
  while (true) {
    Mat4 m;
    for (auto& row : m)
      for (auto& x : row) x = random_elem(f, rng);
    if (!linalg::det(m).is_zero()) return m;
  }
}

inline AffElem random_aff(const Field& f, std::mt19937_64& rng) {
  return {random_elem(f, rng), random_elem(f, rng), random_unit(f, rng)};
}

}  // namespace testing
