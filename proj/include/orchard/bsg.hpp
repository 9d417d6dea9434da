#pragma once

// Constructive measure decomposition nu = nu1 + nu2 + nu_str with M = 16K and
// delta = 1/M^2, an exact inequality report for it, and greedy covering
// numbers for approximate-group checks.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orchard/measures.hpp"

namespace orchard {

template <class Group>
struct BsgDecomposition {
  using Elem = typename Group::Elem;
  Rational k;
  Rational m;      // 16 K
  Rational delta;  // 1 / M^2
  Rational l2_sq;  // ||nu||_2^2
  GroupMeasure<Group> nu1;     // nu >= M ||nu||^2
  GroupMeasure<Group> nu2;     // nu <= delta ||nu||^2
  GroupMeasure<Group> nu_str;  // the rest
  GroupMeasure<Group> nu_prime;  // delta ||nu||^2 < nu < M ||nu||^2
  std::vector<Elem> a;         // supp(nu_str)
  std::vector<Elem> boundary;  // atoms sitting exactly on a threshold
};

template <class Group>
BsgDecomposition<Group> decompose(const GroupMeasure<Group>& nu, const Rational& k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "K must be at least 1");
  if (nu.empty()) throw Error(ErrorKind::EmptySupport, "cannot decompose the zero measure");
  using Elem = typename Group::Elem;
  BsgDecomposition<Group> d;
  d.k = k;
  d.m = 16 * k;
  d.delta = 1 / (d.m * d.m);
  d.l2_sq = l2_norm_sq(nu);
  const Rational hi = d.m * d.l2_sq;
  const Rational lo = d.delta * d.l2_sq;
  std::map<Elem, mpz_class> n1, n2, ns, np;
  for (const auto& [x, n] : nu.numerators()) {
    const Rational v = nu.mass(x);
    if (v == hi || v == lo) d.boundary.push_back(x);
    if (v > lo && v < hi) np.emplace(x, n);
    if (v >= hi)
      n1.emplace(x, n);
    else if (v <= lo)
      n2.emplace(x, n);
    else {
      ns.emplace(x, n);
      d.a.push_back(x);
    }
  }
  const Group& g = nu.group();
  d.nu1 = GroupMeasure<Group>::from_scaled(g, std::move(n1), nu.denominator());
  d.nu2 = GroupMeasure<Group>::from_scaled(g, std::move(n2), nu.denominator());
  d.nu_str = GroupMeasure<Group>::from_scaled(g, std::move(ns), nu.denominator());
  d.nu_prime = GroupMeasure<Group>::from_scaled(g, std::move(np), nu.denominator());
  return d;
}

struct InequalityRow {
  std::string name;
  Rational lhs;
  Rational rhs;
  std::string relation;  // "<=", ">=" or "=="
  bool pass = false;
  bool hypothesis_met = true;  // false: conditional check whose hypothesis fails
  bool is_hypothesis = false;  // hyp_lin / hyp_sq: reported, never a violation
};

struct BsgReport {
  std::vector<InequalityRow> rows;
  bool hyp_lin = false;  // ||nu*nu||_2 >= ||nu||_2 / K
  bool hyp_sq = false;   // ||nu*nu||_2 >= ||nu||_2^2 / K
  /// No check with a met hypothesis fails.
  bool ok() const {
    for (const auto& r : rows)
      if (!r.is_hypothesis && r.hypothesis_met && !r.pass) return false;
    return true;
  }
};

inline InequalityRow make_row(std::string name, Rational lhs, std::string rel, Rational rhs, bool hyp = true) {
  InequalityRow r{std::move(name), std::move(lhs), std::move(rhs), std::move(rel), false, hyp};
  if (r.relation == "<=") r.pass = r.lhs <= r.rhs;
  else if (r.relation == ">=") r.pass = r.lhs >= r.rhs;
  else r.pass = r.lhs == r.rhs;
  return r;
}

inline Rational rational_pow(const Rational& x, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

/// Every check of the decomposition, evaluated exactly on squared norms.
template <class Group>
BsgReport verify_decomposition(const GroupMeasure<Group>& nu, const Rational& k, std::size_t guard = kSupportGuard) {
  const BsgDecomposition<Group> d = decompose(nu, k);
  BsgReport rep;
  const Rational n2 = d.l2_sq;
  const Rational k2 = k * k;
  const Rational conv = l2_norm_sq(convolve(nu, nu, guard));

  // Reconstruction: the largest pointwise discrepancy of nu1 + nu2 + nu_str.
  Rational gap = 0;
  for (const auto& [x, v] : nu.atoms()) {
    Rational diff = d.nu1.mass(x) + d.nu2.mass(x) + d.nu_str.mass(x) - v;
    if (abs(diff) > gap) gap = abs(diff);
  }
  rep.rows.push_back(make_row("reconstruction", gap, "==", 0));
  rep.rows.push_back(make_row("nu1_l1", l1_norm(d.nu1), "<=", 1 / d.m));
  rep.rows.push_back(make_row("nu2_l2_sq", l2_norm_sq(d.nu2), "<=", d.delta * n2));
  rep.rows.push_back(make_row("nu_prime_equals_str", d.nu_prime == d.nu_str ? 1 : 0, "==", 1));

  InequalityRow lin = make_row("hyp_lin", conv, ">=", n2 / k2);
  InequalityRow sq = make_row("hyp_sq", conv, ">=", n2 * n2 / k2);
  lin.is_hypothesis = sq.is_hypothesis = true;
  rep.hyp_lin = lin.pass;
  rep.hyp_sq = sq.pass;
  rep.rows.push_back(lin);
  rep.rows.push_back(sq);

  const Rational size = static_cast<unsigned long>(d.a.size());
  rep.rows.push_back(make_row("a_size_upper", size * n2, "<=", 65536 * rational_pow(k, 4)));
  rep.rows.push_back(make_row("a_size_lower", size * n2, ">=", 1 / (1024 * rational_pow(k, 4)), rep.hyp_lin));
  rep.rows.push_back(make_row("str_energy", l2_norm_sq(convolve(d.nu_str, d.nu_str, guard)), ">=", n2 / (4 * k2),
                              rep.hyp_lin));

  // Pointwise sandwich on A: nu(x) / (2^20 K^5) <= 1/|A| <= 2^18 K^6 nu(x).
  Rational nu_max = 0, nu_min = 0;
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    const Rational v = nu.mass(d.a[i]);
    if (i == 0 || v > nu_max) nu_max = v;
    if (i == 0 || v < nu_min) nu_min = v;
  }
  const Rational mu_a = d.a.empty() ? Rational(0) : Rational(1) / size;
  rep.rows.push_back(make_row("sandwich_lower", nu_max / (1048576 * rational_pow(k, 5)), "<=", mu_a));
  rep.rows.push_back(make_row("sandwich_upper", mu_a, "<=", 262144 * rational_pow(k, 6) * nu_min, rep.hyp_lin));
  return rep;
}

template <class Group>
struct Covering {
  std::size_t count = 0;
  std::vector<typename Group::Elem> centers;
};

/// Greedy cover of A by left translates xB, x drawn from A B^-1; each step
/// takes the x covering most uncovered points, the least x on ties.
template <class Group>
Covering<Group> covering_number(const Group& g, const std::vector<typename Group::Elem>& a_in,
                                const std::vector<typename Group::Elem>& b_in) {
  using Elem = typename Group::Elem;
  if (b_in.empty()) throw Error(ErrorKind::EmptySupport, "B must be nonempty");
  const std::set<Elem> a_set(a_in.begin(), a_in.end());
  const std::vector<Elem> a(a_set.begin(), a_set.end());
  const std::set<Elem> b(b_in.begin(), b_in.end());
  std::set<Elem> pool;
  for (const auto& x : a)
    for (const auto& y : b) pool.insert(g.mul(x, g.inverse(y)));
  const std::map<Elem, std::size_t> index = [&] {
    std::map<Elem, std::size_t> m;
    for (std::size_t i = 0; i < a.size(); ++i) m.emplace(a[i], i);
    return m;
  }();
  std::vector<Elem> centers(pool.begin(), pool.end());
  std::vector<std::vector<std::size_t>> covers(centers.size());
  for (std::size_t c = 0; c < centers.size(); ++c)
    for (const auto& y : b)
      if (const auto it = index.find(g.mul(centers[c], y)); it != index.end()) covers[c].push_back(it->second);

  Covering<Group> out;
  std::vector<char> covered(a.size(), 0);
  std::size_t left = a.size();
  while (left > 0) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      std::size_t gain = 0;
      for (std::size_t i : covers[c]) gain += !covered[i];
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    for (std::size_t i : covers[best]) covered[i] = 1;
    left -= best_gain;
    out.centers.push_back(centers[best]);
    ++out.count;
  }
  return out;
}

template <class Group>
std::vector<typename Group::Elem> product_set(const Group& g, const std::vector<typename Group::Elem>& a,
                                              const std::vector<typename Group::Elem>& b) {
  std::set<typename Group::Elem> out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert(g.mul(x, y));
  return {out.begin(), out.end()};
}

template <class Group>
struct ApproxGroupCheck {
  bool ok = false;
  std::string reason;  // "ok", "missing-identity", "not-symmetric", "greedy-fail"
  std::optional<typename Group::Elem> witness;
  std::size_t covering = 0;
};

/// id in H, H = H^-1 and greedy covering_number(HH, H) <= K.
template <class Group>
ApproxGroupCheck<Group> is_approximate_group(const Group& g, const std::vector<typename Group::Elem>& h,
                                             std::size_t k) {
  ApproxGroupCheck<Group> out;
  const std::set<typename Group::Elem> s(h.begin(), h.end());
  if (!s.contains(g.identity())) {
    out.reason = "missing-identity";
    out.witness = g.identity();
    return out;
  }
  for (const auto& x : s)
    if (!s.contains(g.inverse(x))) {
      out.reason = "not-symmetric";
      out.witness = x;
      return out;
    }
  const std::vector<typename Group::Elem> hv(s.begin(), s.end());
  out.covering = covering_number(g, product_set(g, hv, hv), hv).count;
  out.ok = out.covering <= k;
  out.reason = out.ok ? "ok" : "greedy-fail";
  return out;
}

}  // namespace orchard
