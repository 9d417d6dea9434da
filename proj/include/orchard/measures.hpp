#pragma once

// Finitely supported measures on a group with exact rational masses.
//
// Storage is a map from canonical element to an integer numerator over one
// shared denominator, kept in lowest terms (gcd of all numerators and the
// denominator is 1). Convolution then needs only integer products; the
// representation is canonical, so equality is structural.

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "orchard/group_traits.hpp"

namespace orchard {

using Rational = mpq_class;

/// Always "num/den", including "1/1".
std::string rational_text(const Rational& r);
Rational parse_rational(const std::string& text);
double to_double(const Rational& r);

inline constexpr std::size_t kSupportGuard = 1'000'000;

template <class Group>
class GroupMeasure {
 public:
  using Elem = typename Group::Elem;

  GroupMeasure() = default;
  explicit GroupMeasure(Group g) : group_(std::move(g)) {}

  /// mass 1/|S| on each element. Throws EmptySupport, DuplicateElements.
  static GroupMeasure uniform(const Group& g, std::span<const Elem> s) {
    GroupMeasure m = indicator(g, s);
    m.den_ = static_cast<unsigned long>(s.size());
    return m;
  }

  /// The non-normalized indicator function of S (mass 1 per element).
  static GroupMeasure indicator(const Group& g, std::span<const Elem> s) {
    if (s.empty()) throw Error(ErrorKind::EmptySupport, "measure needs a nonempty support");
    GroupMeasure m(g);
    for (const auto& x : s)
      if (!m.num_.emplace(x, 1).second)
        throw Error(ErrorKind::DuplicateElements, "repeated element " + g.format(x));
    return m;
  }

  static GroupMeasure delta(const Group& g, const Elem& x) {
    GroupMeasure m(g);
    m.num_.emplace(x, 1);
    return m;
  }

  /// Nonpositive masses are rejected with InvalidArgument.
  static GroupMeasure from_masses(const Group& g, const std::map<Elem, Rational>& masses) {
    GroupMeasure m(g);
    mpz_class den = 1;
    for (const auto& [x, r] : masses) {
      if (sgn(r) <= 0) throw Error(ErrorKind::InvalidArgument, "masses must be positive");
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den_mpz_t());
    }
    for (const auto& [x, r] : masses) m.num_.emplace(x, r.get_num() * (den / r.get_den()));
    m.den_ = den;
    m.reduce();
    return m;
  }

  /// Builds from integer weights over a common denominator; zero weights drop.
  static GroupMeasure from_scaled(const Group& g, std::map<Elem, mpz_class> num, mpz_class den) {
    GroupMeasure m(g);
    std::erase_if(num, [](const auto& kv) { return sgn(kv.second) == 0; });
    m.num_ = std::move(num);
    m.den_ = std::move(den);
    m.reduce();
    return m;
  }

  const Group& group() const noexcept { return group_; }
  const std::map<Elem, mpz_class>& numerators() const noexcept { return num_; }
  const mpz_class& denominator() const noexcept { return den_; }

  Rational mass(const Elem& x) const {
    const auto it = num_.find(x);
    if (it == num_.end()) return 0;
    Rational r(it->second, den_);
    r.canonicalize();
    return r;
  }
  std::map<Elem, Rational> atoms() const {
    std::map<Elem, Rational> out;
    for (const auto& [x, n] : num_) out.emplace_hint(out.end(), x, mass(x));
    return out;
  }
  std::vector<Elem> support() const {
    std::vector<Elem> out;
    for (const auto& kv : num_) out.push_back(kv.first);
    return out;
  }
  std::size_t support_size() const noexcept { return num_.size(); }
  bool empty() const noexcept { return num_.empty(); }

  Rational total() const {
    mpz_class s = 0;
    for (const auto& kv : num_) s += kv.second;
    Rational r(s, den_);
    r.canonicalize();
    return r;
  }
  bool is_probability() const { return total() == 1; }

  bool operator==(const GroupMeasure& o) const {
    return group_ == o.group_ && den_ == o.den_ && num_ == o.num_;
  }

 private:
  void reduce() {
    if (num_.empty()) {
      den_ = 1;
      return;
    }
    mpz_class g = den_;
    for (const auto& kv : num_) {
      if (g == 1) break;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), kv.second.get_mpz_t());
    }
    if (g == 1) return;
    den_ /= g;
    for (auto& kv : num_) mpz_divexact(kv.second.get_mpz_t(), kv.second.get_mpz_t(), g.get_mpz_t());
  }

  Group group_{};
  std::map<Elem, mpz_class> num_;
  mpz_class den_ = 1;
};

template <class Group>
void require_same_group(const GroupMeasure<Group>& f, const GroupMeasure<Group>& h) {
  if (!(f.group() == h.group())) throw Error(ErrorKind::MixedGroups, "measures live on different groups");
}

/// (f*h)(x) = sum_y f(y) h(y^-1 x). Throws MixedGroups, SupportBlowup.
template <class Group>
GroupMeasure<Group> convolve(const GroupMeasure<Group>& f, const GroupMeasure<Group>& h,
                             std::size_t guard = kSupportGuard) {
  require_same_group(f, h);
  using Elem = typename Group::Elem;
  const Group& grp = f.group();
  struct Hasher {
    const Group* g;
    std::size_t operator()(const Elem& x) const { return g->hash(x); }
  };
  std::unordered_map<Elem, mpz_class, Hasher> acc(0, Hasher{&grp});
  for (const auto& [y, fy] : f.numerators())
    for (const auto& [z, hz] : h.numerators()) {
      auto [it, inserted] = acc.try_emplace(grp.mul(y, z));
      if (inserted && acc.size() > guard)
        throw Error(ErrorKind::SupportBlowup, "convolution support exceeds " + std::to_string(guard));
      mpz_addmul(it->second.get_mpz_t(), fy.get_mpz_t(), hz.get_mpz_t());
    }
  std::map<Elem, mpz_class> num(std::make_move_iterator(acc.begin()), std::make_move_iterator(acc.end()));
  return GroupMeasure<Group>::from_scaled(grp, std::move(num), f.denominator() * h.denominator());
}

/// reverse(mu)(g) = mu(g^-1)
template <class Group>
GroupMeasure<Group> reverse(const GroupMeasure<Group>& mu) {
  std::map<typename Group::Elem, mpz_class> num;
  for (const auto& [x, n] : mu.numerators()) num.emplace(mu.group().inverse(x), n);
  return GroupMeasure<Group>::from_scaled(mu.group(), std::move(num), mu.denominator());
}

template <class Group>
Rational l1_norm(const GroupMeasure<Group>& mu) {
  return mu.total();
}

template <class Group>
Rational l2_norm_sq(const GroupMeasure<Group>& mu) {
  mpz_class s = 0;
  for (const auto& kv : mu.numerators()) mpz_addmul(s.get_mpz_t(), kv.second.get_mpz_t(), kv.second.get_mpz_t());
  Rational r(s, mu.denominator() * mu.denominator());
  r.canonicalize();
  return r;
}

template <class Group>
Rational linf_norm(const GroupMeasure<Group>& mu) {
  mpz_class best = 0;
  for (const auto& kv : mu.numerators())
    if (kv.second > best) best = kv.second;
  Rational r(best, mu.denominator());
  r.canonicalize();
  return r;
}

/// sigma = reverse(mu) * mu
template <class Group>
GroupMeasure<Group> symmetrize(const GroupMeasure<Group>& mu, std::size_t guard = kSupportGuard) {
  return convolve(reverse(mu), mu, guard);
}

/// sigma^{*m} for m >= 1 by binary powering.
template <class Group>
GroupMeasure<Group> sym_power(const GroupMeasure<Group>& mu, unsigned m, std::size_t guard = kSupportGuard) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "sym_power needs m >= 1");
  GroupMeasure<Group> base = symmetrize(mu, guard);
  GroupMeasure<Group> acc;
  bool have = false;
  while (true) {
    if (m & 1u) {
      acc = have ? convolve(acc, base, guard) : base;
      have = true;
    }
    m >>= 1;
    if (!m) break;
    base = convolve(base, base, guard);
  }
  return acc;
}

/// mu(gH) = sum_{h in H} mu(g h). Throws NotASubgroup.
template <class Group>
Rational coset_mass(const GroupMeasure<Group>& mu, const typename Group::Elem& g,
                    const std::vector<typename Group::Elem>& h) {
  if (!is_subgroup(mu.group(), h)) throw Error(ErrorKind::NotASubgroup, "H is not closed under products and inverses");
  Rational s = 0;
  for (const auto& x : std::set<typename Group::Elem>(h.begin(), h.end())) s += mu.mass(mu.group().mul(g, x));
  return s;
}

template <class Group>
struct CosetWitness {
  Rational mass;
  typename Group::Elem x;
};

/// max_x mu(xH), attained at some x in supp(mu); least such x on ties.
template <class Group>
CosetWitness<Group> max_coset_mass(const GroupMeasure<Group>& mu, const std::vector<typename Group::Elem>& h) {
  if (!is_subgroup(mu.group(), h)) throw Error(ErrorKind::NotASubgroup, "H is not closed under products and inverses");
  CosetWitness<Group> best{Rational(0), mu.group().identity()};
  for (const auto& x : mu.support()) {
    Rational s = 0;
    for (const auto& y : h) s += mu.mass(mu.group().mul(x, y));
    if (s > best.mass) best = {s, x};
  }
  return best;
}

/// ||mu||_2^2 > K^2 / |G| (the non-uniformity hypothesis); needs a finite order.
template <class Group>
bool non_uniform(const GroupMeasure<Group>& mu, const Rational& k) {
  const std::uint64_t n = mu.group().order();
  if (n == 0) throw Error(ErrorKind::NotApplicable, "group order unknown");
  return l2_norm_sq(mu) * static_cast<unsigned long>(n) > k * k;
}

struct FlatteningRow {
  unsigned m = 0;
  Rational l2_sq;       // ||s_m||_2^2,  s_m = sigma^{*2^m}
  Rational linf;        // ||s_m||_inf
  Rational l2_sq_next;  // ||s_{m+1}||_2^2
  Rational linf_next;   // ||s_{m+1}||_inf
  Rational ratio_sq;    // l2_sq_next / l2_sq
  std::size_t support = 0;
  bool linf_l2 = false;   // linf_next <= l2_sq
  bool young = false;     // l2_sq_next <= ||s_m||_1^2 l2_sq
  bool monotone = false;  // ratio_sq <= 1
};

/// Rows m = 0..m_max over sigma = reverse(mu) * mu.
template <class Group>
std::vector<FlatteningRow> flattening_report(const GroupMeasure<Group>& mu, unsigned m_max,
                                             std::size_t guard = kSupportGuard) {
  std::vector<FlatteningRow> rows;
  GroupMeasure<Group> cur = symmetrize(mu, guard);
  for (unsigned m = 0; m <= m_max; ++m) {
    GroupMeasure<Group> next = convolve(cur, cur, guard);
    FlatteningRow r;
    r.m = m;
    r.l2_sq = l2_norm_sq(cur);
    r.linf = linf_norm(cur);
    r.l2_sq_next = l2_norm_sq(next);
    r.linf_next = linf_norm(next);
    r.ratio_sq = r.l2_sq_next / r.l2_sq;
    r.support = cur.support_size();
    const Rational l1 = l1_norm(cur);
    r.linf_l2 = r.linf_next <= r.l2_sq;
    r.young = r.l2_sq_next <= l1 * l1 * r.l2_sq;
    r.monotone = r.ratio_sq <= 1;
    rows.push_back(std::move(r));
    cur = std::move(next);
  }
  return rows;
}

void write_flattening_csv(std::ostream& out, const std::vector<FlatteningRow>& rows);

/// One atom per line: "<element-text> <num>/<den>".
template <class Group>
void write_measure(std::ostream& out, const GroupMeasure<Group>& mu) {
  for (const auto& [x, r] : mu.atoms()) out << mu.group().format(x) << ' ' << rational_text(r) << '\n';
}

std::vector<std::pair<std::string, Rational>> read_atoms(std::istream& in);

template <class Group>
GroupMeasure<Group> read_measure(std::istream& in, const Group& g) {
  std::map<typename Group::Elem, Rational> masses;
  for (auto& [text, r] : read_atoms(in))
    if (!masses.emplace(g.parse(text), r).second) throw Error(ErrorKind::DuplicateElements, "repeated atom " + text);
  return GroupMeasure<Group>::from_masses(g, masses);
}

}  // namespace orchard
