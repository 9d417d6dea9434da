#include "orchard/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace orchard {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroInverse: return "ZeroInverse";
    case ErrorKind::NonResidue: return "NonResidue";
    case ErrorKind::CompositeModulus: return "CompositeModulus";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::EqualPoints: return "EqualPoints";
    case ErrorKind::MixedContexts: return "MixedContexts";
    case ErrorKind::LineInPlane: return "LineInPlane";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadCenter: return "BadCenter";
    case ErrorKind::PointOffPlane: return "PointOffPlane";
    case ErrorKind::OnExcludedPlane: return "OnExcludedPlane";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::PointOnQuadric: return "PointOnQuadric";
    case ErrorKind::PointOffQuadric: return "PointOffQuadric";
    case ErrorKind::CharTwo: return "CharTwo";
    case ErrorKind::NotOnSegreQuadric: return "NotOnSegreQuadric";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::EqualPlanes: return "EqualPlanes";
    case ErrorKind::ClosureCapExceeded: return "ClosureCapExceeded";
    case ErrorKind::EmptySupport: return "EmptySupport";
    case ErrorKind::DuplicateElements: return "DuplicateElements";
    case ErrorKind::MixedGroups: return "MixedGroups";
    case ErrorKind::SupportBlowup: return "SupportBlowup";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::DegenerateParameters: return "DegenerateParameters";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::SingularForm: return "SingularForm";
    case ErrorKind::NoSqrtMinusOne: return "NoSqrtMinusOne";
    case ErrorKind::IdentityElement: return "IdentityElement";
    case ErrorKind::NotOnQuadricGroup: return "NotOnQuadricGroup";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

static std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::uint32_t least_primitive_root(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "least_primitive_root needs a prime");
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (std::uint32_t g = 2; g < p; ++g) {
    bool ok = std::all_of(factors.begin(), factors.end(),
                          [&](std::uint64_t r) { return powmod(g, (p - 1) / r, p) != 1; });
    if (ok) return g;
  }
  throw Error(ErrorKind::InvalidArgument, "no primitive root");
}

// ---------------------------------------------------------------------------
// polynomials over F_p

namespace poly {
namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic m.
Poly rem(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - lead * m[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

bool has_root(std::uint32_t p, std::span<const std::uint32_t> f) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

}  // namespace

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic) {
  const std::size_t n = monic.size() - 1;
  if (n == 0 || monic.back() != 1) return false;
  if (n == 1) return true;
  if (has_root(p, monic)) return false;
  if (n <= 3) return true;
  if (n > 4) throw Error(ErrorKind::InvalidArgument, "irreducibility check limited to degree 4");
  // degree 4 without roots: reducible iff it has a monic quadratic factor
  Poly f(monic.begin(), monic.end());
  for (std::uint32_t c0 = 0; c0 < p; ++c0) {
    for (std::uint32_t c1 = 0; c1 < p; ++c1) {
      if (rem(f, Poly{c0, c1, 1}, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> least_irreducible(std::uint32_t p, unsigned n) {
  // Lexicographic on (c0, c1, ..., c_{n-1}): c0 is the most significant digit.
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= p;
  for (std::uint64_t k = 0; k < count; ++k) {
    Poly f(n + 1, 0);
    std::uint64_t rest = k;
    for (unsigned i = n; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    // f[0] is now the most significant digit of k.
    f[n] = 1;
    if (is_irreducible(p, f)) return f;
  }
  throw Error(ErrorKind::CompositeModulus, "no irreducible polynomial found");
}

}  // namespace poly

// ---------------------------------------------------------------------------
// field context

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  unsigned n = 1;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // n+1 coefficients when n > 1
  std::vector<std::uint32_t> pw;       // p^i
  std::vector<std::uint32_t> inv_table;
  std::vector<std::uint32_t> exp_table;  // exp[i] = g^i, i in [0, q-1)
  std::vector<std::uint32_t> log_table;

  std::uint32_t digit(std::uint32_t v, unsigned i) const { return (v / pw[i]) % p; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (n == 1) {
      const std::uint32_t s = a + b;
      return s >= p ? s - p : s;
    }
    std::uint32_t out = 0;
    for (unsigned i = 0; i < n; ++i) {
      std::uint32_t s = digit(a, i) + digit(b, i);
      if (s >= p) s -= p;
      out += s * pw[i];
    }
    return out;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (n == 1) return a == 0 ? 0 : p - a;
    std::uint32_t out = 0;
    for (unsigned i = 0; i < n; ++i) {
      const std::uint32_t d = digit(a, i);
      out += (d == 0 ? 0 : p - d) * pw[i];
    }
    return out;
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (n == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_table[a] + log_table[b];
    if (e >= q - 1) e -= q - 1;
    return exp_table[e];
  }

  std::uint32_t inverse(std::uint32_t a) const {
    if (a == 0) throw Error(ErrorKind::ZeroInverse, "inverse of zero");
    if (n == 1) return inv_table[a];
    const std::uint32_t l = log_table[a];
    return exp_table[l == 0 ? 0 : q - 1 - l];
  }

  // Schoolbook product modulo the modulus, used only to build the tables.
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    std::vector<std::uint32_t> prod(2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        prod[i + j] = static_cast<std::uint32_t>(
            (prod[i + j] + static_cast<std::uint64_t>(digit(a, i)) * digit(b, j)) % p);
    auto r = poly::rem(prod, modulus, p);
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < r.size(); ++i) out += r[i] * pw[i];
    return out;
  }

  std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  }

  void build_tables() {
    pw.assign(n + 1, 1);
    for (unsigned i = 1; i <= n; ++i) pw[i] = pw[i - 1] * p;
    q = pw[n];
    if (n == 1) {
      inv_table.assign(p, 0);
      for (std::uint32_t a = 1; a < p; ++a)
        inv_table[a] = static_cast<std::uint32_t>(powmod(a, p - 2, p));
      return;
    }
    const auto factors = prime_factors(q - 1);
    std::uint32_t g = 0;
    for (std::uint32_t cand = 1; cand < q; ++cand) {
      bool ok = std::all_of(factors.begin(), factors.end(),
                            [&](std::uint64_t r) { return slow_pow(cand, (q - 1) / r) != 1; });
      if (ok) {
        g = cand;
        break;
      }
    }
    if (g == 0) throw Error(ErrorKind::CompositeModulus, "no multiplicative generator");
    exp_table.assign(q - 1, 0);
    log_table.assign(q, 0);
    std::uint32_t cur = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      exp_table[i] = cur;
      log_table[cur] = i;
      cur = slow_mul(cur, g);
    }
  }

  // Sort key realising lexicographic order on (c0, c1, ...).
  std::uint32_t lex_key(std::uint32_t v) const {
    if (n == 1) return v;
    std::uint32_t k = 0;
    for (unsigned i = 0; i < n; ++i) k = k * p + digit(v, i);
    return k;
  }
};

}  // namespace detail

namespace {

using Key = std::pair<std::uint32_t, std::vector<std::uint32_t>>;

const detail::FieldData* intern(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  static std::mutex mu;
  static std::map<Key, std::unique_ptr<detail::FieldData>> registry;
  std::lock_guard lock(mu);
  Key key{p, modulus};
  auto it = registry.find(key);
  if (it != registry.end()) return it->second.get();
  auto d = std::make_unique<detail::FieldData>();
  d->p = p;
  d->n = modulus.empty() ? 1 : static_cast<unsigned>(modulus.size() - 1);
  d->modulus = std::move(modulus);
  d->build_tables();
  auto* raw = d.get();
  registry.emplace(std::move(key), std::move(d));
  return raw;
}

void check_order(std::uint32_t p, unsigned n) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "field characteristic must be prime");
  if (n < 1 || n > 4) throw Error(ErrorKind::TooLarge, "extension degree must be in [1, 4]");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) q *= p;
  if (q > Field::kMaxOrder) throw Error(ErrorKind::TooLarge, "field order exceeds 10^6");
}

const detail::FieldData* need(const detail::FieldData* d) {
  if (d == nullptr) throw Error(ErrorKind::InvalidArgument, "uninitialized field element");
  return d;
}

const detail::FieldData* same(const FieldElem& a, const FieldElem& b) {
  if (a.ctx() != b.ctx()) throw Error(ErrorKind::MixedContexts, "elements from different fields");
  return need(a.ctx());
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  check_order(p, 1);
  return Field(intern(p, {}));
}

Field Field::extension(std::uint32_t p, unsigned n) {
  check_order(p, n);
  if (n == 1) return prime(p);
  return Field(intern(p, poly::least_irreducible(p, n)));
}

Field Field::with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (modulus.size() < 2) throw Error(ErrorKind::InvalidArgument, "modulus needs degree >= 1");
  const unsigned n = static_cast<unsigned>(modulus.size() - 1);
  check_order(p, n);
  for (auto& c : modulus) c %= p;
  if (modulus.back() != 1) throw Error(ErrorKind::InvalidArgument, "modulus must be monic");
  if (!poly::is_irreducible(p, modulus))
    throw Error(ErrorKind::CompositeModulus, "modulus is reducible over F_" + std::to_string(p));
  if (n == 1) return prime(p);
  return Field(intern(p, std::move(modulus)));
}

Field Field::parse(const std::string& descriptor) {
  auto parse_u = [&](const std::string& s) -> std::uint32_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::Parse, "bad field descriptor '" + descriptor + "'");
    return static_cast<std::uint32_t>(std::stoul(s));
  };
  const auto caret = descriptor.find('^');
  if (caret == std::string::npos) return prime(parse_u(descriptor));
  const std::uint32_t p = parse_u(descriptor.substr(0, caret));
  const auto slash = descriptor.find('/', caret);
  const unsigned n = parse_u(descriptor.substr(caret + 1, slash == std::string::npos ? std::string::npos
                                                                                     : slash - caret - 1));
  if (slash == std::string::npos) return extension(p, n);
  std::vector<std::uint32_t> mod;
  std::stringstream ss(descriptor.substr(slash + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) mod.push_back(parse_u(tok));
  if (mod.size() != n + 1) throw Error(ErrorKind::Parse, "modulus needs n+1 coefficients");
  return with_modulus(p, std::move(mod));
}

std::uint32_t Field::characteristic() const { return need(d_)->p; }
unsigned Field::degree() const { return need(d_)->n; }
std::uint32_t Field::order() const { return need(d_)->q; }
std::vector<std::uint32_t> Field::modulus() const { return need(d_)->modulus; }

std::string Field::descriptor() const {
  const auto* d = need(d_);
  std::string s = std::to_string(d->p);
  if (d->n == 1) return s;
  s += "^" + std::to_string(d->n) + "/";
  for (std::size_t i = 0; i < d->modulus.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d->modulus[i]);
  }
  return s;
}

FieldElem Field::zero() const { return FieldElem(need(d_), 0); }
FieldElem Field::one() const { return FieldElem(need(d_), 1); }

FieldElem Field::from_int(std::int64_t v) const {
  const auto* d = need(d_);
  std::int64_t r = v % static_cast<std::int64_t>(d->p);
  if (r < 0) r += d->p;
  return FieldElem(d, static_cast<std::uint32_t>(r));
}

FieldElem Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  const auto* d = need(d_);
  if (coeffs.size() > d->n) throw Error(ErrorKind::InvalidArgument, "too many coefficients");
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) v += (coeffs[i] % d->p) * d->pw[i];
  return FieldElem(d, v);
}

FieldElem Field::from_index(std::uint32_t index) const {
  const auto* d = need(d_);
  if (index >= d->q) throw Error(ErrorKind::InvalidArgument, "element index out of range");
  return FieldElem(d, index);
}

FieldElem Field::parse_elem(const std::string& text) const {
  const auto* d = need(d_);
  std::vector<std::uint32_t> cs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw Error(ErrorKind::Parse, "bad coefficient '" + tok + "'");
      long long r = v % static_cast<long long>(d->p);
      if (r < 0) r += d->p;
      cs.push_back(static_cast<std::uint32_t>(r));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "bad coefficient '" + tok + "'");
    }
  }
  if (cs.empty() || (cs.size() != 1 && cs.size() != d->n))
    throw Error(ErrorKind::Parse, "element '" + text + "' needs 1 or n coefficients");
  return from_coeffs(cs);
}

FieldElem Field::generator() const {
  const auto* d = need(d_);
  return FieldElem(d, d->n == 1 ? 0 : d->p);
}

std::vector<FieldElem> Field::elements() const {
  const auto* d = need(d_);
  std::vector<FieldElem> out;
  out.reserve(d->q);
  for (std::uint32_t v = 0; v < d->q; ++v) out.push_back(FieldElem(d, v));
  return out;
}

// ---------------------------------------------------------------------------
// elements

Field FieldElem::field() const { return Field(need(ctx_)); }

bool FieldElem::is_one() const noexcept { return v_ == 1; }

std::vector<std::uint32_t> FieldElem::coeffs() const {
  const auto* d = need(ctx_);
  std::vector<std::uint32_t> out(d->n);
  for (unsigned i = 0; i < d->n; ++i) out[i] = d->digit(v_, i);
  return out;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  const auto* d = same(*this, o);
  return FieldElem(d, d->add(v_, o.v_));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  const auto* d = same(*this, o);
  return FieldElem(d, d->add(v_, d->neg(o.v_)));
}

FieldElem FieldElem::operator-() const {
  const auto* d = need(ctx_);
  return FieldElem(d, d->neg(v_));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  const auto* d = same(*this, o);
  return FieldElem(d, d->mul(v_, o.v_));
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  const auto* d = same(*this, o);
  return FieldElem(d, d->mul(v_, d->inverse(o.v_)));
}

std::strong_ordering FieldElem::operator<=>(const FieldElem& o) const noexcept {
  if (ctx_ != o.ctx_) return ctx_ <=> o.ctx_;
  if (ctx_ == nullptr) return v_ <=> o.v_;
  return ctx_->lex_key(v_) <=> ctx_->lex_key(o.v_);
}

std::string FieldElem::to_string() const {
  const auto* d = need(ctx_);
  if (d->n == 1) return std::to_string(v_);
  std::string s;
  for (unsigned i = 0; i < d->n; ++i) {
    if (i) s += ",";
    s += std::to_string(d->digit(v_, i));
  }
  return s;
}

FieldElem inv(const FieldElem& a) { return a.field().one() / a; }

FieldElem pow(const FieldElem& a, std::uint64_t e) {
  FieldElem r = a.field().one();
  FieldElem b = a;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool is_square(const FieldElem& a) {
  if (a.is_zero()) return true;
  const std::uint32_t q = a.field().order();
  if (q % 2 == 0) return true;
  return pow(a, (q - 1) / 2).is_one();
}

namespace {

FieldElem canonical_root(const FieldElem& r) {
  const FieldElem m = -r;
  return m < r ? m : r;
}

}  // namespace

std::optional<FieldElem> sqrt_exhaustive(const FieldElem& a) {
  for (const auto& r : a.field().elements()) {
    if (r * r == a) return canonical_root(r);
  }
  return std::nullopt;
}

std::optional<FieldElem> sqrt_tonelli_shanks(const FieldElem& a) {
  const Field f = a.field();
  const std::uint64_t q = f.order();
  if (a.is_zero()) return a;
  if (q % 2 == 0) return pow(a, q / 2);  // Frobenius is bijective in characteristic 2
  if (!is_square(a)) return std::nullopt;
  std::uint64_t odd = q - 1;
  unsigned s = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++s;
  }
  FieldElem z = f.one();
  for (std::uint32_t v = 1; v < q; ++v) {
    z = f.from_index(v);
    if (!is_square(z)) break;
  }
  unsigned m = s;
  FieldElem c = pow(z, odd);
  FieldElem t = pow(a, odd);
  FieldElem r = pow(a, (odd + 1) / 2);
  while (!t.is_one()) {
    unsigned i = 0;
    FieldElem t2 = t;
    while (!t2.is_one()) {
      t2 *= t2;
      ++i;
    }
    FieldElem b = c;
    for (unsigned k = 0; k + i + 1 < m; ++k) b *= b;
    m = i;
    c = b * b;
    t *= c;
    r *= b;
  }
  return canonical_root(r);
}

std::optional<FieldElem> sqrt(const FieldElem& a) {
  if (a.field().order() <= 10'000) return sqrt_exhaustive(a);
  return sqrt_tonelli_shanks(a);
}

// ---------------------------------------------------------------------------
// embeddings and quadratic extensions

Embedding::Embedding(Field from, Field to, std::vector<FieldElem> basis_images)
    : from_(from), to_(to), images_(std::move(basis_images)) {
  if (from_.characteristic() != to_.characteristic())
    throw Error(ErrorKind::MixedContexts, "embedding between different characteristics");
  if (images_.size() != from_.degree())
    throw Error(ErrorKind::InvalidArgument, "embedding needs one image per basis power");
}

Embedding Embedding::identity(const Field& f) {
  std::vector<FieldElem> imgs;
  FieldElem cur = f.one();
  for (unsigned i = 0; i < f.degree(); ++i) {
    imgs.push_back(cur);
    cur *= f.generator();
  }
  return Embedding(f, f, std::move(imgs));
}

FieldElem Embedding::operator()(const FieldElem& a) const {
  if (a.ctx() != from_.data()) throw Error(ErrorKind::MixedContexts, "element not in embedding source");
  const auto cs = a.coeffs();
  FieldElem out = to_.zero();
  for (std::size_t i = 0; i < cs.size(); ++i) out += to_.from_int(cs[i]) * images_[i];
  return out;
}

Embedding Embedding::then(const Embedding& next) const {
  if (!(next.from_ == to_)) throw Error(ErrorKind::MixedContexts, "embedding chain mismatch");
  std::vector<FieldElem> imgs;
  for (const auto& e : images_) imgs.push_back(next(e));
  return Embedding(from_, next.to_, std::move(imgs));
}

AdjoinedRoot adjoin_sqrt(const Field& f, const FieldElem& d) {
  if (d.ctx() != f.data()) throw Error(ErrorKind::MixedContexts, "d is not in the given field");
  if (auto r = sqrt(d)) return {f, Embedding::identity(f), *r, false};
  const std::uint32_t p = f.characteristic();
  if (f.degree() == 1) {
    Field ext = Field::with_modulus(p, {(p - d.index()) % p, 0, 1});
    Embedding emb(f, ext, {ext.one()});
    const FieldElem root = ext.generator();
    if (!(root * root == emb(d))) throw Error(ErrorKind::CompositeModulus, "t^2 != d in extension");
    return {ext, emb, root, true};
  }
  if (f.degree() != 2) throw Error(ErrorKind::InvalidArgument, "adjoin_sqrt supports degree 1 or 2");
  Field ext = Field::extension(p, 4);
  const auto m = f.modulus();
  std::optional<FieldElem> rho;
  for (const auto& r : ext.elements()) {
    FieldElem acc = ext.zero();
    for (std::size_t i = m.size(); i-- > 0;) acc = acc * r + ext.from_int(m[i]);
    if (acc.is_zero() && (!rho || r < *rho)) rho = r;
  }
  if (!rho) throw Error(ErrorKind::CompositeModulus, "base modulus has no root in degree-4 field");
  Embedding emb(f, ext, {ext.one(), *rho});
  auto root = sqrt(emb(d));
  if (!root) throw Error(ErrorKind::CompositeModulus, "d stays a non-residue after extension");
  return {ext, emb, *root, true};
}

}  // namespace orchard
