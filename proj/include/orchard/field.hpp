#pragma once

// Exact arithmetic in F_p and F_{p^n} (n <= 4, p^n <= 10^6).
//
// A Field is a cheap handle onto an interned, immutable context. Contexts are
// never destroyed, so a FieldElem may hold a raw pointer to its context and two
// handles built from the same descriptor compare equal. Elements are stored as
// an index sum_i c_i p^i of their coefficient list over the fixed modulus.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orchard/error.hpp"

namespace orchard {

namespace detail {
struct FieldData;
}

class Field;

class FieldElem {
 public:
  FieldElem() = default;

  const detail::FieldData* ctx() const noexcept { return ctx_; }
  std::uint32_t index() const noexcept { return v_; }
  Field field() const;

  bool is_zero() const noexcept { return v_ == 0; }
  bool is_one() const noexcept;
  /// Coefficients c_0..c_{n-1} of the polynomial representative.
  std::vector<std::uint32_t> coeffs() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem operator*(const FieldElem& o) const;
  /// Division; throws ZeroInverse on a zero divisor.
  FieldElem operator/(const FieldElem& o) const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  bool operator==(const FieldElem& o) const noexcept { return ctx_ == o.ctx_ && v_ == o.v_; }
  /// Lexicographic order on the coefficient list, lowest degree first.
  std::strong_ordering operator<=>(const FieldElem& o) const noexcept;

  /// Coefficient text: "3" over a prime field, "1,0,2" otherwise.
  std::string to_string() const;

 private:
  friend class Field;
  FieldElem(const detail::FieldData* ctx, std::uint32_t v) : ctx_(ctx), v_(v) {}

  const detail::FieldData* ctx_ = nullptr;
  std::uint32_t v_ = 0;
};

class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = 1'000'000;

  Field() = default;

  static Field prime(std::uint32_t p);
  /// Degree-n extension over the lexicographically least monic irreducible.
  static Field extension(std::uint32_t p, unsigned n);
  /// Modulus given as n+1 coefficients, lowest degree first, leading 1.
  static Field with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus);
  /// Parses "p", "p^n" or "p^n/c0,c1,...,cn".
  static Field parse(const std::string& descriptor);

  bool valid() const noexcept { return d_ != nullptr; }
  std::uint32_t characteristic() const;
  unsigned degree() const;
  std::uint32_t order() const;
  /// Modulus coefficients, lowest degree first (empty for prime fields).
  std::vector<std::uint32_t> modulus() const;
  std::string descriptor() const;

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  FieldElem from_index(std::uint32_t index) const;
  /// Parses the coefficient text produced by FieldElem::to_string.
  FieldElem parse_elem(const std::string& text) const;
  /// The polynomial variable t (the generator of the extension).
  FieldElem generator() const;
  /// All q elements in index order; index 0 is zero.
  std::vector<FieldElem> elements() const;

  bool operator==(const Field& o) const noexcept { return d_ == o.d_; }
  const detail::FieldData* data() const noexcept { return d_; }

 private:
  friend class FieldElem;
  explicit Field(const detail::FieldData* d) : d_(d) {}
  const detail::FieldData* d_ = nullptr;
};

FieldElem inv(const FieldElem& a);
FieldElem pow(const FieldElem& a, std::uint64_t e);
bool is_square(const FieldElem& a);

/// Canonical square root: the lexicographically least of {r, -r}.
std::optional<FieldElem> sqrt(const FieldElem& a);
/// Square root by exhaustive search over the field (oracle and small fields).
std::optional<FieldElem> sqrt_exhaustive(const FieldElem& a);
/// Square root by Tonelli-Shanks, canonicalized as above.
std::optional<FieldElem> sqrt_tonelli_shanks(const FieldElem& a);

/// Ring embedding of a subfield presentation into a larger field.
class Embedding {
 public:
  Embedding() = default;
  Embedding(Field from, Field to, std::vector<FieldElem> basis_images);
  static Embedding identity(const Field& f);

  FieldElem operator()(const FieldElem& a) const;
  const Field& source() const noexcept { return from_; }
  const Field& target() const noexcept { return to_; }
  Embedding then(const Embedding& next) const;

 private:
  Field from_;
  Field to_;
  std::vector<FieldElem> images_;  // image of t^i
};

struct AdjoinedRoot {
  Field field;
  Embedding embedding;
  FieldElem root;
  bool extended = false;
};

/// Adjoins a square root of d. Returns the input field unchanged when d is
/// already a square. Supports base degree 1 or 2.
AdjoinedRoot adjoin_sqrt(const Field& f, const FieldElem& d);

// Polynomial helpers over F_p (coefficients low degree first).
namespace poly {
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);
std::vector<std::uint32_t> least_irreducible(std::uint32_t p, unsigned n);
}  // namespace poly

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
/// Least generator of (Z/p)^*.
std::uint32_t least_primitive_root(std::uint32_t p);

}  // namespace orchard

template <>
struct std::hash<orchard::FieldElem> {
  std::size_t operator()(const orchard::FieldElem& e) const noexcept { return e.index(); }
};
