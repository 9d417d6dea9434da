#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orchard/groups.hpp"
#include "orchard/incidence.hpp"

namespace orchard {

// ---------------------------------------------------------------------------
// Extremal three-plane configuration
//
// P1 = {x0 = 0}, P2 = {x1 = 0}, P3 = {x2 = x3}; for i in [-N, N], t in F_p:
//   X1 = [0 : d^i : t : t-1],  X2 = [-d^i : 0 : t : t-1],  X3 = [d^i : 1 : t : t]
// with d the least primitive root and N the largest integer with N^u <= p^v
// for k = u/v.

struct ExampleConfig {
  std::uint32_t p = 0;
  unsigned ku = 0;
  unsigned kv = 1;
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  Field field;
  ProjPlane p1, p2, p3;
  std::vector<ProjPoint> x1, x2, x3;

  std::uint64_t family_count() const {
    const std::uint64_t w = 2ull * n + 1;
    return w * w * p * p;
  }
};

/// Throws InvalidArgument (p not an odd prime, k <= 1) and DegenerateParameters
/// (2N + 1 > p - 1, so the powers d^i would collide).
ExampleConfig build_example(std::uint32_t p, unsigned ku, unsigned kv = 1);

/// ([0:d^j:z:z-1], [-d^{i+j}:0:z-t d^j:z-1-t d^j], [d^i:1:t:t]).
std::array<ProjPoint, 3> family_triple(const ExampleConfig& cfg, std::int64_t i, std::int64_t j, std::uint32_t t,
                                       std::uint32_t z);

struct ExampleReport {
  std::uint64_t family_count = 0;
  std::uint64_t collinear = 0;
  std::uint64_t distinct = 0;
  std::uint64_t in_x1 = 0, in_x2 = 0, in_x3 = 0;
  std::uint64_t in_sets = 0;  // triples with every member in its set
  bool all_collinear = false;
  bool all_distinct = false;
  bool all_in_sets = false;
  /// First family index (i, j, t, z) whose middle point leaves X2.
  std::optional<std::array<std::int64_t, 4>> first_outside;
  std::array<std::uint64_t, 3> max_line{};
  std::uint64_t dichotomy_bound = 0;  // max(2N + 1, p)
  bool dichotomy_ok = false;
  std::optional<std::uint64_t> triple_count;  // hash kernel over X1 x X2 x X3
  bool count_covers_family = false;  // triple_count >= family_count
};

/// Checks the identities of the configuration. Collinearity or distinctness
/// failures and dichotomy violations throw VerificationFailure; membership is
/// reported, not enforced.
ExampleReport verify_example(const ExampleConfig& cfg, bool count_triples = true);

// ---------------------------------------------------------------------------
// Quadric normalization

enum class TargetForm { SumOfSquares, Segre };

struct QuadricNormalization {
  Mat4 source;                   // B over the input field
  Field base;                    // input field
  Field field;                   // field of the transform
  Embedding embedding;           // base -> field
  std::vector<std::string> chain;  // descriptors, base first
  TargetForm target = TargetForm::SumOfSquares;
  Mat4 transform;                // M over `field`
  FieldElem scalar;              // M^T B M = scalar * target matrix
  bool verified = false;         // product recomputed and equal
};

/// M with M^T B M = I over F or F(sqrt(e)) for the first non-square pivot e.
/// Throws CharTwo, SingularForm.
QuadricNormalization diagonalize_quadric(const QuadricForm& b);

/// T on coordinates (x, y, w, z) with rows (1,0,0,1), (i,0,0,-i), (0,-1,1,0),
/// (0,i,i,0), so that sum (T v)_k^2 = 4 (xz - yw) and T^T T = 2 segre(f).
/// Throws NoSqrtMinusOne, CharTwo.
Mat4 segre_substitution(const Field& f);
QuadricNormalization to_segre_form(const Field& f);
/// diagonalize_quadric followed by the Segre substitution, adjoining
/// sqrt(-1) when needed.
QuadricNormalization normalize_to_segre(const QuadricForm& b);

// ---------------------------------------------------------------------------
// Fixed points on the Segre quadric

enum class FixedKind { Finite, OneLine, TwoLines, Other };
enum class PsoStatus { Verified, Unverified, Improper };

std::string to_string(FixedKind k);
std::string to_string(PsoStatus s);

struct FixedPointClass {
  FixedKind kind = FixedKind::Other;
  PsoStatus status = PsoStatus::Unverified;
  FieldElem lambda;                 // M^T B M = lambda B
  std::vector<ProjPoint> fixed;     // Fix(g) ∩ Q, sorted
  std::vector<ProjLine> lines;      // the lines for OneLine / TwoLines
};

/// Similitude test on x1 x4 - x2 x3: status Verified when det M = lambda^2 with
/// lambda a square (then M / sqrt(lambda) lies in SO_4), Unverified when
/// det M = lambda^2 with lambda a non-square, Improper when det M = -lambda^2.
PsoStatus pso_status(const Mat4& m, const FieldElem& lambda);

/// Throws IdentityElement, NotOnQuadricGroup, and VerificationFailure when a
/// verified element has a fixed set of another shape.
FixedPointClass classify_fixed_points(const PGLElem& g);

/// The (q+1)^2 points of the Segre quadric.
std::vector<ProjPoint> segre_quadric_points(const Field& f);

/// 2x2 Kronecker product A (x) B acting on Segre coordinates:
/// segre(A u, B w) = (A (x) B) segre(u, w).
Mat4 kronecker(const std::array<std::array<FieldElem, 2>, 2>& a, const std::array<std::array<FieldElem, 2>, 2>& b);

}  // namespace orchard
