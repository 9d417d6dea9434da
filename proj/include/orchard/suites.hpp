#pragma once

// Seeded verification suites over small fields. Each suite counts checked
// cases and failures and keeps the first failure as text; the CLI and the
// acceptance runner share them.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace orchard {

struct SuiteResult {
  explicit SuiteResult(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  std::string detail;  // free-form counts worth reporting

  bool ok() const { return cases > 0 && failures == 0; }
  void check(bool pass, const std::string& what);
};

/// gamma_xy against the composed central projections: F_3 exhaustive plus
/// `samples` random (x, y, a) over F_7.
SuiteResult suite_gamma(std::uint64_t seed, std::size_t samples = 500);
/// Closed-form commutator against compose/inverse, exhaustive over F_3.
SuiteResult suite_commutator();
/// Centralizer equations against commutation, exhaustive over F_5.
SuiteResult suite_centralizer();
/// Reflection lift over F_5 with B = I: orthogonal, involutive, collinear,
/// gamma_x^2 = id on Q, for every x off Q and y on Q.
SuiteResult suite_reflection();
/// Closed-form pair-stabilizer rule against the brute scan over P(P1)(F_5),
/// plus exact <= lemma condition.
SuiteResult suite_census();
/// `count` verified-PSO elements split over F_5 and F_9; OTHER is a failure.
SuiteResult suite_fixed_points(std::uint64_t seed, std::size_t count = 200);
/// Omega_t bounds on `count` random free-tuple instances in the F_5 affine group.
SuiteResult suite_omega(std::uint64_t seed, std::size_t count = 50);
/// Associativity, mass, Young, Linf-L2 and monotone rows on `count` random
/// measures over the F_5 / F_7 affine groups.
SuiteResult suite_measures(std::uint64_t seed, std::size_t count = 500);
/// Decomposition inequalities on `count` random measures, K in {1, 2, 4}.
SuiteResult suite_bsg(std::uint64_t seed, std::size_t count = 500);
/// Brute and line-hash triple counts on `count` random instances.
SuiteResult suite_kernels(std::uint64_t seed, std::size_t count = 200);
/// `count` random smooth forms over F_5 / F_7 plus the Segre identity on F_5^4.
SuiteResult suite_quadric(std::uint64_t seed, std::size_t count = 50);

std::vector<std::string> suite_names();
/// Runs a suite by name with default sizes; throws InvalidArgument.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

}  // namespace orchard
