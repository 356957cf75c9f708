#ifndef LPA_SUITES_HPP
#define LPA_SUITES_HPP

#include <cstdint>
#include <random>

#include "lpa/monoid.hpp"
#include "lpa/qalg.hpp"

namespace lpa {

// Test graphs used across suites and the CLI examples.
Ctx make_graph_T();     // u with loop alpha, f: u -> v, loop beta at v
Ctx make_graph_R2();    // one vertex w, loops e1, e2
Ctx make_graph_tree3(); // root component {a} (two loops), branches b, c

// Seeded random inputs (deterministic across platforms: mt19937_64 only).
struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(g() % static_cast<std::uint64_t>(n)); }
};

FieldScalar random_scalar(const Ctx& c, Rng& r, int home);
PathElement random_pe(const Ctx& c, Rng& r, int max_degree, bool allow_trivial);
Mat random_eps_zero(const Ctx& c, Rng& r, int size, int entry_degree);
LinRep random_rep(const Ctx& c, Rng& r, int size, int entry_degree);

std::vector<std::vector<int>> all_lower_sets(const ComponentPoset& p);

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::string detail; // counts, or a replayable counterexample on failure
};

struct SuiteReport {
  std::vector<SuiteResult> results;
  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

SuiteResult suite_relations(const Ctx& c);
SuiteResult suite_relations_q(const Ctx& c, int degree);
SuiteResult suite_binverse(const Ctx& c, std::uint64_t seed, int count, int degree);
SuiteResult suite_corner(const Ctx& c, std::uint64_t seed, int count, int degree);
SuiteResult suite_derivation(const Ctx& c, std::uint64_t seed, int count);
SuiteResult suite_transduce_rep(const Ctx& c, std::uint64_t seed, int count, int degree);
SuiteResult suite_monoid(const Ctx& c);
SuiteResult suite_sigma_prime(const Ctx& c, std::uint64_t seed, int count, int degree);
SuiteResult suite_invert_free(const Ctx& c, std::uint64_t seed, int count, int degree);
SuiteResult suite_amalgamation(std::uint64_t seed, int count);
SuiteResult suite_confluence(const Ctx& c, std::uint64_t seed, int count);

struct SuiteConfig {
  std::uint64_t seed = 1;
  int degree = 8;
  int n_binverse = 25;
  int n_corner = 25;
  int n_derivation = 100;
  int n_transduce = 25;
  int n_sigma = 25;
  int n_invert = 10;
  int n_amalg = 5;
  int n_confluence = 50;
};

SuiteReport run_all_suites(const Ctx& c, const SuiteConfig& cfg);

} // namespace lpa

#endif
