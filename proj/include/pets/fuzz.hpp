#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pets/approx.hpp"
#include "pets/axioms.hpp"
#include "pets/derivation.hpp"
#include "pets/frame.hpp"

namespace pets::fuzz {

using Rng = std::mt19937_64;

struct TheoryParams {
    std::size_t min_functions = 1;
    std::size_t max_functions = 3;
    std::size_t max_arity = 2;
    std::size_t max_rhs_length = 6;
};

// Rule weights for the derivation generator; configuration only.
struct RuleWeights {
    double axiom = 0.30;
    double trans = 0.25;
    double subst = 0.20;
    double compat = 0.15;
    double sym = 0.07;
    double refl = 0.03;
};

struct DerivationParams {
    std::size_t max_depth = 6;
    std::size_t max_term_length = 4;
    RuleWeights weights;
};

ApproxValue random_value(Rng& rng, std::size_t max_gauge);
ValueTuple random_tuple(Rng& rng, std::size_t extent, std::size_t max_gauge);

// Grows a consistent set by rejection: candidate generators that would
// break consistency are dropped.
ConsistentSet random_consistent_set(Rng& rng, std::size_t max_generators, std::size_t extent,
                                    std::size_t max_gauge);

// Random well-formed term over `sig` with variables from `vars`.
Term random_term(Rng& rng, const Signature& sig, const std::vector<std::string>& vars, std::size_t max_length);

// Random nice theory. Recursion in right-hand sides is structural, so
// rewriting terminates; case splits may be incomplete.
NiceAxiomSet random_theory(Rng& rng, const TheoryParams& params = {});

// Random derivation that passes check_derivation, built by forward rule
// application with tree height at most params.max_depth.
Derivation random_derivation(Rng& rng, const NiceAxiomSet& ax, const DerivationParams& params = {});

// Random frame reachable from the empty frame by valid updates.
Frame random_frame(Rng& rng, const NiceAxiomSet& ax, std::size_t max_generators, std::size_t max_gauge);

// Random assignment over `vars` (each bound with probability 1/2).
Assignment random_assignment(Rng& rng, const VarSet& vars, std::size_t max_gauge);

struct CorpusEntry {
    std::size_t theory = 0;
    Derivation derivation = Derivation::refl(Term::eps());
};

struct Corpus {
    std::vector<NiceAxiomSet> theories;
    std::vector<CorpusEntry> entries;
};

// Deterministic for a fixed seed. Derivations are spread round-robin over
// the theories.
Corpus generate_corpus(std::uint64_t seed, std::size_t theories, std::size_t count,
                       const DerivationParams& params = {});

}  // namespace pets::fuzz
