#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pets/approx.hpp"
#include "pets/axioms.hpp"
#include "pets/derivation.hpp"
#include "pets/frame.hpp"

namespace pets {

inline constexpr std::size_t kDefaultFuel = 10'000;
inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

struct Fuel {
    std::size_t steps = kDefaultFuel;
};

// Innermost-leftmost rewriting of a ground term with the axioms read left
// to right. Absent if a non-basic redex is stuck or fuel runs out.
std::optional<ApproxValue> rewrite_eval(const NiceAxiomSet& ax, const Term& t, Fuel fuel = {});

// ⊑ by its inductive rules (∗ ⊑ v, ε ⊑ ε, v ⊑ w ⇒ vi ⊑ wi), peeling the
// last bit off both sides. Second implementation for cross-checking.
bool inductive_leq(const ApproxValue& v, const ApproxValue& w);

// Ground value as a basic term: eps, (s0 eps), ...
Term value_to_term(const ApproxValue& v);

// All v with G(v) <= kappa, by gauge; 2^(kappa+1) - 2 values. Throws
// Error(scope) if that exceeds `cap`.
std::vector<ApproxValue> enumerate_values(std::size_t kappa, std::size_t cap = kDefaultEnumerationCap);

struct ModelCheckScope {
    std::size_t kappa = 1;
    VarSet variables;  // variables quantified over (those of the in-scope axioms)
    VarSet axioms;     // ids of the axioms occurring in D
    std::size_t cap = kDefaultEnumerationCap;
};

ModelCheckScope scope_for(const Derivation& d, const NiceAxiomSet& ax, std::size_t kappa,
                          std::size_t cap = kDefaultEnumerationCap);

struct ModelCheckReport {
    bool ok = false;
    std::string message;
    std::string axiom_id;  // counterexample, when !ok
    Assignment witness;
    ApproxValue lhs_value;
    ApproxValue rhs_value;
    std::size_t evaluations = 0;
};

// Is F a κ-model for the scope? Every in-scope axiom t = u is checked under
// every assignment to its variables with values of gauge <= κ (values
// include `*`, so partial assignments are covered). `leq` selects the
// implementation of ⊑ used throughout evaluation and comparison.
ModelCheckReport check_kappa_model(const Frame& frame, const ModelCheckScope& scope, const NiceAxiomSet& ax,
                                   Order leq = approx_leq);

struct PreservationReport {
    bool ok = false;
    std::string message;
};

// Checks the preconditions (F a κ-model, u a valid update), then that
// F ∗ u is again a κ-model.
PreservationReport test_update_preservation(const Frame& frame, std::size_t kappa, const Derivation& d,
                                            const NiceAxiomSet& ax, const Update& u,
                                            std::size_t cap = kDefaultEnumerationCap);

struct OracleReport {
    bool ok = true;
    std::optional<ApproxValue> truth;  // rewrite value, if reached
    ApproxValue approx;                // ⟦t⟧_{F∗σ,∅}
    std::string message;
};

// ⟦t⟧_{F∗σ} must approximate the rewrite value whenever the latter exists.
OracleReport oracle_compare(const NiceAxiomSet& ax, const Frame& frame, const UpdateSeq& sigma, const Term& t,
                            Fuel fuel = {});

}  // namespace pets
