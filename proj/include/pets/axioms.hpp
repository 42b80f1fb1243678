#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pets/syntax.hpp"

namespace pets {

// Left-hand side shape: f(x̄), f(eps, x̄), f(x0, x̄), f(x1, x̄).
enum class AxiomShape { plain, eps_case, zero_case, one_case };

std::string_view to_string(AxiomShape shape);

struct Axiom {
    std::string id;  // stable name, e.g. "d.zero"
    Equation eq;
    AxiomShape shape = AxiomShape::plain;

    const std::string& symbol() const { return eq.lhs.name(); }
    // Variables of the lhs, argument order.
    std::vector<std::string> variables() const;
};

class NiceAxiomSet {
public:
    const Signature& signature() const { return sig_; }
    const std::vector<Axiom>& axioms() const { return axioms_; }
    const Axiom* find(std::string_view id) const;

private:
    friend NiceAxiomSet validate_nice(Signature, std::vector<std::pair<std::string, Equation>>);

    Signature sig_;
    std::vector<Axiom> axioms_;
};

// Throws Error(niceness) naming the offending axiom(s).
NiceAxiomSet validate_nice(Signature sig, std::vector<std::pair<std::string, Equation>> axioms);

struct AxiomMatch {
    const Axiom* axiom = nullptr;
    Substitution sub;  // lhs variables -> subterms of the matched term
};

// Matches `pattern` (a linear lhs) against `t`; the result maps pattern
// variables to subterms of `t`.
std::optional<Substitution> match_pattern(const Term& pattern, const Term& t);

std::optional<AxiomMatch> match_axiom(const NiceAxiomSet& ax, const Term& t);

// Most general unifier of two terms with disjoint variables.
std::optional<Substitution> unify(const Term& a, const Term& b);

// Deterministic supply of fresh variables `v<k>` avoiding a reserved set.
class FreshSupply {
public:
    explicit FreshSupply(VarSet reserved = {}, std::string prefix = "v")
        : reserved_(std::move(reserved)), prefix_(std::move(prefix)) {}

    std::string next();
    void reserve(std::string_view name) { reserved_.insert(std::string(name)); }

private:
    VarSet reserved_;
    std::string prefix_;
    std::size_t counter_ = 0;
};

struct RenamedAxiom {
    Equation eq;
    Substitution renaming;  // axiom variable -> fresh variable
};

RenamedAxiom rename_injective(const NiceAxiomSet& ax, std::string_view id, FreshSupply& fresh);

// Theory file: `(fun d 1)` and `(axiom d.eps (d eps) eps)` clauses.
NiceAxiomSet parse_theory(std::string_view text);
std::string print_theory(const NiceAxiomSet& ax);

}  // namespace pets
