#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pets/axioms.hpp"
#include "pets/syntax.hpp"

namespace pets {

enum class Rule { axiom, refl, sym, trans, compat, subst };

std::string_view to_string(Rule rule);

// Rule-labelled derivation tree. Every node caches its conclusion; the
// factories compute it from the rule, `with_conclusion` overrides it (used
// to model claimed-but-wrong conclusions from untrusted sources).
class Derivation {
public:
    // Instance inst(axiom_eq) of the axiom `id`. Axiom variables absent
    // from `inst` map to themselves.
    static Derivation axiom(std::string id, Equation axiom_eq, Substitution inst);
    static Derivation refl(Term t);
    static Derivation sym(Derivation child);
    // left: t = s, right: s = u  ⊢  t = u
    static Derivation trans(Derivation left, Derivation right);
    // t = u ⊢ context[t/hole] = context[u/hole]
    static Derivation compat(Term context, std::string hole, Derivation child);
    // t = u ⊢ t[replacement/var] = u[replacement/var]
    static Derivation subst(Term replacement, std::string var, Derivation child);

    Derivation with_conclusion(Equation e) const;

    Rule rule() const { return node_->rule; }
    const Equation& conclusion() const { return node_->conclusion; }
    std::span<const Derivation> children() const { return node_->children; }
    const Derivation& child(std::size_t i = 0) const { return node_->children.at(i); }

    const std::string& axiom_id() const { return node_->name; }
    const Equation& axiom_equation() const { return node_->axiom_eq; }
    const Substitution& instantiation() const { return node_->inst; }
    // Image of an axiom variable under the instantiation.
    Term instance_of(const std::string& axiom_var) const;

    // Compat context or Subst replacement.
    const Term& term() const { return node_->term; }
    // Compat hole or Subst bound variable.
    const std::string& variable() const { return node_->name; }

private:
    struct Node {
        Rule rule = Rule::refl;
        Equation conclusion{Term::eps(), Term::eps()};
        std::vector<Derivation> children;
        std::string name;  // axiom id, or Compat/Subst variable
        Equation axiom_eq{Term::eps(), Term::eps()};
        Substitution inst;
        Term term = Term::eps();
    };

    explicit Derivation(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// Looks the axiom up in `ax`; throws Error(derivation) for an unknown id.
Derivation axiom_instance(const NiceAxiomSet& ax, std::string_view id, Substitution inst = {});

struct Diagnostic {
    std::string path;  // child indices from the root, e.g. "root.0.1"
    std::string message;
};

struct CheckReport {
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
    std::string summary() const;
};

CheckReport check_derivation(const Derivation& d, const NiceAxiomSet& ax);

struct DerivationMeasures {
    std::size_t length = 0;
    VarSet vars;
    VarSet bvars;
};

// Length is the sum of conclusion lengths plus rule syntax: Subst adds
// lh(t,s,x,u,s,x), Compat adds lh(s,x).
DerivationMeasures measure(const Derivation& d);
std::size_t derivation_length(const Derivation& d);
std::size_t derivation_depth(const Derivation& d);
std::size_t node_count(const Derivation& d);
VarSet axioms_used(const Derivation& d);

bool is_injective_renaming(const Derivation& axiom_node);
bool is_vnf(const Derivation& d);

// Equivalent derivation in Variable Normal Form with the same end equation.
// Fresh variables are `v<k>` from a counter local to this call.
Derivation to_vnf(const Derivation& d, const NiceAxiomSet& ax);

// Renames variable `from` to the unused variable `to` throughout `d`.
Derivation rename_variable(const Derivation& d, const std::string& from, const std::string& to);

std::string print_derivation(const Derivation& d);
Derivation parse_derivation(std::string_view text, const NiceAxiomSet& ax);
Derivation derivation_from_sexpr(const sexpr::Node& node, const NiceAxiomSet& ax);

// 64-bit FNV-1a of the canonical printout, as 16 hex digits.
std::string derivation_digest(const Derivation& d);

}  // namespace pets
