#pragma once

#include <string>

#include "pets/axioms.hpp"
#include "pets/derivation.hpp"
#include "pets/syntax.hpp"

namespace pets::testing {

inline constexpr const char* kAxDouble = R"(
(fun d 1)
(axiom d.eps (d eps) eps)
(axiom d.zero (d (s0 x)) (s0 (s0 (d x))))
(axiom d.one (d (s1 x)) (s1 (s1 (d x))))
)";

inline constexpr const char* kWorked =
    "(trans (subst eps y (axiom d.zero ((x y)))) (compat (s0 (s0 z)) z (axiom d.eps ())))";

inline const NiceAxiomSet& ax_double() {
    static const NiceAxiomSet ax = parse_theory(kAxDouble);
    return ax;
}

inline Derivation worked() { return parse_derivation(kWorked, ax_double()); }

inline Term T(const std::string& text) { return parse_term(text, ax_double().signature()); }

inline Equation E(const std::string& lhs, const std::string& rhs) { return {T(lhs), T(rhs)}; }

}  // namespace pets::testing
