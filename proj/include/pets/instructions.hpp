#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pets/derivation.hpp"
#include "pets/frame.hpp"

namespace pets {

struct Instruction {
    enum class Kind { ax_fwd, ax_bwd, sub_up, sub_down };

    Kind kind = Kind::ax_fwd;
    Equation eq{Term::eps(), Term::eps()};  // axiom instructions: renamed axiom t = u
    Term side = Term::eps();                // substitution instructions: s in S[s, t/x]
    Term replacement = Term::eps();         //                            t
    std::string var;                        //                            x

    static Instruction axiom(Equation eq, bool backward);
    static Instruction substitution(Term side, Term replacement, std::string var, bool up);

    bool is_axiom() const { return kind == Kind::ax_fwd || kind == Kind::ax_bwd; }
    std::size_t length() const;

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

using InstructionSeq = std::vector<Instruction>;

std::size_t seq_length(const InstructionSeq& tau);  // lh(τ), sum of instruction lengths

// Inst→_D and Inst←_D. Throws Error(derivation) if D is not in VNF.
InstructionSeq extract_forward(const Derivation& d);
InstructionSeq extract_backward(const Derivation& d);
// Same recursion without the VNF precondition.
InstructionSeq extract_instructions(const Derivation& d, bool backward);

// `AX-> (d eps) = eps`, `SUP y := eps [ctx (d (s0 y))]`, `SDN y`
std::string print_instruction(const Instruction& ins);
std::string print_trace(const InstructionSeq& tau);

// Ψ(t ← u, ⟨F, ρ⟩): f:ρ(t̄) ↦ ⟦u⟧. Absent when ⟦u⟧ = *, which is not a
// legal generator output. Throws Error(derivation) if t is not f(t̄) with
// generalized-variable arguments.
std::optional<Update> psi(const Equation& eq, const Frame& frame, const Assignment& rho);

// ⟨F, σ, ρ⟩. `current` is kept equal to F ∗ σ.
struct MachineState {
    Frame base;
    UpdateSeq sigma;
    Assignment rho;
    Frame current;

    static MachineState start(Frame base, Assignment rho, UpdateSeq sigma = {});
};

bool same_state(const MachineState& a, const MachineState& b);

struct PhiStep {
    std::size_t index = 0;  // position in τ
    std::optional<Update> appended;
    bool skipped = false;   // backward axiom whose Ψ value was *
};

struct PhiRun {
    MachineState state;
    std::vector<PhiStep> steps;  // backward-axiom steps only
    std::size_t skipped = 0;
};

// Folds τ over α. Throws Error(incompatible) if an appended generator
// clashes with the current frame.
PhiRun run_phi(const InstructionSeq& tau, MachineState alpha);
MachineState phi(const InstructionSeq& tau, const MachineState& alpha);

struct AuditItem {
    std::string name;
    std::size_t value = 0;
    std::size_t bound = 0;
    bool ok = false;
    std::string detail;
};

struct AuditReport {
    std::vector<AuditItem> items;

    bool ok() const;
    std::string summary() const;
};

// Measure inequalities of one Φ run, plus validity of every appended update
// as an update based on the frame at that point, κ and D.
AuditReport audit_phi_measures(const MachineState& before, const InstructionSeq& tau, const MachineState& after,
                               std::size_t kappa, const Derivation& d, const NiceAxiomSet& ax);

}  // namespace pets
