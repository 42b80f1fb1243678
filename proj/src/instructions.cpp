#include "pets/instructions.hpp"

#include <algorithm>

#include "pets/error.hpp"

namespace pets {

Instruction Instruction::axiom(Equation eq, bool backward) {
    Instruction ins;
    ins.kind = backward ? Kind::ax_bwd : Kind::ax_fwd;
    ins.eq = std::move(eq);
    return ins;
}

Instruction Instruction::substitution(Term side, Term replacement, std::string var, bool up) {
    Instruction ins;
    ins.kind = up ? Kind::sub_up : Kind::sub_down;
    ins.side = std::move(side);
    ins.replacement = std::move(replacement);
    ins.var = std::move(var);
    return ins;
}

std::size_t Instruction::length() const {
    if (is_axiom()) return eq.length();
    return side.length() + replacement.length() + 1;
}

std::size_t seq_length(const InstructionSeq& tau) {
    std::size_t n = 0;
    for (const auto& ins : tau) n += ins.length();
    return n;
}

namespace {

void extract(const Derivation& d, bool backward, InstructionSeq& out) {
    switch (d.rule()) {
        case Rule::axiom:
            out.push_back(Instruction::axiom(d.conclusion(), backward));
            return;
        case Rule::refl: return;
        case Rule::sym: extract(d.child(), !backward, out); return;
        case Rule::trans:
            extract(d.child(backward ? 1 : 0), backward, out);
            extract(d.child(backward ? 0 : 1), backward, out);
            return;
        case Rule::compat: extract(d.child(), backward, out); return;
        case Rule::subst: {
            const auto& [t, u] = d.child().conclusion();
            out.push_back(Instruction::substitution(backward ? u : t, d.term(), d.variable(), true));
            extract(d.child(), backward, out);
            out.push_back(Instruction::substitution(backward ? t : u, d.term(), d.variable(), false));
            return;
        }
    }
}

InstructionSeq extract_checked(const Derivation& d, bool backward) {
    if (!is_vnf(d)) throw Error(ErrorKind::derivation, "instruction extraction requires Variable Normal Form");
    InstructionSeq out;
    extract(d, backward, out);
    return out;
}

}  // namespace

InstructionSeq extract_instructions(const Derivation& d, bool backward) {
    InstructionSeq out;
    extract(d, backward, out);
    return out;
}

InstructionSeq extract_forward(const Derivation& d) { return extract_checked(d, false); }
InstructionSeq extract_backward(const Derivation& d) { return extract_checked(d, true); }

std::string print_instruction(const Instruction& ins) {
    switch (ins.kind) {
        case Instruction::Kind::ax_fwd: return "AX-> " + print_equation(ins.eq);
        case Instruction::Kind::ax_bwd: return "AX<- " + print_equation(ins.eq);
        case Instruction::Kind::sub_up:
            return "SUP " + ins.var + " := " + print_term(ins.replacement) + " [ctx " + print_term(ins.side) + "]";
        case Instruction::Kind::sub_down: return "SDN " + ins.var;
    }
    return "?";
}

std::string print_trace(const InstructionSeq& tau) {
    std::string out;
    for (const auto& ins : tau) out += print_instruction(ins) + "\n";
    return out;
}

std::optional<Update> psi(const Equation& eq, const Frame& frame, const Assignment& rho) {
    const Term& lhs = eq.lhs;
    if (!lhs.is_app() || lhs.has_basic_head())
        throw Error(ErrorKind::derivation, "psi: lhs '" + print_term(lhs) + "' is not headed by a defined symbol");
    Update u;
    u.symbol = lhs.name();
    for (const auto& arg : lhs.args()) u.gen.args.push_back(apply_to_generalized(rho, arg));
    u.gen.out = eval_term(frame, rho, eq.rhs);
    if (u.gen.out.is_star()) return std::nullopt;
    return u;
}

MachineState MachineState::start(Frame base, Assignment rho, UpdateSeq sigma) {
    MachineState s;
    s.current = apply_update_seq(base, sigma);
    s.base = std::move(base);
    s.sigma = std::move(sigma);
    s.rho = std::move(rho);
    return s;
}

bool same_state(const MachineState& a, const MachineState& b) {
    return a.base == b.base && a.sigma == b.sigma && a.rho == b.rho;
}

PhiRun run_phi(const InstructionSeq& tau, MachineState alpha) {
    PhiRun run;
    run.state = std::move(alpha);
    auto& s = run.state;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        const Instruction& ins = tau[i];
        switch (ins.kind) {
            case Instruction::Kind::ax_fwd: break;
            case Instruction::Kind::ax_bwd: {
                PhiStep step;
                step.index = i;
                step.appended = psi(ins.eq, s.current, s.rho);
                if (step.appended) {
                    s.current = apply_update(s.current, *step.appended);
                    s.sigma.push_back(*step.appended);
                } else {
                    step.skipped = true;
                    ++run.skipped;
                }
                run.steps.push_back(std::move(step));
                break;
            }
            case Instruction::Kind::sub_up:
                s.rho = s.rho.with(ins.var, eval_term(s.current, s.rho, ins.replacement));
                break;
            case Instruction::Kind::sub_down: s.rho = s.rho.without(ins.var); break;
        }
    }
    return run;
}

MachineState phi(const InstructionSeq& tau, const MachineState& alpha) { return run_phi(tau, alpha).state; }

bool AuditReport::ok() const {
    return std::all_of(items.begin(), items.end(), [](const AuditItem& i) { return i.ok; });
}

std::string AuditReport::summary() const {
    std::string out;
    for (const auto& i : items) {
        out += (i.ok ? "PASS " : "FAIL ") + i.name + ": " + std::to_string(i.value) + " <= " + std::to_string(i.bound);
        if (!i.detail.empty()) out += " (" + i.detail + ")";
        out += "\n";
    }
    return out;
}

AuditReport audit_phi_measures(const MachineState& before, const InstructionSeq& tau, const MachineState& after,
                               std::size_t kappa, const Derivation& d, const NiceAxiomSet& ax) {
    AuditReport report;
    auto add = [&](std::string name, std::size_t value, std::size_t bound, std::string detail = {}) {
        report.items.push_back({std::move(name), value, bound, value <= bound, std::move(detail)});
    };
    const auto sb = seq_measures(before.sigma);
    const auto sa = seq_measures(after.sigma);
    const std::size_t lh_tau = seq_length(tau);
    const std::size_t base_gauge = std::max({before.rho.gauge(), before.base.gauge(), sb.gauge});
    add("seqlh(sigma') <= seqlh(sigma) + seqlh(tau)", sa.seqlh, sb.seqlh + tau.size());
    add("G(rho') <= max{G(rho),G(F),G(sigma)} + lh(tau)", after.rho.gauge(), base_gauge + lh_tau);
    add("G(sigma') <= max{G(rho),G(F),G(sigma)} + lh(tau)", sa.gauge, base_gauge + lh_tau);
    add("E(sigma') <= E(sigma) + lh(tau)", sa.extent, sb.extent + lh_tau);

    // The appended updates form a sequence based on F, κ and D.
    bool prefix_ok = after.sigma.size() >= before.sigma.size() &&
                     std::equal(before.sigma.begin(), before.sigma.end(), after.sigma.begin());
    add("sigma is a prefix of sigma'", prefix_ok ? 0 : 1, 0);
    Frame frame = before.current;
    for (std::size_t i = before.sigma.size(); prefix_ok && i < after.sigma.size(); ++i) {
        const Update& u = after.sigma[i];
        UpdateCheck check = validate_update(frame, kappa, d, ax, u);
        add("update " + std::to_string(i) + " valid at kappa", check.ok ? 0 : 1, 0,
            check.ok ? print_update(u) + " via " + check.axiom_id : print_update(u) + ": " + check.reason);
        if (!check.ok) break;
        frame = apply_update(frame, u);
    }
    return report;
}

}  // namespace pets
