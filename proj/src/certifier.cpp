#include "pets/certifier.hpp"

#include <algorithm>

#include "pets/error.hpp"

namespace pets {

namespace {

using nlohmann::ordered_json;

ordered_json trace_json(const InstructionSeq& tau) {
    ordered_json out = ordered_json::array();
    for (const auto& ins : tau) out.push_back(print_instruction(ins));
    return out;
}

ordered_json frame_json(const Frame& frame) {
    ordered_json out = ordered_json::array();
    for (const auto& [f, set] : frame.table())
        for (const auto& g : set.generators()) out.push_back(f + " " + print_generator(g));
    return out;
}

ordered_json assignment_json(const Assignment& rho) {
    ordered_json out = ordered_json::object();
    for (const auto& [x, v] : rho.table()) out[x] = print_value(v);
    return out;
}

ordered_json audit_json(const AuditReport& report) {
    ordered_json out = ordered_json::array();
    for (const auto& item : report.items) {
        ordered_json j;
        j["name"] = item.name;
        j["value"] = item.value;
        j["bound"] = item.bound;
        j["ok"] = item.ok;
        if (!item.detail.empty()) j["detail"] = item.detail;
        out.push_back(std::move(j));
    }
    return out;
}

ordered_json state_json(const MachineState& s) {
    ordered_json j;
    j["frame"] = frame_json(s.base);
    j["sigma"] = update_seq_to_json(s.sigma);
    j["rho"] = assignment_json(s.rho);
    return j;
}

PhiRun run_or_bundle(const InstructionSeq& tau, const MachineState& start, const char* direction) {
    try {
        return run_phi(tau, start);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::incompatible) throw;
        // Replay step by step to isolate the failing instruction.
        MachineState s = start;
        for (std::size_t i = 0; i < tau.size(); ++i) {
            try {
                s = phi({tau[i]}, s);
            } catch (const Error&) {
                ordered_json bundle;
                bundle["direction"] = direction;
                bundle["step"] = i;
                bundle["instruction"] = print_instruction(tau[i]);
                bundle["before"] = state_json(s);
                bundle["error"] = e.what();
                throw CertificationError(std::string(direction) + " pass: " + e.what(), std::move(bundle));
            }
        }
        throw;
    }
}

void append_items(AuditReport& into, const AuditReport& from, const std::string& prefix) {
    for (auto item : from.items) {
        item.name = prefix + item.name;
        into.items.push_back(std::move(item));
    }
}

}  // namespace

bool is_zero_eq_one(const Equation& e) {
    return e.lhs == Term::suc(0, Term::eps()) && e.rhs == Term::suc(1, Term::eps());
}

InequalityCheck inequality_stage(const Equation& end, const Frame& frame, const Assignment& rho,
                                 const UpdateSeq& sigma1, const UpdateSeq& sigma2) {
    InequalityCheck out;
    out.a = eval_term(frame, rho, end.lhs);
    out.b = eval_term(apply_update_seq(frame, sigma1), rho, end.rhs);
    out.c = eval_term(frame, rho, end.rhs);
    out.d = eval_term(apply_update_seq(frame, sigma2), rho, end.lhs);
    out.forward_ok = approx_leq(out.a, out.b);
    out.backward_ok = approx_leq(out.c, out.d);
    return out;
}

AuditReport audit_claim_bounds(const Certificate& cert, const Derivation& d) {
    AuditReport report;
    const std::size_t lh = derivation_length(d);
    const std::size_t gauge_bound = std::max(cert.frame.gauge(), cert.rho.gauge()) + lh;
    for (int i = 1; i <= 2; ++i) {
        const auto m = seq_measures(i == 1 ? cert.sigma1 : cert.sigma2);
        const std::string s = "sigma" + std::to_string(i);
        report.items.push_back({"seqlh(" + s + ") <= lh(D)", m.seqlh, lh, m.seqlh <= lh, {}});
        report.items.push_back({"E(" + s + ") <= lh(D)", m.extent, lh, m.extent <= lh, {}});
        report.items.push_back(
            {"G(" + s + ") <= max{G(F),G(rho)} + lh(D)", m.gauge, gauge_bound, m.gauge <= gauge_bound, {}});
    }
    return report;
}

Certificate certify(const Derivation& d, const NiceAxiomSet& ax, const Frame& frame, const Assignment& rho) {
    if (auto report = check_derivation(d, ax); !report.ok())
        throw Error(ErrorKind::derivation, "derivation rejected:\n" + report.summary());

    Certificate cert;
    cert.derivation_digest = derivation_digest(d);
    cert.end = d.conclusion();
    cert.frame = frame;
    cert.rho = rho;

    const VarSet end_vars = free_vars(cert.end);
    for (const auto& [x, _] : rho.table())
        if (!end_vars.contains(x))
            throw Error(ErrorKind::scope, "assignment binds '" + x + "', which does not occur in the end equation");

    cert.normalized = to_vnf(d, ax);
    cert.normalized_digest = derivation_digest(cert.normalized);
    if (auto report = check_derivation(cert.normalized, ax); !report.ok() || !is_vnf(cert.normalized) ||
                                                              !(cert.normalized.conclusion() == cert.end))
        throw CertificationError("VNF conversion produced an invalid derivation",
                                 ordered_json{{"normalized", print_derivation(cert.normalized)}});

    cert.normalized_length = derivation_length(cert.normalized);
    cert.budget = std::max(frame.gauge(), rho.gauge()) + cert.normalized_length;
    cert.forward = extract_forward(cert.normalized);
    cert.backward = extract_backward(cert.normalized);

    const MachineState start = MachineState::start(frame, rho);
    PhiRun fwd = run_or_bundle(cert.forward, start, "forward");
    PhiRun bwd = run_or_bundle(cert.backward, start, "backward");
    cert.sigma1 = fwd.state.sigma;
    cert.sigma2 = bwd.state.sigma;
    cert.skipped_forward = fwd.skipped;
    cert.skipped_backward = bwd.skipped;

    InequalityCheck ineq = inequality_stage(cert.end, frame, rho, cert.sigma1, cert.sigma2);
    cert.a = ineq.a;
    cert.b = ineq.b;
    cert.c = ineq.c;
    cert.d = ineq.d;

    auto& audits = cert.audits;
    audits.items.push_back({"forward pass restores rho", fwd.state.rho == rho ? 0u : 1u, 0, fwd.state.rho == rho, {}});
    audits.items.push_back({"backward pass restores rho", bwd.state.rho == rho ? 0u : 1u, 0, bwd.state.rho == rho, {}});
    append_items(audits, audit_phi_measures(start, cert.forward, fwd.state, cert.budget, cert.normalized, ax),
                 "forward: ");
    append_items(audits, audit_phi_measures(start, cert.backward, bwd.state, cert.budget, cert.normalized, ax),
                 "backward: ");
    append_items(audits, audit_claim_bounds(cert, cert.normalized), "claim: ");

    if (!ineq.ok() || !audits.ok()) {
        ordered_json bundle = certificate_to_json(cert);
        bundle["forward_final"] = state_json(fwd.state);
        bundle["backward_final"] = state_json(bwd.state);
        std::string what = !ineq.forward_ok    ? "soundness inequality a <= b failed"
                           : !ineq.backward_ok ? "soundness inequality c <= d failed"
                                               : "audit failed:\n" + audits.summary();
        throw CertificationError(what, std::move(bundle));
    }
    return cert;
}

ProbeReport consistency_probe(const Derivation& d, const NiceAxiomSet& ax, bool bypass_check) {
    ProbeReport out;
    out.ends_in_zero_eq_one = is_zero_eq_one(d.conclusion());
    if (bypass_check) {
        // Raw extraction: the tree need not be in VNF or even check.
        const InstructionSeq fwd = extract_instructions(d, false);
        const InstructionSeq bwd = extract_instructions(d, true);
        try {
            const MachineState start = MachineState::start({}, {});
            auto s1 = phi(fwd, start).sigma;
            auto s2 = phi(bwd, start).sigma;
            InequalityCheck ineq = inequality_stage(d.conclusion(), {}, {}, s1, s2);
            out.stage = ineq.ok() ? "complete" : "inequality";
            out.certified = ineq.ok();
            out.message = ineq.ok() ? "inequalities hold"
                                    : "inequality stage fails: " + print_value(ineq.forward_ok ? ineq.c : ineq.a) +
                                          " is not below " + print_value(ineq.forward_ok ? ineq.d : ineq.b);
        } catch (const Error& e) {
            out.stage = "certify";
            out.message = e.what();
        }
        return out;
    }

    if (auto report = check_derivation(d, ax); !report.ok()) {
        out.stage = "check";
        out.message = "rejected at check stage: " + report.summary();
        return out;
    }
    try {
        Certificate cert = certify(d, ax);
        out.stage = "complete";
        out.certified = true;
        bool compat_values = compatible(cert.a, cert.b) && compatible(cert.c, cert.d);
        out.message = out.ends_in_zero_eq_one ? "0 = 1 certified: kernel bug"
                      : compat_values        ? "end values compatible"
                                             : "end values incompatible";
    } catch (const CertificationError& e) {
        out.stage = "inequality";
        out.message = e.what();
    }
    return out;
}

ordered_json update_seq_to_json(const UpdateSeq& seq) {
    ordered_json out = ordered_json::array();
    for (const auto& u : seq) out.push_back(print_update(u));
    return out;
}

ordered_json certificate_to_json(const Certificate& cert) {
    ordered_json j;
    j["derivation_digest"] = cert.derivation_digest;
    j["normalized_digest"] = cert.normalized_digest;
    j["end_equation"] = {{"lhs", print_term(cert.end.lhs)}, {"rhs", print_term(cert.end.rhs)}};
    j["frame"] = frame_json(cert.frame);
    j["assignment"] = assignment_json(cert.rho);
    j["length_convention"] = kLengthConvention;
    j["normalized_length"] = cert.normalized_length;
    j["budget_U"] = cert.budget;
    j["forward_trace"] = trace_json(cert.forward);
    j["backward_trace"] = trace_json(cert.backward);
    j["sigma1"] = update_seq_to_json(cert.sigma1);
    j["sigma2"] = update_seq_to_json(cert.sigma2);
    j["values"] = {{"a", print_value(cert.a)},
                   {"b", print_value(cert.b)},
                   {"c", print_value(cert.c)},
                   {"d", print_value(cert.d)}};
    j["inequalities"] = {{"a<=b", approx_leq(cert.a, cert.b)}, {"c<=d", approx_leq(cert.c, cert.d)}};
    j["audits"] = audit_json(cert.audits);
    j["skipped_psi"] = {{"forward", cert.skipped_forward}, {"backward", cert.skipped_backward}};
    return j;
}

}  // namespace pets
