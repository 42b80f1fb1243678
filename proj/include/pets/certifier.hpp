#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "pets/derivation.hpp"
#include "pets/error.hpp"
#include "pets/frame.hpp"
#include "pets/instructions.hpp"

namespace pets {

inline constexpr const char* kLengthConvention = "subst:+lh(t,s,x,u,s,x);compat:+lh(s,x);axiom:+0";

struct Certificate {
    std::string derivation_digest;
    std::string normalized_digest;
    Derivation normalized = Derivation::refl(Term::eps());
    Equation end{Term::eps(), Term::eps()};
    Frame frame;
    Assignment rho;
    std::size_t normalized_length = 0;  // lh of the VNF derivation Φ ran on
    std::size_t budget = 0;             // U = max{G(F), G(ρ)} + lh(D)
    InstructionSeq forward;
    InstructionSeq backward;
    UpdateSeq sigma1;
    UpdateSeq sigma2;
    ApproxValue a;  // ⟦t⟧_{F,ρ}
    ApproxValue b;  // ⟦u⟧_{F∗σ1,ρ}
    ApproxValue c;  // ⟦u⟧_{F,ρ}
    ApproxValue d;  // ⟦t⟧_{F∗σ2,ρ}
    std::size_t skipped_forward = 0;
    std::size_t skipped_backward = 0;
    AuditReport audits;

    bool sound() const { return approx_leq(a, b) && approx_leq(c, d); }
};

// Certification failure. `bundle` is a JSON document with the state
// around the failing step.
class CertificationError : public Error {
public:
    CertificationError(const std::string& what, nlohmann::ordered_json bundle)
        : Error(ErrorKind::certification, what), bundle_(std::move(bundle)) {}

    const nlohmann::ordered_json& bundle() const { return bundle_; }

private:
    nlohmann::ordered_json bundle_;
};

// Checks D, normalizes it to VNF, runs Φ on both instruction sequences from
// ⟨F, ⟨⟩, ρ⟩ and verifies both soundness inequalities and all audits.
// Throws Error(derivation) if D is rejected, CertificationError otherwise.
Certificate certify(const Derivation& d, const NiceAxiomSet& ax, const Frame& frame = {},
                    const Assignment& rho = {});

// seqlh(σi), E(σi) <= lh(D) and G(σi) <= max{G(F),G(ρ)} + lh(D), where D
// is the derivation Φ ran on.
AuditReport audit_claim_bounds(const Certificate& cert, const Derivation& d);

struct InequalityCheck {
    ApproxValue a, b, c, d;
    bool forward_ok = false;   // a ⊑ b
    bool backward_ok = false;  // c ⊑ d

    bool ok() const { return forward_ok && backward_ok; }
};

// Final stage of certification, exposed so it can be driven directly.
InequalityCheck inequality_stage(const Equation& end, const Frame& frame, const Assignment& rho,
                                 const UpdateSeq& sigma1, const UpdateSeq& sigma2);

struct ProbeReport {
    std::string stage;  // "check", "certify", "inequality" or "complete"
    bool ends_in_zero_eq_one = false;
    bool certified = false;
    std::string message;
};

// Where does the pipeline stop for D? With `bypass_check`, the checker and
// VNF pass are skipped and Φ runs on D as given, so that a bogus tree
// reaches the inequality stage.
ProbeReport consistency_probe(const Derivation& d, const NiceAxiomSet& ax, bool bypass_check = false);

bool is_zero_eq_one(const Equation& e);

nlohmann::ordered_json certificate_to_json(const Certificate& cert);
nlohmann::ordered_json update_seq_to_json(const UpdateSeq& seq);

}  // namespace pets
