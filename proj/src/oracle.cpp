#include "pets/oracle.hpp"

#include "pets/error.hpp"

namespace pets {

namespace {

std::optional<ApproxValue> normalize(const NiceAxiomSet& ax, const Term& t, std::size_t& fuel) {
    if (t.is_var()) return std::nullopt;
    if (t.is_eps()) return ApproxValue::ground();
    if (auto bit = t.suc_bit()) {
        auto inner = normalize(ax, t.args()[0], fuel);
        if (!inner) return std::nullopt;
        return inner->append(*bit);
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) {
        auto v = normalize(ax, a, fuel);
        if (!v) return std::nullopt;
        args.push_back(value_to_term(*v));
    }
    auto hit = match_axiom(ax, Term::app(t.name(), std::move(args)));
    if (!hit || fuel == 0) return std::nullopt;
    --fuel;
    return normalize(ax, substitute(hit->axiom->eq.rhs, hit->sub), fuel);
}

}  // namespace

bool inductive_leq(const ApproxValue& v, const ApproxValue& w) {
    if (v.is_star()) return true;
    if (v.bits().empty()) return w.is_ground() && w.bits().empty();
    int bit = v.bits().back() - '0';
    if (!w.ends_with(bit)) return false;
    return inductive_leq(v.drop_last(), w.drop_last());
}

Term value_to_term(const ApproxValue& v) {
    if (!v.is_ground()) throw Error(ErrorKind::parse, "value_to_term: " + print_value(v) + " is not ground");
    Term t = Term::eps();
    for (char b : v.bits()) t = Term::suc(b - '0', t);
    return t;
}

std::optional<ApproxValue> rewrite_eval(const NiceAxiomSet& ax, const Term& t, Fuel fuel) {
    std::size_t budget = fuel.steps;
    return normalize(ax, t, budget);
}

std::vector<ApproxValue> enumerate_values(std::size_t kappa, std::size_t cap) {
    if (kappa >= 40 || (std::size_t{2} << kappa) - 2 > cap)
        throw Error(ErrorKind::scope, "enumeration of values of gauge <= " + std::to_string(kappa) + " exceeds cap");
    std::vector<ApproxValue> out;
    for (std::size_t len = 0; len < kappa; ++len) {
        for (std::size_t code = 0; code < (std::size_t{1} << len); ++code) {
            std::string bits(len, '0');
            for (std::size_t i = 0; i < len; ++i)
                if (code >> (len - 1 - i) & 1) bits[i] = '1';
            out.push_back(ApproxValue::ground(bits));
            out.push_back(ApproxValue::star(bits));
        }
    }
    return out;
}

ModelCheckScope scope_for(const Derivation& d, const NiceAxiomSet& ax, std::size_t kappa, std::size_t cap) {
    ModelCheckScope scope;
    scope.kappa = kappa;
    scope.cap = cap;
    scope.axioms = axioms_used(d);
    for (const auto& id : scope.axioms)
        if (const Axiom* a = ax.find(id))
            for (const auto& v : a->variables()) scope.variables.insert(v);
    return scope;
}

ModelCheckReport check_kappa_model(const Frame& frame, const ModelCheckScope& scope, const NiceAxiomSet& ax,
                                   Order leq) {
    ModelCheckReport report;
    if (frame.gauge() > scope.kappa) {
        report.message = "G(F) = " + std::to_string(frame.gauge()) + " exceeds kappa " + std::to_string(scope.kappa);
        return report;
    }
    const auto values = enumerate_values(scope.kappa, scope.cap);
    std::size_t budget = 0;
    for (const auto& id : scope.axioms) {
        const Axiom* a = ax.find(id);
        if (a == nullptr) throw Error(ErrorKind::scope, "axiom '" + id + "' not in theory");
        std::size_t combos = 1;
        for (std::size_t i = 0; i < a->variables().size(); ++i) {
            combos *= values.size();
            if (combos > scope.cap) break;
        }
        budget += combos;
        if (budget > scope.cap)
            throw Error(ErrorKind::scope, "model check exceeds " + std::to_string(scope.cap) + " evaluations");
    }
    for (const auto& id : scope.axioms) {
        const Axiom& a = *ax.find(id);
        const auto vars = a.variables();
        std::vector<std::size_t> odometer(vars.size(), 0);
        for (;;) {
            Assignment rho;
            for (std::size_t i = 0; i < vars.size(); ++i) rho = rho.with(vars[i], values[odometer[i]]);
            ApproxValue lhs = eval_term(frame, rho, a.eq.lhs, leq);
            ApproxValue rhs = eval_term(frame, rho, a.eq.rhs, leq);
            ++report.evaluations;
            if (!leq(lhs, rhs)) {
                report.axiom_id = a.id;
                report.witness = rho;
                report.lhs_value = lhs;
                report.rhs_value = rhs;
                report.message = "axiom " + a.id + " fails under {" + print_assignment(rho) + "}: " +
                                 print_value(lhs) + " is not below " + print_value(rhs);
                return report;
            }
            std::size_t i = 0;
            while (i < odometer.size() && ++odometer[i] == values.size()) odometer[i++] = 0;
            if (i == odometer.size()) break;
        }
    }
    report.ok = true;
    report.message = "kappa-model (" + std::to_string(report.evaluations) + " assignments checked)";
    return report;
}

PreservationReport test_update_preservation(const Frame& frame, std::size_t kappa, const Derivation& d,
                                            const NiceAxiomSet& ax, const Update& u, std::size_t cap) {
    PreservationReport out;
    const auto scope = scope_for(d, ax, kappa, cap);
    if (auto before = check_kappa_model(frame, scope, ax); !before.ok) {
        out.message = "precondition: F is not a kappa-model: " + before.message;
        return out;
    }
    if (auto valid = validate_update(frame, kappa, d, ax, u); !valid.ok) {
        out.message = "precondition: not an update: " + valid.reason;
        return out;
    }
    Frame next;
    try {
        next = apply_update(frame, u);
    } catch (const Error& e) {
        out.message = std::string("model update violated: F * u is inconsistent: ") + e.what();
        return out;
    }
    if (auto after = check_kappa_model(next, scope, ax); !after.ok) {
        out.message = "model update violated: " + after.message;
        return out;
    }
    out.ok = true;
    out.message = "preserved";
    return out;
}

OracleReport oracle_compare(const NiceAxiomSet& ax, const Frame& frame, const UpdateSeq& sigma, const Term& t,
                            Fuel fuel) {
    OracleReport out;
    out.approx = eval_term(apply_update_seq(frame, sigma), {}, t);
    out.truth = rewrite_eval(ax, t, fuel);
    if (!out.truth) {
        out.message = "no rewrite value within fuel; nothing to compare";
        return out;
    }
    out.ok = approx_leq(out.approx, *out.truth);
    out.message = print_value(out.approx) + (out.ok ? " approximates " : " overshoots ") + print_value(*out.truth);
    return out;
}

}  // namespace pets
