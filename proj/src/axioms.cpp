#include "pets/axioms.hpp"

#include <functional>

#include "pets/error.hpp"

namespace pets {

std::string_view to_string(AxiomShape shape) {
    switch (shape) {
        case AxiomShape::plain: return "plain";
        case AxiomShape::eps_case: return "eps-case";
        case AxiomShape::zero_case: return "0-case";
        case AxiomShape::one_case: return "1-case";
    }
    return "?";
}

std::vector<std::string> Axiom::variables() const {
    std::vector<std::string> out;
    for (const auto& arg : eq.lhs.args()) {
        if (arg.is_var()) out.push_back(arg.name());
        else if (arg.suc_bit()) out.push_back(arg.args()[0].name());
    }
    return out;
}

const Axiom* NiceAxiomSet::find(std::string_view id) const {
    for (const auto& a : axioms_)
        if (a.id == id) return &a;
    return nullptr;
}

namespace {

[[noreturn]] void reject(const std::string& msg) { throw Error(ErrorKind::niceness, msg); }

AxiomShape classify(const std::string& id, const Equation& eq) {
    const Term& lhs = eq.lhs;
    if (lhs.is_var() || lhs.has_basic_head())
        reject("axiom " + id + ": lhs must be headed by a non-basic function symbol");
    auto args = lhs.args();
    AxiomShape shape = AxiomShape::plain;
    VarSet seen;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const Term& a = args[i];
        std::string var;
        if (a.is_var()) {
            var = a.name();
        } else if (i == 0 && a.is_eps()) {
            shape = AxiomShape::eps_case;
        } else if (i == 0 && is_generalized_variable(a)) {
            shape = *a.suc_bit() == 0 ? AxiomShape::zero_case : AxiomShape::one_case;
            var = a.args()[0].name();
        } else {
            reject("axiom " + id + ": argument " + std::to_string(i + 1) + " of lhs '" +
                   print_term(lhs) + "' does not fit a nice shape");
        }
        if (!var.empty() && !seen.insert(var).second)
            reject("axiom " + id + ": variable '" + var + "' occurs twice in lhs");
    }
    for (const auto& v : free_vars(eq.rhs))
        if (!seen.contains(v))
            reject("axiom " + id + ": rhs variable '" + v + "' does not occur in lhs");
    return shape;
}

Term rename_apart(const Term& t, const std::string& suffix) {
    Substitution sub;
    for (const auto& v : free_vars(t)) sub.emplace(v, Term::var(v + suffix));
    return substitute(t, sub);
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
    Substitution sub;
    std::vector<std::pair<Term, Term>> work{{a, b}};
    while (!work.empty()) {
        auto [s, t] = work.back();
        work.pop_back();
        s = substitute(s, sub);
        t = substitute(t, sub);
        if (s == t) continue;
        if (!s.is_var() && t.is_var()) std::swap(s, t);
        if (s.is_var()) {
            if (occurs(t, s.name())) return std::nullopt;
            Substitution one{{s.name(), t}};
            for (auto& [_, image] : sub) image = substitute(image, one);
            sub.emplace(s.name(), t);
            continue;
        }
        if (s.name() != t.name() || s.args().size() != t.args().size()) return std::nullopt;
        for (std::size_t i = 0; i < s.args().size(); ++i) work.emplace_back(s.args()[i], t.args()[i]);
    }
    return sub;
}

NiceAxiomSet validate_nice(Signature sig, std::vector<std::pair<std::string, Equation>> axioms) {
    NiceAxiomSet out;
    for (auto& [id, eq] : axioms) {
        if (out.find(id) != nullptr) reject("axiom id '" + id + "' used twice");
        AxiomShape shape = classify(id, eq);
        out.axioms_.push_back(Axiom{id, eq, shape});
    }
    const auto& list = out.axioms_;
    for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size(); ++j) {
            if (list[i].symbol() != list[j].symbol()) continue;
            if (unify(rename_apart(list[i].eq.lhs, "#1"), rename_apart(list[j].eq.lhs, "#2")))
                reject("axioms " + list[i].id + " and " + list[j].id + " have overlapping lhs");
        }
    }
    out.sig_ = std::move(sig);
    return out;
}

std::optional<Substitution> match_pattern(const Term& pattern, const Term& t) {
    Substitution sub;
    std::function<bool(const Term&, const Term&)> go = [&](const Term& p, const Term& s) {
        if (p.is_var()) {
            auto [it, inserted] = sub.emplace(p.name(), s);
            return inserted || it->second == s;
        }
        if (s.is_var() || p.name() != s.name() || p.args().size() != s.args().size()) return false;
        for (std::size_t i = 0; i < p.args().size(); ++i)
            if (!go(p.args()[i], s.args()[i])) return false;
        return true;
    };
    if (!go(pattern, t)) return std::nullopt;
    return sub;
}

std::optional<AxiomMatch> match_axiom(const NiceAxiomSet& ax, const Term& t) {
    if (!t.is_app() || t.has_basic_head()) return std::nullopt;
    for (const auto& a : ax.axioms()) {
        if (a.symbol() != t.name()) continue;
        if (auto sub = match_pattern(a.eq.lhs, t)) return AxiomMatch{&a, std::move(*sub)};
    }
    return std::nullopt;
}

std::string FreshSupply::next() {
    for (;;) {
        std::string name = prefix_ + std::to_string(counter_++);
        if (reserved_.insert(name).second) return name;
    }
}

RenamedAxiom rename_injective(const NiceAxiomSet& ax, std::string_view id, FreshSupply& fresh) {
    const Axiom* a = ax.find(id);
    if (a == nullptr) throw Error(ErrorKind::derivation, "unknown axiom id '" + std::string(id) + "'");
    Substitution renaming;
    for (const auto& v : a->variables()) renaming.emplace(v, Term::var(fresh.next()));
    Equation eq = substitute(a->eq, renaming);
    return {std::move(eq), std::move(renaming)};
}

namespace {

[[noreturn]] void theory_error(const sexpr::Node& n, const std::string& msg) {
    throw Error(ErrorKind::parse, sexpr::where(n.pos) + ": " + msg);
}

std::size_t parse_count(const sexpr::Node& n) {
    if (!n.atom || n.text.empty() || n.text.size() > 4 ||
        n.text.find_first_not_of("0123456789") != std::string::npos)
        theory_error(n, "expected arity");
    return std::stoul(n.text);
}

}  // namespace

NiceAxiomSet parse_theory(std::string_view text) {
    Signature sig;
    std::vector<std::pair<std::string, Equation>> axioms;
    for (const auto& clause : sexpr::parse_all(text)) {
        if (clause.atom || clause.items.empty() || !clause.items[0].atom)
            theory_error(clause, "expected (fun ...) or (axiom ...)");
        const auto& kw = clause.items[0].text;
        if (kw == "fun") {
            if (clause.items.size() != 3 || !clause.items[1].atom) theory_error(clause, "expected (fun <name> <arity>)");
            if (!axioms.empty()) theory_error(clause, "function declarations must precede axioms");
            sig.declare(clause.items[1].text, parse_count(clause.items[2]));
        } else if (kw == "axiom") {
            if (clause.items.size() != 4 || !clause.items[1].atom)
                theory_error(clause, "expected (axiom <id> <lhs> <rhs>)");
            Equation eq{term_from_sexpr(clause.items[2], sig), term_from_sexpr(clause.items[3], sig)};
            axioms.emplace_back(clause.items[1].text, std::move(eq));
        } else {
            theory_error(clause, "unknown clause '" + kw + "'");
        }
    }
    return validate_nice(std::move(sig), std::move(axioms));
}

std::string print_theory(const NiceAxiomSet& ax) {
    std::string out;
    for (const auto& f : ax.signature().defined())
        out += "(fun " + f.name + " " + std::to_string(f.arity) + ")\n";
    for (const auto& a : ax.axioms())
        out += "(axiom " + a.id + " " + print_term(a.eq.lhs) + " " + print_term(a.eq.rhs) + ")\n";
    return out;
}

}  // namespace pets
