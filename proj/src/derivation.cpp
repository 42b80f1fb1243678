#include "pets/derivation.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>

#include "pets/error.hpp"

namespace pets {

std::string_view to_string(Rule rule) {
    switch (rule) {
        case Rule::axiom: return "axiom";
        case Rule::refl: return "refl";
        case Rule::sym: return "sym";
        case Rule::trans: return "trans";
        case Rule::compat: return "compat";
        case Rule::subst: return "subst";
    }
    return "?";
}

Derivation Derivation::axiom(std::string id, Equation axiom_eq, Substitution inst) {
    auto n = std::make_shared<Node>();
    n->rule = Rule::axiom;
    n->conclusion = substitute(axiom_eq, inst);
    n->name = std::move(id);
    n->axiom_eq = std::move(axiom_eq);
    n->inst = std::move(inst);
    return Derivation(std::move(n));
}

Derivation Derivation::refl(Term t) {
    auto n = std::make_shared<Node>();
    n->rule = Rule::refl;
    n->conclusion = {t, t};
    return Derivation(std::move(n));
}

Derivation Derivation::sym(Derivation child) {
    auto n = std::make_shared<Node>();
    n->rule = Rule::sym;
    n->conclusion = child.conclusion().flipped();
    n->children.push_back(std::move(child));
    return Derivation(std::move(n));
}

Derivation Derivation::trans(Derivation left, Derivation right) {
    auto n = std::make_shared<Node>();
    n->rule = Rule::trans;
    n->conclusion = {left.conclusion().lhs, right.conclusion().rhs};
    n->children.push_back(std::move(left));
    n->children.push_back(std::move(right));
    return Derivation(std::move(n));
}

Derivation Derivation::compat(Term context, std::string hole, Derivation child) {
    auto n = std::make_shared<Node>();
    n->rule = Rule::compat;
    const auto& [t, u] = child.conclusion();
    n->conclusion = {substitute(context, t, hole), substitute(context, u, hole)};
    n->name = std::move(hole);
    n->term = std::move(context);
    n->children.push_back(std::move(child));
    return Derivation(std::move(n));
}

Derivation Derivation::subst(Term replacement, std::string var, Derivation child) {
    auto n = std::make_shared<Node>();
    n->rule = Rule::subst;
    const auto& [t, u] = child.conclusion();
    n->conclusion = {substitute(t, replacement, var), substitute(u, replacement, var)};
    n->name = std::move(var);
    n->term = std::move(replacement);
    n->children.push_back(std::move(child));
    return Derivation(std::move(n));
}

Derivation Derivation::with_conclusion(Equation e) const {
    auto n = std::make_shared<Node>(*node_);
    n->conclusion = std::move(e);
    return Derivation(std::move(n));
}

Term Derivation::instance_of(const std::string& axiom_var) const {
    auto it = node_->inst.find(axiom_var);
    return it == node_->inst.end() ? Term::var(axiom_var) : it->second;
}

Derivation axiom_instance(const NiceAxiomSet& ax, std::string_view id, Substitution inst) {
    const Axiom* a = ax.find(id);
    if (a == nullptr) throw Error(ErrorKind::derivation, "unknown axiom id '" + std::string(id) + "'");
    return Derivation::axiom(a->id, a->eq, std::move(inst));
}

std::string CheckReport::summary() const {
    if (ok()) return "ok";
    std::string out;
    for (const auto& d : diagnostics) out += d.path + ": " + d.message + "\n";
    return out;
}

namespace {

// Checks that every symbol is declared and applied at its arity.
bool well_formed(const Term& t, const Signature& sig, std::string& why) {
    if (t.is_var()) return true;
    const auto* sym = sig.find(t.name());
    if (sym == nullptr) {
        why = "unknown function symbol '" + t.name() + "'";
        return false;
    }
    if (sym->arity != t.args().size()) {
        why = "arity mismatch at '" + t.name() + "'";
        return false;
    }
    for (const auto& a : t.args())
        if (!well_formed(a, sig, why)) return false;
    return true;
}

void check_node(const Derivation& d, const NiceAxiomSet& ax, const std::string& path,
                std::vector<Diagnostic>& out) {
    auto report = [&](std::string msg) { out.push_back({path, std::move(msg)}); };
    const Equation& c = d.conclusion();
    std::string why;
    if (!well_formed(c.lhs, ax.signature(), why) || !well_formed(c.rhs, ax.signature(), why)) {
        report("ill-formed conclusion: " + why);
        return;
    }
    for (std::size_t i = 0; i < d.children().size(); ++i)
        check_node(d.children()[i], ax, path + "." + std::to_string(i), out);

    auto expect = [&](const Equation& want, const char* what) {
        if (!(c == want))
            report(std::string(what) + ": claimed " + print_equation(c) + ", rule yields " + print_equation(want));
    };

    switch (d.rule()) {
        case Rule::axiom: {
            const Axiom* a = ax.find(d.axiom_id());
            if (a == nullptr) {
                report("unknown axiom id '" + d.axiom_id() + "'");
                return;
            }
            if (!(a->eq == d.axiom_equation())) {
                report("axiom " + a->id + " does not match the theory's statement");
                return;
            }
            auto vars = a->variables();
            for (const auto& [x, image] : d.instantiation()) {
                if (std::find(vars.begin(), vars.end(), x) == vars.end())
                    report("instantiation binds '" + x + "', which is not a variable of axiom " + a->id);
                if (!well_formed(image, ax.signature(), why)) report("ill-formed instantiation: " + why);
            }
            expect(substitute(a->eq, d.instantiation()), "axiom instance mismatch");
            break;
        }
        case Rule::refl:
            if (!(c.lhs == c.rhs)) report("reflexivity with distinct sides " + print_equation(c));
            break;
        case Rule::sym:
            expect(d.child().conclusion().flipped(), "symmetry mismatch");
            break;
        case Rule::trans: {
            const auto& l = d.child(0).conclusion();
            const auto& r = d.child(1).conclusion();
            if (!(l.rhs == r.lhs)) {
                report("transitivity middle-term mismatch: " + print_term(l.rhs) + " vs " + print_term(r.lhs));
                return;
            }
            expect({l.lhs, r.rhs}, "transitivity mismatch");
            break;
        }
        case Rule::compat: {
            if (!well_formed(d.term(), ax.signature(), why)) report("ill-formed context: " + why);
            const auto& [t, u] = d.child().conclusion();
            expect({substitute(d.term(), t, d.variable()), substitute(d.term(), u, d.variable())},
                   "compatibility result mismatch");
            break;
        }
        case Rule::subst: {
            if (!well_formed(d.term(), ax.signature(), why)) report("ill-formed substituted term: " + why);
            const auto& [t, u] = d.child().conclusion();
            expect({substitute(t, d.term(), d.variable()), substitute(u, d.term(), d.variable())},
                   "substitution result mismatch");
            break;
        }
    }
}

void measure_into(const Derivation& d, DerivationMeasures& m) {
    m.length += d.conclusion().length();
    collect_vars(d.conclusion().lhs, m.vars);
    collect_vars(d.conclusion().rhs, m.vars);
    if (d.rule() == Rule::subst) {
        const auto& [t, u] = d.child().conclusion();
        m.length += t.length() + u.length() + 2 * d.term().length() + 2;
        m.bvars.insert(d.variable());
        m.vars.insert(d.variable());
        collect_vars(d.term(), m.vars);
    } else if (d.rule() == Rule::compat) {
        m.length += d.term().length() + 1;
    }
    for (const auto& c : d.children()) measure_into(c, m);
}

void count_binders(const Derivation& d, std::map<std::string, std::size_t>& out) {
    if (d.rule() == Rule::subst) ++out[d.variable()];
    for (const auto& c : d.children()) count_binders(c, out);
}

bool all_axioms_renamed(const Derivation& d) {
    if (d.rule() == Rule::axiom) return is_injective_renaming(d);
    return std::all_of(d.children().begin(), d.children().end(), all_axioms_renamed);
}

void collect_all_names(const Derivation& d, VarSet& out) {
    collect_vars(d.conclusion().lhs, out);
    collect_vars(d.conclusion().rhs, out);
    if (d.rule() == Rule::compat || d.rule() == Rule::subst) {
        out.insert(d.variable());
        collect_vars(d.term(), out);
    }
    if (d.rule() == Rule::axiom)
        for (const auto& [_, image] : d.instantiation()) collect_vars(image, out);
    for (const auto& c : d.children()) collect_all_names(c, out);
}

Derivation rebuild(const Derivation& d, std::vector<Derivation> children) {
    switch (d.rule()) {
        case Rule::sym: return Derivation::sym(std::move(children[0]));
        case Rule::trans: return Derivation::trans(std::move(children[0]), std::move(children[1]));
        case Rule::compat: return Derivation::compat(d.term(), d.variable(), std::move(children[0]));
        case Rule::subst: return Derivation::subst(d.term(), d.variable(), std::move(children[0]));
        default: return d;
    }
}

Derivation vnf_pass(const Derivation& d, FreshSupply& fresh) {
    switch (d.rule()) {
        case Rule::refl: return d;
        case Rule::axiom: {
            if (is_injective_renaming(d)) return d;
            Substitution renaming;
            std::vector<std::pair<std::string, Term>> steps;
            for (const auto& x : free_vars(d.axiom_equation().lhs)) {
                std::string y = fresh.next();
                renaming.emplace(x, Term::var(y));
                steps.emplace_back(y, d.instance_of(x));
            }
            Derivation out = Derivation::axiom(d.axiom_id(), d.axiom_equation(), std::move(renaming));
            for (auto& [y, s] : steps) out = Derivation::subst(std::move(s), std::move(y), std::move(out));
            return out;
        }
        case Rule::subst: {
            Derivation inner = vnf_pass(d.child(), fresh);
            std::string v = fresh.next();
            inner = rename_variable(inner, d.variable(), v);
            return Derivation::subst(d.term(), std::move(v), std::move(inner));
        }
        default: {
            std::vector<Derivation> children;
            for (const auto& c : d.children()) children.push_back(vnf_pass(c, fresh));
            return rebuild(d, std::move(children));
        }
    }
}

std::string print_instantiation(const Substitution& inst) {
    std::string out = "(";
    bool first = true;
    for (const auto& [x, t] : inst) {
        if (!first) out += ' ';
        first = false;
        out += "(" + x + " " + print_term(t) + ")";
    }
    return out + ")";
}

void print_into(const Derivation& d, std::string& out, std::size_t indent) {
    std::string pad(indent, ' ');
    out += pad;
    switch (d.rule()) {
        case Rule::axiom:
            out += "(axiom " + d.axiom_id() + " " + print_instantiation(d.instantiation()) + ")";
            return;
        case Rule::refl:
            out += "(refl " + print_term(d.conclusion().lhs) + ")";
            return;
        case Rule::sym: out += "(sym"; break;
        case Rule::trans: out += "(trans"; break;
        case Rule::compat: out += "(compat " + print_term(d.term()) + " " + d.variable(); break;
        case Rule::subst: out += "(subst " + print_term(d.term()) + " " + d.variable(); break;
    }
    for (const auto& c : d.children()) {
        out += '\n';
        print_into(c, out, indent + 2);
    }
    out += ")";
}

[[noreturn]] void syntax_error(const sexpr::Node& n, const std::string& msg) {
    throw Error(ErrorKind::parse, sexpr::where(n.pos) + ": " + msg);
}

const std::string& atom_text(const sexpr::Node& n, const char* what) {
    if (!n.atom) syntax_error(n, std::string("expected ") + what);
    return n.text;
}

std::string variable_name(const sexpr::Node& n, const NiceAxiomSet& ax) {
    const auto& name = atom_text(n, "variable");
    if (!is_identifier(name) || ax.signature().contains(name))
        syntax_error(n, "'" + name + "' is not a variable");
    return name;
}

}  // namespace

CheckReport check_derivation(const Derivation& d, const NiceAxiomSet& ax) {
    CheckReport report;
    check_node(d, ax, "root", report.diagnostics);
    return report;
}

DerivationMeasures measure(const Derivation& d) {
    DerivationMeasures m;
    measure_into(d, m);
    return m;
}

std::size_t derivation_length(const Derivation& d) { return measure(d).length; }

std::size_t derivation_depth(const Derivation& d) {
    std::size_t deepest = 0;
    for (const auto& c : d.children()) deepest = std::max(deepest, derivation_depth(c));
    return deepest + 1;
}

std::size_t node_count(const Derivation& d) {
    std::size_t n = 1;
    for (const auto& c : d.children()) n += node_count(c);
    return n;
}

VarSet axioms_used(const Derivation& d) {
    VarSet out;
    if (d.rule() == Rule::axiom) out.insert(d.axiom_id());
    for (const auto& c : d.children()) out.merge(axioms_used(c));
    return out;
}

bool is_injective_renaming(const Derivation& node) {
    if (node.rule() != Rule::axiom) return false;
    VarSet images;
    for (const auto& x : free_vars(node.axiom_equation().lhs)) {
        Term image = node.instance_of(x);
        if (!image.is_var() || !images.insert(image.name()).second) return false;
    }
    return true;
}

bool is_vnf(const Derivation& d) {
    if (!all_axioms_renamed(d)) return false;
    const auto m = measure(d);
    const VarSet end = free_vars(d.conclusion());
    std::map<std::string, std::size_t> binders;
    count_binders(d, binders);
    for (const auto& v : m.vars) {
        std::size_t n = binders.contains(v) ? binders.at(v) : 0;
        bool ok = n == 0 ? end.contains(v) : (n == 1 && !end.contains(v));
        if (!ok) return false;
    }
    return true;
}

Derivation rename_variable(const Derivation& d, const std::string& from, const std::string& to) {
    const Term target = Term::var(to);
    switch (d.rule()) {
        case Rule::axiom: {
            Substitution inst;
            for (const auto& x : free_vars(d.axiom_equation().lhs))
                inst.emplace(x, substitute(d.instance_of(x), target, from));
            return Derivation::axiom(d.axiom_id(), d.axiom_equation(), std::move(inst));
        }
        case Rule::refl: return Derivation::refl(substitute(d.conclusion().lhs, target, from));
        case Rule::compat:
        case Rule::subst: {
            Derivation child = rename_variable(d.child(), from, to);
            Term term = substitute(d.term(), target, from);
            std::string var = d.variable() == from ? to : d.variable();
            return d.rule() == Rule::compat ? Derivation::compat(std::move(term), std::move(var), std::move(child))
                                            : Derivation::subst(std::move(term), std::move(var), std::move(child));
        }
        default: {
            std::vector<Derivation> children;
            for (const auto& c : d.children()) children.push_back(rename_variable(c, from, to));
            return rebuild(d, std::move(children));
        }
    }
}

Derivation to_vnf(const Derivation& d, const NiceAxiomSet& ax) {
    VarSet reserved;
    collect_all_names(d, reserved);
    for (const auto& f : ax.signature().defined()) reserved.insert(f.name);
    FreshSupply fresh(std::move(reserved));
    Derivation out = vnf_pass(d, fresh);
    // Variables that are neither in the end equation nor bound anywhere get
    // a trivial binder at the root.
    const auto m = measure(out);
    const VarSet end = free_vars(out.conclusion());
    for (const auto& v : m.vars)
        if (!end.contains(v) && !m.bvars.contains(v)) out = Derivation::subst(Term::eps(), v, std::move(out));
    return out;
}

std::string print_derivation(const Derivation& d) {
    std::string out;
    print_into(d, out, 0);
    out += '\n';
    return out;
}

Derivation derivation_from_sexpr(const sexpr::Node& node, const NiceAxiomSet& ax) {
    if (node.atom || node.items.empty()) syntax_error(node, "expected derivation node");
    const auto& kw = atom_text(node.items[0], "rule name");
    const auto& items = node.items;
    auto arity = [&](std::size_t n) {
        if (items.size() != n + 1)
            syntax_error(node, "'" + kw + "' expects " + std::to_string(n) + " argument(s)");
    };
    const auto& sig = ax.signature();
    if (kw == "axiom") {
        arity(2);
        const auto& id = atom_text(items[1], "axiom id");
        if (ax.find(id) == nullptr)
            throw Error(ErrorKind::derivation, sexpr::where(items[1].pos) + ": unknown axiom id '" + id + "'");
        if (items[2].atom) syntax_error(items[2], "expected instantiation list");
        Substitution inst;
        for (const auto& pair : items[2].items) {
            if (pair.atom || pair.items.size() != 2) syntax_error(pair, "expected (<var> <term>)");
            auto x = variable_name(pair.items[0], ax);
            if (!inst.emplace(x, term_from_sexpr(pair.items[1], sig)).second)
                syntax_error(pair, "variable '" + x + "' instantiated twice");
        }
        return axiom_instance(ax, id, std::move(inst));
    }
    if (kw == "refl") {
        arity(1);
        return Derivation::refl(term_from_sexpr(items[1], sig));
    }
    if (kw == "sym") {
        arity(1);
        return Derivation::sym(derivation_from_sexpr(items[1], ax));
    }
    if (kw == "trans") {
        arity(2);
        return Derivation::trans(derivation_from_sexpr(items[1], ax), derivation_from_sexpr(items[2], ax));
    }
    if (kw == "compat" || kw == "subst") {
        arity(3);
        Term term = term_from_sexpr(items[1], sig);
        auto var = variable_name(items[2], ax);
        Derivation child = derivation_from_sexpr(items[3], ax);
        return kw == "compat" ? Derivation::compat(std::move(term), std::move(var), std::move(child))
                              : Derivation::subst(std::move(term), std::move(var), std::move(child));
    }
    syntax_error(node.items[0], "unknown rule '" + kw + "'");
}

Derivation parse_derivation(std::string_view text, const NiceAxiomSet& ax) {
    return derivation_from_sexpr(sexpr::parse_one(text), ax);
}

std::string derivation_digest(const Derivation& d) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : print_derivation(d)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace pets
