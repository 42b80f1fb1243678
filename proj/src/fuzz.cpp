#include "pets/fuzz.hpp"

#include <algorithm>
#include <functional>

#include "pets/error.hpp"

namespace pets::fuzz {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

const std::vector<std::string> kVarPool = {"x", "y", "z", "w"};

// Positions of subterms, as child-index paths.
void positions(const Term& t, std::vector<std::size_t>& path, std::vector<std::vector<std::size_t>>& out) {
    out.push_back(path);
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        path.push_back(i);
        positions(t.args()[i], path, out);
        path.pop_back();
    }
}

const Term& subterm_at(const Term& t, std::span<const std::size_t> path) {
    if (path.empty()) return t;
    return subterm_at(t.args()[path.front()], path.subspan(1));
}

Term replace_at(const Term& t, std::span<const std::size_t> path, const Term& with) {
    if (path.empty()) return with;
    std::vector<Term> args(t.args().begin(), t.args().end());
    args[path.front()] = replace_at(args[path.front()], path.subspan(1), with);
    return Term::app(t.name(), std::move(args));
}

class DerivationGen {
public:
    DerivationGen(Rng& rng, const NiceAxiomSet& ax, const DerivationParams& params)
        : rng_(rng), ax_(ax), params_(params) {}

    Derivation gen(std::size_t depth) {
        const auto& w = params_.weights;
        std::vector<double> weights{w.axiom, w.refl, 0, 0, 0, 0};
        if (depth >= 2) weights = {w.axiom, w.refl, w.sym, w.trans, w.compat, w.subst};
        std::discrete_distribution<int> dist(weights.begin(), weights.end());
        switch (dist(rng_)) {
            case 0: return axiom_leaf();
            case 1: return Derivation::refl(term(params_.max_term_length));
            case 2: return Derivation::sym(gen(depth - 1));
            case 3: {
                Derivation left = gen(depth - 1);
                return Derivation::trans(left, continue_from(left, depth - 1));
            }
            case 4: {
                Derivation child = gen(depth - 1);
                std::string hole = kVarPool[pick(rng_, kVarPool.size())];
                return Derivation::compat(context(hole), hole, std::move(child));
            }
            default: {
                Derivation child = gen(depth - 1);
                VarSet vars = free_vars(child.conclusion());
                std::string x = !vars.empty() && chance(rng_, 0.8)
                                    ? *std::next(vars.begin(), static_cast<long>(pick(rng_, vars.size())))
                                    : kVarPool[pick(rng_, kVarPool.size())];
                return Derivation::subst(term(3), std::move(x), std::move(child));
            }
        }
    }

private:
    Term term(std::size_t max_len) { return random_term(rng_, ax_.signature(), kVarPool, max_len); }

    Derivation axiom_leaf() {
        const Axiom& a = ax_.axioms()[pick(rng_, ax_.axioms().size())];
        Substitution inst;
        for (const auto& x : a.variables()) {
            if (chance(rng_, 0.5)) inst.emplace(x, Term::var(kVarPool[pick(rng_, kVarPool.size())]));
            else inst.emplace(x, term(3));
        }
        return axiom_instance(ax_, a.id, std::move(inst));
    }

    // Context with at least one occurrence of `hole`.
    Term context(const std::string& hole) {
        Term base = random_term(rng_, ax_.signature(), {hole}, params_.max_term_length);
        if (occurs(base, hole)) return base;
        std::vector<std::size_t> path;
        std::vector<std::vector<std::size_t>> pos;
        positions(base, path, pos);
        return replace_at(base, pos[pick(rng_, pos.size())], Term::var(hole));
    }

    // A derivation of s = u for the given left derivation ending in t = s.
    Derivation continue_from(const Derivation& left, std::size_t depth) {
        const Term& s = left.conclusion().rhs;
        if (depth >= 2 && chance(rng_, 0.75)) {
            std::vector<std::size_t> path;
            std::vector<std::vector<std::size_t>> pos;
            positions(s, path, pos);
            std::shuffle(pos.begin(), pos.end(), rng_);
            for (const auto& p : pos) {
                auto hit = match_axiom(ax_, subterm_at(s, p));
                if (!hit) continue;
                Derivation step = axiom_instance(ax_, hit->axiom->id, hit->sub);
                if (p.empty()) return step;
                const std::string hole = "z";
                // The hole must not already occur in s.
                if (occurs(s, hole)) break;
                return Derivation::compat(replace_at(s, p, Term::var(hole)), hole, step);
            }
        }
        if (derivation_depth(left) < depth && chance(rng_, 0.5)) return Derivation::sym(left);
        return Derivation::refl(s);
    }

    Rng& rng_;
    const NiceAxiomSet& ax_;
    const DerivationParams& params_;
};

}  // namespace

ApproxValue random_value(Rng& rng, std::size_t max_gauge) {
    std::size_t len = pick(rng, max_gauge);
    std::string bits;
    for (std::size_t i = 0; i < len; ++i) bits.push_back(chance(rng, 0.5) ? '1' : '0');
    return chance(rng, 0.5) ? ApproxValue::star(bits) : ApproxValue::ground(bits);
}

ValueTuple random_tuple(Rng& rng, std::size_t extent, std::size_t max_gauge) {
    ValueTuple out;
    for (std::size_t i = 0; i < extent; ++i) out.push_back(random_value(rng, max_gauge));
    return out;
}

ConsistentSet random_consistent_set(Rng& rng, std::size_t max_generators, std::size_t extent,
                                    std::size_t max_gauge) {
    ConsistentSet set;
    std::size_t target = pick(rng, max_generators + 1);
    for (std::size_t tries = 0; set.size() < target && tries < 8 * max_generators; ++tries) {
        Generator g{random_tuple(rng, extent, max_gauge), random_value(rng, max_gauge)};
        if (g.out.is_star()) continue;
        try {
            set = set.with(g);
        } catch (const Error&) {
        }
    }
    return set;
}

Term random_term(Rng& rng, const Signature& sig, const std::vector<std::string>& vars, std::size_t max_length) {
    std::vector<FunctionSymbol> symbols = sig.defined();
    for (auto name : {kEps, kSuc0, kSuc1}) symbols.push_back(*sig.find(name));
    std::function<Term(std::size_t)> go = [&](std::size_t budget) -> Term {
        std::vector<const FunctionSymbol*> fits;
        for (const auto& f : symbols)
            if (f.arity + 1 <= budget) fits.push_back(&f);
        bool leaf = budget <= 1 || fits.empty() || chance(rng, 0.35);
        if (leaf) {
            if (!vars.empty() && chance(rng, 0.6)) return Term::var(vars[pick(rng, vars.size())]);
            return Term::eps();
        }
        const FunctionSymbol& f = *fits[pick(rng, fits.size())];
        std::size_t remaining = budget - 1;
        std::vector<Term> args;
        for (std::size_t i = 0; i < f.arity; ++i) {
            std::size_t share = std::max<std::size_t>(1, remaining / (f.arity - i));
            Term a = go(share);
            remaining -= std::min(remaining, a.length());
            args.push_back(std::move(a));
        }
        return Term::app(f.name, std::move(args));
    };
    return go(std::max<std::size_t>(1, max_length));
}

NiceAxiomSet random_theory(Rng& rng, const TheoryParams& params) {
    static const std::vector<std::string> names = {"f", "g", "h", "k", "m"};
    const std::size_t n = params.min_functions + pick(rng, params.max_functions - params.min_functions + 1);
    Signature sig;
    std::vector<std::size_t> arities;
    for (std::size_t i = 0; i < n; ++i) {
        arities.push_back(pick(rng, params.max_arity + 1));
        sig.declare(names[i % names.size()] + (i < names.size() ? "" : std::to_string(i)), arities.back());
    }
    const auto defined = sig.defined();
    const std::vector<std::string> arg_vars = {"x", "y", "z"};

    // rhs over `vars`; may call earlier functions freely and `self` only
    // on `rec_arg` in the first argument position.
    std::function<Term(std::size_t, std::size_t, const std::vector<std::string>&, const std::string&)> rhs;
    rhs = [&](std::size_t self, std::size_t budget, const std::vector<std::string>& vars,
              const std::string& rec_arg) -> Term {
        bool leaf = budget <= 1 || chance(rng, 0.3);
        if (leaf) {
            if (!vars.empty() && chance(rng, 0.7)) return Term::var(vars[pick(rng, vars.size())]);
            return Term::eps();
        }
        std::size_t choice = pick(rng, 4);
        if (choice <= 1) return Term::suc(static_cast<int>(choice), rhs(self, budget - 1, vars, rec_arg));
        std::vector<std::size_t> callable;
        for (std::size_t i = 0; i < self; ++i)
            if (defined[i].arity + 1 <= budget) callable.push_back(i);
        bool recurse = !rec_arg.empty() && defined[self].arity + 1 <= budget && chance(rng, 0.5);
        if (!recurse && callable.empty()) return Term::suc(chance(rng, 0.5) ? 1 : 0, rhs(self, budget - 1, vars, rec_arg));
        std::size_t f = recurse ? self : callable[pick(rng, callable.size())];
        std::size_t remaining = budget - 1;
        std::vector<Term> args;
        for (std::size_t i = 0; i < defined[f].arity; ++i) {
            Term a = (recurse && i == 0) ? Term::var(rec_arg)
                                         : rhs(self, std::max<std::size_t>(1, remaining / (defined[f].arity - i)),
                                               vars, rec_arg);
            remaining -= std::min(remaining, a.length());
            args.push_back(std::move(a));
        }
        return Term::app(defined[f].name, std::move(args));
    };

    std::vector<std::pair<std::string, Equation>> axioms;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& f = defined[i];
        std::vector<Term> rest;
        std::vector<std::string> rest_vars;
        for (std::size_t j = 1; j < f.arity; ++j) {
            rest.push_back(Term::var(arg_vars[j]));
            rest_vars.push_back(arg_vars[j]);
        }
        auto lhs_with = [&](Term first) {
            std::vector<Term> args{std::move(first)};
            args.insert(args.end(), rest.begin(), rest.end());
            return Term::app(f.name, std::move(args));
        };
        if (f.arity == 0 || chance(rng, 0.3)) {
            std::vector<std::string> vars = rest_vars;
            std::vector<Term> args;
            if (f.arity > 0) {
                vars.insert(vars.begin(), arg_vars[0]);
                for (const auto& v : vars) args.push_back(Term::var(v));
            }
            axioms.emplace_back(f.name + ".all", Equation{Term::app(f.name, std::move(args)),
                                                           rhs(i, params.max_rhs_length, vars, "")});
            continue;
        }
        std::vector<int> cases;
        for (int c = 0; c < 3; ++c)
            if (chance(rng, 0.75)) cases.push_back(c);
        if (cases.empty()) cases.push_back(static_cast<int>(pick(rng, 3)));
        for (int c : cases) {
            std::vector<std::string> vars = rest_vars;
            if (c == 0) {
                axioms.emplace_back(f.name + ".eps",
                                    Equation{lhs_with(Term::eps()), rhs(i, params.max_rhs_length, vars, "")});
            } else {
                vars.insert(vars.begin(), arg_vars[0]);
                Term first = Term::suc(c - 1, Term::var(arg_vars[0]));
                axioms.emplace_back(f.name + (c == 1 ? ".zero" : ".one"),
                                    Equation{lhs_with(std::move(first)),
                                             rhs(i, params.max_rhs_length, vars, arg_vars[0])});
            }
        }
    }
    return validate_nice(std::move(sig), std::move(axioms));
}

Derivation random_derivation(Rng& rng, const NiceAxiomSet& ax, const DerivationParams& params) {
    if (ax.axioms().empty()) throw Error(ErrorKind::scope, "random_derivation needs at least one axiom");
    DerivationGen gen(rng, ax, params);
    return gen.gen(std::max<std::size_t>(1, params.max_depth));
}

Frame random_frame(Rng& rng, const NiceAxiomSet& ax, std::size_t max_generators, std::size_t max_gauge) {
    Frame frame;
    std::size_t target = pick(rng, max_generators + 1);
    for (std::size_t tries = 0; frame.generator_count() < target && tries < 20 * (max_generators + 1); ++tries) {
        const Axiom& a = ax.axioms()[pick(rng, ax.axioms().size())];
        Assignment rho;
        for (const auto& v : a.variables()) rho = rho.with(v, random_value(rng, max_gauge > 1 ? max_gauge - 1 : 1));
        Update u;
        u.symbol = a.symbol();
        for (const auto& arg : a.eq.lhs.args()) u.gen.args.push_back(apply_to_generalized(rho, arg));
        u.gen.out = eval_term(frame, rho, a.eq.rhs);
        if (u.gen.out.is_star() || u.gauge() > max_gauge) continue;
        try {
            frame = apply_update(frame, u);
        } catch (const Error&) {
        }
    }
    return frame;
}

Assignment random_assignment(Rng& rng, const VarSet& vars, std::size_t max_gauge) {
    Assignment rho;
    for (const auto& v : vars)
        if (chance(rng, 0.5)) rho = rho.with(v, random_value(rng, max_gauge));
    return rho;
}

Corpus generate_corpus(std::uint64_t seed, std::size_t theories, std::size_t count, const DerivationParams& params) {
    Rng rng(seed);
    Corpus corpus;
    for (std::size_t i = 0; i < std::max<std::size_t>(1, theories); ++i) corpus.theories.push_back(random_theory(rng));
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t t = i % corpus.theories.size();
        corpus.entries.push_back({t, random_derivation(rng, corpus.theories[t], params)});
    }
    return corpus;
}

}  // namespace pets::fuzz
