#include <doctest.h>

#include "pets/derivation.hpp"
#include "pets/error.hpp"
#include "pets/fuzz.hpp"
#include "support.hpp"

using namespace pets;
using pets::testing::ax_double;
using pets::testing::E;
using pets::testing::T;
using pets::testing::worked;

namespace {

bool has_message(const CheckReport& r, const std::string& text) {
    for (const auto& d : r.diagnostics)
        if (d.message.find(text) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("worked derivation checks") {
    auto d = worked();
    auto report = check_derivation(d, ax_double());
    CHECK_MESSAGE(report.ok(), report.summary());
    CHECK(d.conclusion() == E("(d 0)", "(s0 (s0 eps))"));
    CHECK(d.child(0).conclusion() == E("(d (s0 eps))", "(s0 (s0 (d eps)))"));
    CHECK(d.child(1).conclusion() == E("(s0 (s0 (d eps)))", "(s0 (s0 eps))"));
}

TEST_CASE("checker rejects a broken transitivity") {
    const auto& ax = ax_double();
    auto d = Derivation::trans(axiom_instance(ax, "d.eps"), axiom_instance(ax, "d.eps"));
    auto report = check_derivation(d, ax);
    CHECK_FALSE(report.ok());
    CHECK(has_message(report, "transitivity middle-term mismatch"));
    CHECK(report.diagnostics.front().path == "root");
}

TEST_CASE("checker rejects a wrong substitution result") {
    const auto& ax = ax_double();
    auto good = Derivation::subst(Term::eps(), "y", axiom_instance(ax, "d.zero", {{"x", Term::var("y")}}));
    auto bad = good.with_conclusion(E("(d (s0 eps))", "(s0 (s0 (d (s1 eps))))"));
    auto report = check_derivation(bad, ax);
    CHECK_FALSE(report.ok());
    CHECK(has_message(report, "substitution result mismatch"));
}

TEST_CASE("checker diagnostics for other rules") {
    const auto& ax = ax_double();
    auto a = axiom_instance(ax, "d.eps");
    CHECK(has_message(check_derivation(a.with_conclusion(E("(d eps)", "0")), ax), "axiom instance mismatch"));
    CHECK(has_message(check_derivation(Derivation::sym(a).with_conclusion(a.conclusion()), ax), "symmetry mismatch"));
    auto c = Derivation::compat(T("(s0 z)"), "z", a);
    CHECK(has_message(check_derivation(c.with_conclusion(E("(s1 (d eps))", "(s0 eps)")), ax),
                      "compatibility result mismatch"));
    auto nested = Derivation::sym(Derivation::trans(a, a));
    auto report = check_derivation(nested, ax);
    REQUIRE_FALSE(report.ok());
    CHECK(report.diagnostics.front().path == "root.0");
    CHECK_THROWS_AS(parse_derivation("(axiom d.two ())", ax), Error);
}

TEST_CASE("derivation lengths") {
    CHECK(derivation_length(Derivation::refl(Term::eps())) == 3);
    CHECK(derivation_length(axiom_instance(ax_double(), "d.eps")) == 4);
    CHECK(derivation_length(worked()) == 50);
    CHECK(derivation_depth(worked()) == 3);
    CHECK(node_count(worked()) == 5);
}

TEST_CASE("variables and bound variables") {
    auto sub = Derivation::subst(Term::eps(), "y", axiom_instance(ax_double(), "d.zero", {{"x", Term::var("y")}}));
    CHECK(measure(sub).bvars == VarSet{"y"});
    auto m = measure(worked());
    CHECK(m.bvars == VarSet{"y"});
    CHECK(m.vars == VarSet{"y"});
    CHECK(axioms_used(worked()) == VarSet{"d.eps", "d.zero"});
}

TEST_CASE("variable normal form") {
    const auto& ax = ax_double();
    CHECK(is_vnf(worked()));

    auto ground = axiom_instance(ax, "d.zero", {{"x", Term::eps()}});
    CHECK(check_derivation(ground, ax).ok());
    CHECK_FALSE(is_vnf(ground));

    auto twice = parse_derivation(
        "(trans (subst eps y (axiom d.zero ((x y)))) (sym (subst eps y (axiom d.zero ((x y))))))", ax);
    CHECK(check_derivation(twice, ax).ok());
    CHECK_FALSE(is_vnf(twice));

    auto free_end = parse_derivation("(axiom d.zero ((x y)))", ax);
    CHECK(is_vnf(free_end));
}

TEST_CASE("to_vnf turns an axiom instance into renaming plus substitution") {
    const auto& ax = ax_double();
    auto ground = axiom_instance(ax, "d.zero", {{"x", Term::eps()}});
    auto v = to_vnf(ground, ax);
    CHECK(check_derivation(v, ax).ok());
    CHECK(is_vnf(v));
    CHECK(v.conclusion() == ground.conclusion());
    REQUIRE(v.rule() == Rule::subst);
    CHECK(v.term() == Term::eps());
    REQUIRE(v.child().rule() == Rule::axiom);
    CHECK(is_injective_renaming(v.child()));
    CHECK(v.child().instance_of("x") == Term::var(v.variable()));
}

TEST_CASE("to_vnf renames a reused bound variable") {
    const auto& ax = ax_double();
    auto twice = parse_derivation(
        "(trans (subst eps y (axiom d.zero ((x y)))) (sym (subst eps y (axiom d.zero ((x y))))))", ax);
    auto v = to_vnf(twice, ax);
    CHECK(check_derivation(v, ax).ok());
    CHECK(is_vnf(v));
    CHECK(v.conclusion() == twice.conclusion());
    CHECK(measure(v).bvars.size() == 2);
}

TEST_CASE("to_vnf on VNF input keeps the shape") {
    auto v = to_vnf(worked(), ax_double());
    CHECK(is_vnf(v));
    CHECK(node_count(v) == node_count(worked()));
    CHECK(derivation_length(v) == derivation_length(worked()));
}

TEST_CASE("derivation print/parse round trip and digest") {
    auto d = worked();
    auto again = parse_derivation(print_derivation(d), ax_double());
    CHECK(print_derivation(again) == print_derivation(d));
    CHECK(derivation_digest(again) == derivation_digest(d));
    CHECK(derivation_digest(d).size() == 16);
    CHECK(derivation_digest(d) != derivation_digest(Derivation::refl(Term::eps())));
}

TEST_CASE("rename_variable") {
    auto r = rename_variable(worked(), "y", "w");
    CHECK(check_derivation(r, ax_double()).ok());
    CHECK(measure(r).bvars == VarSet{"w"});
    CHECK(r.conclusion() == worked().conclusion());
}

TEST_CASE("property: generated derivations check and normalize") {
    fuzz::Rng rng(5);
    double worst = 0;
    for (int t = 0; t < 10; ++t) {
        auto ax = fuzz::random_theory(rng);
        for (int i = 0; i < 40; ++i) {
            auto d = fuzz::random_derivation(rng, ax);
            auto report = check_derivation(d, ax);
            REQUIRE_MESSAGE(report.ok(), report.summary() << "\n" << print_derivation(d));
            REQUIRE(derivation_depth(d) <= 6);
            auto v = to_vnf(d, ax);
            auto vr = check_derivation(v, ax);
            REQUIRE_MESSAGE(vr.ok(), vr.summary() << "\n" << print_derivation(v));
            REQUIRE(is_vnf(v));
            REQUIRE(v.conclusion() == d.conclusion());
            double lh = static_cast<double>(derivation_length(d));
            double ratio = static_cast<double>(derivation_length(v)) / (lh * lh);
            REQUIRE(ratio <= 8.0);
            worst = std::max(worst, ratio);
        }
    }
    MESSAGE("max lh(vnf)/lh^2 = " << worst);
}
