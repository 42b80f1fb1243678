#include <doctest.h>

#include "pets/error.hpp"
#include "pets/fuzz.hpp"
#include "pets/instructions.hpp"
#include "support.hpp"

using namespace pets;
using pets::testing::ax_double;
using pets::testing::E;
using pets::testing::T;
using pets::testing::worked;

namespace {

ApproxValue V(const char* s) { return parse_value(s); }

Update U(const char* f, const char* arg, const char* out) { return {f, {{V(arg)}, V(out)}}; }

}  // namespace

TEST_CASE("instruction extraction for leaves") {
    CHECK(extract_forward(Derivation::refl(T("(d x)"))).empty());
    CHECK(extract_backward(Derivation::refl(T("(d x)"))).empty());
    auto a = axiom_instance(ax_double(), "d.eps");
    CHECK(extract_forward(a) == InstructionSeq{Instruction::axiom(E("(d eps)", "eps"), false)});
    CHECK(extract_backward(a) == InstructionSeq{Instruction::axiom(E("(d eps)", "eps"), true)});
    CHECK_THROWS_AS(extract_forward(axiom_instance(ax_double(), "d.zero", {{"x", Term::eps()}})), Error);
}

TEST_CASE("worked derivation instruction sequences") {
    auto d = worked();
    auto dy0 = T("(d (s0 y))");
    auto dy00 = T("(s0 (s0 (d y)))");
    InstructionSeq fwd{
        Instruction::substitution(dy0, Term::eps(), "y", true),
        Instruction::axiom({dy0, dy00}, false),
        Instruction::substitution(dy00, Term::eps(), "y", false),
        Instruction::axiom(E("(d eps)", "eps"), false),
    };
    InstructionSeq bwd{
        Instruction::axiom(E("(d eps)", "eps"), true),
        Instruction::substitution(dy00, Term::eps(), "y", true),
        Instruction::axiom({dy0, dy00}, true),
        Instruction::substitution(dy0, Term::eps(), "y", false),
    };
    CHECK(extract_forward(d) == fwd);
    CHECK(extract_backward(d) == bwd);
    CHECK(seq_length(bwd) == 4 + 6 + 8 + 5);
    CHECK(seq_length(fwd) == seq_length(bwd));
    CHECK(seq_length(fwd) <= derivation_length(d));
    CHECK(print_trace(bwd) ==
          "AX<- (d eps) = eps\n"
          "SUP y := eps [ctx (s0 (s0 (d y)))]\n"
          "AX<- (d (s0 y)) = (s0 (s0 (d y)))\n"
          "SDN y\n");
    CHECK(print_instruction(fwd[3]) == "AX-> (d eps) = eps");
}

TEST_CASE("psi") {
    auto a = psi(E("(d eps)", "eps"), Frame{}, {});
    REQUIRE(a);
    CHECK(*a == U("d", "eps", "eps"));

    auto one = apply_update(Frame{}, U("d", "eps", "eps"));
    auto b = psi(E("(d (s0 y))", "(s0 (s0 (d y)))"), one, {{"y", V("eps")}});
    REQUIRE(b);
    CHECK(*b == U("d", "eps:0", "eps:00"));

    auto c = psi(E("(d (s0 y))", "(s0 (s0 (d y)))"), Frame{}, {});
    REQUIRE(c);
    CHECK(*c == U("d", "*0", "*00"));

    CHECK_FALSE(psi(E("(d y)", "(d y)"), Frame{}, {}));
    CHECK_THROWS_AS(psi(E("y", "eps"), Frame{}, {}), Error);
}

TEST_CASE("phi on the worked derivation") {
    auto d = worked();
    auto start = MachineState::start(Frame{}, {});
    CHECK(same_state(phi({}, start), start));

    auto fwd = run_phi(extract_forward(d), start);
    CHECK(fwd.state.sigma.empty());
    CHECK(fwd.state.rho == Assignment{});

    auto bwd = run_phi(extract_backward(d), start);
    CHECK(bwd.state.sigma == UpdateSeq{U("d", "eps", "eps"), U("d", "eps:0", "eps:00")});
    CHECK(bwd.state.rho == Assignment{});
    CHECK(bwd.state.base == Frame{});
    CHECK(bwd.state.current == apply_update_seq(Frame{}, bwd.state.sigma));
    CHECK(bwd.skipped == 0);

    auto audit = audit_phi_measures(start, extract_backward(d), bwd.state, derivation_length(d), d, ax_double());
    CHECK_MESSAGE(audit.ok(), audit.summary());
    auto empty = audit_phi_measures(start, {}, start, 1, d, ax_double());
    CHECK(empty.ok());
}

TEST_CASE("phi on an unknown argument appends a star-rooted generator") {
    auto d = parse_derivation("(axiom d.zero ((x y)))", ax_double());
    auto run = run_phi(extract_backward(d), MachineState::start(Frame{}, {}));
    REQUIRE(run.state.sigma.size() == 1);
    CHECK(run.state.sigma[0] == U("d", "*0", "*00"));
    CHECK(run.skipped == 0);
}

TEST_CASE("phi skips a backward step whose value is unknown") {
    auto ax = parse_theory("(fun f 1) (fun g 1) (axiom g.all (g x) (f x))");
    auto d = parse_derivation("(axiom g.all ((x y)))", ax);
    auto run = run_phi(extract_backward(d), MachineState::start(Frame{}, {}));
    CHECK(run.state.sigma.empty());
    CHECK(run.skipped == 1);
    REQUIRE(run.steps.size() == 1);
    CHECK(run.steps[0].skipped);
}

TEST_CASE("property: phi concatenation and assignment restoration") {
    fuzz::Rng rng(29);
    for (int t = 0; t < 10; ++t) {
        auto ax = fuzz::random_theory(rng);
        for (int i = 0; i < 30; ++i) {
            auto d = to_vnf(fuzz::random_derivation(rng, ax), ax);
            auto bv = measure(d).bvars;
            Assignment rho = fuzz::random_assignment(rng, free_vars(d.conclusion()), 3);
            Frame f = fuzz::random_frame(rng, ax, 3, 3);
            auto start = MachineState::start(f, rho);
            std::size_t kappa = std::max(f.gauge(), rho.gauge()) + derivation_length(d);
            for (bool backward : {false, true}) {
                auto tau = backward ? extract_backward(d) : extract_forward(d);
                REQUIRE(seq_length(tau) <= derivation_length(d));
                auto whole = run_phi(tau, start);
                REQUIRE(whole.state.rho == rho);
                std::size_t cut = tau.empty() ? 0 : std::uniform_int_distribution<std::size_t>(0, tau.size())(rng);
                InstructionSeq head(tau.begin(), tau.begin() + static_cast<long>(cut));
                InstructionSeq tail(tau.begin() + static_cast<long>(cut), tau.end());
                REQUIRE(same_state(phi(tail, phi(head, start)), whole.state));
                auto audit = audit_phi_measures(start, tau, whole.state, kappa, d, ax);
                REQUIRE_MESSAGE(audit.ok(), audit.summary());
            }
        }
    }
}
