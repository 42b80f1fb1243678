#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pets/approx.hpp"
#include "pets/axioms.hpp"
#include "pets/derivation.hpp"
#include "pets/syntax.hpp"

namespace pets {

// Partial finite map from non-basic symbols to consistent sets; symbols
// outside the domain denote ⊥.
class Frame {
public:
    const ConsistentSet& at(std::string_view symbol) const;
    const std::map<std::string, ConsistentSet, std::less<>>& table() const { return table_; }
    bool empty() const { return table_.empty(); }

    // Throws on a basic symbol. An empty set removes the entry.
    Frame with_set(std::string symbol, ConsistentSet set) const;

    std::size_t width() const;   // max #F(f)
    std::size_t gauge() const;   // max G(F(f))
    std::size_t extent() const;  // max E(F(f))
    std::size_t generator_count() const;

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    std::map<std::string, ConsistentSet, std::less<>> table_;
};

// F1 ⊑ F2 iff F1(f) ⊆ F2(f) for all f.
bool frame_leq(const Frame& a, const Frame& b);

// Partial finite map from variables to values; `*` outside the domain.
class Assignment {
public:
    Assignment() = default;
    Assignment(std::initializer_list<std::pair<const std::string, ApproxValue>> init) : table_(init) {}

    ApproxValue operator()(std::string_view x) const;
    bool contains(std::string_view x) const { return table_.find(x) != table_.end(); }
    const std::map<std::string, ApproxValue, std::less<>>& table() const { return table_; }

    Assignment with(std::string x, ApproxValue v) const;  // ρ[x ↦ v]
    Assignment without(std::string_view x) const;         // ρ restricted to dom(ρ) \ {x}
    Assignment restricted(const VarSet& vars) const;

    std::size_t width() const { return table_.size(); }
    std::size_t gauge() const;  // 0 for the empty assignment

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::map<std::string, ApproxValue, std::less<>> table_;
};

bool assignment_leq(const Assignment& a, const Assignment& b);

// ρ applied to a generalized variable: ρ(x), eps, ρ(x)·i.
ApproxValue apply_to_generalized(const Assignment& rho, const Term& gv);

// Basic symbols are interpreted natively: eps ↦ eps, s_i appends bit i.
ApproxValue eval_term(const Frame& frame, const Assignment& rho, const Term& t, Order leq = approx_leq);

struct Update {
    std::string symbol;
    Generator gen;

    std::size_t gauge() const { return pets::gauge(gen); }
    std::size_t extent() const { return gen.args.size(); }

    friend bool operator==(const Update&, const Update&) = default;
};

using UpdateSeq = std::vector<Update>;

std::string print_update(const Update& u);

// F ∗ f:v̄↦w. Throws Error(incompatible) if F(f) ∪ {v̄↦w} is inconsistent.
Frame apply_update(const Frame& frame, const Update& u);
Frame apply_update_seq(const Frame& frame, const UpdateSeq& seq);

struct FrameMeasures {
    std::size_t width = 0;
    std::size_t gauge = 0;
    std::size_t extent = 0;
};

struct SeqMeasures {
    std::size_t seqlh = 0;
    std::size_t gauge = 0;
    std::size_t extent = 0;
};

FrameMeasures frame_measures(const Frame& frame);
SeqMeasures seq_measures(const UpdateSeq& seq);

struct UpdateCheck {
    bool ok = false;
    std::string axiom_id;  // witnessing axiom when ok
    std::string reason;    // failure explanation otherwise
};

// Is `u` an update based on F, κ and D? The witnessing assignment is
// reconstructed from v̄ through the lhs generalized variables.
UpdateCheck validate_update(const Frame& frame, std::size_t kappa, const Derivation& d, const NiceAxiomSet& ax,
                            const Update& u);

// Frame dump: one generator per line, `d (eps:) -> eps:`.
std::string print_frame(const Frame& frame);
Frame parse_frame(std::string_view text, const Signature& sig);

// Assignment file: one binding per line, `x -> eps:0`.
std::string print_assignment(const Assignment& rho);
Assignment parse_assignment(std::string_view text);

}  // namespace pets
