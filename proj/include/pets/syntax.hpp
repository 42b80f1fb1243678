#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pets/sexpr.hpp"

namespace pets {

struct FunctionSymbol {
    std::string name;
    std::size_t arity = 0;
    bool basic = false;  // true exactly for eps, s0, s1
};

inline constexpr std::string_view kEps = "eps";
inline constexpr std::string_view kSuc0 = "s0";
inline constexpr std::string_view kSuc1 = "s1";

bool is_basic_symbol(std::string_view name);

// A closed, finite signature. The basic symbols are always present.
class Signature {
public:
    Signature();

    // Throws Error(parse) on a duplicate or reserved name.
    const FunctionSymbol& declare(std::string name, std::size_t arity);

    const FunctionSymbol* find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }

    // Declaration order, basic symbols excluded.
    std::vector<FunctionSymbol> defined() const;

private:
    std::map<std::string, FunctionSymbol, std::less<>> symbols_;
    std::vector<std::string> order_;
};

// Immutable term value. Copies share structure.
class Term {
public:
    static Term var(std::string name);
    static Term app(std::string symbol, std::vector<Term> args = {});
    static Term eps();
    static Term suc(int bit, Term arg);

    bool is_var() const { return node_->is_var; }
    bool is_app() const { return !node_->is_var; }
    // Variable name or function symbol.
    const std::string& name() const { return node_->name; }
    std::span<const Term> args() const { return node_->args; }
    std::size_t length() const { return node_->length; }

    bool is_eps() const { return is_app() && name() == kEps; }
    // 0 or 1 when the head is s0 / s1.
    std::optional<int> suc_bit() const;
    bool has_basic_head() const { return is_app() && is_basic_symbol(name()); }

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node {
        bool is_var = false;
        std::string name;
        std::vector<Term> args;
        std::size_t length = 1;
    };

    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct Equation {
    Term lhs;
    Term rhs;

    std::size_t length() const { return lhs.length() + rhs.length() + 1; }
    Equation flipped() const { return {rhs, lhs}; }

    friend bool operator==(const Equation&, const Equation&) = default;
};

using Substitution = std::map<std::string, Term, std::less<>>;
using VarSet = std::set<std::string, std::less<>>;

std::size_t term_length(const Term& t);
VarSet free_vars(const Term& t);
VarSet free_vars(const Equation& e);
void collect_vars(const Term& t, VarSet& out);
std::size_t count_occurrences(const Term& t, std::string_view x);
bool occurs(const Term& t, std::string_view x);

// t[u/x]
Term substitute(const Term& t, const Term& u, std::string_view x);
// Simultaneous substitution; variables outside the map are kept.
Term substitute(const Term& t, const Substitution& sub);
Equation substitute(const Equation& e, const Substitution& sub);
// Left-to-right sequence t[u1/x1]...[un/xn].
Term substitute_seq(const Term& t, std::span<const std::pair<std::string, Term>> steps);

bool is_generalized_variable(const Term& t);

// Canonical s-expression: no digit sugar, nullary defined symbols as `(c)`.
std::string print_term(const Term& t);
std::string print_equation(const Equation& e);

Term parse_term(std::string_view text, const Signature& sig);
Term term_from_sexpr(const sexpr::Node& node, const Signature& sig);

bool is_identifier(std::string_view s);

}  // namespace pets
