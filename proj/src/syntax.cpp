#include "pets/syntax.hpp"

#include <cctype>

#include "pets/error.hpp"

namespace pets {

bool is_basic_symbol(std::string_view name) {
    return name == kEps || name == kSuc0 || name == kSuc1;
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto c0 = static_cast<unsigned char>(s.front());
    if (!std::isalpha(c0) && c0 != '_') return false;
    for (char c : s) {
        auto uc = static_cast<unsigned char>(c);
        if (!std::isalnum(uc) && c != '_' && c != '\'' && c != '.') return false;
    }
    return true;
}

Signature::Signature() {
    symbols_.emplace(std::string(kEps), FunctionSymbol{std::string(kEps), 0, true});
    symbols_.emplace(std::string(kSuc0), FunctionSymbol{std::string(kSuc0), 1, true});
    symbols_.emplace(std::string(kSuc1), FunctionSymbol{std::string(kSuc1), 1, true});
}

const FunctionSymbol& Signature::declare(std::string name, std::size_t arity) {
    if (!is_identifier(name)) throw Error(ErrorKind::parse, "invalid function name '" + name + "'");
    if (symbols_.contains(name))
        throw Error(ErrorKind::parse, "function symbol '" + name + "' declared twice");
    order_.push_back(name);
    auto [it, _] = symbols_.emplace(name, FunctionSymbol{name, arity, false});
    return it->second;
}

const FunctionSymbol* Signature::find(std::string_view name) const {
    auto it = symbols_.find(name);
    return it == symbols_.end() ? nullptr : &it->second;
}

std::vector<FunctionSymbol> Signature::defined() const {
    std::vector<FunctionSymbol> out;
    for (const auto& name : order_) out.push_back(symbols_.find(name)->second);
    return out;
}

Term Term::var(std::string name) {
    auto node = std::make_shared<Node>();
    node->is_var = true;
    node->name = std::move(name);
    return Term(std::move(node));
}

Term Term::app(std::string symbol, std::vector<Term> args) {
    auto node = std::make_shared<Node>();
    node->name = std::move(symbol);
    node->length = 1;
    for (const auto& a : args) node->length += a.length();
    node->args = std::move(args);
    return Term(std::move(node));
}

Term Term::eps() {
    static const Term e = app(std::string(kEps));
    return e;
}

Term Term::suc(int bit, Term arg) {
    return app(std::string(bit == 0 ? kSuc0 : kSuc1), {std::move(arg)});
}

std::optional<int> Term::suc_bit() const {
    if (is_var()) return std::nullopt;
    if (name() == kSuc0) return 0;
    if (name() == kSuc1) return 1;
    return std::nullopt;
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->is_var != b.node_->is_var || a.node_->length != b.node_->length ||
        a.node_->name != b.node_->name)
        return false;
    return std::equal(a.node_->args.begin(), a.node_->args.end(), b.node_->args.begin(),
                      b.node_->args.end());
}

std::size_t term_length(const Term& t) { return t.length(); }

void collect_vars(const Term& t, VarSet& out) {
    if (t.is_var()) {
        out.insert(t.name());
        return;
    }
    for (const auto& a : t.args()) collect_vars(a, out);
}

VarSet free_vars(const Term& t) {
    VarSet out;
    collect_vars(t, out);
    return out;
}

VarSet free_vars(const Equation& e) {
    VarSet out;
    collect_vars(e.lhs, out);
    collect_vars(e.rhs, out);
    return out;
}

std::size_t count_occurrences(const Term& t, std::string_view x) {
    if (t.is_var()) return t.name() == x ? 1 : 0;
    std::size_t n = 0;
    for (const auto& a : t.args()) n += count_occurrences(a, x);
    return n;
}

bool occurs(const Term& t, std::string_view x) {
    if (t.is_var()) return t.name() == x;
    for (const auto& a : t.args())
        if (occurs(a, x)) return true;
    return false;
}

Term substitute(const Term& t, const Term& u, std::string_view x) {
    if (t.is_var()) return t.name() == x ? u : t;
    if (!occurs(t, x)) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(substitute(a, u, x));
    return Term::app(t.name(), std::move(args));
}

Term substitute(const Term& t, const Substitution& sub) {
    if (sub.empty()) return t;
    if (t.is_var()) {
        auto it = sub.find(t.name());
        return it == sub.end() ? t : it->second;
    }
    if (t.args().empty()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(substitute(a, sub));
    return Term::app(t.name(), std::move(args));
}

Equation substitute(const Equation& e, const Substitution& sub) {
    return {substitute(e.lhs, sub), substitute(e.rhs, sub)};
}

Term substitute_seq(const Term& t, std::span<const std::pair<std::string, Term>> steps) {
    Term out = t;
    for (const auto& [x, u] : steps) out = substitute(out, u, x);
    return out;
}

bool is_generalized_variable(const Term& t) {
    if (t.is_var() || t.is_eps()) return true;
    return t.suc_bit().has_value() && t.args()[0].is_var();
}

namespace {

void print_into(const Term& t, std::string& out) {
    if (t.is_var()) {
        out += t.name();
        return;
    }
    if (t.is_eps()) {
        out += kEps;
        return;
    }
    out += '(';
    out += t.name();
    for (const auto& a : t.args()) {
        out += ' ';
        print_into(a, out);
    }
    out += ')';
}

[[noreturn]] void fail_at(const sexpr::Node& node, const std::string& msg) {
    throw Error(ErrorKind::parse, sexpr::where(node.pos) + ": " + msg);
}

void check_arity(const sexpr::Node& node, const FunctionSymbol& sym, std::size_t given) {
    if (sym.arity != given)
        fail_at(node, "arity mismatch: '" + sym.name + "' expects " + std::to_string(sym.arity) +
                          " argument(s), got " + std::to_string(given));
}

}  // namespace

std::string print_term(const Term& t) {
    std::string out;
    print_into(t, out);
    return out;
}

std::string print_equation(const Equation& e) { return print_term(e.lhs) + " = " + print_term(e.rhs); }

Term term_from_sexpr(const sexpr::Node& node, const Signature& sig) {
    if (node.atom) {
        if (node.text == "0") return Term::suc(0, Term::eps());
        if (node.text == "1") return Term::suc(1, Term::eps());
        if (const auto* sym = sig.find(node.text)) {
            check_arity(node, *sym, 0);
            return Term::app(sym->name);
        }
        if (!is_identifier(node.text)) fail_at(node, "invalid identifier '" + node.text + "'");
        return Term::var(node.text);
    }
    if (node.items.empty()) fail_at(node, "empty term");
    const auto& head = node.items.front();
    if (!head.atom) fail_at(head, "expected function symbol");
    const auto* sym = sig.find(head.text);
    if (sym == nullptr) fail_at(head, "unknown function symbol '" + head.text + "'");
    check_arity(node, *sym, node.items.size() - 1);
    std::vector<Term> args;
    args.reserve(sym->arity);
    for (std::size_t i = 1; i < node.items.size(); ++i)
        args.push_back(term_from_sexpr(node.items[i], sig));
    return Term::app(sym->name, std::move(args));
}

Term parse_term(std::string_view text, const Signature& sig) {
    return term_from_sexpr(sexpr::parse_one(text), sig);
}

}  // namespace pets
