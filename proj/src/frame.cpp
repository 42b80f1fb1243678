#include "pets/frame.hpp"

#include <algorithm>
#include <sstream>

#include "pets/error.hpp"

namespace pets {

const ConsistentSet& Frame::at(std::string_view symbol) const {
    static const ConsistentSet bottom;
    auto it = table_.find(symbol);
    return it == table_.end() ? bottom : it->second;
}

Frame Frame::with_set(std::string symbol, ConsistentSet set) const {
    if (is_basic_symbol(symbol))
        throw Error(ErrorKind::parse, "frames cannot interpret basic symbol '" + symbol + "'");
    Frame out = *this;
    if (set.empty()) out.table_.erase(symbol);
    else out.table_.insert_or_assign(std::move(symbol), std::move(set));
    return out;
}

std::size_t Frame::width() const {
    std::size_t w = 0;
    for (const auto& [_, set] : table_) w = std::max(w, set.size());
    return w;
}

std::size_t Frame::gauge() const {
    std::size_t g = 0;
    for (const auto& [_, set] : table_) g = std::max(g, set.gauge());
    return g;
}

std::size_t Frame::extent() const {
    std::size_t e = 0;
    for (const auto& [_, set] : table_) e = std::max(e, set.extent());
    return e;
}

std::size_t Frame::generator_count() const {
    std::size_t n = 0;
    for (const auto& [_, set] : table_) n += set.size();
    return n;
}

bool frame_leq(const Frame& a, const Frame& b) {
    for (const auto& [f, set] : a.table())
        if (!set.subset_of(b.at(f))) return false;
    return true;
}

ApproxValue Assignment::operator()(std::string_view x) const {
    auto it = table_.find(x);
    return it == table_.end() ? ApproxValue::star() : it->second;
}

Assignment Assignment::with(std::string x, ApproxValue v) const {
    Assignment out = *this;
    out.table_.insert_or_assign(std::move(x), std::move(v));
    return out;
}

Assignment Assignment::without(std::string_view x) const {
    Assignment out = *this;
    if (auto it = out.table_.find(x); it != out.table_.end()) out.table_.erase(it);
    return out;
}

Assignment Assignment::restricted(const VarSet& vars) const {
    Assignment out;
    for (const auto& [x, v] : table_)
        if (vars.contains(x)) out.table_.emplace(x, v);
    return out;
}

std::size_t Assignment::gauge() const {
    std::size_t g = 0;
    for (const auto& [_, v] : table_) g = std::max(g, v.gauge());
    return g;
}

bool assignment_leq(const Assignment& a, const Assignment& b) {
    VarSet keys;
    for (const auto& [x, _] : a.table()) keys.insert(x);
    for (const auto& [x, _] : b.table()) keys.insert(x);
    return std::all_of(keys.begin(), keys.end(), [&](const std::string& x) { return approx_leq(a(x), b(x)); });
}

ApproxValue apply_to_generalized(const Assignment& rho, const Term& gv) {
    if (gv.is_var()) return rho(gv.name());
    if (gv.is_eps()) return ApproxValue::ground();
    if (auto bit = gv.suc_bit(); bit && gv.args()[0].is_var()) return rho(gv.args()[0].name()).append(*bit);
    throw Error(ErrorKind::derivation, "'" + print_term(gv) + "' is not a generalized variable");
}

ApproxValue eval_term(const Frame& frame, const Assignment& rho, const Term& t, Order leq) {
    if (t.is_var()) return rho(t.name());
    if (t.is_eps()) return ApproxValue::ground();
    if (auto bit = t.suc_bit()) return eval_term(frame, rho, t.args()[0], leq).append(*bit);
    ValueTuple args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(eval_term(frame, rho, a, leq));
    return apply_map(frame.at(t.name()), args, leq);
}

std::string print_update(const Update& u) { return u.symbol + ":" + print_generator(u.gen); }

Frame apply_update(const Frame& frame, const Update& u) {
    return frame.with_set(u.symbol, frame.at(u.symbol).with(u.gen));
}

Frame apply_update_seq(const Frame& frame, const UpdateSeq& seq) {
    Frame out = frame;
    for (const auto& u : seq) out = apply_update(out, u);
    return out;
}

FrameMeasures frame_measures(const Frame& frame) { return {frame.width(), frame.gauge(), frame.extent()}; }

SeqMeasures seq_measures(const UpdateSeq& seq) {
    SeqMeasures m;
    m.seqlh = seq.size();
    for (const auto& u : seq) {
        m.gauge = std::max(m.gauge, u.gauge());
        m.extent = std::max(m.extent, u.extent());
    }
    return m;
}

UpdateCheck validate_update(const Frame& frame, std::size_t kappa, const Derivation& d, const NiceAxiomSet& ax,
                            const Update& u) {
    UpdateCheck out;
    if (is_basic_symbol(u.symbol)) {
        out.reason = "update of basic symbol '" + u.symbol + "'";
        return out;
    }
    if (u.gen.out.is_star()) {
        out.reason = "generator output is *";
        return out;
    }
    if (u.gauge() > kappa) {
        out.reason = "gauge " + std::to_string(u.gauge()) + " exceeds kappa " + std::to_string(kappa);
        return out;
    }
    const VarSet used = axioms_used(d);
    std::string mismatch;
    for (const auto& a : ax.axioms()) {
        if (a.symbol() != u.symbol || !used.contains(a.id)) continue;
        auto lhs_args = a.eq.lhs.args();
        if (lhs_args.size() != u.gen.args.size()) continue;
        // Reconstruct ρ from v̄: each lhs argument is a generalized variable
        // with its own variable.
        Assignment rho;
        bool fits = true;
        for (std::size_t i = 0; i < lhs_args.size() && fits; ++i) {
            const Term& gv = lhs_args[i];
            const ApproxValue& v = u.gen.args[i];
            if (gv.is_var()) {
                rho = rho.with(gv.name(), v);
            } else if (gv.is_eps()) {
                fits = v == ApproxValue::ground();
            } else {
                int bit = *gv.suc_bit();
                fits = v.ends_with(bit);
                if (fits) rho = rho.with(gv.args()[0].name(), v.drop_last());
            }
        }
        if (!fits) continue;
        ApproxValue w = eval_term(frame, rho, a.eq.rhs);
        if (w == u.gen.out) {
            out.ok = true;
            out.axiom_id = a.id;
            return out;
        }
        mismatch = "axiom " + a.id + " gives " + print_value(w) + " but the update says " + print_value(u.gen.out);
    }
    out.reason = mismatch.empty() ? "no axiom occurring in the derivation matches " + print_update(u) : mismatch;
    return out;
}

std::string print_frame(const Frame& frame) {
    std::string out;
    for (const auto& [f, set] : frame.table())
        for (const auto& g : set.generators()) out += f + " " + print_generator(g) + "\n";
    return out;
}

namespace {

[[noreturn]] void line_error(std::size_t line, const std::string& msg) {
    throw Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + msg);
}

std::string strip(std::string s) {
    if (auto c = s.find(';'); c != std::string::npos) s.erase(c);
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Frame parse_frame(std::string_view text, const Signature& sig) {
    std::map<std::string, std::vector<Generator>> gens;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty()) continue;
        auto open = line.find('(');
        auto close = line.find(')');
        auto arrow = line.find("->");
        if (open == std::string::npos || close == std::string::npos || arrow == std::string::npos || close < open ||
            arrow < close)
            line_error(lineno, "expected '<symbol> (<values>) -> <value>'");
        std::string symbol = strip(line.substr(0, open));
        const auto* sym = sig.find(symbol);
        if (sym == nullptr) line_error(lineno, "unknown function symbol '" + symbol + "'");
        if (sym->basic) line_error(lineno, "frames cannot interpret basic symbol '" + symbol + "'");
        Generator g;
        std::istringstream args(line.substr(open + 1, close - open - 1));
        for (std::string tok; args >> tok;) g.args.push_back(parse_value(tok));
        if (g.args.size() != sym->arity)
            line_error(lineno, "generator for '" + symbol + "' has extent " + std::to_string(g.args.size()) +
                                   ", expected " + std::to_string(sym->arity));
        g.out = parse_value(strip(line.substr(arrow + 2)));
        gens[symbol].push_back(std::move(g));
    }
    Frame frame;
    for (auto& [f, list] : gens) frame = frame.with_set(f, ConsistentSet::validate(std::move(list)));
    return frame;
}

std::string print_assignment(const Assignment& rho) {
    std::string out;
    for (const auto& [x, v] : rho.table()) out += x + " -> " + print_value(v) + "\n";
    return out;
}

Assignment parse_assignment(std::string_view text) {
    Assignment rho;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty()) continue;
        auto arrow = line.find("->");
        if (arrow == std::string::npos) line_error(lineno, "expected '<var> -> <value>'");
        std::string x = strip(line.substr(0, arrow));
        if (!is_identifier(x)) line_error(lineno, "invalid variable '" + x + "'");
        if (rho.contains(x)) line_error(lineno, "variable '" + x + "' bound twice");
        rho = rho.with(x, parse_value(strip(line.substr(arrow + 2))));
    }
    return rho;
}

}  // namespace pets
