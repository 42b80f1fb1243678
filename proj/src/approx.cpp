#include "pets/approx.hpp"

#include <algorithm>

#include "pets/error.hpp"

namespace pets {

ApproxValue::ApproxValue(bool star, std::string bits) : star_(star), bits_(std::move(bits)) {
    if (bits_.find_first_not_of("01") != std::string::npos)
        throw Error(ErrorKind::parse, "approximate value bits must be 0/1: '" + bits_ + "'");
}

ApproxValue ApproxValue::append(int bit) const {
    ApproxValue out = *this;
    out.bits_.push_back(char('0' + bit));
    return out;
}

ApproxValue ApproxValue::drop_last() const {
    ApproxValue out = *this;
    if (!out.bits_.empty()) out.bits_.pop_back();
    return out;
}

std::size_t gauge(const ApproxValue& v) { return v.gauge(); }

std::size_t gauge(std::span<const ApproxValue> w) {
    std::size_t g = 0;
    for (const auto& v : w) g = std::max(g, v.gauge());
    return g;
}

bool approx_leq(const ApproxValue& v, const ApproxValue& w) {
    const auto& a = v.bits();
    const auto& b = w.bits();
    if (v.star_rooted())
        return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.end() - a.size());
    return w.is_ground() && a == b;
}

namespace {

void require_same_extent(std::span<const ApproxValue> v, std::span<const ApproxValue> w) {
    if (v.size() != w.size())
        throw Error(ErrorKind::extent, "extent mismatch: " + std::to_string(v.size()) + " vs " +
                                           std::to_string(w.size()));
}

}  // namespace

bool approx_leq(std::span<const ApproxValue> v, std::span<const ApproxValue> w, Order leq) {
    require_same_extent(v, w);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!leq(v[i], w[i])) return false;
    return true;
}

bool compatible(const ApproxValue& u, const ApproxValue& v, Order leq) { return leq(u, v) || leq(v, u); }

bool compatible(std::span<const ApproxValue> u, std::span<const ApproxValue> v, Order leq) {
    require_same_extent(u, v);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!compatible(u[i], v[i], leq)) return false;
    return true;
}

ApproxValue maxapprx(std::span<const ApproxValue> values, Order leq) {
    ApproxValue best;  // *
    for (const auto& v : values) {
        if (leq(best, v)) {
            best = v;
        } else if (!leq(v, best)) {
            throw Error(ErrorKind::incompatible,
                        "maxapprx: incompatible values " + print_value(best) + " and " + print_value(v));
        }
    }
    for (const auto& v : values)
        if (!leq(v, best))
            throw Error(ErrorKind::incompatible,
                        "maxapprx: incompatible values " + print_value(v) + " and " + print_value(best));
    return best;
}

std::size_t gauge(const Generator& g) { return std::max(gauge(g.args), g.out.gauge()); }

ConsistentSet ConsistentSet::validate(std::vector<Generator> gens) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    for (const auto& g : gens) {
        if (g.out.is_star())
            throw Error(ErrorKind::incompatible, "generator " + print_generator(g) + " has output *");
        if (g.args.size() != gens.front().args.size())
            throw Error(ErrorKind::extent, "generators of different extent: " +
                                               print_generator(gens.front()) + " and " + print_generator(g));
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (compatible(gens[i].args, gens[j].args) && !compatible(gens[i].out, gens[j].out))
                throw Error(ErrorKind::incompatible, "inconsistent generators " + print_generator(gens[i]) +
                                                         " and " + print_generator(gens[j]));
    ConsistentSet out;
    out.gens_ = std::move(gens);
    return out;
}

std::size_t ConsistentSet::gauge() const {
    std::size_t g = 0;
    for (const auto& gen : gens_) g = std::max(g, pets::gauge(gen));
    return g;
}

std::size_t ConsistentSet::extent() const { return gens_.empty() ? 0 : gens_.front().args.size(); }

bool ConsistentSet::contains(const Generator& g) const {
    return std::binary_search(gens_.begin(), gens_.end(), g);
}

ConsistentSet ConsistentSet::with(const Generator& g) const {
    if (contains(g)) return *this;
    if (g.out.is_star())
        throw Error(ErrorKind::incompatible, "generator " + print_generator(g) + " has output *");
    if (!gens_.empty() && g.args.size() != extent())
        throw Error(ErrorKind::extent, "generator " + print_generator(g) + " has wrong extent");
    for (const auto& h : gens_)
        if (compatible(g.args, h.args) && !compatible(g.out, h.out))
            throw Error(ErrorKind::incompatible,
                        "inconsistent generators " + print_generator(h) + " and " + print_generator(g));
    ConsistentSet out = *this;
    out.gens_.insert(std::lower_bound(out.gens_.begin(), out.gens_.end(), g), g);
    return out;
}

bool ConsistentSet::subset_of(const ConsistentSet& other) const {
    return std::includes(other.gens_.begin(), other.gens_.end(), gens_.begin(), gens_.end());
}

ApproxValue apply_map(const ConsistentSet& map, std::span<const ApproxValue> x, Order leq) {
    if (map.empty()) return ApproxValue::star();
    std::vector<ApproxValue> hits;
    for (const auto& g : map.generators())
        if (approx_leq(g.args, x, leq)) hits.push_back(g.out);
    return maxapprx(hits, leq);
}

std::string print_value(const ApproxValue& v) {
    return (v.star_rooted() ? "star:" : "eps:") + v.bits();
}

ApproxValue parse_value(std::string_view text) {
    auto rest = [&](std::size_t n) { return std::string(text.substr(n)); };
    if (text.starts_with("star:")) return ApproxValue::star(rest(5));
    if (text.starts_with("eps:")) return ApproxValue::ground(rest(4));
    if (text.starts_with("*")) return ApproxValue::star(rest(1));
    if (text.starts_with("eps")) return ApproxValue::ground(rest(3));
    throw Error(ErrorKind::parse, "invalid approximate value '" + std::string(text) + "'");
}

std::string print_tuple(std::span<const ApproxValue> w) {
    std::string out = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += print_value(w[i]);
    }
    return out + ")";
}

std::string print_generator(const Generator& g) { return print_tuple(g.args) + " -> " + print_value(g.out); }

}  // namespace pets
