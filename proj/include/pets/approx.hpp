#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pets {

// Element of the approximation domain: a bit string rooted either at eps
// (a ground value) or at the unknown value `*`. Bits are appended on the
// right, so `*01` is s1(s0(*)).
class ApproxValue {
public:
    ApproxValue() = default;  // *

    static ApproxValue star(std::string bits = {}) { return ApproxValue(true, std::move(bits)); }
    static ApproxValue ground(std::string bits = {}) { return ApproxValue(false, std::move(bits)); }

    bool star_rooted() const { return star_; }
    bool is_star() const { return star_ && bits_.empty(); }
    bool is_ground() const { return !star_; }
    const std::string& bits() const { return bits_; }
    std::size_t gauge() const { return 1 + bits_.size(); }

    ApproxValue append(int bit) const;
    // v such that this == v·bit, if the last bit is `bit`.
    bool ends_with(int bit) const { return !bits_.empty() && bits_.back() == char('0' + bit); }
    ApproxValue drop_last() const;

    friend auto operator<=>(const ApproxValue&, const ApproxValue&) = default;
    friend bool operator==(const ApproxValue&, const ApproxValue&) = default;

private:
    ApproxValue(bool star, std::string bits);

    bool star_ = true;
    std::string bits_;
};

using ValueTuple = std::vector<ApproxValue>;

std::size_t gauge(const ApproxValue& v);
// max over components; 0 for the empty tuple
std::size_t gauge(std::span<const ApproxValue> w);
inline std::size_t extent(std::span<const ApproxValue> w) { return w.size(); }

// Order used by maxapprx / apply_map / evaluation. Swappable so the oracle
// can run a second implementation of ⊑ through the same machinery.
using Order = bool (*)(const ApproxValue&, const ApproxValue&);

bool approx_leq(const ApproxValue& v, const ApproxValue& w);
// Throws Error(extent) on length mismatch.
bool approx_leq(std::span<const ApproxValue> v, std::span<const ApproxValue> w, Order leq = approx_leq);

bool compatible(const ApproxValue& u, const ApproxValue& v, Order leq = approx_leq);
bool compatible(std::span<const ApproxValue> u, std::span<const ApproxValue> v, Order leq = approx_leq);

// ⊑-maximum of a pairwise compatible set; `*` for the empty set. Throws
// Error(incompatible) naming a witnessing pair.
ApproxValue maxapprx(std::span<const ApproxValue> values, Order leq = approx_leq);

struct Generator {
    ValueTuple args;
    ApproxValue out;  // never *

    friend auto operator<=>(const Generator&, const Generator&) = default;
    friend bool operator==(const Generator&, const Generator&) = default;
};

std::size_t gauge(const Generator& g);

// Finite consistent set of generators, kept sorted and duplicate-free.
// The empty set is ⊥ and has no fixed extent.
class ConsistentSet {
public:
    ConsistentSet() = default;

    // Throws Error(incompatible) with the violating pair, Error(extent) on
    // mixed extents, Error(incompatible) on a `*` output.
    static ConsistentSet validate(std::vector<Generator> gens);

    const std::vector<Generator>& generators() const { return gens_; }
    bool empty() const { return gens_.empty(); }
    std::size_t size() const { return gens_.size(); }
    std::size_t gauge() const;
    std::size_t extent() const;  // 0 for ⊥
    bool contains(const Generator& g) const;

    // Set union with one generator, validated against existing ones.
    ConsistentSet with(const Generator& g) const;
    bool subset_of(const ConsistentSet& other) const;

    friend bool operator==(const ConsistentSet&, const ConsistentSet&) = default;

private:
    std::vector<Generator> gens_;
};

// f̂(x̄) = maxapprx { v | w̄ ⊑ x̄, w̄ ↦ v ∈ f̂ }
ApproxValue apply_map(const ConsistentSet& map, std::span<const ApproxValue> x, Order leq = approx_leq);

// `eps:10`, `star:01`; the parser also accepts `*`, `eps`, `*01`, `eps10`.
std::string print_value(const ApproxValue& v);
ApproxValue parse_value(std::string_view text);
std::string print_tuple(std::span<const ApproxValue> w);
std::string print_generator(const Generator& g);

}  // namespace pets
