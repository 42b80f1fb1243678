#include <doctest.h>

#include <set>

#include "pets/approx.hpp"
#include "pets/error.hpp"
#include "pets/fuzz.hpp"
#include "pets/oracle.hpp"

using namespace pets;

namespace {

ApproxValue V(const char* text) { return parse_value(text); }

ValueTuple tuple(std::initializer_list<const char*> items) {
    ValueTuple out;
    for (auto* s : items) out.push_back(V(s));
    return out;
}

Generator G(std::initializer_list<const char*> args, const char* out) { return {tuple(args), V(out)}; }

}  // namespace

TEST_CASE("value literals") {
    CHECK(V("*") == ApproxValue::star());
    CHECK(V("eps") == ApproxValue::ground());
    CHECK(V("*01") == ApproxValue::star("01"));
    CHECK(V("star:01") == ApproxValue::star("01"));
    CHECK(V("eps:10") == ApproxValue::ground("10"));
    CHECK(print_value(ApproxValue::ground("10")) == "eps:10");
    CHECK(print_value(ApproxValue::star()) == "star:");
    CHECK_THROWS_AS(V("eps:12"), Error);
    CHECK_THROWS_AS(V("x"), Error);
}

TEST_CASE("gauge") {
    CHECK(gauge(V("eps")) == 1);
    CHECK(gauge(V("*")) == 1);
    CHECK(gauge(V("*01")) == 3);
    CHECK(gauge(tuple({"eps:0", "*011"})) == 4);
    CHECK(gauge(ValueTuple{}) == 0);
}

TEST_CASE("approximation order") {
    CHECK(approx_leq(V("*"), V("eps:01")));
    CHECK_FALSE(approx_leq(V("eps"), V("eps:0")));
    CHECK_FALSE(approx_leq(V("*0"), V("eps:01")));
    CHECK(approx_leq(V("*1"), V("eps:001")));
    CHECK(approx_leq(V("*1"), V("*01")));
    CHECK_FALSE(approx_leq(V("eps:1"), V("*1")));
}

TEST_CASE("compatibility") {
    CHECK(compatible(V("*"), V("eps")));
    CHECK_FALSE(compatible(V("eps:0"), V("eps:1")));
    CHECK(compatible(tuple({"*", "eps:0"}), tuple({"eps", "eps:0"})));
    CHECK_THROWS_AS(compatible(tuple({"*"}), tuple({"*", "*"})), Error);
}

TEST_CASE("maxapprx") {
    CHECK(maxapprx(ValueTuple{}) == ApproxValue::star());
    CHECK(maxapprx(tuple({"*0", "*00"})) == V("*00"));
    CHECK(maxapprx(tuple({"*", "eps:1", "*1"})) == V("eps:1"));
    try {
        maxapprx(tuple({"eps:0", "eps:00"}));
        FAIL("expected incompatible");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::incompatible);
        CHECK(std::string(e.what()).find("eps:00") != std::string::npos);
    }
}

TEST_CASE("consistent sets") {
    CHECK(ConsistentSet::validate({G({"eps"}, "eps")}).size() == 1);
    CHECK(ConsistentSet::validate({G({"*"}, "*0"), G({"eps"}, "*00")}).size() == 2);
    CHECK_THROWS_AS(ConsistentSet::validate({G({"*"}, "eps:0"), G({"eps"}, "eps:00")}), Error);
    CHECK_THROWS_AS(ConsistentSet::validate({G({"*"}, "eps:0"), G({"eps"}, "eps:1")}), Error);
    CHECK_THROWS_AS(ConsistentSet::validate({G({"eps"}, "*")}), Error);
    CHECK_THROWS_AS(ConsistentSet::validate({G({"eps"}, "eps"), G({"eps", "eps"}, "eps")}), Error);

    auto s = ConsistentSet::validate({G({"eps"}, "eps"), G({"eps"}, "eps")});
    CHECK(s.size() == 1);
    CHECK(ConsistentSet{}.extent() == 0);
    CHECK(s.gauge() == 1);
    CHECK(ConsistentSet::validate({G({"eps:01"}, "eps")}).gauge() == 3);
}

TEST_CASE("finitely generated maps") {
    auto one = ConsistentSet::validate({G({"eps"}, "eps")});
    CHECK(apply_map(one, tuple({"eps:0"})) == ApproxValue::star());
    CHECK(apply_map(one, tuple({"eps"})) == V("eps"));
    auto two = ConsistentSet::validate({G({"*"}, "*0"), G({"eps"}, "*00")});
    CHECK(apply_map(two, tuple({"eps"})) == V("*00"));
    CHECK(apply_map(two, tuple({"eps:1"})) == V("*0"));
    CHECK(apply_map(ConsistentSet{}, tuple({"eps", "eps"})) == ApproxValue::star());
}

TEST_CASE("property: order is a partial order on all values of gauge at most 4") {
    auto values = enumerate_values(4);
    REQUIRE(values.size() == 30);
    for (const auto& a : values) {
        CHECK(approx_leq(a, a));
        for (const auto& b : values) {
            if (approx_leq(a, b) && approx_leq(b, a)) REQUIRE(a == b);
            for (const auto& c : values)
                if (approx_leq(a, b) && approx_leq(b, c)) REQUIRE(approx_leq(a, c));
        }
    }
}

TEST_CASE("property: suffix rule agrees with the inductive definition up to gauge 5") {
    auto values = enumerate_values(5);
    std::size_t agree = 0;
    for (const auto& a : values)
        for (const auto& b : values) {
            REQUIRE(approx_leq(a, b) == inductive_leq(a, b));
            ++agree;
        }
    CHECK(agree == 62 * 62);
}

TEST_CASE("property: tuples below a common tuple are compatible") {
    auto values = enumerate_values(3);
    REQUIRE(values.size() == 14);
    std::vector<ValueTuple> tuples;
    for (const auto& a : values) {
        tuples.push_back({a});
        for (const auto& b : values) tuples.push_back({a, b});
    }
    for (const auto& w : tuples)
        for (const auto& u : tuples) {
            if (u.size() != w.size() || !approx_leq(u, w)) continue;
            for (const auto& v : tuples)
                if (v.size() == w.size() && approx_leq(v, w)) REQUIRE(compatible(u, v));
        }
}

TEST_CASE("property: value count formula") {
    for (std::size_t g = 1; g <= 6; ++g) {
        auto values = enumerate_values(g);
        CHECK(values.size() == (std::size_t{2} << g) - 2);
        std::set<ApproxValue> distinct(values.begin(), values.end());
        CHECK(distinct.size() == values.size());
        for (const auto& v : values) REQUIRE(v.gauge() <= g);
    }
}

TEST_CASE("property: expansion and monotonicity of maps") {
    fuzz::Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        std::size_t extent = 1 + i % 2;
        auto small = fuzz::random_consistent_set(rng, 5, extent, 4);
        auto big = small;
        for (int k = 0; k < 3; ++k) {
            Generator g{fuzz::random_tuple(rng, extent, 4), fuzz::random_value(rng, 4)};
            if (g.out.is_star()) continue;
            try {
                big = big.with(g);
            } catch (const Error&) {
            }
        }
        REQUIRE(small.subset_of(big));
        auto x = fuzz::random_tuple(rng, extent, 4);
        REQUIRE(approx_leq(apply_map(small, x), apply_map(big, x)));

        ValueTuple lower = x;
        for (auto& v : lower) {
            if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) continue;
            std::size_t cut = std::uniform_int_distribution<std::size_t>(0, v.bits().size())(rng);
            if (v.star_rooted() && cut == 0) continue;
            v = ApproxValue::star(v.bits().substr(cut));
        }
        REQUIRE(approx_leq(lower, x));
        REQUIRE(approx_leq(apply_map(big, lower), apply_map(big, x)));
    }
}
