#include <catch2/catch_amalgamated.hpp>

#include "cuntz/sampling.hpp"
#include "cuntz/testing/rule_oracle.hpp"
#include "cuntz/wmodel.hpp"

using namespace cuntz;
using namespace cuntz::wmodel;

namespace {

w_model two_traces()
{
    w_model w;
    w.k0 = k0_model::simplicial({1, 1});
    w.traces = trace_simplex::numbered(2);
    w.validate();
    return w;
}

soft s(std::initializer_list<rational> f) { return soft{rat_vec(f)}; }

} // namespace

TEST_CASE("the four order clauses on W(Z)", "[wmodel]")
{
    const auto w = w_of_z();
    CHECK(compare(w, proj{{1}}, proj{{2}}));
    CHECK(!compare(w, proj{{2}}, proj{{1}}));
    CHECK(compare(w, s({1}), s({1})));
    CHECK(compare(w, s({1}), proj{{1}}));
    CHECK(!compare(w, proj{{1}}, s({1})));
    CHECK(compare(w, proj{{1}}, s({rational(101, 100)})));
    CHECK(compare(w, proj{{0}}, s({rational(1, 100)})));
    CHECK(!compare(w, s({rational(1, 100)}), proj{{0}}));
    CHECK(decide(w, s({1}), proj{{1}}).rule == order_rule::soft_proj);
    CHECK(decide(w, proj{{1}}, s({1})).rule == order_rule::proj_soft);
}

TEST_CASE("mixed comparisons across several traces", "[wmodel]")
{
    const auto w = two_traces();
    // equality in one coordinate kills strictness
    CHECK(!compare(w, proj{{1, 1}}, s({2, 1})));
    CHECK(compare(w, proj{{1, 1}}, s({2, rational(3, 2)})));
    CHECK(compare(w, s({1, 1}), proj{{1, 1}}));
    CHECK(!compare(w, s({2, 1}), proj{{1, 1}}));
    CHECK(!compare(w, proj{{2, 1}}, proj{{1, 1}})); // (1, 0) is not strictly positive
    CHECK_THROWS_AS(compare(w, proj{{1, 0}}, s({1, 1})), contract_error); // (1, 0) is outside the strict cone
    CHECK_THROWS_AS(compare(w, s({0, 1}), s({1, 1})), contract_error);
}

TEST_CASE("purely infinite model", "[wmodel]")
{
    const auto w = purely_infinite();
    CHECK(compare(w, proj{{0}}, proj{{1}}));
    CHECK(!compare(w, proj{{1}}, proj{{0}}));
    CHECK(add(w, proj{{1}}, proj{{1}}) == cuntz_class{proj{{1}}});
    CHECK_THROWS_AS(compare(w, proj{{2}}, proj{{1}}), contract_error);
    CHECK_THROWS_AS(soften(w, proj{{1}}), contract_error);
    CHECK(make_k0_star(w).n == 0);
}

TEST_CASE("addition, scaling and softening", "[wmodel]")
{
    const auto w = two_traces();
    CHECK(add(w, proj{{1, 1}}, s({rational(1, 2), 1})) == cuntz_class{s({rational(3, 2), 2})});
    CHECK(add(w, proj{{0, 0}}, s({1, 1})) == cuntz_class{s({1, 1})});
    CHECK(scale(w, s({1, 2}), rational(1, 2)) == cuntz_class{s({rational(1, 2), 1})});
    CHECK_THROWS_AS(scale(w, proj{{1, 1}}, rational(2)), contract_error);
    CHECK_THROWS_AS(scale(w, s({1, 1}), rational(0)), contract_error);
    CHECK(soften(w, proj{{2, 1}}) == cuntz_class{s({2, 1})});
    CHECK_THROWS_AS(soften(w, proj{{0, 0}}), contract_error);
    // softening drops below the projection, and sits just under it
    CHECK(compare(w, soften(w, proj{{2, 1}}), proj{{2, 1}}));
    CHECK(!compare(w, proj{{2, 1}}, soften(w, proj{{2, 1}})));
}

TEST_CASE("complement cases", "[wmodel]")
{
    const auto w = two_traces();
    CHECK(complement(w, proj{{1, 1}}, proj{{2, 3}}) == cuntz_class{proj{{1, 2}}});
    CHECK(complement(w, proj{{1, 1}}, s({2, 2})) == cuntz_class{s({1, 1})});
    CHECK(complement(w, s({1, 1}), proj{{1, 1}}) == cuntz_class{proj{{0, 0}}});
    CHECK(!complement(w, s({1, 1}), s({1, 2})));
    CHECK_THROWS_AS(complement(w, s({2, 2}), s({1, 1})), contract_error);
}

TEST_CASE("compare agrees with the rule oracle on random models", "[wmodel][property]")
{
    sampling::rng g(5);
    for (int m = 0; m < 10; ++m) {
        const auto w = sampling::random_model(g, 4, 4);
        for (int i = 0; i < 500; ++i) {
            const auto x = sampling::random_class(g, w);
            const auto y = sampling::random_class(g, w);
            CHECK(compare(w, x, y) == testing::oracle_leq(w, x, y));
        }
    }
}

TEST_CASE("order is compatible with addition", "[wmodel][property]")
{
    sampling::rng g(6);
    for (int m = 0; m < 10; ++m) {
        const auto w = sampling::random_model(g, 3, 3);
        for (int i = 0; i < 300; ++i) {
            const auto [x, y] = sampling::random_ordered_pair(g, w);
            const auto z = sampling::random_class(g, w);
            REQUIRE(compare(w, x, y));
            CHECK(compare(w, add(w, x, z), add(w, y, z)));
            CHECK(add(w, x, z) == add(w, z, x));
            CHECK(compare(w, proj{int_vec(w.k0.rank(), 0)}, x));
        }
    }
}

TEST_CASE("gamma is additive and independent of the auxiliary class", "[wmodel][property]")
{
    sampling::rng g(8);
    for (int m = 0; m < 10; ++m) {
        const auto w = sampling::random_model(g, 4, 3);
        for (int i = 0; i < 100; ++i) {
            const auto x = sampling::random_class(g, w);
            const auto y = sampling::random_class(g, w);
            CHECK(gamma(w, add(w, x, y)) == cuntz::add(gamma(w, x), gamma(w, y)));
            const cuntz_class c = soft{sampling::random_positive_vector(g, w.trace_count())};
            CHECK(gamma_via(w, x, c) == gamma(w, x));
        }
    }
}

TEST_CASE("K0* cones and the order-unit test", "[wmodel]")
{
    const k0_star k{3};
    CHECK(k.cone_plus(rat_vec(3)));
    CHECK(!k.cone_plus({rational(1), rational(0), rational(2)}));
    CHECK(k.cone_plusplus({rational(1), rational(0), rational(2)}));
    CHECK(is_order_unit(k, {rational(1, 4096), rational(1), rational(2)}));
    CHECK(!is_order_unit(k, {rational(0), rational(1), rational(2)}));
    CHECK_THROWS_AS(is_order_unit(k, {rational(-1), rational(1), rational(2)}), contract_error);

    const auto grid = k0star_grid(2, 1, 4);
    CHECK(grid.size() == 81);
    CHECK(!k0star_weak_perforation(k0_star{2}, grid, 20));
    CHECK(!k0star_archimedean_witness(k0_star{2}, grid, 20));
}

TEST_CASE("submonoid presentation has gamma as its states", "[wmodel]")
{
    const auto w = two_traces();
    const auto p = submonoid_presentation(w, {proj{{1, 1}}, s({1, 2})});
    CHECK(p.states == rat_matrix{{rational(1), rational(1)}, {rational(1), rational(2)}});
    CHECK(p.leq({1, 0}, {0, 1}) == compare(w, proj{{1, 1}}, s({1, 2})));
    const auto g = ordmon::grothendieck_group(p);
    CHECK(g.free_rank == 2);
}
