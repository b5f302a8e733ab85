#include <catch2/catch_amalgamated.hpp>

#include "cuntz/approx.hpp"
#include "cuntz/sampling.hpp"

using namespace cuntz;
using namespace cuntz::approx;

TEST_CASE("first stage and dyadic values", "[approx]")
{
    CHECK(start_stage({rational(1)}) == 1);
    CHECK(start_stage({rational(2)}) == 0);
    CHECK(start_stage({rational(1, 3), rational(5)}) == 3);
    CHECK(dyadic_below({rational(1)}, 1) == rat_vec{rational(1, 2)});
    CHECK(dyadic_below({rational(1)}, 3) == rat_vec{rational(7, 8)});
    CHECK(dyadic_below({rational(1, 3)}, 3) == rat_vec{rational(1, 8)});
    CHECK_THROWS_AS(dyadic_below({rational(1, 3)}, 2), contract_error);
    CHECK_THROWS_AS(start_stage({rational(0)}), contract_error);
}

TEST_CASE("decomposition of the constant one", "[approx]")
{
    const auto rep = summable_decomposition({rational(1)}, 5);
    REQUIRE(rep.stages.size() == 5);
    CHECK(rep.stages.back().g == rat_vec{rational(31, 32)});
    CHECK(rep.increment_norm_sum == rational(31, 32));
    CHECK(rep.certified());
}

TEST_CASE("decomposition certificates hold on random targets", "[approx][property]")
{
    sampling::rng g(9);
    for (int t = 0; t < 200; ++t) {
        const auto n = static_cast<std::size_t>(sampling::uniform(g, 1, 5));
        const auto f = sampling::random_positive_vector(g, n, 6, 20);
        const auto rep = summable_decomposition(f, 16);
        CHECK(rep.certified());
        // g_i lies on the 2^-i grid, below f by at most two steps
        for (const auto& s : rep.stages)
            for (std::size_t j = 0; j < n; ++j) {
                const rational step = pow2_inverse(s.index);
                CHECK(s.g[j] < f[j]);
                CHECK(f[j] - s.g[j] <= step + step);
                CHECK((s.g[j] / step).is_integer());
            }
    }
}

TEST_CASE("projection realizations increase to the target", "[approx]")
{
    const auto d = dense_subgroup::dyadic(10);
    const auto ps = projection_sup_realization({rational(1, 3), rational(1)}, d, 10);
    REQUIRE(ps.size() == 10);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        CHECK(ps[i][0] < rational(1, 3));
        CHECK(ps[i][1] < rational(1));
        if (i > 0) CHECK(ps[i - 1][0] <= ps[i][0]);
    }
    CHECK(rational(1, 3) - ps.back()[0] <= rational(1, 1024));
    dense_subgroup bad{{2, 3}};
    CHECK_THROWS_AS(bad.validate(), contract_error);
}

TEST_CASE("density heuristic", "[approx]")
{
    const auto z = wmodel::k0_model::simplicial({1});
    const auto rep = condition_d_check(z, dense_subgroup::dyadic(4), rational(1, 10));
    CHECK(rep.verdict == density_verdict::plausible);
    CHECK(rep.largest_gap == rational(1, 16));
    const auto coarse = condition_d_check(z, dense_subgroup::dyadic(2), rational(1, 10));
    CHECK(coarse.verdict == density_verdict::refuted);

    // a generator of trace 1/6, halved
    wmodel::k0_model k;
    k.unit = {6};
    k.states = rat_matrix{{rational(1, 6)}, {rational(1, 6)}};
    CHECK(condition_d_check(k, dense_subgroup{{2}}, rational(1, 20)).largest_gap == rational(1, 12));
}
