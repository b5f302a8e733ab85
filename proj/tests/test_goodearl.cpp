#include <catch2/catch_amalgamated.hpp>

#include "cuntz/goodearl.hpp"
#include "cuntz/sampling.hpp"

using namespace cuntz;
using namespace cuntz::goodearl;

namespace {

pl_fn tent() { return {{rational(0), rational(1, 2), rational(1)}, {rational(0), rational(1), rational(0)}}; }

rational r(std::int64_t p, std::int64_t q = 1) { return {p, q}; }

} // namespace

TEST_CASE("piecewise-linear evaluation, cut and max", "[goodearl]")
{
    const auto t = tent();
    CHECK(t.eval(r(1, 4)) == r(1, 2));
    CHECK(t.eval(r(1)) == r(0));
    const auto c = cut(t, r(1, 2));
    CHECK(c.eval(r(1, 2)) == r(1, 2));
    CHECK(c.eval(r(1, 4)) == r(0));
    CHECK(c.eval(r(3, 8)) == r(1, 4));
    const auto m = pointwise_max(t, pl_fn::constant(r(1, 2)));
    CHECK(m.eval(r(0)) == r(1, 2));
    CHECK(m.eval(r(1, 2)) == r(1));
    CHECK(m.eval(r(1, 8)) == r(1, 2));
    CHECK(sup_distance(t, pl_fn::constant(r(0))) == r(1));
    CHECK(dominated(c, t));
    CHECK(!dominated(t, c));
}

TEST_CASE("pointwise max and cut agree with evaluation on random entries", "[goodearl][property]")
{
    sampling::rng g(21);
    for (int i = 0; i < 300; ++i) {
        const auto a = sampling::random_entry(g, 5, 10);
        const auto b = sampling::random_entry(g, 4, 7);
        const auto eps = sampling::random_rational(g, r(0), r(1), 9);
        const auto m = pointwise_max(a, b);
        const auto c = cut(a, eps);
        for (std::int64_t k = 0; k <= 210; ++k) {
            const rational x(k, 210);
            CHECK(m.eval(x) == std::max(a.eval(x), b.eval(x)));
            CHECK(c.eval(x) == std::max(a.eval(x) - eps, r(0)));
            CHECK(coz(a).contains(x) == (a.eval(x).sign() > 0));
        }
    }
}

TEST_CASE("cozero sets and bumps", "[goodearl]")
{
    const auto o = coz(tent());
    REQUIRE(o.parts.size() == 1);
    CHECK(o.parts[0] == interval{r(0), r(1), false, false});
    CHECK(coz(pl_fn::constant(r(1))).parts[0] == interval{r(0), r(1), true, true});
    CHECK(coz(pl_fn::constant(r(0))).empty());

    open_set u{{interval{r(0), r(1, 3), true, false}, interval{r(1, 2), r(2, 3), false, false},
                interval{r(3, 4), r(1), false, true}}};
    const auto b = bump(u, r(1, 4));
    CHECK(coz(b) == u);
    CHECK(b.max_value() == r(1, 4));
    CHECK_THROWS_AS(bump(open_set{{interval{r(1, 2), r(1, 4), false, false}}}, r(1)), contract_error);
}

TEST_CASE("measures and the open set of given measure", "[goodearl]")
{
    measure_spec half;
    half.partition = {r(0), r(1, 2), r(1)};
    half.density = {r(2), r(0)};
    half.validate();
    CHECK(open_set_of_measure(half, r(1, 2)).parts[0] == interval{r(0), r(1, 4), false, false});
    CHECK(!half.full_support());

    const auto leb = measure_spec::lebesgue();
    CHECK(measure(leb, coz(tent())) == r(1));
    const auto mixed = measure_spec::mixture(r(1, 2), {{r(1, 2), r(1, 4)}, {r(0), r(1, 4)}});
    mixed.validate();
    CHECK(measure(mixed, coz(tent())) == r(3, 4));
    CHECK_THROWS_AS(open_set_of_measure(mixed, r(1, 2)), contract_error);
    measure_spec bad;
    bad.density = {r(2)};
    CHECK_THROWS_AS(bad.validate(), contract_error);
}

TEST_CASE("dimension functions, spectra and comparison", "[goodearl]")
{
    const diagonal_element a{{tent(), pl_fn::constant(r(0))}};
    const diagonal_element p{{pl_fn::constant(r(1)), pl_fn::constant(r(0))}};
    const auto leb = measure_spec::lebesgue();
    CHECK(dim_fn(a, leb) == r(1, 2));
    CHECK(dim_fn(p, leb) == r(1, 2));
    CHECK(spectrum_classify(a) == spectrum_kind::purely_positive);
    CHECK(spectrum_classify(p) == spectrum_kind::projection_like);
    CHECK(in_spectrum(a, r(1, 3)));
    CHECK(!in_spectrum(p, r(1, 3)));

    // equal dimension: the soft element sits below the projection, not above
    CHECK(compare_elements(a, p, {leb}));
    CHECK(!compare_elements(p, a, {leb}));
    // at a Dirac mass at 0 the tent has dimension 0
    CHECK(!compare_elements(p, a, {measure_spec::dirac(r(0))}));

    const auto w = embedding_model(1, 2);
    CHECK(to_cuntz_class(p, {leb}, 2) == wmodel::cuntz_class{wmodel::proj{{1}}});
    CHECK(to_cuntz_class(a, {leb}, 2) == wmodel::cuntz_class{wmodel::soft{{r(1, 2)}}});
    CHECK(wmodel::compare(w, to_cuntz_class(a, {leb}, 2), to_cuntz_class(p, {leb}, 2)));
}

TEST_CASE("comparison lemma", "[goodearl]")
{
    const diagonal_element a{{tent()}};
    const auto leb = measure_spec::lebesgue();
    CHECK(comparison_lemma_check(a, r(0), r(1, 2), r(3, 4), leb));
    CHECK(dim_fn(cutdown(a, r(3, 4)), leb) == r(1, 4));
    CHECK_THROWS_AS(comparison_lemma_check(a, r(1, 2), r(1, 4), r(3, 4), leb), contract_error);
    const diagonal_element p{{pl_fn::constant(r(1))}};
    CHECK_THROWS_AS(comparison_lemma_check(p, r(0), r(1, 2), r(1), leb), contract_error);
}

TEST_CASE("step functions and their level sets", "[goodearl]")
{
    const step_fn f{{r(0), r(1, 2), r(1)}, {r(1, 3), r(1)}, {r(1, 3), r(1, 3), r(1)}};
    f.validate();
    CHECK(f.eval(r(1, 2)) == r(1, 3));
    CHECK(f.eval(r(3, 4)) == r(1));
    const auto up = superlevel(f, r(1, 2));
    CHECK(up.parts == std::vector<interval>{interval{r(1, 2), r(1), false, true}});
    const auto down = sublevel(f, r(1, 2));
    CHECK(down.contains(r(1, 2)));
    CHECK(!down.contains(r(3, 4)));
    CHECK(step_level(r(1, 3), 4) == r(1, 4));
    CHECK(step_level(r(1, 2), 4) == r(1, 4));
    CHECK(step_level(r(0), 4) == r(0));
    const step_fn not_lsc{{r(0), r(1)}, {r(1, 2)}, {r(1), r(0)}};
    CHECK_THROWS_AS(not_lsc.validate(), contract_error);
}

TEST_CASE("embedding keeps cozero containment", "[goodearl]")
{
    diagonal_element a;
    for (int k = 0; k < 3; ++k) a.entries.push_back(pl_fn::constant(r(k)));
    const auto e = embed(a, 2);
    REQUIRE(e.size() == 6);
    std::vector<rational> firsts;
    for (const auto& x : e.entries) firsts.push_back(x.ys.front());
    CHECK(firsts == std::vector<rational>{r(0), r(1), r(1), r(2), r(2), r(0)});
}

TEST_CASE("realization of step targets is certified", "[goodearl][property]")
{
    const auto rep = realize(step_fn::constant(r(1)), schedule::dyadic(5), 5, 200);
    REQUIRE(rep.stages.size() == 5);
    CHECK(rep.certified());
    CHECK(rep.stages[2].size == 8);
    CHECK(rep.stages[0].increment == r(1, 4));

    sampling::rng g(31);
    for (int t = 0; t < 10; ++t) {
        const auto f = sampling::random_step_target(g, 3, 8);
        const auto rep2 = realize(f, schedule::dyadic(6), 6, 100);
        CHECK(rep2.certified());
        for (const auto& st : rep2.stages)
            for (const auto& row : st.samples) CHECK(row.d == step_level(row.f, st.size));
    }
    CHECK_THROWS_AS(realize(step_fn::constant(r(2)), schedule::dyadic(2), 2), contract_error);
    CHECK_THROWS_AS(realize(step_fn::constant(r(1)), schedule::dyadic(2), 3), contract_error);
}
