// Runs the twelve acceptance checks and prints one line per check.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cuntz/approx.hpp"
#include "cuntz/elliott.hpp"
#include "cuntz/goodearl.hpp"
#include "cuntz/ordmon.hpp"
#include "cuntz/sampling.hpp"
#include "cuntz/testing/rule_oracle.hpp"
#include "cuntz/wmodel.hpp"
#include "suites.hpp"

using namespace cuntz;
using sampling::rng;

namespace {

// Pinned parameters.
constexpr std::uint64_t seed = 20240917;
constexpr double w_of_z_seconds = 1.0;
constexpr double dyadic_seconds = 5.0;
constexpr double goodearl_seconds = 30.0;
constexpr int strict_cone_bound = 6;
constexpr std::size_t strict_cone_samples = 500;
constexpr std::size_t strict_cone_models = 10;
constexpr std::size_t oracle_models = 20;
constexpr std::size_t oracle_pairs = 10000;
constexpr std::size_t gamma_elements = 200;
constexpr std::size_t gamma_models = 10;
constexpr int multiples = 20;
constexpr std::size_t order_unit_samples = 1000;
constexpr int order_unit_max_k = 12;
constexpr std::size_t functor_pairs = 100;
constexpr std::size_t dyadic_targets = 100;
constexpr int dyadic_last_stage = 20;
constexpr int goodearl_stages = 8;
constexpr std::int64_t goodearl_grid = 1000;
constexpr std::size_t lemma_cases = 100;
constexpr std::size_t complement_pairs = 1000;

struct verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (pass) detail = why;
        pass = false;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. W(Z): projections are integers, soft classes positive reals; a projection
// sits below a soft value only strictly.
verdict w_of_z_table()
{
    verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    const auto w = wmodel::w_of_z();
    struct elem {
        rational value;
        bool is_proj;
        wmodel::cuntz_class cls;
    };
    std::vector<elem> grid;
    for (std::int64_t k = 0; k <= 8; ++k) grid.push_back({rational(k), true, wmodel::proj{{k}}});
    for (std::int64_t k = 1; k <= 128; ++k) grid.push_back({rational(k, 16), false, wmodel::soft{{rational(k, 16)}}});
    std::size_t n = 0;
    for (const auto& x : grid)
        for (const auto& y : grid) {
            const bool want = (x.is_proj && !y.is_proj) ? x.value < y.value : x.value <= y.value;
            ++n;
            if (wmodel::compare(w, x.cls, y.cls) != want)
                v.fail("disagreement at " + wmodel::describe(x.cls) + " <= " + wmodel::describe(y.cls));
        }
    const double s = seconds_since(t0);
    if (s >= w_of_z_seconds) v.fail("took " + std::to_string(s) + " s");
    if (v.pass) v.detail = std::to_string(n) + " pairs, " + std::to_string(s) + " s";
    return v;
}

// 2.
verdict oracle_agreement()
{
    verdict v;
    rng g(seed);
    std::size_t total = 0;
    for (std::size_t m = 0; m < oracle_models; ++m) {
        const auto w = sampling::random_model(g, 4, 4);
        const auto out = suites::oracle_agreement(w, g(), oracle_pairs);
        total += out.checked;
        if (!out.pass) v.fail("model " + std::to_string(m) + ": " + out.counterexamples.front());
    }
    if (v.pass) v.detail = std::to_string(total) + " pairs";
    return v;
}

// 3.
verdict strict_cone()
{
    verdict v;
    rng g(seed + 3);
    std::size_t checked = 0;
    std::size_t inconclusive = 0;
    for (std::size_t m = 0; m < strict_cone_models; ++m) {
        const auto w = sampling::random_model(g, 4, 4);
        const auto out = suites::strict_cone(w, g(), strict_cone_bound, strict_cone_samples);
        checked += out.checked;
        inconclusive += out.inconclusive;
        if (!out.pass) v.fail("model " + std::to_string(m) + ": " + out.counterexamples.front());
    }
    if (v.pass)
        v.detail = std::to_string(checked) + " differences, 0 violations, " + std::to_string(inconclusive) +
                   " inconclusive";
    return v;
}

// 4.
verdict gamma_well_defined()
{
    verdict v;
    rng g(seed + 4);
    std::size_t n = 0;
    for (std::size_t m = 0; m < gamma_models; ++m) {
        const auto w = sampling::random_model(g, 4, 4);
        const wmodel::cuntz_class c = wmodel::soft{sampling::random_positive_vector(g, w.trace_count())};
        const wmodel::cuntz_class c2 = wmodel::soft{sampling::random_positive_vector(g, w.trace_count())};
        for (std::size_t i = 0; i < gamma_elements; ++i) {
            const auto x = sampling::random_class(g, w);
            const auto a = wmodel::gamma_via(w, x, c);
            const auto b = wmodel::gamma_via(w, x, c2);
            ++n;
            if (a != b || a != wmodel::gamma(w, x)) v.fail("gamma depends on the auxiliary class at " + wmodel::describe(x));
        }
    }
    if (v.pass) v.detail = std::to_string(n) + " elements";
    return v;
}

// 5.
verdict weak_unperforation()
{
    verdict v;
    for (std::size_t n = 1; n <= 5; ++n) {
        wmodel::w_model w;
        w.k0 = wmodel::k0_model::simplicial(int_vec(n, 1));
        w.traces = wmodel::trace_simplex::numbered(n);
        const auto out = suites::weak_unperforation(w, multiples);
        if (!out.pass) v.fail("n = " + std::to_string(n) + ": " + out.counterexamples.front());
    }
    ordmon::po_group perforated{1, ordmon::generated_cone{{{2}, {3}}}, {2}};
    perforated.validate();
    const auto r = ordmon::is_weakly_unperforated(perforated, multiples, 4);
    if (r.holds || r.x != int_vec{1} || r.n != 2) v.fail("perforated control not flagged with x = 1, n = 2");
    if (v.pass) v.detail = "n = 1..5 clean; control witness x = 1, n = 2";
    return v;
}

// 6.
verdict archimedean()
{
    verdict v;
    for (std::size_t n = 1; n <= 5; ++n) {
        wmodel::w_model w;
        w.k0 = wmodel::k0_model::simplicial(int_vec(n, 1));
        w.traces = wmodel::trace_simplex::numbered(n);
        const auto out = suites::archimedean(w, multiples);
        if (!out.pass) v.fail("n = " + std::to_string(n) + ": " + out.counterexamples.front());
    }
    ordmon::po_group lex{2, ordmon::lexicographic_cone{}, {1, 0}};
    lex.validate();
    const auto hit = ordmon::archimedean_witness(lex, multiples, 2);
    if (!hit) v.fail("lexicographic control yields no witness");
    if (v.pass) v.detail = "n = 1..5 clean; control witness x = " + suites::show(hit->x) + ", y = " + suites::show(hit->y);
    return v;
}

// 7.
verdict order_unit()
{
    verdict v;
    rng g(seed + 7);
    for (std::size_t i = 0; i < order_unit_samples; ++i) {
        const auto n = static_cast<std::size_t>(sampling::uniform(g, 1, 5));
        const wmodel::k0_star k{n};
        rat_vec d;
        for (std::size_t j = 0; j < n; ++j)
            d.push_back(sampling::coin(g, 4) ? rational(0)
                                             : sampling::random_rational(g, rational(1, 64), rational(4), 64));
        bool brute = false;
        for (int e = 0; e <= order_unit_max_k && !brute; ++e) {
            const rational eps = pow2_inverse(e);
            bool all = true;
            for (const auto& x : d) all = all && x >= eps;
            brute = all;
        }
        if (wmodel::is_order_unit(k, d) != brute) v.fail("disagreement at " + suites::show(d));
    }
    if (v.pass) v.detail = std::to_string(order_unit_samples) + " vectors";
    return v;
}

// 8.
verdict functor_laws()
{
    verdict v;
    rng g(seed + 8);
    for (std::size_t i = 0; i < functor_pairs; ++i) {
        const auto a = sampling::random_invariant(g, 4, 4);
        const auto [b, t] = sampling::random_morphism_from(g, a, 4);
        const auto [c, t2] = sampling::random_morphism_from(g, b, 4);
        const auto ga = elliott::functor_G_obj(a);
        if (!(elliott::functor_G_mor(elliott::identity(a), a, a) == elliott::identity(ga))) v.fail("G(id) != id");
        const auto composite = elliott::compose(t2, t, c.k1);
        const auto lhs = elliott::functor_G_mor(composite, a, c);
        const auto rhs = elliott::compose(elliott::functor_G_mor(t2, b, c), elliott::functor_G_mor(t, a, b));
        if (!(lhs == rhs)) v.fail("G of a composite differs from the composite of G at pair " + std::to_string(i));
        for (int s = 0; s < 5; ++s) {
            const auto x = sampling::random_class(g, ga);
            const auto via = elliott::apply(elliott::functor_G_mor(t2, b, c), elliott::apply(elliott::functor_G_mor(t, a, b), x));
            if (!(elliott::apply(lhs, x) == via)) v.fail("composite acts differently on " + wmodel::describe(x));
        }
        if (elliott::recover_state_matrix(ga) != a.k0.states) v.fail("state matrix not recovered at pair " + std::to_string(i));
    }
    if (v.pass) v.detail = std::to_string(functor_pairs) + " composable pairs";
    return v;
}

// 9. Every certificate is recomputed here from the stage vectors.
verdict dyadic_realization()
{
    verdict v;
    rng g(seed + 9);
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t t = 0; t < dyadic_targets; ++t) {
        const auto n = static_cast<std::size_t>(sampling::uniform(g, 1, 5));
        const rat_vec f = sampling::random_positive_vector(g, n, 8, 16);
        const auto rep = approx::summable_decomposition(f, dyadic_last_stage);
        rational norm_sum;
        const rat_vec* prev = nullptr;
        for (const auto& s : rep.stages) {
            rational gap;
            rational h_norm;
            for (std::size_t j = 0; j < n; ++j) {
                if (!(s.g[j] < f[j]) || s.g[j].sign() <= 0) v.fail("g_i not strictly between 0 and f");
                if (prev && !((*prev)[j] < s.g[j])) v.fail("stages not strictly increasing");
                gap = std::max(gap, f[j] - s.g[j]);
                h_norm = std::max(h_norm, prev ? s.g[j] - (*prev)[j] : s.g[j]);
            }
            const rational bound = s.index <= 1 ? rational(std::int64_t{1} << (1 - s.index)) : pow2_inverse(s.index - 1);
            if (gap > bound) v.fail("gap above 2^(1-i) at stage " + std::to_string(s.index));
            norm_sum += h_norm;
            prev = &s.g;
        }
        if (rep.stages.back().index != dyadic_last_stage) v.fail("stages stop early");
        if (norm_sum > sup_norm(f) + rational(2)) v.fail("increments not summable within ||f|| + 2");
        if (!rep.certified()) v.fail("library certificate disagrees");
    }
    const double s = seconds_since(t0);
    if (s >= dyadic_seconds) v.fail("took " + std::to_string(s) + " s");
    if (v.pass) v.detail = std::to_string(dyadic_targets) + " targets, " + std::to_string(s) + " s";
    return v;
}

std::vector<goodearl::step_fn> goodearl_targets()
{
    using goodearl::step_fn;
    std::vector<step_fn> out;
    out.push_back(step_fn::constant(rational(1)));
    out.push_back(step_fn::constant(rational(3, 5)));
    out.push_back({{rational(0), rational(1, 2), rational(1)},
                   {rational(1, 3), rational(1)},
                   {rational(1, 3), rational(1, 3), rational(1)}});
    out.push_back({{rational(0), rational(1, 3), rational(2, 3), rational(1)},
                   {rational(1), rational(0), rational(7, 10)},
                   {rational(1), rational(0), rational(0), rational(1, 2)}});
    rng g(seed + 10);
    while (out.size() < 10) out.push_back(sampling::random_step_target(g, static_cast<int>(out.size()) % 4 + 2, 10));
    return out;
}

// 10. Dimension values are recounted from the entries, and f_i is recomputed
// from f directly.
verdict goodearl_realization()
{
    verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    const auto sched = goodearl::schedule::dyadic(goodearl_stages);
    std::size_t rows = 0;
    for (const auto& f : goodearl_targets()) {
        const auto rep = goodearl::realize(f, sched, goodearl_stages, goodearl_grid);
        for (const auto& st : rep.stages) {
            const std::int64_t n = st.size;
            if (n != (std::int64_t{1} << st.index)) v.fail("schedule is not 2^i");
            std::size_t grid_hits = 0;
            for (const auto& row : st.samples) {
                ++rows;
                std::int64_t count = 0;
                for (const auto& e : st.element.entries) count += e.eval(row.x).sign() > 0 ? 1 : 0;
                const rational d(count, n);
                const std::int64_t k = (f.eval(row.x) * rational(n)).ceil();
                const rational fi(k > 0 ? k - 1 : 0, n);
                if (d != fi) v.fail("d != f_i at x = " + row.x.str() + ", stage " + std::to_string(st.index));
                const rational gap = f.eval(row.x) - fi;
                if (gap.sign() < 0 || gap > rational(1, n)) v.fail("f - f_i outside [0, 1/n_i]");
                if ((row.x * rational(goodearl_grid - 1)).is_integer()) ++grid_hits;
            }
            if (grid_hits < static_cast<std::size_t>(goodearl_grid)) v.fail("fewer than 1000 grid points sampled");
            if (st.increment > pow2_inverse(st.index)) v.fail("increment above 2^-i at stage " + std::to_string(st.index));
        }
        if (!rep.certified()) v.fail("library certificate disagrees");
    }
    const double s = seconds_since(t0);
    if (s >= goodearl_seconds) v.fail("took " + std::to_string(s) + " s");
    if (v.pass) v.detail = "10 targets, " + std::to_string(rows) + " sample rows, " + std::to_string(s) + " s";
    return v;
}

// 11.
verdict comparison_lemma()
{
    verdict v;
    rng g(seed + 11);
    std::size_t done = 0;
    while (done < lemma_cases) {
        goodearl::diagonal_element a;
        const auto size = sampling::uniform(g, 1, 4);
        for (std::int64_t j = 0; j < size; ++j) a.entries.push_back(sampling::random_entry(g, 5, 12));
        rational top;
        for (const auto& e : a.entries) top = std::max(top, e.max_value());
        if (top.sign() == 0) continue;
        std::vector<rational> ts;
        for (int attempt = 0; attempt < 100 && ts.size() < 3; ++attempt) {
            const rational t = sampling::random_rational(g, rational(0), top, 24);
            if (goodearl::in_spectrum(a, t) && std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
        }
        if (ts.size() < 3) continue;
        std::sort(ts.begin(), ts.end());
        const auto mu = sampling::random_atom_free_measure(g, static_cast<int>(sampling::uniform(g, 1, 4)));
        ++done;
        if (!goodearl::comparison_lemma_check(a, ts[0], ts[1], ts[2], mu))
            v.fail("no strict drop for eps = " + ts[0].str() + ", delta = " + ts[2].str());
    }
    if (v.pass) v.detail = std::to_string(done) + " cases";
    return v;
}

// 12.
verdict complementation()
{
    verdict v;
    rng g(seed + 12);
    wmodel::w_model w;
    std::size_t none = 0;
    for (std::size_t i = 0; i < complement_pairs; ++i) {
        if (i % 50 == 0) w = sampling::random_model(g, 4, 4);
        const auto [x, y] = sampling::random_ordered_pair(g, w);
        const auto z = wmodel::complement(w, x, y);
        if (z) {
            if (!(wmodel::add(w, x, *z) == y)) v.fail("x + z != y for " + wmodel::describe(x) + ", " + wmodel::describe(y));
            continue;
        }
        ++none;
        const rat_vec diff = sub(wmodel::gamma(w, y), wmodel::gamma(w, x));
        const bool has_zero = std::any_of(diff.begin(), diff.end(), [](const rational& r) { return r.is_zero(); });
        if (wmodel::is_projection_class(x) || !has_zero || is_zero(diff))
            v.fail("no complement without cause for " + wmodel::describe(x) + ", " + wmodel::describe(y));
    }
    if (v.pass) v.detail = std::to_string(complement_pairs) + " pairs, " + std::to_string(none) + " without complement";
    return v;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<verdict()>>> checks{
        {"W(Z) order table", w_of_z_table},
        {"order oracle agreement", oracle_agreement},
        {"Grothendieck ++ cone is strict", strict_cone},
        {"gamma independent of auxiliary soft class", gamma_well_defined},
        {"K0* weak unperforation", weak_unperforation},
        {"K0* Archimedean", archimedean},
        {"order-unit criterion", order_unit},
        {"functor laws and state recovery", functor_laws},
        {"dyadic summable realization", dyadic_realization},
        {"Goodearl step realization", goodearl_realization},
        {"comparison lemma", comparison_lemma},
        {"complementation", complementation},
    };
    int failed = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        verdict v;
        try {
            v = checks[i].second();
        } catch (const std::exception& e) {
            v.fail(std::string("threw: ") + e.what());
        }
        std::printf("%s %2zu  %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, checks[i].first, v.detail.c_str());
        failed += v.pass ? 0 : 1;
    }
    std::printf("%d of %zu passed\n", static_cast<int>(checks.size()) - failed, checks.size());
    return failed == 0 ? 0 : 1;
}
