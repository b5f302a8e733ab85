#ifndef CUNTZ_TOOLS_SUITES_HPP
#define CUNTZ_TOOLS_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cuntz/ordmon.hpp"
#include "cuntz/sampling.hpp"
#include "cuntz/testing/rule_oracle.hpp"
#include "cuntz/wmodel.hpp"

namespace cuntz::suites {

struct outcome {
    explicit outcome(std::string name = {}) : suite(std::move(name)) {}

    std::string suite;
    bool pass = true;
    std::size_t checked = 0;
    std::size_t inconclusive = 0;
    std::vector<std::string> counterexamples;

    void fail(std::string what)
    {
        pass = false;
        if (counterexamples.size() < 10) counterexamples.push_back(std::move(what));
    }
};

inline const std::vector<std::string>& names()
{
    static const std::vector<std::string> n{"order-axioms", "strict-cone", "weak-unperforation", "archimedean",
                                            "oracle-agreement"};
    return n;
}

inline std::string show(const rat_vec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
}

inline std::string show(const int_vec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

inline std::vector<wmodel::cuntz_class> sample_classes(sampling::rng& g, const wmodel::w_model& w, std::size_t count)
{
    std::vector<wmodel::cuntz_class> xs;
    if (w.kind == wmodel::model_kind::purely_infinite) {
        xs = {wmodel::proj{{0}}, wmodel::proj{{1}}};
        return xs;
    }
    xs.push_back(wmodel::proj{int_vec(w.k0.rank(), 0)});
    xs.push_back(w.unit_class());
    while (xs.size() < count) xs.push_back(sampling::random_class(g, w));
    return xs;
}

/// Preorder, antisymmetry, positivity, and compatibility with addition.
inline outcome order_axioms(const wmodel::w_model& w, std::uint64_t seed, std::size_t count = 60)
{
    using wmodel::add;
    using wmodel::compare;
    using wmodel::describe;
    outcome out{"order-axioms"};
    sampling::rng g(seed);
    const auto xs = sample_classes(g, w, count);
    const auto& zero = xs.front();
    for (const auto& x : xs) {
        ++out.checked;
        if (!compare(w, x, x)) out.fail("not reflexive at " + describe(x));
        if (!compare(w, zero, x)) out.fail("0 is not below " + describe(x));
        for (const auto& y : xs) {
            const bool xy = compare(w, x, y);
            if (xy && compare(w, y, x) && !(x == y)) out.fail("not antisymmetric: " + describe(x) + ", " + describe(y));
            if (!(add(w, x, y) == add(w, y, x))) out.fail("addition not commutative: " + describe(x) + ", " + describe(y));
            for (const auto& z : xs) {
                if (xy && compare(w, y, z) && !compare(w, x, z))
                    out.fail("not transitive: " + describe(x) + ", " + describe(y) + ", " + describe(z));
                if (xy && !compare(w, add(w, x, z), add(w, y, z)))
                    out.fail("not translation invariant: " + describe(x) + " <= " + describe(y) + " plus " +
                             describe(z));
                if (!(add(w, add(w, x, y), z) == add(w, x, add(w, y, z))))
                    out.fail("addition not associative at " + describe(x) + ", " + describe(y) + ", " + describe(z));
            }
        }
    }
    return out;
}

/// Strictness of the ++ cone of the Grothendieck group of a finitely
/// generated submonoid containing the unit and a soft class.
inline outcome strict_cone(const wmodel::w_model& w, std::uint64_t seed, int bound, std::size_t samples = 500)
{
    outcome out{"strict-cone"};
    wmodel::require_finite(w, "strict-cone");
    sampling::rng g(seed);
    std::vector<wmodel::cuntz_class> gens{w.unit_class(),
                                          wmodel::soft{sampling::random_positive_vector(g, w.trace_count(), 3, 2)}};
    while (gens.size() < 4) {
        auto c = sampling::random_class(g, w);
        if (auto* p = std::get_if<wmodel::proj>(&c); p && is_zero(p->v)) continue;
        gens.push_back(c);
    }
    const auto p = wmodel::submonoid_presentation(w, gens);
    std::vector<ordmon::difference> ds;
    for (std::size_t i = 0; i < samples; ++i) {
        int_vec a(gens.size()), b(gens.size());
        for (auto& c : a) c = sampling::uniform(g, 0, 2);
        for (auto& c : b) c = sampling::uniform(g, 0, 2);
        ds.push_back({a, b});
    }
    const auto rep = ordmon::check_strict_cone(p, ds, bound);
    out.checked = rep.checked;
    out.inconclusive = rep.inconclusive;
    for (const auto& d : rep.violations)
        out.fail("d and -d both in the ++ cone: d = " + show(d.plus) + " - " + show(d.minus));
    return out;
}

inline std::vector<rat_vec> default_k0star_grid(std::size_t n)
{
    return wmodel::k0star_grid(n, 1, n <= 3 ? 4 : 2);
}

inline outcome weak_unperforation(const wmodel::w_model& w, int n_max = 20)
{
    outcome out{"weak-unperforation"};
    const auto k = wmodel::make_k0_star(w);
    const auto grid = default_k0star_grid(k.n);
    out.checked = grid.size();
    if (auto hit = wmodel::k0star_weak_perforation(k, grid, n_max))
        out.fail("x = " + show(hit->x) + ", n = " + std::to_string(hit->n));
    return out;
}

inline outcome weak_unperforation(const ordmon::po_group& grp, int bound, int n_max = 20)
{
    outcome out{"weak-unperforation"};
    out.checked = ordmon::box_elements(grp.rank, bound).size();
    const auto r = ordmon::is_weakly_unperforated(grp, n_max, bound);
    if (!r.holds) out.fail("x = " + show(r.x) + ", n = " + std::to_string(r.n));
    return out;
}

inline outcome archimedean(const wmodel::w_model& w, int n_max = 20)
{
    outcome out{"archimedean"};
    const auto k = wmodel::make_k0_star(w);
    const auto grid = default_k0star_grid(k.n);
    out.checked = grid.size();
    if (auto hit = wmodel::k0star_archimedean_witness(k, grid, n_max))
        out.fail("x = " + show(hit->x) + ", y = " + show(hit->y));
    return out;
}

inline outcome archimedean(const ordmon::po_group& grp, int bound, int n_max = 20)
{
    outcome out{"archimedean"};
    out.checked = ordmon::box_elements(grp.rank, bound).size();
    if (auto hit = ordmon::archimedean_witness(grp, n_max, bound))
        out.fail("x = " + show(hit->x) + ", y = " + show(hit->y));
    return out;
}

/// wmodel::compare against the rule-by-rule oracle on random pairs.
inline outcome oracle_agreement(const wmodel::w_model& w, std::uint64_t seed, std::size_t pairs = 10000)
{
    outcome out{"oracle-agreement"};
    sampling::rng g(seed);
    const auto pool = sample_classes(g, w, 200);
    for (std::size_t i = 0; i < pairs; ++i) {
        const auto& x = pool[static_cast<std::size_t>(sampling::uniform(g, 0, static_cast<std::int64_t>(pool.size()) - 1))];
        const auto& y = pool[static_cast<std::size_t>(sampling::uniform(g, 0, static_cast<std::int64_t>(pool.size()) - 1))];
        ++out.checked;
        if (wmodel::compare(w, x, y) != testing::oracle_leq(w, x, y))
            out.fail("disagreement on " + wmodel::describe(x) + " <= " + wmodel::describe(y));
    }
    return out;
}

} // namespace cuntz::suites

#endif
