#ifndef CUNTZ_SAMPLING_HPP
#define CUNTZ_SAMPLING_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "cuntz/elliott.hpp"
#include "cuntz/goodearl.hpp"
#include "cuntz/linalg.hpp"
#include "cuntz/rational.hpp"
#include "cuntz/wmodel.hpp"

/// Seeded random instances for property suites.
namespace cuntz::sampling {

using rng = std::mt19937_64;

inline std::int64_t uniform(rng& g, std::int64_t lo, std::int64_t hi)
{
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(g);
}

inline bool coin(rng& g, int one_in) { return uniform(g, 1, one_in) == 1; }

/// p/q with 1 <= q <= max_den and lo <= p/q <= hi.
inline rational random_rational(rng& g, const rational& lo, const rational& hi, std::int64_t max_den)
{
    const std::int64_t q = uniform(g, 1, max_den);
    const std::int64_t p_lo = (lo * rational(q)).ceil();
    const std::int64_t p_hi = (hi * rational(q)).floor();
    if (p_lo > p_hi) return lo;
    return {uniform(g, p_lo, p_hi), q};
}

inline rat_vec random_positive_vector(rng& g, std::size_t n, std::int64_t max_num = 8, std::int64_t max_den = 8)
{
    rat_vec f;
    for (std::size_t i = 0; i < n; ++i)
        f.push_back(random_rational(g, rational(1, max_den), rational(max_num), max_den));
    return f;
}

/// Rank-k K0 with n states: a positive unit and random rows normalized to
/// take the value 1 on it.
inline wmodel::k0_model random_k0(rng& g, std::size_t k, std::size_t n)
{
    wmodel::k0_model m;
    m.unit.resize(k);
    for (auto& u : m.unit) u = uniform(g, 1, 3);
    m.states = rat_matrix(n, k);
    for (std::size_t r = 0; r < n; ++r) {
        int_vec row(k);
        std::int64_t dot = 0;
        do {
            dot = 0;
            for (std::size_t j = 0; j < k; ++j) {
                row[j] = uniform(g, k == 1 ? 1 : -1, 4);
                dot += row[j] * m.unit[j];
            }
        } while (dot <= 0);
        for (std::size_t j = 0; j < k; ++j) m.states(r, j) = rational(row[j], dot);
    }
    return m;
}

inline wmodel::w_model random_model(rng& g, std::size_t max_traces, std::size_t max_rank)
{
    const auto n = static_cast<std::size_t>(uniform(g, 1, static_cast<std::int64_t>(max_traces)));
    const auto k = static_cast<std::size_t>(uniform(g, 1, static_cast<std::int64_t>(max_rank)));
    wmodel::w_model w;
    w.k0 = random_k0(g, k, n);
    w.traces = wmodel::trace_simplex::numbered(n);
    return w;
}

/// A K0 cone element near a small multiple of the unit; zero now and then.
inline int_vec random_projection(rng& g, const wmodel::k0_model& k0)
{
    if (coin(g, 8)) return int_vec(k0.rank(), 0);
    for (int attempt = 0; attempt < 32; ++attempt) {
        int_vec v = scaled(k0.unit, uniform(g, 0, 3));
        for (auto& x : v) x += uniform(g, -2, 2);
        if (!is_zero(v) && k0.in_cone(v)) return v;
    }
    return k0.unit;
}

/// Soft classes are biased toward values shared with projections, so that
/// the boundary cases of the order get exercised.
inline wmodel::cuntz_class random_class(rng& g, const wmodel::w_model& w)
{
    if (coin(g, 2)) return wmodel::proj{random_projection(g, w.k0)};
    if (coin(g, 3)) {
        int_vec v = random_projection(g, w.k0);
        if (is_zero(v)) v = w.k0.unit;
        rat_vec f = w.k0.pair(v);
        for (auto& x : f)
            if (coin(g, 3)) x = std::max(x + random_rational(g, rational(-1), rational(1), 4), rational(1, 8));
        return wmodel::soft{f};
    }
    return wmodel::soft{random_positive_vector(g, w.trace_count(), 6, 4)};
}

/// A random pair with x <= y, built as y = x + z for a random class z.
inline std::pair<wmodel::cuntz_class, wmodel::cuntz_class> random_ordered_pair(rng& g, const wmodel::w_model& w)
{
    const auto x = random_class(g, w);
    if (coin(g, 4)) {
        // y soft with some coordinate equal to that of x: complement may fail
        rat_vec fx = wmodel::gamma(w, x);
        if (std::holds_alternative<wmodel::proj>(x) && is_zero(std::get<wmodel::proj>(x).v))
            return {x, random_class(g, w)};
        rat_vec fy = fx;
        for (auto& v : fy)
            if (coin(g, 2)) v += random_rational(g, rational(0), rational(2), 4);
        wmodel::cuntz_class y = wmodel::soft{fy};
        if (wmodel::compare(w, x, y)) return {x, y};
    }
    const auto z = random_class(g, w);
    return {x, wmodel::add(w, x, z)};
}

/// Column-stochastic n x m matrix with small denominators.
inline rat_matrix random_stochastic(rng& g, std::size_t n, std::size_t m)
{
    rat_matrix s(n, m);
    for (std::size_t j = 0; j < m; ++j) {
        std::int64_t total = 0;
        std::vector<std::int64_t> w(n);
        do {
            total = 0;
            for (auto& x : w) total += (x = uniform(g, 0, 3));
        } while (total == 0);
        for (std::size_t i = 0; i < n; ++i) s(i, j) = rational(w[i], total);
    }
    return s;
}

/// Unimodular k x k matrix together with its inverse.
inline std::pair<int_matrix, int_matrix> random_unimodular(rng& g, std::size_t k)
{
    int_matrix a = int_matrix::identity(k);
    int_matrix inv = int_matrix::identity(k);
    if (k < 2) return {a, inv};
    for (int step = 0; step < 3; ++step) {
        const auto i = static_cast<std::size_t>(uniform(g, 0, static_cast<std::int64_t>(k) - 1));
        auto j = static_cast<std::size_t>(uniform(g, 0, static_cast<std::int64_t>(k) - 2));
        if (j >= i) ++j;
        const std::int64_t c = coin(g, 2) ? 1 : -1;
        int_matrix e = int_matrix::identity(k);
        int_matrix e_inv = int_matrix::identity(k);
        e(i, j) = c;
        e_inv(i, j) = -c;
        a = e * a;
        inv = inv * e_inv;
    }
    return {a, inv};
}

inline elliott::abelian_group random_k1(rng& g)
{
    elliott::abelian_group k1;
    k1.free_rank = static_cast<std::size_t>(uniform(g, 0, 2));
    if (coin(g, 2)) k1.torsion.push_back(uniform(g, 2, 4));
    return k1;
}

inline elliott::invariant random_invariant(rng& g, std::size_t max_traces, std::size_t max_rank)
{
    const auto w = random_model(g, max_traces, max_rank);
    return {w.k0, random_k1(g), w.traces};
}

/// A target invariant B and a valid morphism A -> B: θ0 unimodular, γ random,
/// R_B = γᵀ R_A θ0⁻¹ and u_B = θ0 u_A.
inline std::pair<elliott::invariant, elliott::morphism> random_morphism_from(rng& g, const elliott::invariant& a,
                                                                              std::size_t max_traces)
{
    const auto [t0, t0_inv] = random_unimodular(g, a.k0.rank());
    const auto n_b = static_cast<std::size_t>(uniform(g, 1, static_cast<std::int64_t>(max_traces)));
    elliott::invariant b;
    b.k0.unit = t0 * a.k0.unit;
    elliott::morphism m;
    m.theta0 = t0;
    m.gamma = random_stochastic(g, a.traces.size(), n_b);
    b.k0.states = m.gamma.transpose() * a.k0.states * to_rational(t0_inv);
    b.traces = wmodel::trace_simplex::numbered(n_b);
    b.k1 = a.k1;
    m.theta1 = int_matrix::identity(a.k1.size());
    for (std::size_t i = 0; i < a.k1.free_rank; ++i)
        for (std::size_t j = 0; j < a.k1.free_rank; ++j) m.theta1(i, j) = uniform(g, -1, 1);
    for (std::size_t i = a.k1.free_rank; i < a.k1.size(); ++i) m.theta1(i, i) = uniform(g, 0, a.k1.order(i) - 1);
    return {b, m};
}

/// A step target with sup <= 1 on a random rational partition.
inline goodearl::step_fn random_step_target(rng& g, int pieces, std::int64_t max_den)
{
    std::vector<rational> cuts;
    while (static_cast<int>(cuts.size()) < pieces - 1) {
        const rational x = random_rational(g, rational(1, max_den), rational(max_den - 1, max_den), max_den);
        if (x.sign() > 0 && x < rational(1) && std::find(cuts.begin(), cuts.end(), x) == cuts.end()) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    goodearl::step_fn f;
    f.xs.push_back(rational(0));
    f.xs.insert(f.xs.end(), cuts.begin(), cuts.end());
    f.xs.push_back(rational(1));
    for (std::size_t k = 0; k + 1 < f.xs.size(); ++k)
        f.interval_values.push_back(random_rational(g, rational(0), rational(1), max_den));
    for (std::size_t k = 0; k < f.xs.size(); ++k) {
        rational cap = k == 0 ? f.interval_values[0] : f.interval_values[k - 1];
        if (k + 1 < f.xs.size()) cap = std::min(cap, f.interval_values[k]);
        f.point_values.push_back(random_rational(g, rational(0), cap, max_den));
    }
    return f;
}

/// A PL entry on a few random breakpoints, vanishing somewhere with
/// probability 1/2.
inline goodearl::pl_fn random_entry(rng& g, int breakpoints, std::int64_t max_den)
{
    goodearl::pl_fn e;
    e.xs.push_back(rational(0));
    while (static_cast<int>(e.xs.size()) < breakpoints - 1) {
        const rational x = random_rational(g, rational(1, max_den), rational(max_den - 1, max_den), max_den);
        if (std::find(e.xs.begin(), e.xs.end(), x) == e.xs.end()) e.xs.push_back(x);
    }
    e.xs.push_back(rational(1));
    std::sort(e.xs.begin(), e.xs.end());
    for (std::size_t i = 0; i < e.xs.size(); ++i)
        e.ys.push_back(coin(g, 3) ? rational(0) : random_rational(g, rational(0), rational(1), max_den));
    return e;
}

inline goodearl::measure_spec random_atom_free_measure(rng& g, int pieces)
{
    goodearl::measure_spec m;
    m.partition = {rational(0)};
    for (int k = 1; k < pieces; ++k) m.partition.emplace_back(k, pieces);
    m.partition.push_back(rational(1));
    m.density.clear();
    std::vector<std::int64_t> w(static_cast<std::size_t>(pieces));
    std::int64_t total = 0;
    for (auto& x : w) total += (x = uniform(g, 1, 4));
    for (auto x : w) m.density.emplace_back(x * pieces, total);
    return m;
}

} // namespace cuntz::sampling

#endif
