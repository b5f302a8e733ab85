#ifndef CUNTZ_APPROX_HPP
#define CUNTZ_APPROX_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "cuntz/error.hpp"
#include "cuntz/linalg.hpp"
#include "cuntz/rational.hpp"
#include "cuntz/wmodel.hpp"

/// Realization of strictly positive functions on a finite trace simplex as
/// suprema of increasing, summable sequences of realizable values.
namespace cuntz::approx {

inline constexpr int max_dyadic_stage = 62;

/// Denominator chain m_1 | m_2 | ... | m_L of a dense value group.
struct dense_subgroup {
    std::vector<std::int64_t> denominators;
    std::int64_t max_denominator = std::int64_t{1} << 40;

    void validate() const
    {
        if (denominators.empty()) throw contract_error("denominator chain is empty");
        for (std::size_t i = 0; i < denominators.size(); ++i) {
            const auto m = denominators[i];
            if (m <= 0) throw contract_error("denominators must be positive");
            if (m > max_denominator) throw contract_error("denominator exceeds the configured maximum");
            if (i > 0 && (m <= denominators[i - 1] || m % denominators[i - 1] != 0))
                throw contract_error("denominators must form a strictly increasing divisibility chain");
        }
    }

    static dense_subgroup dyadic(int length)
    {
        dense_subgroup d;
        for (int i = 1; i <= length; ++i) d.denominators.push_back(std::int64_t{1} << i);
        return d;
    }
};

inline void require_positive_target(const rat_vec& f)
{
    if (f.empty()) throw contract_error("target must have at least one coordinate");
    if (!all_positive(f)) throw contract_error("target must be strictly positive");
}

/// Least stage i with floor(2^i f_j) >= 2 for every coordinate.
inline int start_stage(const rat_vec& f)
{
    require_positive_target(f);
    for (int i = 0; i <= max_dyadic_stage; ++i) {
        const rational scale(std::int64_t{1} << i);
        if (std::all_of(f.begin(), f.end(), [&](const rational& x) { return (x * scale).floor() >= 2; })) return i;
    }
    throw std::overflow_error("cuntz: target too small for 64-bit dyadic stages");
}

/// g_i = (floor(2^i f) - 1) / 2^i, coordinatewise.
inline rat_vec dyadic_below(const rat_vec& f, int stage)
{
    const int i0 = start_stage(f);
    if (stage < i0)
        throw contract_error("stage " + std::to_string(stage) + " is below the first admissible stage " +
                             std::to_string(i0));
    if (stage > max_dyadic_stage) throw std::overflow_error("cuntz: dyadic stage out of range");
    const std::int64_t p = std::int64_t{1} << stage;
    rat_vec g;
    g.reserve(f.size());
    for (const auto& x : f) g.emplace_back((x * rational(p)).floor() - 1, p);
    return g;
}

struct decomposition_stage {
    int index = 0;
    rat_vec g;        // partial sum
    rat_vec h;        // increment g_i - g_{i-1} (g_{i0} at the first stage)
    rational gap;     // ||f - g_i||_inf
    rational gap_bound; // 2^{-i+1}
};

struct decomposition_report {
    rat_vec target;
    int first_stage = 0;
    std::vector<decomposition_stage> stages;
    rational increment_norm_sum; // sum of ||h_i||_inf
    rational increment_norm_bound; // ||f||_inf + 2

    // certificates, each recomputed exactly from the stage data
    bool gaps_within_bound = true;
    bool strictly_below_target = true;
    bool strictly_positive = true;
    bool strictly_increasing = true;
    bool increments_nonnegative = true;
    bool summable_within_bound = true;

    bool certified() const
    {
        return gaps_within_bound && strictly_below_target && strictly_positive && strictly_increasing &&
               increments_nonnegative && summable_within_bound;
    }
};

inline rational pow2_gap_bound(int i)
{
    // 2^{-i+1}; for i <= 1 this is an integer
    if (i <= 1) return rational(std::int64_t{1} << (1 - i));
    return pow2_inverse(i - 1);
}

/// Stages g_{i0}, ..., g_{i_max} with increments h_i and their certificates.
inline decomposition_report summable_decomposition(const rat_vec& f, int i_max)
{
    decomposition_report rep;
    rep.target = f;
    rep.first_stage = start_stage(f);
    if (i_max < rep.first_stage)
        throw contract_error("last stage " + std::to_string(i_max) + " is below the first admissible stage " +
                             std::to_string(rep.first_stage));

    rat_vec prev;
    for (int i = rep.first_stage; i <= i_max; ++i) {
        decomposition_stage s;
        s.index = i;
        s.g = dyadic_below(f, i);
        s.h = prev.empty() ? s.g : sub(s.g, prev);
        s.gap = sup_norm(sub(f, s.g));
        s.gap_bound = pow2_gap_bound(i);

        rep.gaps_within_bound = rep.gaps_within_bound && s.gap <= s.gap_bound;
        rep.strictly_below_target = rep.strictly_below_target && all_positive(sub(f, s.g));
        rep.strictly_positive = rep.strictly_positive && all_positive(s.g);
        rep.increments_nonnegative = rep.increments_nonnegative && all_nonnegative(s.h);
        if (!prev.empty()) rep.strictly_increasing = rep.strictly_increasing && all_positive(s.h);
        rep.increment_norm_sum += sup_norm(s.h);
        prev = s.g;
        rep.stages.push_back(std::move(s));
    }
    rep.increment_norm_bound = sup_norm(f) + rational(2);
    rep.summable_within_bound = rep.increment_norm_sum <= rep.increment_norm_bound;
    return rep;
}

/// Increasing sequence of values in (1/m_i) Z approximating f from below:
/// stage i is (ceil(m_i f) - 1) / m_i, raised to the previous stage where needed.
inline std::vector<rat_vec> projection_sup_realization(const rat_vec& f, const dense_subgroup& d, int i_max)
{
    require_positive_target(f);
    d.validate();
    if (i_max < 1) throw contract_error("at least one stage is required");
    if (static_cast<std::size_t>(i_max) > d.denominators.size())
        throw contract_error("denominator chain is shorter than the requested number of stages");

    std::vector<rat_vec> out;
    for (int i = 1; i <= i_max; ++i) {
        const std::int64_t m = d.denominators[static_cast<std::size_t>(i - 1)];
        rat_vec p;
        p.reserve(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) {
            rational v((f[j] * rational(m)).ceil() - 1, m);
            if (!out.empty()) v = std::max(v, out.back()[j]);
            p.push_back(v);
        }
        out.push_back(std::move(p));
    }
    return out;
}

enum class density_verdict { plausible, refuted };

inline const char* to_string(density_verdict v) { return v == density_verdict::plausible ? "plausible" : "refuted"; }

struct density_report {
    density_verdict verdict = density_verdict::plausible;
    rational largest_gap;
    std::size_t state_index = 0; // where the largest gap was seen
};

/// Heuristic density test for the value group of the states on K0 with the
/// denominators of `d` adjoined.
///
/// For each extreme state s the values s(K0) / m_L form a cyclic subgroup of
/// Q generated by g = gcd{ s(e_j) / m_L }, so the largest gap of the value
/// grid on [0, 1] is min(g, 1). The verdict is "refuted" when that gap
/// exceeds eps for some state. Joint density across several states is not
/// examined.
inline density_report condition_d_check(const wmodel::k0_model& k0, const dense_subgroup& d, const rational& eps)
{
    k0.validate();
    d.validate();
    if (eps.sign() <= 0) throw contract_error("eps must be strictly positive");
    const rational scale(1, d.denominators.back());

    density_report rep;
    for (std::size_t r = 0; r < k0.trace_count(); ++r) {
        std::int64_t common = 1;
        for (std::size_t j = 0; j < k0.rank(); ++j)
            common = std::lcm(common, (k0.states(r, j) * scale).den());
        std::int64_t g = 0;
        for (std::size_t j = 0; j < k0.rank(); ++j)
            g = std::gcd(g, ((k0.states(r, j) * scale) * rational(common)).num());
        const rational gap = std::min(rational(g, common), rational(1));
        if (gap > rep.largest_gap) {
            rep.largest_gap = gap;
            rep.state_index = r;
        }
    }
    rep.verdict = rep.largest_gap > eps ? density_verdict::refuted : density_verdict::plausible;
    return rep;
}

} // namespace cuntz::approx

#endif
