#ifndef CUNTZ_GOODEARL_HPP
#define CUNTZ_GOODEARL_HPP

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "cuntz/error.hpp"
#include "cuntz/linalg.hpp"
#include "cuntz/rational.hpp"
#include "cuntz/wmodel.hpp"

/// Positive diagonal elements of M_n(C[0,1]) with piecewise-linear entries,
/// their dimension functions, and the step-approximation realization of lower
/// semicontinuous step functions as dimension profiles.
namespace cuntz::goodearl {

namespace detail {

inline bool strictly_increasing_unit_partition(const std::vector<rational>& xs)
{
    if (xs.size() < 2 || xs.front() != rational(0) || xs.back() != rational(1)) return false;
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] <= xs[i - 1]) return false;
    return true;
}

inline std::vector<rational> merge_points(const std::vector<rational>& a, const std::vector<rational>& b)
{
    std::vector<rational> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline void require_unit_point(const rational& x)
{
    if (x < rational(0) || x > rational(1)) throw contract_error("point " + x.str() + " lies outside [0,1]");
}

} // namespace detail

/// Interval in [0,1] with explicit endpoint flags.
struct interval {
    rational lo;
    rational hi;
    bool lo_closed = false;
    bool hi_closed = false;

    bool contains(const rational& x) const
    {
        return (lo < x || (lo_closed && x == lo)) && (x < hi || (hi_closed && x == hi));
    }

    rational length() const { return hi - lo; }

    friend bool operator==(const interval&, const interval&) = default;
};

/// Relatively open subset of [0,1]: a sorted list of disjoint intervals that
/// may be closed only at 0 or at 1.
struct open_set {
    std::vector<interval> parts;

    bool empty() const noexcept { return parts.empty(); }

    bool contains(const rational& x) const
    {
        return std::any_of(parts.begin(), parts.end(), [&](const interval& i) { return i.contains(x); });
    }

    rational length() const
    {
        rational s;
        for (const auto& p : parts) s += p.length();
        return s;
    }

    void validate() const
    {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const auto& p = parts[i];
            if (p.lo >= p.hi) throw contract_error("open set component must have positive length");
            if (p.lo < rational(0) || p.hi > rational(1)) throw contract_error("open set must lie in [0,1]");
            if (p.lo_closed && p.lo != rational(0)) throw contract_error("only 0 may be a closed left endpoint");
            if (p.hi_closed && p.hi != rational(1)) throw contract_error("only 1 may be a closed right endpoint");
            if (i > 0 && parts[i - 1].hi > p.lo) throw contract_error("open set components must be disjoint and sorted");
        }
    }

    friend bool operator==(const open_set&, const open_set&) = default;
};

/// Closed subset of [0,1]: sorted disjoint closed intervals, points allowed
/// as degenerate intervals.
struct closed_set {
    std::vector<std::pair<rational, rational>> parts;

    bool contains(const rational& x) const
    {
        return std::any_of(parts.begin(), parts.end(), [&](const auto& p) { return p.first <= x && x <= p.second; });
    }

    friend bool operator==(const closed_set&, const closed_set&) = default;
};

namespace detail {

/// Joins the points x_0..x_M and the open segments between them, given which
/// of them belong to a set, into maximal intervals.
inline open_set join_runs(const std::vector<rational>& xs, const std::vector<bool>& point_in,
                          const std::vector<bool>& segment_in)
{
    open_set out;
    const std::size_t m = segment_in.size();
    std::size_t i = 0; // walks 2m+1 pieces: even = point, odd = segment
    const std::size_t pieces = 2 * m + 1;
    auto in = [&](std::size_t p) { return p % 2 == 0 ? point_in[p / 2] : segment_in[p / 2]; };
    while (i < pieces) {
        if (!in(i)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < pieces && in(j + 1)) ++j;
        interval iv;
        iv.lo = xs[i / 2];
        iv.lo_closed = i % 2 == 0;
        iv.hi = j % 2 == 0 ? xs[j / 2] : xs[j / 2 + 1];
        iv.hi_closed = j % 2 == 0;
        if (iv.lo == iv.hi) throw contract_error("isolated point in a set that must be relatively open");
        out.parts.push_back(iv);
        i = j + 1;
    }
    return out;
}

} // namespace detail

/// Continuous piecewise-linear function on [0,1] with non-negative values.
struct pl_fn {
    std::vector<rational> xs;
    std::vector<rational> ys;

    static pl_fn constant(const rational& c) { return {{rational(0), rational(1)}, {c, c}}; }

    void validate() const
    {
        if (!detail::strictly_increasing_unit_partition(xs))
            throw contract_error("breakpoints must increase strictly from 0 to 1");
        require_size(ys.size(), xs.size(), "breakpoint values");
        for (const auto& y : ys)
            if (y.sign() < 0) throw contract_error("entry values must be non-negative");
    }

    rational eval(const rational& x) const
    {
        detail::require_unit_point(x);
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        if (it == xs.end()) return ys.back();
        const std::size_t k = static_cast<std::size_t>(it - xs.begin());
        if (k == 0) return ys.front();
        const rational t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
        return ys[k - 1] + (ys[k] - ys[k - 1]) * t;
    }

    rational max_value() const { return *std::max_element(ys.begin(), ys.end()); }
    rational min_value() const { return *std::min_element(ys.begin(), ys.end()); }
    bool is_zero() const { return max_value().sign() == 0; }

    /// Same function with collinear interior breakpoints removed.
    pl_fn simplified() const
    {
        pl_fn out;
        out.xs.push_back(xs.front());
        out.ys.push_back(ys.front());
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
            const rational& x0 = out.xs.back();
            const rational& y0 = out.ys.back();
            if ((ys[i] - y0) * (xs[i + 1] - xs[i]) == (ys[i + 1] - ys[i]) * (xs[i] - x0)) continue;
            out.xs.push_back(xs[i]);
            out.ys.push_back(ys[i]);
        }
        out.xs.push_back(xs.back());
        out.ys.push_back(ys.back());
        return out;
    }

    /// Resampled at `points`, which must contain every breakpoint.
    pl_fn resampled(const std::vector<rational>& points) const
    {
        pl_fn out;
        out.xs = points;
        out.ys.reserve(points.size());
        for (const auto& x : points) out.ys.push_back(eval(x));
        return out;
    }

    friend bool operator==(const pl_fn&, const pl_fn&) = default;
};

/// (g - eps)_+, exact.
inline pl_fn cut(const pl_fn& g, const rational& eps)
{
    pl_fn out;
    for (std::size_t i = 0; i < g.xs.size(); ++i) {
        if (i > 0) {
            const rational d0 = g.ys[i - 1] - eps;
            const rational d1 = g.ys[i] - eps;
            if ((d0.sign() < 0 && d1.sign() > 0) || (d0.sign() > 0 && d1.sign() < 0)) {
                out.xs.push_back(g.xs[i - 1] + (g.xs[i] - g.xs[i - 1]) * (d0 / (d0 - d1)));
                out.ys.push_back(rational(0));
            }
        }
        out.xs.push_back(g.xs[i]);
        out.ys.push_back(std::max(g.ys[i] - eps, rational(0)));
    }
    return out.simplified();
}

/// Pointwise maximum, with crossing points inserted.
inline pl_fn pointwise_max(const pl_fn& g, const pl_fn& h)
{
    const auto pts = detail::merge_points(g.xs, h.xs);
    const pl_fn a = g.resampled(pts);
    const pl_fn b = h.resampled(pts);
    pl_fn out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0) {
            const rational d0 = a.ys[i - 1] - b.ys[i - 1];
            const rational d1 = a.ys[i] - b.ys[i];
            if ((d0.sign() < 0 && d1.sign() > 0) || (d0.sign() > 0 && d1.sign() < 0)) {
                const rational x = pts[i - 1] + (pts[i] - pts[i - 1]) * (d0 / (d0 - d1));
                out.xs.push_back(x);
                out.ys.push_back(a.eval(x));
            }
        }
        out.xs.push_back(pts[i]);
        out.ys.push_back(std::max(a.ys[i], b.ys[i]));
    }
    return out.simplified();
}

/// sup |g - h|; attained at a breakpoint of one of them.
inline rational sup_distance(const pl_fn& g, const pl_fn& h)
{
    rational m;
    for (const auto& x : detail::merge_points(g.xs, h.xs)) m = std::max(m, abs(g.eval(x) - h.eval(x)));
    return m;
}

/// g <= h everywhere.
inline bool dominated(const pl_fn& g, const pl_fn& h)
{
    const auto pts = detail::merge_points(g.xs, h.xs);
    return std::all_of(pts.begin(), pts.end(), [&](const rational& x) { return g.eval(x) <= h.eval(x); });
}

/// {x : g(x) > 0}.
inline open_set coz(const pl_fn& g)
{
    const std::size_t m = g.xs.size() - 1;
    std::vector<bool> point_in(m + 1), segment_in(m);
    for (std::size_t i = 0; i <= m; ++i) point_in[i] = g.ys[i].sign() > 0;
    for (std::size_t i = 0; i < m; ++i) segment_in[i] = point_in[i] || point_in[i + 1];
    return detail::join_runs(g.xs, point_in, segment_in);
}

/// Continuous bump of height h whose cozero set is exactly `o`.
inline pl_fn bump(const open_set& o, const rational& h)
{
    o.validate();
    if (h.sign() <= 0) throw contract_error("bump height must be positive");
    pl_fn out;
    auto push = [&out](const rational& x, const rational& y) {
        if (!out.xs.empty() && out.xs.back() == x) {
            out.ys.back() = std::max(out.ys.back(), y);
            return;
        }
        out.xs.push_back(x);
        out.ys.push_back(y);
    };
    push(rational(0), rational(0));
    for (const auto& p : o.parts) {
        if (p.lo_closed && p.hi_closed) {
            push(p.lo, h);
            push(p.hi, h);
        } else if (p.lo_closed) {
            push(p.lo, h);
            push(p.hi, rational(0));
        } else if (p.hi_closed) {
            push(p.lo, rational(0));
            push(p.hi, h);
        } else {
            push(p.lo, rational(0));
            push((p.lo + p.hi) / rational(2), h);
            push(p.hi, rational(0));
        }
    }
    push(rational(1), rational(0));
    return out.simplified();
}

/// Borel probability measure on [0,1]: a piecewise-constant density plus
/// finitely many atoms.
struct measure_spec {
    std::vector<rational> partition{rational(0), rational(1)};
    std::vector<rational> density{rational(1)};
    std::vector<std::pair<rational, rational>> atoms; // (point, weight)

    static measure_spec lebesgue() { return {}; }

    static measure_spec dirac(const rational& x)
    {
        measure_spec m;
        m.density = {rational(0)};
        m.atoms = {{x, rational(1)}};
        return m;
    }

    /// w * Lebesgue + Σ atoms, the weights summing to 1.
    static measure_spec mixture(const rational& lebesgue_weight, std::vector<std::pair<rational, rational>> atoms)
    {
        measure_spec m;
        m.density = {lebesgue_weight};
        m.atoms = std::move(atoms);
        return m;
    }

    bool atom_free() const noexcept { return atoms.empty(); }

    bool full_support() const
    {
        return std::all_of(density.begin(), density.end(), [](const rational& d) { return d.sign() > 0; });
    }

    rational total_mass() const
    {
        rational s;
        for (std::size_t k = 0; k < density.size(); ++k) s += density[k] * (partition[k + 1] - partition[k]);
        for (const auto& a : atoms) s += a.second;
        return s;
    }

    void validate() const
    {
        if (!detail::strictly_increasing_unit_partition(partition))
            throw contract_error("density partition must increase strictly from 0 to 1");
        require_size(density.size(), partition.size() - 1, "density pieces");
        for (const auto& d : density)
            if (d.sign() < 0) throw contract_error("density must be non-negative");
        for (const auto& [x, w] : atoms) {
            detail::require_unit_point(x);
            if (w.sign() <= 0) throw contract_error("atom weights must be positive");
        }
        if (total_mass() != rational(1)) throw contract_error("measure must have total mass 1, got " + total_mass().str());
    }

    /// Mass of the interval from lo to hi, endpoints ignored.
    rational diffuse(const rational& lo, const rational& hi) const
    {
        rational s;
        for (std::size_t k = 0; k < density.size(); ++k) {
            const rational a = std::max(lo, partition[k]);
            const rational b = std::min(hi, partition[k + 1]);
            if (a < b) s += density[k] * (b - a);
        }
        return s;
    }
};

inline rational measure(const measure_spec& mu, const open_set& o)
{
    rational s;
    for (const auto& p : o.parts) s += mu.diffuse(p.lo, p.hi);
    for (const auto& [x, w] : mu.atoms)
        if (o.contains(x)) s += w;
    return s;
}

/// Left-anchored open interval (0, b) of μ-measure λ.
inline open_set open_set_of_measure(const measure_spec& mu, const rational& lambda)
{
    mu.validate();
    if (!mu.atom_free()) throw contract_error("open_set_of_measure requires an atom-free measure");
    if (lambda.sign() <= 0 || lambda > rational(1)) throw contract_error("lambda must lie in (0,1]");
    rational cum;
    for (std::size_t k = 0; k < mu.density.size(); ++k) {
        const rational piece = mu.density[k] * (mu.partition[k + 1] - mu.partition[k]);
        if (cum + piece >= lambda) {
            const rational b = mu.partition[k] + (lambda - cum) / mu.density[k];
            return {{interval{rational(0), b, false, false}}};
        }
        cum += piece;
    }
    throw std::logic_error("cuntz: measure total below lambda after validation");
}

/// diag(g_1, ..., g_n).
struct diagonal_element {
    std::vector<pl_fn> entries;

    std::size_t size() const noexcept { return entries.size(); }

    void validate() const
    {
        if (entries.empty()) throw contract_error("diagonal element needs at least one entry");
        for (const auto& e : entries) e.validate();
    }

    bool is_zero() const
    {
        return std::all_of(entries.begin(), entries.end(), [](const pl_fn& e) { return e.is_zero(); });
    }

    friend bool operator==(const diagonal_element&, const diagonal_element&) = default;
};

/// d_τ(a) = (1/n) Σ μ(Coz(g_j)) for τ = μ ⊗ normalized trace.
inline rational dim_fn(const diagonal_element& a, const measure_spec& mu)
{
    rational s;
    for (const auto& e : a.entries) s += measure(mu, coz(e));
    return s / rational(static_cast<std::int64_t>(a.size()));
}

inline diagonal_element cutdown(const diagonal_element& a, const rational& eps)
{
    if (eps.sign() < 0) throw contract_error("cutdown level must be non-negative");
    diagonal_element out;
    out.entries.reserve(a.size());
    for (const auto& e : a.entries) out.entries.push_back(cut(e, eps));
    return out;
}

enum class spectrum_kind { projection_like, purely_positive };

inline const char* to_string(spectrum_kind k)
{
    return k == spectrum_kind::projection_like ? "projection-like" : "purely positive";
}

/// The spectrum is {0} together with the ranges [min g_j, max g_j]; 0 is
/// isolated iff every entry vanishes identically or is bounded below.
inline spectrum_kind spectrum_classify(const diagonal_element& a)
{
    for (const auto& e : a.entries)
        if (!e.is_zero() && e.min_value().sign() == 0) return spectrum_kind::purely_positive;
    return spectrum_kind::projection_like;
}

inline bool in_spectrum(const diagonal_element& a, const rational& t)
{
    if (t.sign() == 0) return true;
    return std::any_of(a.entries.begin(), a.entries.end(),
                       [&](const pl_fn& e) { return e.min_value() <= t && t <= e.max_value(); });
}

/// Model-level a ≾ b over the finite trace list `ts`.
inline bool compare_elements(const diagonal_element& a, const diagonal_element& b, const std::vector<measure_spec>& ts)
{
    if (ts.empty()) throw contract_error("compare_elements needs at least one trace");
    if (a.is_zero()) return true;
    const bool a_proj = spectrum_classify(a) == spectrum_kind::projection_like;
    const bool b_proj = spectrum_classify(b) == spectrum_kind::projection_like;
    const bool strict = a_proj && !b_proj;
    return std::all_of(ts.begin(), ts.end(), [&](const measure_spec& mu) {
        const rational da = dim_fn(a, mu);
        const rational db = dim_fn(b, mu);
        return strict ? da < db : da <= db;
    });
}

/// d((a - δ)_+) < d((a - ε)_+) for ε < η < δ in the spectrum and μ atom-free
/// with full support.
inline bool comparison_lemma_check(const diagonal_element& a, const rational& eps, const rational& eta,
                                   const rational& delta, const measure_spec& mu)
{
    a.validate();
    mu.validate();
    if (eps.sign() < 0 || !(eps < eta && eta < delta)) throw contract_error("need 0 <= eps < eta < delta");
    for (const auto& t : {eps, eta, delta})
        if (!in_spectrum(a, t)) throw contract_error(t.str() + " is not in the spectrum");
    if (!mu.atom_free()) throw contract_error("comparison lemma needs an atom-free measure");
    if (!mu.full_support()) throw contract_error("comparison lemma needs a measure of full support");
    return dim_fn(cutdown(a, delta), mu) < dim_fn(cutdown(a, eps), mu);
}

/// Lower semicontinuous step function on [0,1].
struct step_fn {
    std::vector<rational> xs;
    std::vector<rational> interval_values; // on (x_k, x_{k+1})
    std::vector<rational> point_values;    // at x_k

    static step_fn constant(const rational& c) { return {{rational(0), rational(1)}, {c}, {c, c}}; }

    void validate() const
    {
        if (!detail::strictly_increasing_unit_partition(xs))
            throw contract_error("step partition must increase strictly from 0 to 1");
        require_size(interval_values.size(), xs.size() - 1, "interval values");
        require_size(point_values.size(), xs.size(), "point values");
        for (const auto& v : interval_values)
            if (v.sign() < 0) throw contract_error("step values must be non-negative");
        for (std::size_t k = 0; k < xs.size(); ++k) {
            if (point_values[k].sign() < 0) throw contract_error("step values must be non-negative");
            const bool left_ok = k == 0 || point_values[k] <= interval_values[k - 1];
            const bool right_ok = k + 1 == xs.size() || point_values[k] <= interval_values[k];
            if (!left_ok || !right_ok)
                throw contract_error("not lower semicontinuous at " + xs[k].str() +
                                     ": point value exceeds an adjacent interval value");
        }
    }

    rational eval(const rational& x) const
    {
        detail::require_unit_point(x);
        const auto it = std::lower_bound(xs.begin(), xs.end(), x);
        const std::size_t k = static_cast<std::size_t>(it - xs.begin());
        if (it != xs.end() && *it == x) return point_values[k];
        return interval_values[k - 1];
    }

    rational sup() const
    {
        return std::max(*std::max_element(interval_values.begin(), interval_values.end()),
                        *std::max_element(point_values.begin(), point_values.end()));
    }

    friend bool operator==(const step_fn&, const step_fn&) = default;
};

/// {x : f(x) <= q}.
inline closed_set sublevel(const step_fn& f, const rational& q)
{
    closed_set out;
    const std::size_t m = f.interval_values.size();
    std::size_t k = 0;
    while (k <= m) {
        if (f.point_values[k] > q) {
            ++k;
            continue;
        }
        std::size_t j = k;
        while (j < m && f.interval_values[j] <= q) ++j; // lsc: the closing point is in too
        out.parts.emplace_back(f.xs[k], f.xs[j]);
        k = j + 1;
    }
    return out;
}

/// {x : f(x) > q}, open since f is lower semicontinuous.
inline open_set superlevel(const step_fn& f, const rational& q)
{
    const std::size_t m = f.interval_values.size();
    std::vector<bool> point_in(m + 1), segment_in(m);
    for (std::size_t k = 0; k <= m; ++k) point_in[k] = f.point_values[k] > q;
    for (std::size_t k = 0; k < m; ++k) segment_in[k] = f.interval_values[k] > q;
    return detail::join_runs(f.xs, point_in, segment_in);
}

/// max(0, ceil(n v) - 1) / n: the value (k-1)/n on F_k \ F_{k-1}.
inline rational step_level(const rational& v, std::int64_t n)
{
    const std::int64_t k = (v * rational(n)).ceil();
    return rational(std::max<std::int64_t>(0, k - 1), n);
}

inline step_fn step_approximant(const step_fn& f, std::int64_t n)
{
    f.validate();
    if (n <= 0) throw contract_error("approximation size must be positive");
    if (f.sup() > rational(1)) throw contract_error("step target must satisfy sup f <= 1");
    step_fn out = f;
    for (auto& v : out.interval_values) v = step_level(v, n);
    for (auto& v : out.point_values) v = step_level(v, n);
    return out;
}

/// Matrix sizes n_1 | n_2 | ... | n_L.
struct schedule {
    std::vector<std::int64_t> sizes;

    void validate() const
    {
        if (sizes.empty()) throw contract_error("schedule must have at least one stage");
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (sizes[i] <= 0) throw contract_error("schedule sizes must be positive");
            if (i > 0 && sizes[i] % sizes[i - 1] != 0) throw contract_error("schedule sizes must form a divisibility chain");
        }
    }

    static schedule dyadic(int length)
    {
        schedule s;
        for (int i = 1; i <= length; ++i) s.sizes.push_back(std::int64_t{1} << i);
        return s;
    }
};

/// Repeats each entry r times, placing copy c (1..r) of entry k >= 2 at
/// position (k-2) r + c + 1 and the copies of entry 1 at the remaining
/// positions (1 and the top r - 1). Positions are 1-based.
inline diagonal_element embed(const diagonal_element& a, std::int64_t r)
{
    if (r <= 0) throw contract_error("embedding multiplicity must be positive");
    const std::size_t n = a.size();
    const std::size_t big = n * static_cast<std::size_t>(r);
    diagonal_element out;
    out.entries.resize(big);
    for (std::size_t k = 2; k <= n; ++k)
        for (std::size_t c = 1; c <= static_cast<std::size_t>(r); ++c)
            out.entries[(k - 2) * static_cast<std::size_t>(r) + c] = a.entries[k - 1];
    out.entries[0] = a.entries[0];
    for (std::size_t l = big - static_cast<std::size_t>(r) + 2; l <= big; ++l) out.entries[l - 1] = a.entries[0];
    return out;
}

struct sample_row {
    rational x;
    rational f;
    rational f_i;
    rational d;
};

struct realization_stage {
    int index = 0;
    std::int64_t size = 0;
    step_fn approximant;
    diagonal_element element;
    rational bump_height;
    rational increment;  // ||a_i - embed(a_{i-1})||, or ||a_1|| at the first stage
    std::vector<sample_row> samples;

    bool dimension_identity = true; // d_{τ_x}(a_i) = f_i(x) at every sample
    bool gap_bound = true;          // 0 <= f - f_i <= 1/n_i at every sample
    bool refines_previous = true;   // f_{i-1} <= f_i at every sample
    bool dominates_previous = true; // embed(a_{i-1}) <= a_i entrywise
    bool increment_bound = true;    // increment <= 2^{-i}
    bool certified() const
    {
        return dimension_identity && gap_bound && refines_previous && dominates_previous && increment_bound;
    }
};

struct realization_report {
    step_fn target;
    std::vector<realization_stage> stages;
    bool certified() const
    {
        return std::all_of(stages.begin(), stages.end(), [](const auto& s) { return s.certified(); });
    }
};

/// Sample points j/(grid - 1), j < grid, together with the partition of f.
inline std::vector<rational> sample_points(const step_fn& f, std::int64_t grid)
{
    if (grid < 2) throw contract_error("grid needs at least two points");
    std::vector<rational> pts;
    for (std::int64_t j = 0; j < grid; ++j) pts.emplace_back(j, grid - 1);
    std::vector<rational> xs = f.xs;
    return detail::merge_points(pts, xs);
}

/// Stages a_1, ..., a_L with d_{τ_x}(a_i) = f_i(x). Entry 1 of a_i is zero and
/// entry k >= 2 has cozero set {f > (k-1)/n_i}; a_i is the entrywise maximum
/// of those bumps (height 2^{-(i+1)}) and the embedded a_{i-1}.
inline realization_report realize(const step_fn& f, const schedule& s, int stages, std::int64_t grid = 1000)
{
    f.validate();
    s.validate();
    if (f.sup() > rational(1)) throw contract_error("step target must satisfy sup f <= 1");
    if (stages < 1) throw contract_error("at least one stage is required");
    if (static_cast<std::size_t>(stages) > s.sizes.size())
        throw contract_error("schedule has " + std::to_string(s.sizes.size()) + " sizes, " + std::to_string(stages) +
                             " stages requested");
    if (stages > 60) throw contract_error("too many stages");

    const auto pts = sample_points(f, grid);
    realization_report rep;
    rep.target = f;
    diagonal_element prev;
    step_fn prev_fi;
    for (int i = 1; i <= stages; ++i) {
        realization_stage st;
        st.index = i;
        st.size = s.sizes[static_cast<std::size_t>(i - 1)];
        st.approximant = step_approximant(f, st.size);
        st.bump_height = pow2_inverse(i + 1);

        diagonal_element a;
        a.entries.reserve(static_cast<std::size_t>(st.size));
        a.entries.push_back(pl_fn::constant(rational(0)));
        for (std::int64_t k = 2; k <= st.size; ++k) {
            const open_set o = superlevel(f, rational(k - 1, st.size));
            a.entries.push_back(o.empty() ? pl_fn::constant(rational(0)) : bump(o, st.bump_height));
        }
        diagonal_element base;
        if (i > 1) {
            base = embed(prev, st.size / prev.size());
            for (std::size_t l = 0; l < a.size(); ++l) a.entries[l] = pointwise_max(a.entries[l], base.entries[l]);
        } else {
            base.entries.assign(a.size(), pl_fn::constant(rational(0)));
        }

        for (std::size_t l = 0; l < a.size(); ++l) {
            st.increment = std::max(st.increment, sup_distance(a.entries[l], base.entries[l]));
            if (!dominated(base.entries[l], a.entries[l])) st.dominates_previous = false;
        }
        st.increment_bound = st.increment <= pow2_inverse(i);

        std::vector<open_set> cozs;
        cozs.reserve(a.size());
        for (const auto& e : a.entries) cozs.push_back(coz(e));
        const rational inv_n(1, st.size);
        for (const auto& x : pts) {
            std::int64_t count = 0;
            for (const auto& o : cozs) count += o.contains(x) ? 1 : 0;
            sample_row row{x, f.eval(x), st.approximant.eval(x), rational(count) * inv_n};
            if (row.d != row.f_i) st.dimension_identity = false;
            const rational gap = row.f - row.f_i;
            if (gap.sign() < 0 || gap > inv_n) st.gap_bound = false;
            if (i > 1 && prev_fi.eval(x) > row.f_i) st.refines_previous = false;
            st.samples.push_back(row);
        }

        st.element = a;
        prev = std::move(a);
        prev_fi = st.approximant;
        rep.stages.push_back(std::move(st));
    }
    return rep;
}

/// W̃ model over the finite trace list `ts` in which projection-like
/// elements of sizes dividing `n` live: K0 = Z with unit n, every trace
/// taking the value 1/n on the generator.
inline wmodel::w_model embedding_model(std::size_t traces, std::int64_t n)
{
    if (traces == 0) throw contract_error("need at least one trace");
    if (n <= 0) throw contract_error("embedding size must be positive");
    wmodel::w_model w;
    w.k0.unit = {n};
    w.k0.states = rat_matrix(traces, 1, rational(1, n));
    w.traces = wmodel::trace_simplex::numbered(traces);
    return w;
}

/// Projection-like a ↦ Proj(rank · n / size); purely positive a ↦ Soft(d_τ(a)).
inline wmodel::cuntz_class to_cuntz_class(const diagonal_element& a, const std::vector<measure_spec>& ts,
                                          std::int64_t n)
{
    if (spectrum_classify(a) == spectrum_kind::projection_like) {
        const auto rank = static_cast<std::int64_t>(
            std::count_if(a.entries.begin(), a.entries.end(), [](const pl_fn& e) { return !e.is_zero(); }));
        const std::int64_t size = static_cast<std::int64_t>(a.size());
        if (n % size != 0) throw contract_error("element size must divide the embedding size");
        return wmodel::proj{{rank * (n / size)}};
    }
    rat_vec f;
    for (const auto& mu : ts) f.push_back(dim_fn(a, mu));
    return wmodel::soft{f};
}

} // namespace cuntz::goodearl

#endif
