#ifndef CUNTZ_ORDMON_HPP
#define CUNTZ_ORDMON_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cuntz/error.hpp"
#include "cuntz/linalg.hpp"
#include "cuntz/rational.hpp"

/// Partially ordered abelian monoids and groups: enveloping groups with their
/// two cones, states, and bounded-scale checkers for the unperforation and
/// Archimedean properties.
///
/// The checkers are falsifiers. A positive outcome only means that no
/// counterexample exists inside the searched box.
namespace cuntz::ordmon {

/// Three-valued answer of a bounded search.
enum class tri { yes, no, bound_exceeded };

inline const char* to_string(tri t)
{
    switch (t) {
    case tri::yes: return "yes";
    case tri::no: return "no";
    case tri::bound_exceeded: return "bound-exceeded";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Monoid presentations and the Grothendieck group
// ---------------------------------------------------------------------------

/// `lhs <= rhs` for two combinations of generators (coefficient vectors).
using order_oracle = std::function<bool(const int_vec& lhs, const int_vec& rhs)>;

struct relation {
    int_vec lhs;
    int_vec rhs;
};

struct monoid_presentation {
    std::size_t generator_count = 0;
    std::vector<relation> relations;
    order_oracle leq; // optional
    // Optional additive, order-preserving functionals: one row per
    // functional, one column per generator. Used to refute cone membership.
    rat_matrix states;

    void validate() const
    {
        if (generator_count == 0) throw contract_error("monoid presentation needs at least one generator");
        for (const auto& r : relations) {
            require_size(r.lhs.size(), generator_count, "relation lhs");
            require_size(r.rhs.size(), generator_count, "relation rhs");
            auto neg = [](std::int64_t c) { return c < 0; };
            if (std::any_of(r.lhs.begin(), r.lhs.end(), neg) || std::any_of(r.rhs.begin(), r.rhs.end(), neg))
                throw contract_error("relation vectors must be non-negative");
        }
        if (states.rows() > 0) require_size(states.cols(), generator_count, "state row");
    }
};

/// Smith normal form data: D = U * A * V with only V retained.
struct smith_form {
    std::vector<std::int64_t> diagonal; // d_1 | d_2 | ... (positive, length = rank of A)
    int_matrix col_transform;           // V, unimodular, m x m
};

/// Naive exact elimination. Suitable for the small presentations handled here.
inline smith_form smith_normal_form(int_matrix a)
{
    using detail::checked_add;
    using detail::checked_mul;
    using detail::checked_sub;

    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    int_matrix v = int_matrix::identity(cols);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < cols; ++c) std::swap(a(i, c), a(j, c));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, i), a(r, j));
        for (std::size_t r = 0; r < cols; ++r) std::swap(v(r, i), v(r, j));
    };
    // row_i -= q * row_j
    auto row_axpy = [&](std::size_t i, std::size_t j, std::int64_t q) {
        for (std::size_t c = 0; c < cols; ++c) a(i, c) = checked_sub(a(i, c), checked_mul(q, a(j, c)));
    };
    // col_i -= q * col_j
    auto col_axpy = [&](std::size_t i, std::size_t j, std::int64_t q) {
        for (std::size_t r = 0; r < rows; ++r) a(r, i) = checked_sub(a(r, i), checked_mul(q, a(r, j)));
        for (std::size_t r = 0; r < cols; ++r) v(r, i) = checked_sub(v(r, i), checked_mul(q, v(r, j)));
    };

    std::vector<std::int64_t> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // pivot: smallest non-zero absolute value in the trailing block
            std::optional<std::pair<std::size_t, std::size_t>> best;
            std::int64_t best_abs = 0;
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c) {
                    std::int64_t x = a(r, c) < 0 ? -a(r, c) : a(r, c);
                    if (x != 0 && (!best || x < best_abs)) {
                        best = {r, c};
                        best_abs = x;
                    }
                }
            if (!best) return {diag, v};
            if (best->first != t) swap_rows(best->first, t);
            if (best->second != t) swap_cols(best->second, t);

            bool clean = true;
            for (std::size_t r = t + 1; r < rows; ++r) {
                std::int64_t q = a(r, t) / a(t, t);
                if (q != 0) row_axpy(r, t, q);
                if (a(r, t) != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                std::int64_t q = a(t, c) / a(t, t);
                if (q != 0) col_axpy(c, t, q);
                if (a(t, c) != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility of the remaining block by the pivot
            std::optional<std::size_t> bad_row;
            for (std::size_t r = t + 1; r < rows && !bad_row; ++r)
                for (std::size_t c = t + 1; c < cols; ++c)
                    if (a(r, c) % a(t, t) != 0) {
                        bad_row = r;
                        break;
                    }
            if (bad_row) {
                for (std::size_t c = 0; c < cols; ++c) a(t, c) = checked_add(a(t, c), a(*bad_row, c));
                continue;
            }
            break;
        }
        diag.push_back(a(t, t) < 0 ? -a(t, t) : a(t, t));
    }
    return {diag, v};
}

/// An element of a finitely generated abelian group Z/d_1 + ... + Z/d_t + Z^f,
/// stored as torsion coordinates (reduced into [0, d_i)) followed by free ones.
using group_element = int_vec;

struct grothendieck_result {
    std::size_t free_rank = 0;
    std::vector<std::int64_t> torsion;
    std::vector<group_element> gamma_images; // one per generator

    // bookkeeping for coordinates: which transformed coordinates survive
    std::vector<std::int64_t> moduli_; // per transformed coordinate: 0 = free, 1 = killed, d > 1 = torsion
    int_matrix basis_change_;

    std::size_t element_size() const noexcept { return torsion.size() + free_rank; }

    group_element reduce(group_element g) const
    {
        require_size(g.size(), element_size(), "group element");
        for (std::size_t i = 0; i < torsion.size(); ++i) {
            g[i] %= torsion[i];
            if (g[i] < 0) g[i] += torsion[i];
        }
        return g;
    }

    group_element zero() const { return group_element(element_size(), 0); }

    group_element plus(const group_element& a, const group_element& b) const { return reduce(add(a, b)); }
    group_element minus(const group_element& a, const group_element& b) const { return reduce(sub(a, b)); }
    group_element negate(const group_element& a) const { return reduce(scaled(a, std::int64_t{-1})); }

    /// gamma of a combination of generators with the given coefficients.
    group_element image(const int_vec& coeffs) const
    {
        require_size(coeffs.size(), gamma_images.size(), "coefficient vector");
        group_element g = zero();
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) g = add(g, scaled(gamma_images[i], coeffs[i]));
        return reduce(g);
    }
};

/// Z^m modulo the subgroup generated by the relation differences lhs - rhs.
inline grothendieck_result grothendieck_group(const monoid_presentation& p)
{
    p.validate();
    const std::size_t m = p.generator_count;
    int_matrix rel(p.relations.size(), m);
    for (std::size_t r = 0; r < p.relations.size(); ++r)
        for (std::size_t c = 0; c < m; ++c)
            rel(r, c) = detail::checked_sub(p.relations[r].lhs[c], p.relations[r].rhs[c]);

    smith_form snf = smith_normal_form(rel);
    grothendieck_result out;
    out.moduli_.assign(m, 0);
    for (std::size_t i = 0; i < snf.diagonal.size(); ++i) out.moduli_[i] = snf.diagonal[i];
    for (std::int64_t d : snf.diagonal)
        if (d > 1) out.torsion.push_back(d);
    out.free_rank = m - snf.diagonal.size();
    out.basis_change_ = snf.col_transform;

    for (std::size_t g = 0; g < m; ++g) {
        // row e_g * V expressed in the new basis
        group_element e;
        for (std::size_t i = 0; i < m; ++i)
            if (out.moduli_[i] > 1) e.push_back(out.basis_change_(g, i));
        for (std::size_t i = 0; i < m; ++i)
            if (out.moduli_[i] == 0) e.push_back(out.basis_change_(g, i));
        out.gamma_images.push_back(out.reduce(std::move(e)));
    }
    return out;
}

/// All coefficient vectors in N^m with entry sum at most `bound`, in graded
/// lexicographic order.
inline std::vector<int_vec> monoid_elements(std::size_t m, int bound)
{
    std::vector<int_vec> out;
    int_vec cur(m, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == m) {
            out.push_back(cur);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            cur[i] = c;
            rec(i + 1, left - c);
        }
        cur[i] = 0;
    };
    rec(0, bound);
    std::stable_sort(out.begin(), out.end(), [](const int_vec& a, const int_vec& b) {
        std::int64_t sa = 0, sb = 0;
        for (auto x : a) sa += x;
        for (auto x : b) sb += x;
        return sa < sb;
    });
    return out;
}

/// Membership in G(M)^{++} = { gamma(x) - gamma(y) : y <= x } by search over
/// monoid elements with coefficient sum at most `search_bound`.
inline tri cone_plusplus_member(const monoid_presentation& p, const grothendieck_result& g, const group_element& d,
                                int search_bound)
{
    if (!p.leq) throw contract_error("cone_plusplus_member requires an order oracle");
    group_element target = g.reduce(d);
    if (is_zero(target)) return tri::yes;

    auto elems = monoid_elements(p.generator_count, search_bound);
    std::map<group_element, std::vector<std::size_t>> by_image;
    std::vector<group_element> images;
    images.reserve(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        images.push_back(g.image(elems[i]));
        by_image[images.back()].push_back(i);
    }
    for (std::size_t yi = 0; yi < elems.size(); ++yi) {
        auto it = by_image.find(g.plus(target, images[yi]));
        if (it == by_image.end()) continue;
        for (std::size_t xi : it->second)
            if (p.leq(elems[yi], elems[xi])) return tri::yes;
    }
    return tri::bound_exceeded;
}

inline tri cone_plusplus_member(const monoid_presentation& p, const group_element& d, int search_bound)
{
    return cone_plusplus_member(p, grothendieck_group(p), d, search_bound);
}

/// A formal difference gamma(plus) - gamma(minus) of two monoid elements.
struct difference {
    int_vec plus;
    int_vec minus;
};

/// Membership of a formal difference in G(M)^{++}. Answers "no" when some
/// state of the presentation is negative on it, since y <= x forces
/// s(y) <= s(x).
inline tri cone_plusplus_member(const monoid_presentation& p, const grothendieck_result& g, const difference& d,
                                int search_bound)
{
    if (p.states.rows() > 0) {
        const rat_vec v = sub(p.states * d.plus, p.states * d.minus);
        if (std::any_of(v.begin(), v.end(), [](const rational& x) { return x.sign() < 0; })) return tri::no;
    }
    return cone_plusplus_member(p, g, g.minus(g.image(d.plus), g.image(d.minus)), search_bound);
}

struct strict_cone_report {
    std::vector<difference> violations;
    std::size_t refuted = 0;      // settled by a state
    std::size_t inconclusive = 0; // search bound reached on both signs
    std::size_t checked = 0;
};

/// Strictness of G(M)^{++}: no non-zero d with both d and -d in the cone.
inline strict_cone_report check_strict_cone(const monoid_presentation& p, std::span<const difference> samples,
                                            int search_bound)
{
    if (!p.leq) throw contract_error("check_strict_cone requires an order oracle");
    p.validate();
    auto g = grothendieck_group(p);
    strict_cone_report rep;
    for (const auto& d : samples) {
        require_size(d.plus.size(), p.generator_count, "difference");
        require_size(d.minus.size(), p.generator_count, "difference");
        ++rep.checked;
        if (is_zero(g.minus(g.image(d.plus), g.image(d.minus)))) continue;
        const tri pos = cone_plusplus_member(p, g, d, search_bound);
        if (pos == tri::no) {
            ++rep.refuted;
            continue;
        }
        const tri neg = cone_plusplus_member(p, g, difference{d.minus, d.plus}, search_bound);
        if (neg == tri::no)
            ++rep.refuted;
        else if (pos == tri::yes && neg == tri::yes)
            rep.violations.push_back(d);
        else
            ++rep.inconclusive;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Generic bounded-scale property searches
// ---------------------------------------------------------------------------

template <typename T>
struct perforation {
    T x;
    T y; // unused by the weak-unperforation search
    int n = 0;
};

/// Almost unperforation: (n+1)x <= ny must imply x <= y.
/// `mul(k, x)` is the k-fold sum, `leq` decides the order on the sample.
template <typename T, typename Mul, typename Leq>
std::optional<perforation<T>> find_almost_perforation(std::span<const T> elements, int n_max, Mul mul, Leq leq)
{
    for (const T& x : elements)
        for (const T& y : elements) {
            if (leq(x, y)) continue;
            for (int n = 1; n <= n_max; ++n)
                if (leq(mul(n + 1, x), mul(n, y))) return perforation<T>{x, y, n};
        }
    return std::nullopt;
}

/// Weak unperforation: nx in G+ \ {0} must imply x in G+ \ {0}.
/// `positive_nonzero` returns a tri so inconclusive membership is skipped.
template <typename T, typename Mul, typename Pos>
std::optional<perforation<T>> find_weak_perforation(std::span<const T> elements, int n_max, Mul mul,
                                                    Pos positive_nonzero)
{
    for (const T& x : elements) {
        tri self = positive_nonzero(x);
        if (self != tri::no) continue;
        for (int n = 2; n <= n_max; ++n)
            if (positive_nonzero(mul(n, x)) == tri::yes) return perforation<T>{x, x, n};
    }
    return std::nullopt;
}

template <typename T>
struct archimedean_pair {
    T x;
    T y;
};

/// Searches x not <= 0 and y with nx <= y for every n in 1..n_max.
/// The multiplier range must exceed the ratio of the box to its finest step
/// for a hit to mean anything; see the README.
template <typename T, typename Mul, typename Leq, typename NonPos>
std::optional<archimedean_pair<T>> find_archimedean_witness(std::span<const T> elements, int n_max, Mul mul, Leq leq,
                                                            NonPos nonpositive)
{
    for (const T& x : elements) {
        if (nonpositive(x)) continue;
        const T top = mul(n_max, x);
        for (const T& y : elements) {
            if (!leq(top, y)) continue;
            bool all = true;
            for (int n = 1; n < n_max && all; ++n) all = leq(mul(n, x), y);
            if (all) return archimedean_pair<T>{x, y};
        }
    }
    return std::nullopt;
}

/// Integer points of [-bound, bound]^rank ordered by sup-norm, then lexicographically.
inline std::vector<int_vec> box_elements(std::size_t rank, int bound)
{
    std::vector<int_vec> out;
    int_vec cur(rank, -bound);
    bool more = true;
    while (more) {
        out.push_back(cur);
        more = false;
        for (std::size_t i = rank; i-- > 0;) {
            if (cur[i] < bound) {
                ++cur[i];
                more = true;
                break;
            }
            cur[i] = -bound;
        }
    }
    auto sup = [](const int_vec& a) {
        std::int64_t n = 0;
        for (auto x : a) n = std::max<std::int64_t>(n, x < 0 ? -x : x);
        return n;
    };
    std::stable_sort(out.begin(), out.end(), [&](const int_vec& a, const int_vec& b) { return sup(a) < sup(b); });
    return out;
}

// ---------------------------------------------------------------------------
// Partially ordered groups Z^r with an explicit cone
// ---------------------------------------------------------------------------

struct simplicial_cone {};

/// {0} together with every x whose state values S x are all strictly positive.
struct strict_state_cone {
    rat_matrix states;
};

/// Non-negative integer span of the generators.
struct generated_cone {
    std::vector<int_vec> generators;
};

/// Rank-2 lexicographic order: (a, b) >= 0 iff a > 0, or a = 0 and b >= 0.
struct lexicographic_cone {};

using cone_kind = std::variant<simplicial_cone, strict_state_cone, generated_cone, lexicographic_cone>;

struct po_group {
    std::size_t rank = 0;
    cone_kind cone;
    int_vec order_unit;
    /// Coefficient-sum bound for generated-cone searches.
    int search_bound = 64;

    void validate() const;
};

namespace detail {

inline tri generated_member(const generated_cone& cone, const int_vec& x, int search_bound)
{
    const std::size_t r = x.size();
    if (is_zero(x)) return tri::yes;
    if (cone.generators.empty()) return tri::no;

    // A functional phi with phi(g) > 0 on every generator caps the coefficient
    // sum at phi(x) / min phi(g), which turns a failed search into a proof.
    std::optional<std::int64_t> exact_cap;
    int_vec phi(r, -1);
    for (;;) {
        bool ok = !is_zero(phi);
        std::int64_t min_phi = 0;
        for (const auto& g : cone.generators) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < r; ++i) s += phi[i] * g[i];
            if (s <= 0) {
                ok = false;
                break;
            }
            min_phi = min_phi == 0 ? s : std::min(min_phi, s);
        }
        if (ok) {
            std::int64_t px = 0;
            for (std::size_t i = 0; i < r; ++i) px = cuntz::detail::checked_add(px, cuntz::detail::checked_mul(phi[i], x[i]));
            if (px <= 0) return tri::no;
            exact_cap = px / min_phi;
            break;
        }
        std::size_t i = 0;
        while (i < r && phi[i] == 1) phi[i++] = -1;
        if (i == r) break;
        ++phi[i];
    }

    const int cap = exact_cap ? static_cast<int>(std::min<std::int64_t>(*exact_cap, search_bound)) : search_bound;
    const std::size_t m = cone.generators.size();
    int_vec acc(r, 0);
    std::function<bool(std::size_t, int)> rec = [&](std::size_t gi, int left) -> bool {
        if (acc == x) return true;
        if (gi == m || left == 0) return false;
        // use generator gi c times, then move on
        int used = 0;
        bool found = rec(gi + 1, left);
        while (!found && used < left) {
            for (std::size_t i = 0; i < r; ++i) acc[i] += cone.generators[gi][i];
            ++used;
            found = rec(gi + 1, left - used);
        }
        for (std::size_t i = 0; i < r; ++i) acc[i] -= used * cone.generators[gi][i];
        return found;
    };
    if (rec(0, cap)) return tri::yes;
    if (exact_cap && *exact_cap <= search_bound) return tri::no;
    return tri::bound_exceeded;
}

} // namespace detail

/// Membership of x in the declared cone.
inline tri cone_member(const po_group& g, const int_vec& x)
{
    require_size(x.size(), g.rank, "group element");
    return std::visit(
        [&](const auto& cone) -> tri {
            using C = std::decay_t<decltype(cone)>;
            if constexpr (std::is_same_v<C, simplicial_cone>) {
                return std::all_of(x.begin(), x.end(), [](std::int64_t c) { return c >= 0; }) ? tri::yes : tri::no;
            } else if constexpr (std::is_same_v<C, strict_state_cone>) {
                if (is_zero(x)) return tri::yes;
                return all_positive(cone.states * x) ? tri::yes : tri::no;
            } else if constexpr (std::is_same_v<C, generated_cone>) {
                return detail::generated_member(cone, x, g.search_bound);
            } else {
                return (x[0] > 0 || (x[0] == 0 && x[1] >= 0)) ? tri::yes : tri::no;
            }
        },
        g.cone);
}

/// x <= y iff y - x lies in the cone.
inline tri leq(const po_group& g, const int_vec& x, const int_vec& y)
{
    require_size(x.size(), g.rank, "lhs");
    require_size(y.size(), g.rank, "rhs");
    return cone_member(g, sub(y, x));
}

inline void po_group::validate() const
{
    if (rank == 0) throw contract_error("group rank must be positive");
    require_size(order_unit.size(), rank, "order unit");
    if (std::holds_alternative<lexicographic_cone>(cone) && rank != 2)
        throw contract_error("lexicographic cone is defined for rank 2 only");
    if (const auto* s = std::get_if<strict_state_cone>(&cone)) {
        if (s->states.cols() != rank) throw contract_error("state matrix column count must equal rank");
        if (s->states.rows() == 0) throw contract_error("state matrix needs at least one state");
        for (const auto& v : s->states * order_unit)
            if (v != rational(1)) throw contract_error("every state must evaluate to 1 on the order unit");
    }
    if (const auto* gc = std::get_if<generated_cone>(&cone))
        for (const auto& gen : gc->generators) require_size(gen.size(), rank, "cone generator");
    if (is_zero(order_unit)) throw contract_error("order unit must be non-zero");
    if (cone_member(*this, order_unit) != tri::yes) throw contract_error("order unit must lie in the cone");
}

struct weak_unperforation_result {
    bool holds = true;
    int_vec x;
    int n = 0;
};

inline weak_unperforation_result is_weakly_unperforated(const po_group& g, int n_max, int enumeration_bound)
{
    auto elems = box_elements(g.rank, enumeration_bound);
    auto hit = find_weak_perforation<int_vec>(
        elems, n_max, [](int k, const int_vec& x) { return scaled(x, std::int64_t{k}); },
        [&](const int_vec& x) {
            if (is_zero(x)) return tri::no;
            return cone_member(g, x);
        });
    if (!hit) return {};
    return {false, hit->x, hit->n};
}

inline std::optional<archimedean_pair<int_vec>> archimedean_witness(const po_group& g, int n_max,
                                                                     int enumeration_bound)
{
    auto elems = box_elements(g.rank, enumeration_bound);
    const int_vec zero(g.rank, 0);
    return find_archimedean_witness<int_vec>(
        elems, n_max, [](int k, const int_vec& x) { return scaled(x, std::int64_t{k}); },
        [&](const int_vec& a, const int_vec& b) { return leq(g, a, b) == tri::yes; },
        [&](const int_vec& x) { return leq(g, x, zero) == tri::yes; });
}

inline const strict_state_cone& require_strict_state(const po_group& g)
{
    const auto* s = std::get_if<strict_state_cone>(&g.cone);
    if (!s) throw contract_error("operation requires a strict-state cone");
    return *s;
}

/// S x, exactly.
inline rat_vec evaluate_states(const po_group& g, const int_vec& x)
{
    const auto& s = require_strict_state(g);
    require_size(x.size(), g.rank, "group element");
    return s.states * x;
}

/// x is an order unit iff every extreme state is strictly positive on it.
inline bool is_order_unit_via_states(const po_group& g, const int_vec& x)
{
    return all_positive(evaluate_states(g, x));
}

} // namespace cuntz::ordmon

#endif
