#ifndef CUNTZ_WMODEL_HPP
#define CUNTZ_WMODEL_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cuntz/error.hpp"
#include "cuntz/linalg.hpp"
#include "cuntz/ordmon.hpp"
#include "cuntz/rational.hpp"

/// The model V(A) ⊔ LAff_b(T(A))^{++} of a Cuntz semigroup over a trace
/// simplex with finitely many extreme points, and its enveloping group K0*.
///
/// Affine functions on a finite simplex are stored as their values on the
/// extreme traces. Projection classes live in the positive cone of an ordered
/// K0 group whose order is given by finitely many states (the simple, weakly
/// unperforated case).
namespace cuntz::wmodel {

struct trace_simplex {
    std::vector<std::string> labels;

    std::size_t size() const noexcept { return labels.size(); }

    static trace_simplex numbered(std::size_t n)
    {
        trace_simplex t;
        for (std::size_t i = 0; i < n; ++i) t.labels.push_back("tau" + std::to_string(i + 1));
        return t;
    }

    void validate() const
    {
        if (labels.empty()) throw contract_error("trace simplex needs at least one extreme trace");
        std::set<std::string> seen(labels.begin(), labels.end());
        if (seen.size() != labels.size()) throw contract_error("trace labels must be distinct");
    }
};

/// Ordered K0 group Z^k with unit u and pairing matrix R (traces x rank).
/// The cone is {0} together with every v such that R v > 0 in each row.
struct k0_model {
    rat_matrix states;
    int_vec unit;

    std::size_t rank() const noexcept { return unit.size(); }
    std::size_t trace_count() const noexcept { return states.rows(); }

    rat_vec pair(const int_vec& v) const { return states * v; }

    bool in_cone(const int_vec& v) const
    {
        require_size(v.size(), rank(), "K0 vector");
        return is_zero(v) || all_positive(pair(v));
    }

    bool leq(const int_vec& v, const int_vec& w) const { return in_cone(sub(w, v)); }

    void validate() const
    {
        if (rank() == 0) throw contract_error("K0 rank must be positive");
        if (states.cols() != rank()) throw contract_error("state matrix must have one column per K0 generator");
        if (trace_count() == 0) throw contract_error("state matrix needs at least one row");
        for (const auto& s : pair(unit))
            if (s != rational(1)) throw contract_error("every trace must take the value 1 on the unit");
    }

    ordmon::po_group as_group() const { return {rank(), ordmon::strict_state_cone{states}, unit}; }

    /// Z^k with a unit u > 0, read through its coordinate states e_j / u_j.
    /// The resulting order is the strict (simple) one: for k = 1 this is
    /// exactly Z^+, for k > 1 it is {0} plus the strictly positive vectors.
    static k0_model simplicial(const int_vec& u)
    {
        k0_model m;
        m.unit = u;
        m.states = rat_matrix(u.size(), u.size());
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (u[j] <= 0) throw contract_error("simplicial unit must be strictly positive");
            m.states(j, j) = rational(1, u[j]);
        }
        return m;
    }
};

struct proj {
    int_vec v;
    friend bool operator==(const proj&, const proj&) = default;
};

struct soft {
    rat_vec f;
    friend bool operator==(const soft&, const soft&) = default;
};

using cuntz_class = std::variant<proj, soft>;

inline bool is_projection_class(const cuntz_class& x) { return std::holds_alternative<proj>(x); }

enum class model_kind { finite, purely_infinite };

struct w_model {
    k0_model k0;
    trace_simplex traces;
    model_kind kind = model_kind::finite;

    std::size_t trace_count() const noexcept { return traces.size(); }

    cuntz_class unit_class() const { return proj{k0.unit}; }

    void validate() const
    {
        k0.validate();
        if (kind == model_kind::purely_infinite) {
            if (k0.rank() != 1 || k0.unit != int_vec{1})
                throw contract_error("purely infinite model carries the rank-1 placeholder K0 with unit 1");
            return;
        }
        traces.validate();
        if (k0.trace_count() != traces.size())
            throw contract_error("state matrix rows must match the number of extreme traces");
    }

    void validate_class(const cuntz_class& x) const
    {
        if (const auto* p = std::get_if<proj>(&x)) {
            require_size(p->v.size(), k0.rank(), "projection class");
            if (kind == model_kind::purely_infinite) {
                if (p->v[0] != 0 && p->v[0] != 1)
                    throw contract_error("purely infinite model has only the classes 0 and <1>");
                return;
            }
            if (!k0.in_cone(p->v)) throw contract_error("projection class lies outside the K0 cone");
        } else {
            if (kind == model_kind::purely_infinite)
                throw contract_error("purely infinite model has no soft classes");
            const auto& f = std::get<soft>(x).f;
            require_size(f.size(), trace_count(), "soft class");
            if (!all_positive(f)) throw contract_error("soft class values must be strictly positive");
        }
    }
};

inline std::string describe(const cuntz_class& x)
{
    std::string s;
    if (const auto* p = std::get_if<proj>(&x)) {
        s = "Proj(";
        for (std::size_t i = 0; i < p->v.size(); ++i) s += (i ? "," : "") + std::to_string(p->v[i]);
    } else {
        s = "Soft(";
        const auto& f = std::get<soft>(x).f;
        for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + f[i].str();
    }
    return s + ")";
}

inline void require_finite(const w_model& w, const char* op)
{
    if (w.kind != model_kind::finite) throw contract_error(std::string(op) + " is undefined on the purely infinite model");
}

/// The trace profile τ ↦ τ(p) of a non-zero projection class.
inline soft hat(const w_model& w, const int_vec& v)
{
    require_finite(w, "hat");
    require_size(v.size(), w.k0.rank(), "projection class");
    if (is_zero(v)) throw contract_error("hat requires a non-zero projection class");
    if (!w.k0.in_cone(v)) throw contract_error("hat requires a class in the K0 cone");
    return soft{w.k0.pair(v)};
}

inline cuntz_class add(const w_model& w, const cuntz_class& x, const cuntz_class& y)
{
    w.validate_class(x);
    w.validate_class(y);
    if (w.kind == model_kind::purely_infinite) {
        const auto a = std::get<proj>(x).v[0];
        const auto b = std::get<proj>(y).v[0];
        return proj{int_vec{(a | b)}};
    }
    const auto* px = std::get_if<proj>(&x);
    const auto* py = std::get_if<proj>(&y);
    if (px && py) return proj{cuntz::add(px->v, py->v)};
    if (px) return is_zero(px->v) ? y : cuntz_class{soft{cuntz::add(w.k0.pair(px->v), std::get<soft>(y).f)}};
    if (py) return is_zero(py->v) ? x : cuntz_class{soft{cuntz::add(std::get<soft>(x).f, w.k0.pair(py->v))}};
    return soft{cuntz::add(std::get<soft>(x).f, std::get<soft>(y).f)};
}

/// Which clause of the order decided a comparison x <= y.
enum class order_rule {
    proj_proj,   // (i)   algebraic order on V(A)
    soft_soft,   // (ii)  pointwise on extreme traces
    soft_proj,   // (iii) f(τ) <= τ(p) for all τ
    proj_soft,   // (iv)  τ(p) < f(τ) for all τ, strictly
    degenerate,  // purely infinite {0, <1>}
};

inline const char* to_string(order_rule r)
{
    switch (r) {
    case order_rule::proj_proj: return "(i) projection <= projection: K0 order";
    case order_rule::soft_soft: return "(ii) soft <= soft: pointwise";
    case order_rule::soft_proj: return "(iii) soft <= projection: pointwise, non-strict";
    case order_rule::proj_soft: return "(iv) projection <= soft: pointwise, strict";
    case order_rule::degenerate: return "purely infinite: 0 <= <1>";
    }
    return "?";
}

struct comparison {
    bool holds = false;
    order_rule rule = order_rule::proj_proj;
};

inline comparison decide(const w_model& w, const cuntz_class& x, const cuntz_class& y)
{
    w.validate_class(x);
    w.validate_class(y);
    if (w.kind == model_kind::purely_infinite) {
        const auto a = std::get<proj>(x).v[0];
        const auto b = std::get<proj>(y).v[0];
        return {a <= b, order_rule::degenerate};
    }
    const auto* px = std::get_if<proj>(&x);
    const auto* py = std::get_if<proj>(&y);
    if (px && py) return {w.k0.leq(px->v, py->v), order_rule::proj_proj};
    if (!px && !py) {
        const auto& f = std::get<soft>(x).f;
        const auto& g = std::get<soft>(y).f;
        return {all_nonnegative(sub(g, f)), order_rule::soft_soft};
    }
    if (!px) {
        // Soft f <= Proj p. The zero projection dominates no soft class.
        if (is_zero(py->v)) return {false, order_rule::soft_proj};
        return {all_nonnegative(sub(w.k0.pair(py->v), std::get<soft>(x).f)), order_rule::soft_proj};
    }
    // Proj p <= Soft f, strictly at every extreme trace.
    if (is_zero(px->v)) return {true, order_rule::proj_soft};
    return {all_positive(sub(std::get<soft>(y).f, w.k0.pair(px->v))), order_rule::proj_soft};
}

inline bool compare(const w_model& w, const cuntz_class& x, const cuntz_class& y) { return decide(w, x, y).holds; }

/// λ·x for a soft class and a positive rational λ.
inline cuntz_class scale(const w_model& w, const cuntz_class& x, const rational& lambda)
{
    w.validate_class(x);
    if (lambda.sign() <= 0) throw contract_error("scale factor must be strictly positive");
    const auto* s = std::get_if<soft>(&x);
    if (!s) throw contract_error("scale acts on soft classes only; use add for integer multiples of projections");
    return soft{scaled(s->f, lambda)};
}

/// Proj(v) ↦ Soft(v̂); soft classes are returned unchanged.
inline cuntz_class soften(const w_model& w, const cuntz_class& x)
{
    require_finite(w, "soften");
    w.validate_class(x);
    if (const auto* p = std::get_if<proj>(&x)) {
        if (is_zero(p->v)) throw contract_error("soften is undefined on the zero class");
        return hat(w, p->v);
    }
    return x;
}

/// z with x + z = y, when one exists. Requires x <= y.
inline std::optional<cuntz_class> complement(const w_model& w, const cuntz_class& x, const cuntz_class& y)
{
    if (!compare(w, x, y)) throw contract_error("complement requires x <= y");
    if (w.kind == model_kind::purely_infinite) return y; // 0 + y = y, <1> + <1> = <1>

    const auto* px = std::get_if<proj>(&x);
    const auto* py = std::get_if<proj>(&y);
    if (px && is_zero(px->v)) return y;
    if (px && py) return proj{sub(py->v, px->v)};
    if (px) return soft{sub(std::get<soft>(y).f, w.k0.pair(px->v))};

    // x soft: the difference must vanish identically or be strictly positive.
    const rat_vec target = py ? w.k0.pair(py->v) : std::get<soft>(y).f;
    const rat_vec diff = sub(target, std::get<soft>(x).f);
    if (is_zero(diff)) return proj{int_vec(w.k0.rank(), 0)};
    if (all_positive(diff)) return soft{diff};
    return std::nullopt;
}

/// Image in K0* ≅ Q^n: Proj(v) ↦ R v, Soft(f) ↦ f.
inline rat_vec gamma(const w_model& w, const cuntz_class& x)
{
    require_finite(w, "gamma");
    w.validate_class(x);
    if (const auto* p = std::get_if<proj>(&x)) return w.k0.pair(p->v);
    return std::get<soft>(x).f;
}

/// gamma through the Grothendieck group of the soft part:
/// gamma(x + c) - gamma(c) for an auxiliary soft class c.
inline rat_vec gamma_via(const w_model& w, const cuntz_class& x, const cuntz_class& aux)
{
    require_finite(w, "gamma_via");
    if (!std::holds_alternative<soft>(aux)) throw contract_error("auxiliary class must be soft");
    const cuntz_class sum = add(w, x, aux);
    return sub(std::get<soft>(sum).f, std::get<soft>(aux).f);
}

/// K0* ≅ Q^n with the image cone and the order-difference cone.
struct k0_star {
    std::size_t n = 0; // zero means the zero group

    rat_vec unit() const { return rat_vec(n, rational(1)); }

    bool cone_plusplus(const rat_vec& d) const
    {
        require_size(d.size(), n, "K0* element");
        return all_nonnegative(d);
    }

    bool cone_plus(const rat_vec& d) const
    {
        require_size(d.size(), n, "K0* element");
        return is_zero(d) || all_positive(d);
    }

    bool leq_plusplus(const rat_vec& a, const rat_vec& b) const { return cone_plusplus(sub(b, a)); }
    bool leq_plus(const rat_vec& a, const rat_vec& b) const { return cone_plus(sub(b, a)); }
};

inline k0_star make_k0_star(const w_model& w)
{
    w.validate();
    if (w.kind == model_kind::purely_infinite) return {0};
    return {w.trace_count()};
}

/// Order unit test for an element of the order-difference cone: some ε > 0
/// lies below every coordinate, i.e. the minimum is strictly positive.
inline bool is_order_unit(const k0_star& k, const rat_vec& d)
{
    if (!k.cone_plusplus(d)) throw contract_error("order-unit test requires an element of the ++ cone");
    return all_positive(d);
}

/// Rational points of [-bound, bound]^n with step 1/den, by sup-norm.
inline std::vector<rat_vec> k0star_grid(std::size_t n, int bound, std::int64_t den)
{
    std::vector<rat_vec> out;
    for (const auto& v : ordmon::box_elements(n, static_cast<int>(bound * den))) {
        rat_vec x;
        for (auto c : v) x.emplace_back(c, den);
        out.push_back(std::move(x));
    }
    return out;
}

/// Searches x with nx in K0*^+ \ {0} but x not, for 2 <= n <= n_max.
inline std::optional<ordmon::perforation<rat_vec>> k0star_weak_perforation(const k0_star& k,
                                                                           std::span<const rat_vec> grid, int n_max)
{
    return ordmon::find_weak_perforation<rat_vec>(
        grid, n_max, [](int m, const rat_vec& x) { return scaled(x, rational(m)); },
        [&](const rat_vec& x) {
            return !is_zero(x) && k.cone_plus(x) ? ordmon::tri::yes : ordmon::tri::no;
        });
}

/// Searches x not <= 0 with m x <= y in the ++ order for all 1 <= m <= n_max.
inline std::optional<ordmon::archimedean_pair<rat_vec>> k0star_archimedean_witness(const k0_star& k,
                                                                                   std::span<const rat_vec> grid,
                                                                                   int n_max)
{
    const rat_vec zero(k.n);
    return ordmon::find_archimedean_witness<rat_vec>(
        grid, n_max, [](int m, const rat_vec& x) { return scaled(x, rational(m)); },
        [&](const rat_vec& a, const rat_vec& b) { return k.leq_plusplus(a, b); },
        [&](const rat_vec& x) { return k.leq_plusplus(x, zero); });
}

/// Z^+ ⊔ Q^{++} with the order of the Jiang–Su algebra.
inline w_model w_of_z()
{
    w_model w;
    w.k0.states = rat_matrix{{rational(1)}};
    w.k0.unit = {1};
    w.traces.labels = {"tau_Z"};
    return w;
}

/// The two-element semigroup {0, <1>} with <1> + <1> = <1>.
inline w_model purely_infinite()
{
    w_model w;
    w.k0.states = rat_matrix{{rational(1)}};
    w.k0.unit = {1};
    w.kind = model_kind::purely_infinite;
    return w;
}

/// Presentation of the Grothendieck group of the submonoid generated by
/// `gens`, with the model order as oracle on coefficient vectors.
///
/// With a soft generator s present, a + s = b + s exactly when a and b have
/// the same gamma image, so the relation lattice is the integer kernel of the
/// gamma matrix. Projection-only submonoids are cancellative.
inline ordmon::monoid_presentation submonoid_presentation(const w_model& w, std::vector<cuntz_class> gens)
{
    require_finite(w, "submonoid_presentation");
    if (gens.empty()) throw contract_error("need at least one generator");
    for (const auto& g : gens) w.validate_class(g);
    const bool any_soft = std::any_of(gens.begin(), gens.end(), [](const auto& g) { return !is_projection_class(g); });

    const std::size_t m = gens.size();
    int_matrix images;
    if (any_soft) {
        const std::size_t n = w.trace_count();
        images = int_matrix(n, m);
        for (std::size_t r = 0; r < n; ++r) {
            std::int64_t lcm = 1;
            for (std::size_t c = 0; c < m; ++c) lcm = std::lcm(lcm, gamma(w, gens[c])[r].den());
            for (std::size_t c = 0; c < m; ++c) {
                rational scaled_entry = gamma(w, gens[c])[r] * rational(lcm);
                images(r, c) = scaled_entry.num();
            }
        }
    } else {
        images = int_matrix(w.k0.rank(), m);
        for (std::size_t c = 0; c < m; ++c)
            for (std::size_t r = 0; r < w.k0.rank(); ++r) images(r, c) = std::get<proj>(gens[c]).v[r];
    }

    ordmon::smith_form snf = ordmon::smith_normal_form(images);
    ordmon::monoid_presentation p;
    p.generator_count = m;
    for (std::size_t j = snf.diagonal.size(); j < m; ++j) {
        ordmon::relation rel{int_vec(m, 0), int_vec(m, 0)};
        for (std::size_t i = 0; i < m; ++i) {
            const std::int64_t c = snf.col_transform(i, j);
            (c > 0 ? rel.lhs[i] : rel.rhs[i]) = c > 0 ? c : -c;
        }
        p.relations.push_back(std::move(rel));
    }

    auto combine = [w, gens](const int_vec& coeffs) {
        cuntz_class acc = proj{int_vec(w.k0.rank(), 0)};
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            for (std::int64_t k = 0; k < coeffs[i]; ++k) acc = add(w, acc, gens[i]);
        return acc;
    };
    p.states = rat_matrix(w.trace_count(), m);
    for (std::size_t c = 0; c < m; ++c) {
        const rat_vec g = gamma(w, gens[c]);
        for (std::size_t r = 0; r < g.size(); ++r) p.states(r, c) = g[r];
    }
    p.leq = [w, combine](const int_vec& a, const int_vec& b) { return compare(w, combine(a), combine(b)); };
    return p;
}

} // namespace cuntz::wmodel

#endif
