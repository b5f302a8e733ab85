#ifndef CUNTZ_ELLIOTT_HPP
#define CUNTZ_ELLIOTT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuntz/error.hpp"
#include "cuntz/linalg.hpp"
#include "cuntz/ordmon.hpp"
#include "cuntz/rational.hpp"
#include "cuntz/wmodel.hpp"

/// Elliott invariants over a finite trace simplex, their morphisms, and the
/// functor G into the category of W̃ models.
namespace cuntz::elliott {

/// Z^r ⊕ Z/e_1 ⊕ ... ⊕ Z/e_t with e_i | e_{i+1}. Elements are integer
/// vectors, free coordinates first.
struct abelian_group {
    std::size_t free_rank = 0;
    std::vector<std::int64_t> torsion;

    std::size_t size() const noexcept { return free_rank + torsion.size(); }

    /// Order of coordinate i, or 0 for a free coordinate.
    std::int64_t order(std::size_t i) const { return i < free_rank ? 0 : torsion[i - free_rank]; }

    void validate() const
    {
        for (std::size_t i = 0; i < torsion.size(); ++i) {
            if (torsion[i] <= 1) throw contract_error("torsion orders must exceed 1");
            if (i > 0 && torsion[i] % torsion[i - 1] != 0)
                throw contract_error("torsion orders must form a divisibility chain");
        }
    }

    friend bool operator==(const abelian_group&, const abelian_group&) = default;
};

struct invariant {
    wmodel::k0_model k0;
    abelian_group k1;
    wmodel::trace_simplex traces;
};

/// Θ = (θ0, θ1, γ) from I(A) to I(B). γ is n_A x n_B; column j holds the
/// convex coefficients of the j-th extreme trace of B pulled back to A.
struct morphism {
    int_matrix theta0;
    int_matrix theta1;
    rat_matrix gamma;
};

struct report {
    std::vector<std::string> violations;
    bool ok() const noexcept { return violations.empty(); }
};

inline report validate_invariant(const invariant& inv)
{
    report r;
    auto guard = [&r](auto&& check) {
        try {
            check();
        } catch (const contract_error& e) {
            r.violations.emplace_back(e.what());
        }
    };
    guard([&] { inv.k0.validate(); });
    guard([&] { inv.k1.validate(); });
    guard([&] { inv.traces.validate(); });
    if (inv.k0.trace_count() != inv.traces.size())
        r.violations.emplace_back("state matrix has " + std::to_string(inv.k0.trace_count()) + " rows but there are " +
                                  std::to_string(inv.traces.size()) + " extreme traces");
    if (r.ok() && !inv.k0.in_cone(inv.k0.unit)) r.violations.emplace_back("unit lies outside the K0 cone");
    return r;
}

namespace detail {

inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline void require_shape(const char* what, std::size_t rows, std::size_t cols, std::size_t want_rows,
                          std::size_t want_cols)
{
    if (rows != want_rows || cols != want_cols)
        throw contract_error(std::string(what) + " has shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                             ", expected " + std::to_string(want_rows) + "x" + std::to_string(want_cols));
}

} // namespace detail

/// Reduces the torsion rows of a homomorphism matrix into [0, e).
inline int_matrix normalize_hom(int_matrix m, const abelian_group& target)
{
    for (std::size_t i = target.free_rank; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = detail::mod(m(i, j), target.order(i));
    return m;
}

/// Problems with θ1 as a homomorphism `source -> target`, empty if well defined.
inline std::vector<std::string> hom_violations(const int_matrix& m, const abelian_group& source,
                                               const abelian_group& target)
{
    std::vector<std::string> out;
    for (std::size_t j = source.free_rank; j < source.size(); ++j) {
        const std::int64_t d = source.order(j);
        for (std::size_t i = 0; i < target.size(); ++i) {
            const std::int64_t e = target.order(i);
            const bool bad = e == 0 ? m(i, j) != 0 : detail::mod(cuntz::detail::checked_mul(d, m(i, j)), e) != 0;
            if (bad)
                out.push_back("K1 map sends an element of order " + std::to_string(d) + " in column " +
                              std::to_string(j) + " to one of different order in row " + std::to_string(i));
        }
    }
    return out;
}

inline void check_shapes(const morphism& t, const invariant& a, const invariant& b)
{
    detail::require_shape("theta0", t.theta0.rows(), t.theta0.cols(), b.k0.rank(), a.k0.rank());
    detail::require_shape("theta1", t.theta1.rows(), t.theta1.cols(), b.k1.size(), a.k1.size());
    detail::require_shape("gamma", t.gamma.rows(), t.gamma.cols(), a.traces.size(), b.traces.size());
}

/// Checks unit preservation, γᵀ R_A = R_B θ0, column-stochasticity of γ,
/// θ1 well-definedness, and positivity of θ0 on the cone elements of a box.
inline report validate_morphism(const morphism& t, const invariant& a, const invariant& b, int positivity_box = 3)
{
    check_shapes(t, a, b);
    report r;
    for (const auto* inv : {&a, &b})
        for (const auto& v : validate_invariant(*inv).violations)
            r.violations.push_back((inv == &a ? "source: " : "target: ") + v);
    if (!r.ok()) return r;

    if (t.theta0 * a.k0.unit != b.k0.unit) r.violations.emplace_back("theta0 does not preserve the unit");

    for (std::size_t j = 0; j < t.gamma.cols(); ++j) {
        rational sum;
        for (std::size_t i = 0; i < t.gamma.rows(); ++i) {
            if (t.gamma(i, j).sign() < 0)
                r.violations.push_back("gamma has a negative entry at (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")");
            sum += t.gamma(i, j);
        }
        if (sum != rational(1))
            r.violations.push_back("gamma column " + std::to_string(j) + " sums to " + sum.str() + ", not 1");
    }

    if (t.gamma.transpose() * a.k0.states != b.k0.states * to_rational(t.theta0))
        r.violations.emplace_back("trace pairing square does not commute: gamma^T R_A != R_B theta0");

    for (const auto& v : hom_violations(t.theta1, a.k1, b.k1)) r.violations.push_back(v);

    for (const auto& v : ordmon::box_elements(a.k0.rank(), positivity_box)) {
        if (!a.k0.in_cone(v)) continue;
        if (!b.k0.in_cone(t.theta0 * v)) {
            r.violations.emplace_back("theta0 maps a positive K0 element outside the target cone");
            break;
        }
    }
    return r;
}

inline morphism identity(const invariant& a)
{
    return {int_matrix::identity(a.k0.rank()), int_matrix::identity(a.k1.size()),
            rat_matrix::identity(a.traces.size())};
}

/// Θ′ ∘ Θ for Θ: A → B and Θ′: B → C.
inline morphism compose(const morphism& second, const morphism& first, const abelian_group& c_k1)
{
    if (second.theta0.cols() != first.theta0.rows() || second.theta1.cols() != first.theta1.rows() ||
        first.gamma.cols() != second.gamma.rows())
        throw contract_error("morphisms are not composable");
    return {second.theta0 * first.theta0, normalize_hom(second.theta1 * first.theta1, c_k1),
            first.gamma * second.gamma};
}

/// Morphism of W̃ models: Proj(v) ↦ Proj(θ0 v), Soft(f) ↦ Soft(γᵀ f).
struct w_morphism {
    wmodel::w_model source;
    wmodel::w_model target;
    int_matrix proj_part;
    rat_matrix soft_part;

    friend bool operator==(const w_morphism& x, const w_morphism& y)
    {
        return x.proj_part == y.proj_part && x.soft_part == y.soft_part;
    }
};

inline wmodel::w_model functor_G_obj(const invariant& inv)
{
    const report r = validate_invariant(inv);
    if (!r.ok()) throw contract_error("invalid invariant: " + r.violations.front());
    return {inv.k0, inv.traces, wmodel::model_kind::finite};
}

inline w_morphism functor_G_mor(const morphism& t, const invariant& a, const invariant& b)
{
    const report r = validate_morphism(t, a, b);
    if (!r.ok()) throw contract_error("invalid morphism: " + r.violations.front());
    return {functor_G_obj(a), functor_G_obj(b), t.theta0, t.gamma.transpose()};
}

inline wmodel::cuntz_class apply(const w_morphism& m, const wmodel::cuntz_class& x)
{
    m.source.validate_class(x);
    if (const auto* p = std::get_if<wmodel::proj>(&x)) return wmodel::proj{m.proj_part * p->v};
    return wmodel::soft{m.soft_part * std::get<wmodel::soft>(x).f};
}

inline w_morphism compose(const w_morphism& second, const w_morphism& first)
{
    if (second.proj_part.cols() != first.proj_part.rows() || second.soft_part.cols() != first.soft_part.rows())
        throw contract_error("W-morphisms are not composable");
    return {first.source, second.target, second.proj_part * first.proj_part, second.soft_part * first.soft_part};
}

inline w_morphism identity(const wmodel::w_model& w)
{
    return {w, w, int_matrix::identity(w.k0.rank()), rat_matrix::identity(w.trace_count())};
}

/// Reads the pairing matrix back from the model alone: column j is
/// gamma(Proj(e_j + m u)) - m, with m large enough to land in the cone.
inline rat_matrix recover_state_matrix(const wmodel::w_model& w)
{
    wmodel::require_finite(w, "recover_state_matrix");
    const std::size_t k = w.k0.rank();
    const std::size_t n = w.trace_count();
    rat_matrix out(n, k);
    for (std::size_t j = 0; j < k; ++j) {
        int_vec e(k, 0);
        e[j] = 1;
        std::int64_t m = 0;
        while (!w.k0.in_cone(add(e, scaled(w.k0.unit, m)))) ++m;
        const rat_vec g = wmodel::gamma(w, wmodel::proj{add(e, scaled(w.k0.unit, m))});
        for (std::size_t i = 0; i < n; ++i) out(i, j) = g[i] - rational(m);
    }
    return out;
}

} // namespace cuntz::elliott

#endif
