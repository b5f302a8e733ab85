#ifndef CUNTZ_LINALG_HPP
#define CUNTZ_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "cuntz/error.hpp"
#include "cuntz/rational.hpp"

namespace cuntz {

using int_vec = std::vector<std::int64_t>;
using rat_vec = std::vector<rational>;

namespace detail {

inline std::int64_t scalar_add(std::int64_t a, std::int64_t b) { return checked_add(a, b); }
inline std::int64_t scalar_mul(std::int64_t a, std::int64_t b) { return checked_mul(a, b); }
inline rational scalar_add(const rational& a, const rational& b) { return a + b; }
inline rational scalar_mul(const rational& a, const rational& b) { return a * b; }

} // namespace detail

inline void require_size(std::size_t got, std::size_t want, const char* what)
{
    if (got != want)
        throw contract_error(std::string("dimension mismatch: ") + what + " has length " + std::to_string(got) +
                             ", expected " + std::to_string(want));
}

/// Dense row-major matrix over int64 or rational.
template <typename T>
class matrix {
public:
    matrix() = default;
    matrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    matrix(std::initializer_list<std::initializer_list<T>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw contract_error("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static matrix identity(std::size_t n)
    {
        matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    static matrix from_rows(const std::vector<std::vector<T>>& rows)
    {
        matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require_size(rows[i].size(), m.cols_, "matrix row");
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.cols_));
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> row(std::size_t r) const
    {
        return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    std::vector<T> col(std::size_t c) const
    {
        std::vector<T> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    matrix transpose() const
    {
        matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend bool operator==(const matrix&, const matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using int_matrix = matrix<std::int64_t>;
using rat_matrix = matrix<rational>;

template <typename T>
matrix<T> operator*(const matrix<T>& a, const matrix<T>& b)
{
    if (a.cols() != b.rows())
        throw contract_error("dimension mismatch in matrix product: " + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.rows()));
    matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == T{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) = detail::scalar_add(out(i, j), detail::scalar_mul(aik, b(k, j)));
        }
    return out;
}

template <typename T, typename V>
std::vector<T> operator*(const matrix<T>& a, const std::vector<V>& v)
{
    require_size(v.size(), a.cols(), "vector");
    std::vector<T> out(a.rows(), T{});
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            out[i] = detail::scalar_add(out[i], detail::scalar_mul(a(i, k), T(v[k])));
    return out;
}

inline rat_matrix to_rational(const int_matrix& m)
{
    rat_matrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = rational(m(i, j));
    return r;
}

inline rat_vec to_rational(std::span<const std::int64_t> v) { return {v.begin(), v.end()}; }

template <typename T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b)
{
    require_size(b.size(), a.size(), "summand");
    std::vector<T> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = detail::scalar_add(a[i], b[i]);
    return out;
}

template <typename T>
std::vector<T> sub(const std::vector<T>& a, const std::vector<T>& b)
{
    require_size(b.size(), a.size(), "subtrahend");
    std::vector<T> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = detail::scalar_add(a[i], detail::scalar_mul(T(-1), b[i]));
    return out;
}

template <typename T>
std::vector<T> scaled(const std::vector<T>& a, const T& s)
{
    std::vector<T> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = detail::scalar_mul(a[i], s);
    return out;
}

inline bool all_positive(std::span<const rational> v)
{
    return std::all_of(v.begin(), v.end(), [](const rational& x) { return x.sign() > 0; });
}

inline bool all_nonnegative(std::span<const rational> v)
{
    return std::all_of(v.begin(), v.end(), [](const rational& x) { return x.sign() >= 0; });
}

template <typename T>
bool is_zero(const std::vector<T>& v)
{
    return std::all_of(v.begin(), v.end(), [](const T& x) { return x == T{}; });
}

inline rational sup_norm(std::span<const rational> v)
{
    rational m;
    for (const auto& x : v) m = std::max(m, abs(x));
    return m;
}

inline rational min_entry(std::span<const rational> v)
{
    if (v.empty()) throw contract_error("min_entry of empty vector");
    return *std::min_element(v.begin(), v.end());
}

} // namespace cuntz

#endif
