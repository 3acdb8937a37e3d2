#ifndef EHDSIM_LINSOLVE_HPP
#define EHDSIM_LINSOLVE_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "ehdsim/errors.hpp"

namespace ehd {

/// Dense square matrix, row-major. Sized for the capacitance systems here
/// (n_heads × spike_count, at most a few hundred rows).
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    std::vector<double> multiply(const std::vector<double>& x) const {
        std::vector<double> y(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j) s += a_[i * n_ + j] * x[j];
            y[i] = s;
        }
        return y;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

namespace detail {

/// LU factorization with partial pivoting, in place. Returns the pivot rows.
inline std::vector<std::size_t> lu_factor(DenseMatrix& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::fabs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::fabs(a(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (best == 0.0) throw NumericalError("linear solve: singular matrix");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(piv[k], piv[p]);
        }
        const double inv = 1.0 / a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a(i, k) * inv;
            a(i, k) = m;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
        }
    }
    return piv;
}

inline std::vector<double> lu_solve(const DenseMatrix& lu, const std::vector<std::size_t>& piv,
                                    const std::vector<double>& b) {
    const std::size_t n = lu.size();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[piv[i]];
    for (std::size_t i = 1; i < n; ++i) {
        double s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * x[j];
        x[ii] = s / lu(ii, ii);
    }
    return x;
}

} // namespace detail

/// Solve A x = b by partial-pivot LU with one iterative-refinement pass.
/// Throws NumericalError if the relative residual exceeds `residual_tol`.
inline std::vector<double> solve_dense(const DenseMatrix& a, const std::vector<double>& b,
                                       double residual_tol = 1e-10) {
    DenseMatrix lu = a;
    const auto piv = detail::lu_factor(lu);
    std::vector<double> x = detail::lu_solve(lu, piv, b);

    // one refinement pass
    {
        const auto ax = a.multiply(x);
        std::vector<double> r(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - ax[i];
        const auto dx = detail::lu_solve(lu, piv, r);
        for (std::size_t i = 0; i < b.size(); ++i) x[i] += dx[i];
    }

    double rnorm = 0.0, bnorm = 0.0;
    const auto ax = a.multiply(x);
    for (std::size_t i = 0; i < b.size(); ++i) {
        rnorm += (b[i] - ax[i]) * (b[i] - ax[i]);
        bnorm += b[i] * b[i];
    }
    if (!(std::sqrt(rnorm) <= residual_tol * std::sqrt(bnorm)))
        throw NumericalError("linear solve: residual above tolerance");
    return x;
}

} // namespace ehd

#endif // EHDSIM_LINSOLVE_HPP
