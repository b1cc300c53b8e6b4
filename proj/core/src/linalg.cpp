#include "biotsplit/linalg.hpp"

#include <cmath>
#include <string>

#include <umfpack.h>

namespace biotsplit {

namespace {

std::string status_text(int status)
{
    switch (status) {
    case UMFPACK_ERROR_out_of_memory: return "out of memory";
    case UMFPACK_ERROR_invalid_matrix: return "invalid matrix";
    case UMFPACK_ERROR_different_pattern: return "pattern changed";
    default: return "status " + std::to_string(status);
    }
}

// Row of A (= column of the transposed matrix handed to UMFPACK) whose
// pivot vanished, or -1 if none is found.
Index zero_pivot_row(void* numeric, Index n)
{
    std::vector<double> diag(static_cast<std::size_t>(n));
    std::vector<int> p(static_cast<std::size_t>(n));
    std::vector<int> q(static_cast<std::size_t>(n));
    int do_recip = 0;
    const int status = umfpack_di_get_numeric(nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, p.data(), q.data(),
                                              diag.data(), &do_recip, nullptr, numeric);
    if (status != UMFPACK_OK) return -1;
    for (Index k = 0; k < n; ++k) {
        if (diag[static_cast<std::size_t>(k)] == 0.0 || !std::isfinite(diag[static_cast<std::size_t>(k)])) {
            return q[static_cast<std::size_t>(k)];
        }
    }
    return -1;
}

}  // namespace

Factorization::Factorization(const SparseMatrix& a)
    : n_(a.rows()), offsets_(a.row_offsets()), indices_(a.col_indices()), values_(a.values())
{
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("lu_factor: matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    ", expected square");
    }
    if (n_ == 0) return;
    // CSR of A is CSC of A^T; factor A^T and solve with the transpose flag.
    double control[UMFPACK_CONTROL];
    double info[UMFPACK_INFO];
    umfpack_di_defaults(control);
    void* symbolic = nullptr;
    int status = umfpack_di_symbolic(n_, n_, offsets_.data(), indices_.data(), values_.data(), &symbolic, control, info);
    if (status != UMFPACK_OK) {
        if (symbolic) umfpack_di_free_symbolic(&symbolic);
        throw std::runtime_error("lu_factor: symbolic analysis failed (" + status_text(status) + ")");
    }
    status = umfpack_di_numeric(offsets_.data(), indices_.data(), values_.data(), symbolic, &numeric_, control, info);
    umfpack_di_free_symbolic(&symbolic);
    if (status == UMFPACK_WARNING_singular_matrix) {
        const Index row = zero_pivot_row(numeric_, n_);
        umfpack_di_free_numeric(&numeric_);
        throw SingularMatrixError("lu_factor: singular matrix, zero pivot at row " + std::to_string(row), row);
    }
    if (status != UMFPACK_OK) {
        if (numeric_) umfpack_di_free_numeric(&numeric_);
        throw std::runtime_error("lu_factor: numeric factorization failed (" + status_text(status) + ")");
    }
}

Factorization::~Factorization()
{
    if (numeric_) umfpack_di_free_numeric(&numeric_);
}

Factorization::Factorization(Factorization&& other) noexcept
    : n_(other.n_),
      offsets_(std::move(other.offsets_)),
      indices_(std::move(other.indices_)),
      values_(std::move(other.values_)),
      numeric_(other.numeric_)
{
    other.numeric_ = nullptr;
    other.n_ = 0;
}

Factorization& Factorization::operator=(Factorization&& other) noexcept
{
    if (this != &other) {
        if (numeric_) umfpack_di_free_numeric(&numeric_);
        n_ = other.n_;
        offsets_ = std::move(other.offsets_);
        indices_ = std::move(other.indices_);
        values_ = std::move(other.values_);
        numeric_ = other.numeric_;
        other.numeric_ = nullptr;
        other.n_ = 0;
    }
    return *this;
}

std::vector<double> Factorization::solve(std::span<const double> b) const
{
    if (b.size() != static_cast<std::size_t>(n_)) {
        throw std::invalid_argument("Factorization::solve: rhs length " + std::to_string(b.size()) + " != " + std::to_string(n_));
    }
    std::vector<double> x(b.size(), 0.0);
    if (n_ == 0) return x;
    double control[UMFPACK_CONTROL];
    double info[UMFPACK_INFO];
    umfpack_di_defaults(control);
    std::vector<int> wi(static_cast<std::size_t>(n_));
    std::vector<double> w(5 * static_cast<std::size_t>(n_));
    const int status = umfpack_di_wsolve(UMFPACK_At, offsets_.data(), indices_.data(), values_.data(), x.data(), b.data(),
                                         numeric_, control, info, wi.data(), w.data());
    if (status != UMFPACK_OK) throw std::runtime_error("Factorization::solve failed (" + status_text(status) + ")");
    return x;
}

Factorization lu_factor(const SparseMatrix& a) { return Factorization(a); }

double relative_residual(const SparseMatrix& a, std::span<const double> x, std::span<const double> b)
{
    std::vector<double> r = a * x;
    const double bn = norm2(b);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    if (bn == 0.0) return norm2(a * x);
    return norm2(r) / bn;
}

CgResult cg_solve(const SparseMatrix& a, std::span<const double> b, double tol, int max_iterations)
{
    if (a.rows() != a.cols() || b.size() != static_cast<std::size_t>(a.rows())) {
        throw std::invalid_argument("cg_solve: dimension mismatch");
    }
    const std::size_t n = b.size();
    CgResult out;
    out.x.assign(n, 0.0);
    const double bn = norm2(b);
    if (bn == 0.0) return out;

    std::vector<double> inv_diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a.coeff(static_cast<Index>(i), static_cast<Index>(i));
        if (!(d > 0.0)) throw std::invalid_argument("cg_solve: nonpositive diagonal at row " + std::to_string(i));
        inv_diag[i] = 1.0 / d;
    }
    std::vector<double> r(b.begin(), b.end());
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    std::vector<double> p = z;
    std::vector<double> ap(n);
    double rz = dot(r, z);
    double res = 1.0;
    for (int it = 1; it <= max_iterations; ++it) {
        a.multiply(p, ap);
        const double step = rz / dot(p, ap);
        axpy(step, p, out.x);
        axpy(-step, ap, r);
        res = norm2(r) / bn;
        out.iterations = it;
        out.residual = res;
        if (res <= tol) return out;
        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw ConvergenceError("cg_solve: no convergence after " + std::to_string(max_iterations) +
                               " iterations, relative residual " + std::to_string(res),
                           max_iterations, res);
}

}  // namespace biotsplit
