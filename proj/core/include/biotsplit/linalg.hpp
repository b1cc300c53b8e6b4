#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "biotsplit/sparse.hpp"

namespace biotsplit {

/// Raised by lu_factor when a pivot vanishes.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(const std::string& what, Index row) : std::runtime_error(what), row_(row) {}
    [[nodiscard]] Index row() const noexcept { return row_; }

private:
    Index row_;
};

/// Raised by iterative solvers that exhaust their iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, int iterations, double residual)
        : std::runtime_error(what), iterations_(iterations), residual_(residual)
    {
    }
    [[nodiscard]] int iterations() const noexcept { return iterations_; }
    [[nodiscard]] double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

/// Sparse LU factors of a square matrix (UMFPACK, AMD/COLAMD ordering).
///
/// Immutable after construction. solve() allocates its own workspace, so
/// concurrent solves against one factorization are safe.
class Factorization {
public:
    explicit Factorization(const SparseMatrix& a);
    ~Factorization();
    Factorization(Factorization&&) noexcept;
    Factorization& operator=(Factorization&&) noexcept;
    Factorization(const Factorization&) = delete;
    Factorization& operator=(const Factorization&) = delete;

    [[nodiscard]] Index size() const noexcept { return n_; }
    [[nodiscard]] std::vector<double> solve(std::span<const double> b) const;

private:
    Index n_ = 0;
    std::vector<int> offsets_;
    std::vector<int> indices_;
    std::vector<double> values_;
    void* numeric_ = nullptr;
};

Factorization lu_factor(const SparseMatrix& a);

/// ||b - A x|| / ||b||, or ||A x|| when b = 0.
double relative_residual(const SparseMatrix& a, std::span<const double> x, std::span<const double> b);

struct CgResult {
    std::vector<double> x;
    int iterations = 0;
    double residual = 0.0;  ///< final relative residual
};

/// Jacobi-preconditioned conjugate gradients from a zero initial guess.
/// Throws ConvergenceError after `max_iterations` without reaching `tol`.
CgResult cg_solve(const SparseMatrix& a, std::span<const double> b, double tol, int max_iterations);

}  // namespace biotsplit
