#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "biotsplit/mesh.hpp"

namespace biotsplit {

struct Triplet {
    Index row;
    Index col;
    double value;
};

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within each row.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(Index rows, Index cols, std::vector<Index> row_offsets, std::vector<Index> col_indices,
                 std::vector<double> values);

    /// Duplicate (row, col) entries are summed in insertion order, so the
    /// result is bit-identical for identical triplet sequences.
    static SparseMatrix from_triplets(Index rows, Index cols, std::span<const Triplet> triplets);
    static SparseMatrix identity(Index n);

    [[nodiscard]] Index rows() const noexcept { return rows_; }
    [[nodiscard]] Index cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t nonzeros() const noexcept { return values_.size(); }
    [[nodiscard]] const std::vector<Index>& row_offsets() const noexcept { return row_offsets_; }
    [[nodiscard]] const std::vector<Index>& col_indices() const noexcept { return col_indices_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

    /// Entry (r, c), zero when not stored.
    [[nodiscard]] double coeff(Index r, Index c) const;

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    [[nodiscard]] std::vector<double> operator*(std::span<const double> x) const;
    /// y = A^T x
    [[nodiscard]] std::vector<double> multiply_transpose(std::span<const double> x) const;

    [[nodiscard]] SparseMatrix transpose() const;
    [[nodiscard]] SparseMatrix scaled(double s) const;
    /// max |A_ij - A_ji|; requires a square matrix.
    [[nodiscard]] double max_asymmetry() const;

    /// Quadratic form x^T A y.
    [[nodiscard]] double bilinear(std::span<const double> x, std::span<const double> y) const;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Index> row_offsets_{0};
    std::vector<Index> col_indices_;
    std::vector<double> values_;
};

/// alpha * A + beta * B with matching shapes.
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha = 1.0, double beta = 1.0);

/// Assembles a matrix out of scaled blocks placed at row/column offsets.
class BlockMatrixBuilder {
public:
    BlockMatrixBuilder(Index rows, Index cols) : rows_(rows), cols_(cols) {}
    BlockMatrixBuilder& add(Index row_offset, Index col_offset, const SparseMatrix& block, double scale = 1.0);
    [[nodiscard]] SparseMatrix build() const;

private:
    Index rows_;
    Index cols_;
    std::vector<Triplet> triplets_;
};

/// Matrix Market coordinate/real/general format, 1-based indices.
void write_matrix_market(std::ostream& out, const SparseMatrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
std::vector<double> subtract(std::span<const double> a, std::span<const double> b);

}  // namespace biotsplit
