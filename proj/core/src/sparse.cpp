#include "biotsplit/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace biotsplit {

SparseMatrix::SparseMatrix(Index rows, Index cols, std::vector<Index> row_offsets, std::vector<Index> col_indices,
                           std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values))
{
    if (rows_ < 0 || cols_ < 0) throw std::invalid_argument("SparseMatrix: negative dimension");
    if (row_offsets_.size() != static_cast<std::size_t>(rows_) + 1 || row_offsets_.front() != 0 ||
        static_cast<std::size_t>(row_offsets_.back()) != col_indices_.size() || col_indices_.size() != values_.size()) {
        throw std::invalid_argument("SparseMatrix: inconsistent CSR arrays");
    }
    for (Index r = 0; r < rows_; ++r) {
        for (Index k = row_offsets_[static_cast<std::size_t>(r)]; k < row_offsets_[static_cast<std::size_t>(r) + 1]; ++k) {
            const Index c = col_indices_[static_cast<std::size_t>(k)];
            if (c < 0 || c >= cols_) throw std::invalid_argument("SparseMatrix: column index out of range");
            if (k > row_offsets_[static_cast<std::size_t>(r)] && col_indices_[static_cast<std::size_t>(k) - 1] >= c) {
                throw std::invalid_argument("SparseMatrix: column indices not strictly increasing in row " + std::to_string(r));
            }
        }
    }
}

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols, std::span<const Triplet> triplets)
{
    std::vector<Index> count(static_cast<std::size_t>(rows) + 1, 0);
    for (const auto& t : triplets) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
            throw std::out_of_range("SparseMatrix::from_triplets: entry (" + std::to_string(t.row) + ", " +
                                    std::to_string(t.col) + ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
        }
        ++count[static_cast<std::size_t>(t.row) + 1];
    }
    std::partial_sum(count.begin(), count.end(), count.begin());

    // Bucket by row, keeping insertion order.
    std::vector<std::pair<Index, double>> bucket(triplets.size());
    std::vector<Index> cursor(count.begin(), count.end() - 1);
    for (const auto& t : triplets) {
        bucket[static_cast<std::size_t>(cursor[static_cast<std::size_t>(t.row)]++)] = {t.col, t.value};
    }

    std::vector<Index> offsets(static_cast<std::size_t>(rows) + 1, 0);
    std::vector<Index> cols_out;
    std::vector<double> vals_out;
    cols_out.reserve(triplets.size() / 2);
    vals_out.reserve(triplets.size() / 2);
    for (Index r = 0; r < rows; ++r) {
        auto first = bucket.begin() + count[static_cast<std::size_t>(r)];
        auto last = bucket.begin() + count[static_cast<std::size_t>(r) + 1];
        std::stable_sort(first, last, [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto it = first; it != last; ++it) {
            if (!cols_out.empty() && static_cast<Index>(cols_out.size()) > offsets[static_cast<std::size_t>(r)] &&
                cols_out.back() == it->first) {
                vals_out.back() += it->second;
            } else {
                cols_out.push_back(it->first);
                vals_out.push_back(it->second);
            }
        }
        offsets[static_cast<std::size_t>(r) + 1] = static_cast<Index>(cols_out.size());
    }
    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_offsets_ = std::move(offsets);
    m.col_indices_ = std::move(cols_out);
    m.values_ = std::move(vals_out);
    return m;
}

SparseMatrix SparseMatrix::identity(Index n)
{
    std::vector<Index> offsets(static_cast<std::size_t>(n) + 1);
    std::iota(offsets.begin(), offsets.end(), 0);
    std::vector<Index> cols(static_cast<std::size_t>(n));
    std::iota(cols.begin(), cols.end(), 0);
    return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

double SparseMatrix::coeff(Index r, Index c) const
{
    const auto first = col_indices_.begin() + row_offsets_[static_cast<std::size_t>(r)];
    const auto last = col_indices_.begin() + row_offsets_[static_cast<std::size_t>(r) + 1];
    const auto it = std::lower_bound(first, last, c);
    if (it == last || *it != c) return 0.0;
    return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
    if (x.size() != static_cast<std::size_t>(cols_) || y.size() != static_cast<std::size_t>(rows_)) {
        throw std::invalid_argument("SparseMatrix::multiply: dimension mismatch");
    }
    for (Index r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (Index k = row_offsets_[static_cast<std::size_t>(r)]; k < row_offsets_[static_cast<std::size_t>(r) + 1]; ++k) {
            s += values_[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(col_indices_[static_cast<std::size_t>(k)])];
        }
        y[static_cast<std::size_t>(r)] = s;
    }
}

std::vector<double> SparseMatrix::operator*(std::span<const double> x) const
{
    std::vector<double> y(static_cast<std::size_t>(rows_));
    multiply(x, y);
    return y;
}

std::vector<double> SparseMatrix::multiply_transpose(std::span<const double> x) const
{
    if (x.size() != static_cast<std::size_t>(rows_)) throw std::invalid_argument("SparseMatrix::multiply_transpose: dimension mismatch");
    std::vector<double> y(static_cast<std::size_t>(cols_), 0.0);
    for (Index r = 0; r < rows_; ++r) {
        const double xr = x[static_cast<std::size_t>(r)];
        for (Index k = row_offsets_[static_cast<std::size_t>(r)]; k < row_offsets_[static_cast<std::size_t>(r) + 1]; ++k) {
            y[static_cast<std::size_t>(col_indices_[static_cast<std::size_t>(k)])] += values_[static_cast<std::size_t>(k)] * xr;
        }
    }
    return y;
}

SparseMatrix SparseMatrix::transpose() const
{
    std::vector<Index> offsets(static_cast<std::size_t>(cols_) + 1, 0);
    for (Index c : col_indices_) ++offsets[static_cast<std::size_t>(c) + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<Index> cursor(offsets.begin(), offsets.end() - 1);
    std::vector<Index> cols(col_indices_.size());
    std::vector<double> vals(values_.size());
    for (Index r = 0; r < rows_; ++r) {
        for (Index k = row_offsets_[static_cast<std::size_t>(r)]; k < row_offsets_[static_cast<std::size_t>(r) + 1]; ++k) {
            const auto dst = static_cast<std::size_t>(cursor[static_cast<std::size_t>(col_indices_[static_cast<std::size_t>(k)])]++);
            cols[dst] = r;
            vals[dst] = values_[static_cast<std::size_t>(k)];
        }
    }
    return SparseMatrix(cols_, rows_, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::scaled(double s) const
{
    SparseMatrix m = *this;
    for (double& v : m.values_) v *= s;
    return m;
}

double SparseMatrix::max_asymmetry() const
{
    if (rows_ != cols_) throw std::invalid_argument("max_asymmetry: matrix is not square");
    double worst = 0.0;
    for (Index r = 0; r < rows_; ++r) {
        for (Index k = row_offsets_[static_cast<std::size_t>(r)]; k < row_offsets_[static_cast<std::size_t>(r) + 1]; ++k) {
            const Index c = col_indices_[static_cast<std::size_t>(k)];
            worst = std::max(worst, std::abs(values_[static_cast<std::size_t>(k)] - coeff(c, r)));
        }
    }
    return worst;
}

double SparseMatrix::bilinear(std::span<const double> x, std::span<const double> y) const
{
    const std::vector<double> ay = *this * y;
    return dot(x, ay);
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha, double beta)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shape mismatch");
    return BlockMatrixBuilder(a.rows(), a.cols()).add(0, 0, a, alpha).add(0, 0, b, beta).build();
}

BlockMatrixBuilder& BlockMatrixBuilder::add(Index row_offset, Index col_offset, const SparseMatrix& block, double scale)
{
    if (row_offset < 0 || col_offset < 0 || row_offset + block.rows() > rows_ || col_offset + block.cols() > cols_) {
        throw std::out_of_range("BlockMatrixBuilder: block does not fit");
    }
    triplets_.reserve(triplets_.size() + block.nonzeros());
    for (Index r = 0; r < block.rows(); ++r) {
        for (Index k = block.row_offsets()[static_cast<std::size_t>(r)]; k < block.row_offsets()[static_cast<std::size_t>(r) + 1]; ++k) {
            triplets_.push_back({row_offset + r, col_offset + block.col_indices()[static_cast<std::size_t>(k)],
                                 scale * block.values()[static_cast<std::size_t>(k)]});
        }
    }
    return *this;
}

SparseMatrix BlockMatrixBuilder::build() const
{
    return SparseMatrix::from_triplets(rows_, cols_, triplets_);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a)
{
    const auto old_precision = out.precision(17);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << a.nonzeros() << '\n';
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index k = a.row_offsets()[static_cast<std::size_t>(r)]; k < a.row_offsets()[static_cast<std::size_t>(r) + 1]; ++k) {
            out << r + 1 << ' ' << a.col_indices()[static_cast<std::size_t>(k)] + 1 << ' '
                << a.values()[static_cast<std::size_t>(k)] << '\n';
        }
    }
    out.precision(old_precision);
}

double dot(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a)
{
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y)
{
    if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

std::vector<double> subtract(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) throw std::invalid_argument("subtract: length mismatch");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

}  // namespace biotsplit
