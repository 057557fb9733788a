#ifndef FOCI_SPARSE_MATRIX_HPP
#define FOCI_SPARSE_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace foci {

// Compressed-row sparse matrix. Stored values are strictly positive and
// column ids are strictly increasing within each row; explicit zeros are
// dropped at construction.
class SparseMatrix {
public:
    struct Triplet {
        std::size_t row;
        std::size_t col;
        double value;
    };

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), row_offsets_(rows + 1, 0) {}

    // Builds from unordered triplets. Duplicates are summed; entries that
    // end up zero are dropped. Throws ContractError on out-of-range indices
    // or negative values.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                      std::vector<Triplet> triplets);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return values_.size(); }

    // Entries of row i as parallel spans of column ids and values.
    std::span<const std::size_t> row_cols(std::size_t i) const {
        return {col_indices_.data() + row_offsets_[i],
                row_offsets_[i + 1] - row_offsets_[i]};
    }
    std::span<const double> row_values(std::size_t i) const {
        return {values_.data() + row_offsets_[i],
                row_offsets_[i + 1] - row_offsets_[i]};
    }

    std::span<const std::size_t> row_offsets() const { return row_offsets_; }
    std::span<const std::size_t> col_indices() const { return col_indices_; }
    std::span<const double> values() const { return values_; }

    double at(std::size_t i, std::size_t j) const;

    bool operator==(const SparseMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_offsets_;
    std::vector<std::size_t> col_indices_;
    std::vector<double> values_;
};

}  // namespace foci

#endif
