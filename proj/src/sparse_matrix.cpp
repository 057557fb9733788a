#include "foci/sparse_matrix.hpp"

#include <algorithm>
#include <string>

#include "foci/errors.hpp"

namespace foci {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> triplets) {
    for (const Triplet& t : triplets) {
        if (t.row >= rows || t.col >= cols) {
            throw ContractError("sparse triplet (" + std::to_string(t.row) + ", " +
                                std::to_string(t.col) + ") outside " +
                                std::to_string(rows) + "x" + std::to_string(cols));
        }
        if (t.value < 0.0) {
            throw ContractError("sparse value at (" + std::to_string(t.row) + ", " +
                                std::to_string(t.col) + ") is negative");
        }
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrix m(rows, cols);
    m.col_indices_.reserve(triplets.size());
    m.values_.reserve(triplets.size());
    std::size_t i = 0;
    while (i < triplets.size()) {
        double sum = triplets[i].value;
        std::size_t j = i + 1;
        while (j < triplets.size() && triplets[j].row == triplets[i].row &&
               triplets[j].col == triplets[i].col) {
            sum += triplets[j].value;
            ++j;
        }
        if (sum > 0.0) {
            m.col_indices_.push_back(triplets[i].col);
            m.values_.push_back(sum);
            ++m.row_offsets_[triplets[i].row + 1];
        }
        i = j;
    }
    for (std::size_t r = 0; r < rows; ++r) {
        m.row_offsets_[r + 1] += m.row_offsets_[r];
    }
    return m;
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
    const auto cols = row_cols(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
}

}  // namespace foci
