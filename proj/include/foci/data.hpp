#ifndef FOCI_DATA_HPP
#define FOCI_DATA_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "foci/sparse_matrix.hpp"
#include "foci/text.hpp"

namespace foci {

// User ids index rows of the ego network and the user-word matrix.
// Id 0 is the asker and is never a ranking candidate; 1..m are the asker's
// social connections.
using UserId = std::size_t;

struct Edge {
    UserId from;
    UserId to;
};

// Binary directed adjacency over the asker and connections. Entry (i, j)
// records an edge from user j to user i; the diagonal is always empty.
struct EgoNetwork {
    SparseMatrix adjacency;  // (m+1) x (m+1), all stored values 1.0

    std::size_t size() const { return adjacency.rows(); }
    std::size_t connection_count() const { return size() == 0 ? 0 : size() - 1; }
};

// Builds an EgoNetwork of `size` users. Duplicate records collapse to one
// entry and self-loops are dropped; an out-of-range id raises InputError
// naming the offending record.
EgoNetwork load_ego_network(const std::vector<Edge>& edges, std::size_t size);

// Sparse non-negative user-word weights: count * smoothed idf.
struct UserWordMatrix {
    SparseMatrix weights;  // (m+1) x w

    std::size_t users() const { return weights.rows(); }
    std::size_t word_count() const { return weights.cols(); }
};

// Raw per-user term counts, indexed by user id.
using WordCounts = std::vector<std::map<std::string, std::size_t>>;

// idf_j = ln((1 + user_count) / (1 + df_j)) + 1
double smoothed_idf(std::size_t user_count, std::size_t doc_freq);

// Builds the tf-idf matrix over words with document frequency >= min_doc_freq,
// in lexicographic column order. Throws InputError if no word survives the
// filter or a count is zero.
std::pair<UserWordMatrix, Vocabulary> build_user_word_matrix(
    const WordCounts& per_user_counts, std::size_t min_doc_freq = 2);

struct Question {
    std::string id;
    std::vector<std::string> words;    // preprocessed
    std::vector<UserId> accepted;      // sorted, subset of {1..m}
};

// One evaluation bundle: an ego instance plus its questions.
struct QAInstance {
    EgoNetwork network;
    UserWordMatrix content;
    Vocabulary vocabulary;
    std::vector<Question> questions;

    std::size_t user_count() const { return network.size(); }
};

}  // namespace foci

#endif
