#include "foci/data.hpp"

#include <cmath>
#include <map>
#include <string>

#include "foci/errors.hpp"

namespace foci {

EgoNetwork load_ego_network(const std::vector<Edge>& edges, std::size_t size) {
    std::vector<SparseMatrix::Triplet> triplets;
    triplets.reserve(edges.size());
    for (std::size_t r = 0; r < edges.size(); ++r) {
        const Edge& e = edges[r];
        if (e.from >= size || e.to >= size) {
            throw InputError("edge record " + std::to_string(r) + " (from=" +
                             std::to_string(e.from) + ", to=" + std::to_string(e.to) +
                             ") outside user range [0, " + std::to_string(size) + ")");
        }
        if (e.from == e.to) continue;
        // An edge from j to i lands at row i, column j.
        triplets.push_back({e.to, e.from, 1.0});
    }
    // Duplicates must collapse to a single 1, not sum.
    std::map<std::pair<std::size_t, std::size_t>, double> unique;
    for (const auto& t : triplets) unique[{t.row, t.col}] = 1.0;
    triplets.clear();
    for (const auto& [pos, value] : unique) triplets.push_back({pos.first, pos.second, value});
    return EgoNetwork{SparseMatrix::from_triplets(size, size, std::move(triplets))};
}

double smoothed_idf(std::size_t user_count, std::size_t doc_freq) {
    return std::log((1.0 + static_cast<double>(user_count)) /
                    (1.0 + static_cast<double>(doc_freq))) + 1.0;
}

std::pair<UserWordMatrix, Vocabulary> build_user_word_matrix(
    const WordCounts& per_user_counts, std::size_t min_doc_freq) {
    const std::size_t users = per_user_counts.size();

    std::map<std::string, std::size_t> doc_freq;  // lexicographic order
    for (const auto& counts : per_user_counts) {
        for (const auto& [word, count] : counts) {
            if (count == 0) {
                throw InputError("word count for \"" + word + "\" must be positive");
            }
            ++doc_freq[word];
        }
    }

    std::vector<std::string> words;
    std::vector<std::size_t> freqs;
    for (const auto& [word, df] : doc_freq) {
        if (df >= min_doc_freq) {
            words.push_back(word);
            freqs.push_back(df);
        }
    }
    if (words.empty()) {
        throw InputError("vocabulary is empty after the min document frequency filter (min_df=" +
                         std::to_string(min_doc_freq) + ")");
    }
    Vocabulary vocab(std::move(words), std::move(freqs));

    std::vector<SparseMatrix::Triplet> triplets;
    for (std::size_t i = 0; i < users; ++i) {
        for (const auto& [word, count] : per_user_counts[i]) {
            const auto j = vocab.find(word);
            if (!j) continue;
            const double weight =
                static_cast<double>(count) * smoothed_idf(users, vocab.doc_freq(*j));
            triplets.push_back({i, *j, weight});
        }
    }
    UserWordMatrix matrix{SparseMatrix::from_triplets(users, vocab.size(), std::move(triplets))};
    return {std::move(matrix), std::move(vocab)};
}

}  // namespace foci
