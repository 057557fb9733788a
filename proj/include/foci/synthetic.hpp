#ifndef FOCI_SYNTHETIC_HPP
#define FOCI_SYNTHETIC_HPP

#include <cstdint>

#include "foci/data.hpp"

namespace foci {

// Planted-partition generator parameters. Users split into `communities`
// blocks of `users_per_community`; user 0 (the asker) sits in block 0. Each
// block owns a disjoint set of `words_per_topic` words; word counts are
// Poisson with the in-topic rate inside a user's own block and the off-topic
// rate elsewhere.
struct SyntheticSpec {
    std::size_t communities = 5;
    std::size_t users_per_community = 20;
    double p_in = 0.3;
    double p_out = 0.02;
    std::size_t words_per_topic = 30;
    double in_topic_rate = 3.0;
    double off_topic_rate = 0.1;
    std::size_t questions_per_topic = 4;
    std::uint64_t seed = 7;

    std::size_t user_count() const { return communities * users_per_community; }
    std::size_t word_count() const { return communities * words_per_topic; }

    // Throws ContractError unless communities >= 2, p_in > p_out,
    // in_topic_rate > off_topic_rate and probabilities lie in [0, 1].
    void validate() const;
};

struct SyntheticInstance {
    EgoNetwork network;
    WordCounts word_counts;   // raw counts, what the content file stores
    UserWordMatrix content;   // tf-idf built from word_counts (min_df 2)
    Vocabulary vocabulary;
    std::vector<Question> questions;

    QAInstance to_qa_instance() const;
};

// Pure function of spec.seed. Questions are drawn per topic block
// (questions_per_topic each); every accepted set is the asker's
// within-community connections that have an edge to the asker. Instances
// whose accepted set comes out empty are redrawn from a derived seed, a
// bounded number of times, after which InputError is thrown.
SyntheticInstance generate_synthetic(const SyntheticSpec& spec);

}  // namespace foci

#endif
