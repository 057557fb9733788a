#include "foci/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "foci/errors.hpp"
#include "foci/rng.hpp"

namespace foci {

namespace {

constexpr std::size_t kMaxRedraws = 32;
constexpr std::size_t kQuestionLength = 5;

std::string word_name(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "w%06zu", index);
    return buf;
}

std::string question_name(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "q%04zu", index);
    return buf;
}

struct Draw {
    EgoNetwork network;
    WordCounts word_counts;
    std::vector<Question> questions;
    bool accepted_empty = false;
};

Draw draw_instance(const SyntheticSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t users = spec.user_count();
    const std::size_t per = spec.users_per_community;
    auto community_of = [per](std::size_t user) { return user / per; };

    std::vector<Edge> edges;
    for (std::size_t to = 0; to < users; ++to) {
        for (std::size_t from = 0; from < users; ++from) {
            if (from == to) continue;
            const double p =
                community_of(from) == community_of(to) ? spec.p_in : spec.p_out;
            if (rng.bernoulli(p)) edges.push_back({from, to});
        }
    }
    Draw draw;
    draw.network = load_ego_network(edges, users);

    draw.word_counts.resize(users);
    for (std::size_t i = 0; i < users; ++i) {
        const std::size_t own = community_of(i);
        for (std::size_t w = 0; w < spec.word_count(); ++w) {
            const double rate =
                w / spec.words_per_topic == own ? spec.in_topic_rate : spec.off_topic_rate;
            const std::size_t count = rng.poisson(rate);
            if (count > 0) draw.word_counts[i][word_name(w)] = count;
        }
    }

    // Accepted answerers: the asker's community members with an edge to the
    // asker, i.e. adjacency entry (0, j).
    std::vector<UserId> accepted;
    for (std::size_t j = 1; j < per && j < users; ++j) {
        if (draw.network.adjacency.at(0, j) != 0.0) accepted.push_back(j);
    }
    draw.accepted_empty = accepted.empty();

    std::size_t question_index = 0;
    for (std::size_t topic = 0; topic < spec.communities; ++topic) {
        for (std::size_t q = 0; q < spec.questions_per_topic; ++q) {
            Question question;
            question.id = question_name(question_index++);
            for (std::size_t t = 0; t < std::min(kQuestionLength, spec.words_per_topic); ++t) {
                const std::size_t w =
                    topic * spec.words_per_topic + rng.below(spec.words_per_topic);
                question.words.push_back(word_name(w));
            }
            question.accepted = accepted;
            draw.questions.push_back(std::move(question));
        }
    }
    return draw;
}

}  // namespace

void SyntheticSpec::validate() const {
    if (communities < 2) throw ContractError("synthetic spec: communities must be >= 2");
    if (users_per_community == 0) throw ContractError("synthetic spec: users per community must be >= 1");
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0) {
        throw ContractError("synthetic spec: link probabilities must lie in [0, 1]");
    }
    if (!(p_in > p_out)) throw ContractError("synthetic spec: p_in must exceed p_out");
    if (words_per_topic == 0) throw ContractError("synthetic spec: words per topic must be >= 1");
    if (!(in_topic_rate > 0.0) || !(off_topic_rate > 0.0)) {
        throw ContractError("synthetic spec: word rates must be positive");
    }
    if (!(in_topic_rate > off_topic_rate)) {
        throw ContractError("synthetic spec: in-topic rate must exceed off-topic rate");
    }
    if (questions_per_topic == 0) throw ContractError("synthetic spec: questions per topic must be >= 1");
}

QAInstance SyntheticInstance::to_qa_instance() const {
    return QAInstance{network, content, vocabulary, questions};
}

SyntheticInstance generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    for (std::size_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
        Draw draw = draw_instance(spec, mix64(spec.seed + attempt));
        if (draw.accepted_empty) continue;

        SyntheticInstance instance;
        instance.network = std::move(draw.network);
        instance.word_counts = std::move(draw.word_counts);
        instance.questions = std::move(draw.questions);
        try {
            auto [matrix, vocab] = build_user_word_matrix(instance.word_counts);
            instance.content = std::move(matrix);
            instance.vocabulary = std::move(vocab);
        } catch (const InputError&) {
            continue;  // vocabulary collapsed; redraw
        }
        return instance;
    }
    throw InputError("synthetic generation failed: no draw produced accepted answerers within " +
                     std::to_string(kMaxRedraws) + " attempts");
}

}  // namespace foci
