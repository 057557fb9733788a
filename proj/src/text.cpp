#include "foci/text.hpp"

#include <cctype>

namespace foci {

std::vector<std::string> preprocess_text(std::string_view raw,
                                         const StopwordSet& stopwords,
                                         const Stemmer& stemmer) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.size() >= 2 && !stopwords.contains(current)) {
            tokens.push_back(stemmer ? stemmer(current) : current);
        }
        current.clear();
    };
    for (char ch : raw) {
        const auto uc = static_cast<unsigned char>(ch);
        if (std::isalnum(uc)) {
            current.push_back(static_cast<char>(std::tolower(uc)));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> words, std::vector<std::size_t> doc_freqs)
    : words_(std::move(words)), doc_freqs_(std::move(doc_freqs)) {
    index_.reserve(words_.size());
    for (std::size_t j = 0; j < words_.size(); ++j) index_[words_[j]] = j;
}

std::optional<std::size_t> Vocabulary::find(std::string_view word) const {
    const auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

}  // namespace foci
