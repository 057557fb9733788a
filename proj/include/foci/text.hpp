#ifndef FOCI_TEXT_HPP
#define FOCI_TEXT_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace foci {

using StopwordSet = std::unordered_set<std::string>;
using Stemmer = std::function<std::string(const std::string&)>;

// Lowercases, splits on non-alphanumerics, drops stopwords and tokens
// shorter than 2 characters. The stemmer hook is applied last and is off by
// default. An empty result is legal; emptiness is checked downstream.
std::vector<std::string> preprocess_text(std::string_view raw,
                                         const StopwordSet& stopwords,
                                         const Stemmer& stemmer = {});

// The retained word list in lexicographic column order, with per-word
// document frequencies.
class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::vector<std::string> words, std::vector<std::size_t> doc_freqs);

    std::size_t size() const { return words_.size(); }
    const std::string& word(std::size_t j) const { return words_[j]; }
    std::size_t doc_freq(std::size_t j) const { return doc_freqs_[j]; }
    const std::vector<std::string>& words() const { return words_; }

    std::optional<std::size_t> find(std::string_view word) const;

private:
    std::vector<std::string> words_;
    std::vector<std::size_t> doc_freqs_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace foci

#endif
