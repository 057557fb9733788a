#ifndef FOCI_IO_HPP
#define FOCI_IO_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "foci/data.hpp"
#include "foci/eval.hpp"
#include "foci/solver.hpp"
#include "foci/synthetic.hpp"

namespace foci {

// All formats are UTF-8 text. Parse errors name the file and line.

// One edge per line, `from<TAB>to`; '#' lines are comments.
std::vector<Edge> read_edge_file(const std::filesystem::path& path);
void write_edge_file(const std::filesystem::path& path, const EgoNetwork& network);

// `user_id<TAB>word<TAB>count`, counts strictly positive.
WordCounts read_content_file(const std::filesystem::path& path);
void write_content_file(const std::filesystem::path& path, const WordCounts& counts);

// One JSON object per line: {"id": str, "words": [str], "accepted": [int]}.
std::vector<Question> read_questions_file(const std::filesystem::path& path);
void write_questions_file(const std::filesystem::path& path,
                          const std::vector<Question>& questions);

// Loads network and content only; questions are left empty. The user count
// is one plus the largest id seen in either file.
QAInstance load_instance_files(const std::filesystem::path& network_path,
                               const std::filesystem::path& content_path,
                               std::size_t min_doc_freq = 2);

// Loads an instance from all three files.
QAInstance load_qa_instance(const std::filesystem::path& network_path,
                            const std::filesystem::path& content_path,
                            const std::filesystem::path& questions_path,
                            std::size_t min_doc_freq = 2);

// Header `k m w`, then whitespace-separated row-major values of U, V, P.
// Values are printed as shortest round-trip decimals, so read-back is exact.
void write_factor_file(const std::filesystem::path& path, const FactorSet& factors);
FactorSet read_factor_file(const std::filesystem::path& path);

// `rank<TAB>user_id<TAB>score` with 9-significant-digit scores; one block per
// question introduced by `# <question id>`.
void write_ranked_lists(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, RankedList>>& lists);

std::string trace_json(const FitTrace& trace);
std::string report_json(const EvalReport& report);
std::string reports_json(const std::vector<EvalReport>& reports);
std::string sweep_json(const SweepGrid& grid);
std::string manifest_json(const SyntheticSpec& spec, const SyntheticInstance& instance);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace foci

#endif
