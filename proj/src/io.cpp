#include "foci/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "foci/errors.hpp"

namespace foci {

namespace {

using nlohmann::json;

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
    throw InputError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::size_t parse_index(std::string_view token, const std::filesystem::path& path,
                        std::size_t line, const char* what) {
    std::size_t value = 0;
    const char* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        parse_fail(path, line, std::string("bad ") + what + " \"" + std::string(token) + "\"");
    }
    return value;
}

// Shortest decimal that round-trips the double exactly.
std::string format_exact(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string format_score(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

json metrics_json(const EvalReport& report) {
    return json{{"method", report.method},
                {"mrr", report.mrr},
                {"map_at_k", report.map_at_k},
                {"ndcg_at_k", report.ndcg_at_k},
                {"k_cutoff", report.k_cutoff},
                {"questions_evaluated", report.questions_evaluated},
                {"questions_skipped", report.questions_skipped}};
}

}  // namespace

std::vector<Edge> read_edge_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<Edge> edges;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = strip_cr(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_tabs(line);
        if (fields.size() != 2) parse_fail(path, line_no, "expected `from<TAB>to`");
        edges.push_back({parse_index(fields[0], path, line_no, "from id"),
                         parse_index(fields[1], path, line_no, "to id")});
    }
    return edges;
}

void write_edge_file(const std::filesystem::path& path, const EgoNetwork& network) {
    std::ofstream out = open_output(path);
    out << "# from\tto\n";
    // Adjacency stores (to, from); emit in from-major order for readability.
    std::vector<Edge> edges;
    for (std::size_t to = 0; to < network.size(); ++to) {
        for (std::size_t from : network.adjacency.row_cols(to)) {
            edges.push_back({from, to});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    for (const Edge& e : edges) out << e.from << '\t' << e.to << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

WordCounts read_content_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    WordCounts counts;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = strip_cr(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_tabs(line);
        if (fields.size() != 3) parse_fail(path, line_no, "expected `user<TAB>word<TAB>count`");
        const std::size_t user = parse_index(fields[0], path, line_no, "user id");
        const std::size_t count = parse_index(fields[2], path, line_no, "count");
        if (count == 0) parse_fail(path, line_no, "count must be positive");
        if (fields[1].empty()) parse_fail(path, line_no, "empty word");
        if (user >= counts.size()) counts.resize(user + 1);
        counts[user][std::string(fields[1])] += count;
    }
    return counts;
}

void write_content_file(const std::filesystem::path& path, const WordCounts& counts) {
    std::ofstream out = open_output(path);
    out << "# user\tword\tcount\n";
    for (std::size_t user = 0; user < counts.size(); ++user) {
        for (const auto& [word, count] : counts[user]) {
            out << user << '\t' << word << '\t' << count << '\n';
        }
    }
    if (!out) throw IoError("write failed for " + path.string());
}

std::vector<Question> read_questions_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<Question> questions;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = strip_cr(raw);
        if (line.empty()) continue;
        json parsed;
        try {
            parsed = json::parse(line);
        } catch (const json::exception& e) {
            parse_fail(path, line_no, std::string("bad JSON: ") + e.what());
        }
        Question q;
        try {
            q.id = parsed.at("id").get<std::string>();
            q.words = parsed.at("words").get<std::vector<std::string>>();
            q.accepted = parsed.at("accepted").get<std::vector<UserId>>();
        } catch (const json::exception& e) {
            parse_fail(path, line_no, std::string("bad question object: ") + e.what());
        }
        if (q.words.empty()) parse_fail(path, line_no, "question has no words");
        std::sort(q.accepted.begin(), q.accepted.end());
        questions.push_back(std::move(q));
    }
    return questions;
}

void write_questions_file(const std::filesystem::path& path,
                          const std::vector<Question>& questions) {
    std::ofstream out = open_output(path);
    for (const Question& q : questions) {
        const json obj{{"id", q.id}, {"words", q.words}, {"accepted", q.accepted}};
        out << obj.dump() << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
}

QAInstance load_instance_files(const std::filesystem::path& network_path,
                               const std::filesystem::path& content_path,
                               std::size_t min_doc_freq) {
    const std::vector<Edge> edges = read_edge_file(network_path);
    WordCounts counts = read_content_file(content_path);

    std::size_t users = counts.size();
    for (const Edge& e : edges) users = std::max({users, e.from + 1, e.to + 1});
    counts.resize(users);

    QAInstance instance;
    instance.network = load_ego_network(edges, users);
    auto [matrix, vocab] = build_user_word_matrix(counts, min_doc_freq);
    instance.content = std::move(matrix);
    instance.vocabulary = std::move(vocab);
    return instance;
}

QAInstance load_qa_instance(const std::filesystem::path& network_path,
                            const std::filesystem::path& content_path,
                            const std::filesystem::path& questions_path,
                            std::size_t min_doc_freq) {
    QAInstance instance = load_instance_files(network_path, content_path, min_doc_freq);
    instance.questions = read_questions_file(questions_path);

    const std::size_t users = instance.user_count();
    for (const Question& q : instance.questions) {
        if (q.accepted.empty()) {
            throw InputError("question " + q.id + ": accepted set is empty");
        }
        for (UserId user : q.accepted) {
            if (user == 0 || user >= users) {
                throw InputError("question " + q.id + ": accepted user " +
                                 std::to_string(user) + " outside candidate range [1, " +
                                 std::to_string(users) + ")");
            }
        }
    }
    return instance;
}

void write_factor_file(const std::filesystem::path& path, const FactorSet& factors) {
    std::ofstream out = open_output(path);
    const std::size_t k = factors.u.cols();
    const std::size_t users = factors.u.rows();
    const std::size_t words = factors.p.rows();
    out << k << ' ' << (users == 0 ? 0 : users - 1) << ' ' << words << '\n';
    const auto dump = [&out](const DenseMatrix& m) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (j) out << ' ';
                out << format_exact(m(i, j));
            }
            out << '\n';
        }
    };
    dump(factors.u);
    dump(factors.v);
    dump(factors.p);
    if (!out) throw IoError("write failed for " + path.string());
}

FactorSet read_factor_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::size_t k = 0, m = 0, w = 0;
    if (!(in >> k >> m >> w)) {
        throw InputError(path.string() + ": bad factor header; expected `k m w`");
    }
    const auto load = [&](DenseMatrix& out, std::size_t rows, std::size_t cols,
                          const char* name) {
        out = DenseMatrix(rows, cols);
        std::string token;
        for (std::size_t i = 0; i < rows * cols; ++i) {
            if (!(in >> token)) {
                throw InputError(path.string() + ": truncated " + name + " block");
            }
            double value = 0.0;
            const auto [ptr, ec] =
                std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc() || ptr != token.data() + token.size()) {
                throw InputError(path.string() + ": bad value \"" + token + "\" in " + name);
            }
            out.values()[i] = value;
        }
    };
    FactorSet factors;
    load(factors.u, m + 1, k, "U");
    load(factors.v, k, k, "V");
    load(factors.p, w, k, "P");
    return factors;
}

void write_ranked_lists(const std::filesystem::path& path,
                        const std::vector<std::pair<std::string, RankedList>>& lists) {
    std::ofstream out = open_output(path);
    for (const auto& [id, list] : lists) {
        out << "# " << id << '\n';
        for (std::size_t i = 0; i < list.size(); ++i) {
            out << (i + 1) << '\t' << list[i].user << '\t' << format_score(list[i].score)
                << '\n';
        }
    }
    if (!out) throw IoError("write failed for " + path.string());
}

std::string trace_json(const FitTrace& trace) {
    const json doc{{"objective", trace.objective},
                   {"iterations", trace.iterations},
                   {"stop_reason",
                    trace.stop == StopReason::kConverged ? "converged" : "max_iters"}};
    return doc.dump(2) + "\n";
}

std::string report_json(const EvalReport& report) {
    return metrics_json(report).dump(2) + "\n";
}

std::string reports_json(const std::vector<EvalReport>& reports) {
    json arr = json::array();
    for (const EvalReport& report : reports) arr.push_back(metrics_json(report));
    return arr.dump(2) + "\n";
}

std::string sweep_json(const SweepGrid& grid) {
    json cells = json::array();
    for (const SweepCell& cell : grid.cells) {
        json entry{{"alpha", cell.alpha}, {"beta", cell.beta}};
        if (cell.error.empty()) {
            entry["metrics"] = cell.metrics;
        } else {
            entry["error"] = cell.error;
        }
        cells.push_back(std::move(entry));
    }
    const json doc{{"method", "sweep"},
                   {"alphas", grid.alphas},
                   {"betas", grid.betas},
                   {"k_cutoff", grid.k_cutoff},
                   {"cells", cells}};
    return doc.dump(2) + "\n";
}

std::string manifest_json(const SyntheticSpec& spec, const SyntheticInstance& instance) {
    const json doc{
        {"spec",
         {{"communities", spec.communities},
          {"users_per_community", spec.users_per_community},
          {"p_in", spec.p_in},
          {"p_out", spec.p_out},
          {"words_per_topic", spec.words_per_topic},
          {"in_topic_rate", spec.in_topic_rate},
          {"off_topic_rate", spec.off_topic_rate},
          {"questions_per_topic", spec.questions_per_topic},
          {"seed", spec.seed}}},
        {"users", instance.network.size()},
        {"edges", instance.network.adjacency.nnz()},
        {"vocabulary", instance.vocabulary.size()},
        {"questions", instance.questions.size()}};
    return doc.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out = open_output(path);
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace foci
