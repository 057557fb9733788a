// Command-line front end: synth, fit, rank, eval, sweep.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "foci/errors.hpp"
#include "foci/eval.hpp"
#include "foci/io.hpp"
#include "foci/ranking.hpp"
#include "foci/solver.hpp"
#include "foci/synthetic.hpp"

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
    std::string network;
    std::string content;
    std::string questions;
    std::string factors;
    std::string out;
    foci::HyperParams params;
    std::string metric = "euclidean";
    std::size_t cutoff = 5;
    std::size_t trials = 100;
    std::size_t jobs = 1;
    bool verbose = false;
};

void add_hyper_flags(CLI::App* cmd, foci::HyperParams& params) {
    cmd->add_option("--alpha", params.alpha, "Content weight");
    cmd->add_option("--beta", params.beta, "Network weight");
    cmd->add_option("--gamma", params.gamma, "Regularization weight");
    cmd->add_option("--k", params.k, "Latent foci count");
    cmd->add_option("--max-iters", params.max_iters, "Iteration cap");
    cmd->add_option("--tol", params.tol, "Relative objective-change stop threshold");
    cmd->add_option("--seed", params.seed, "Random seed");
}

std::vector<double> parse_csv_doubles(const std::string& csv, const std::string& flag) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string token =
            csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            std::size_t used = 0;
            values.push_back(std::stod(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw foci::InputError("bad value \"" + token + "\" in " + flag);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

foci::QAInstance load_instance(const CommonOptions& opt) {
    return foci::load_qa_instance(opt.network, opt.content, opt.questions);
}

int run_synth(const CommonOptions& opt, const foci::SyntheticSpec& spec) {
    const foci::SyntheticInstance instance = foci::generate_synthetic(spec);
    const fs::path dir(opt.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw foci::IoError("cannot create output directory " + dir.string());

    foci::write_edge_file(dir / "network.tsv", instance.network);
    foci::write_content_file(dir / "content.tsv", instance.word_counts);
    foci::write_questions_file(dir / "questions.jsonl", instance.questions);
    foci::write_text_file(dir / "manifest.json", foci::manifest_json(spec, instance));
    if (opt.verbose) {
        std::cerr << "synth: " << instance.network.size() << " users, "
                  << instance.network.adjacency.nnz() << " edges, "
                  << instance.vocabulary.size() << " words, "
                  << instance.questions.size() << " questions -> " << dir.string() << "\n";
    }
    return 0;
}

int run_fit(const CommonOptions& opt) {
    const foci::QAInstance instance = foci::load_instance_files(opt.network, opt.content);
    const auto [factors, trace] =
        foci::fit(instance.content.weights, instance.network.adjacency, opt.params);
    foci::write_factor_file(opt.out, factors);
    foci::write_text_file(opt.out + ".trace.json", foci::trace_json(trace));
    if (opt.verbose) {
        std::cerr << "fit: " << trace.iterations << " iterations, objective "
                  << trace.objective.front() << " -> " << trace.objective.back() << "\n";
    }
    return 0;
}

int run_rank(const CommonOptions& opt) {
    const foci::SimilarityMetric metric = foci::parse_metric(opt.metric);
    const foci::FactorSet factors = foci::read_factor_file(opt.factors);
    foci::WordCounts counts = foci::read_content_file(opt.content);
    counts.resize(std::max(counts.size(), factors.u.rows()));
    const auto [matrix, vocab] = foci::build_user_word_matrix(counts);
    if (vocab.size() != factors.p.rows()) {
        throw foci::InputError("factor file has " + std::to_string(factors.p.rows()) +
                               " word rows but the content file yields " +
                               std::to_string(vocab.size()));
    }
    const std::vector<foci::Question> questions = foci::read_questions_file(opt.questions);

    std::vector<std::pair<std::string, foci::RankedList>> lists;
    for (const foci::Question& q : questions) {
        try {
            lists.emplace_back(q.id, foci::rank_answerers(q, factors, vocab, metric));
        } catch (const foci::OutOfVocabularyError&) {
            std::cerr << "warning: question " << q.id
                      << ": no words in vocabulary; skipped\n";
        }
    }
    foci::write_ranked_lists(opt.out, lists);
    return 0;
}

int run_eval(const CommonOptions& opt) {
    const foci::SimilarityMetric metric = foci::parse_metric(opt.metric);
    const foci::QAInstance instance = load_instance(opt);
    opt.params.validate();

    std::vector<foci::EvalReport> reports;
    reports.push_back(foci::evaluate(instance,
                                     foci::model_ranker(instance, opt.params, metric),
                                     opt.cutoff, "model"));
    const std::size_t m = instance.network.connection_count();
    reports.push_back(foci::evaluate(
        instance,
        [&](const foci::Question& q) {
            return foci::baseline_random(q, m, opt.trials, opt.params.seed);
        },
        opt.cutoff, "random"));
    reports.push_back(foci::evaluate(
        instance,
        foci::baseline_shared_foci(instance, foci::SharedFociMode::kNetwork, opt.params,
                                   metric),
        opt.cutoff, "shared_foci_network"));
    reports.push_back(foci::evaluate(
        instance,
        foci::baseline_shared_foci(instance, foci::SharedFociMode::kContent, opt.params,
                                   metric),
        opt.cutoff, "shared_foci_content"));

    foci::write_text_file(opt.out, foci::reports_json(reports));
    if (opt.verbose) {
        for (const foci::EvalReport& r : reports) {
            std::cerr << r.method << ": mrr=" << r.mrr << " map@" << r.k_cutoff << "="
                      << r.map_at_k << " ndcg@" << r.k_cutoff << "=" << r.ndcg_at_k << "\n";
        }
    }
    return 0;
}

int run_sweep(const CommonOptions& opt, const std::string& alphas_csv,
              const std::string& betas_csv) {
    const foci::SimilarityMetric metric = foci::parse_metric(opt.metric);
    const foci::QAInstance instance = load_instance(opt);
    const std::vector<double> alphas = parse_csv_doubles(alphas_csv, "--alphas");
    const std::vector<double> betas = parse_csv_doubles(betas_csv, "--betas");
    const foci::SweepGrid grid =
        foci::sweep(instance, alphas, betas, opt.params, metric, opt.cutoff, opt.jobs);
    foci::write_text_file(opt.out, foci::sweep_json(grid));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Answerer ranking over ego networks via joint non-negative factorization"};
    app.require_subcommand(1);

    CommonOptions opt;
    foci::SyntheticSpec spec;
    std::string alphas_csv = "0.1,1,10";
    std::string betas_csv = "0,0.1,1,10";

    CLI::App* synth = app.add_subcommand("synth", "Generate a planted-foci instance");
    synth->add_option("--out", opt.out, "Output directory")->required();
    synth->add_option("--communities", spec.communities, "Planted community count");
    synth->add_option("--users-per-community", spec.users_per_community, "Users per community");
    synth->add_option("--p-in", spec.p_in, "Within-community link probability");
    synth->add_option("--p-out", spec.p_out, "Cross-community link probability");
    synth->add_option("--words-per-topic", spec.words_per_topic, "Words per topic block");
    synth->add_option("--in-rate", spec.in_topic_rate, "In-topic word rate");
    synth->add_option("--off-rate", spec.off_topic_rate, "Off-topic word rate");
    synth->add_option("--questions-per-topic", spec.questions_per_topic, "Questions per topic");
    synth->add_option("--seed", spec.seed, "Random seed");

    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit latent foci factors");
    fit_cmd->add_option("--network", opt.network, "Ego-network TSV")->required();
    fit_cmd->add_option("--content", opt.content, "User-word-count TSV")->required();
    fit_cmd->add_option("--out", opt.out, "Factor file path (trace lands beside it)")->required();
    add_hyper_flags(fit_cmd, opt.params);

    CLI::App* rank = app.add_subcommand("rank", "Rank answerers for each question");
    rank->add_option("--factors", opt.factors, "Fitted factor file")->required();
    rank->add_option("--content", opt.content, "User-word-count TSV (rebuilds the vocabulary)")
        ->required();
    rank->add_option("--questions", opt.questions, "Questions JSONL")->required();
    rank->add_option("--out", opt.out, "Ranked-list TSV output")->required();
    rank->add_option("--metric", opt.metric, "cosine, pcc or euclidean");

    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate the model and baselines");
    eval_cmd->add_option("--network", opt.network, "Ego-network TSV")->required();
    eval_cmd->add_option("--content", opt.content, "User-word-count TSV")->required();
    eval_cmd->add_option("--questions", opt.questions, "Questions JSONL")->required();
    eval_cmd->add_option("--out", opt.out, "Report JSON output")->required();
    eval_cmd->add_option("--metric", opt.metric, "cosine, pcc or euclidean");
    eval_cmd->add_option("--cutoff", opt.cutoff, "K for MAP@K and NDCG@K");
    eval_cmd->add_option("--trials", opt.trials, "Permutations for the random baseline");
    add_hyper_flags(eval_cmd, opt.params);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Evaluate over an alpha/beta grid");
    sweep_cmd->add_option("--network", opt.network, "Ego-network TSV")->required();
    sweep_cmd->add_option("--content", opt.content, "User-word-count TSV")->required();
    sweep_cmd->add_option("--questions", opt.questions, "Questions JSONL")->required();
    sweep_cmd->add_option("--out", opt.out, "Grid JSON output")->required();
    sweep_cmd->add_option("--alphas", alphas_csv, "Comma-separated alpha grid");
    sweep_cmd->add_option("--betas", betas_csv, "Comma-separated beta grid");
    sweep_cmd->add_option("--metric", opt.metric, "cosine, pcc or euclidean");
    sweep_cmd->add_option("--cutoff", opt.cutoff, "K for MAP@K and NDCG@K");
    sweep_cmd->add_option("--jobs", opt.jobs, "Worker threads for grid cells");
    sweep_cmd->add_option("--gamma", opt.params.gamma, "Regularization weight");
    sweep_cmd->add_option("--k", opt.params.k, "Latent foci count");
    sweep_cmd->add_option("--max-iters", opt.params.max_iters, "Iteration cap");
    sweep_cmd->add_option("--tol", opt.params.tol, "Stop threshold");
    sweep_cmd->add_option("--seed", opt.params.seed, "Random seed");

    for (CLI::App* cmd : {synth, fit_cmd, rank, eval_cmd, sweep_cmd}) {
        cmd->add_flag("-v,--verbose", opt.verbose, "Progress notes on stderr");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return run_synth(opt, spec);
        if (fit_cmd->parsed()) return run_fit(opt);
        if (rank->parsed()) return run_rank(opt);
        if (eval_cmd->parsed()) return run_eval(opt);
        if (sweep_cmd->parsed()) return run_sweep(opt, alphas_csv, betas_csv);
    } catch (const foci::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
