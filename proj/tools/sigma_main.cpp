// sigma: align two knowledge bases, evaluate matchings, generate synthetic
// instances and run the oracle checks.
//
// Exit codes: 0 success, 1 invariant violation, 2 usage / config / parse error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "sigma/evaluation.hpp"
#include "sigma/io.hpp"
#include "sigma/matcher.hpp"
#include "sigma/oracle.hpp"
#include "sigma/scoring.hpp"
#include "sigma/synthgen.hpp"

namespace fs = std::filesystem;
using namespace sigma;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

// Errors that map to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError(fmt::format("cannot write {}", path));
    }
    return f;
}

void require_file(const std::string& path)
{
    if (!fs::is_regular_file(path)) {
        throw UsageError(fmt::format("no such file: {}", path));
    }
}

struct AlignOptions {
    std::string kb1_rel, kb1_prop, kb2_rel, kb2_prop, map, out, trace;
    std::optional<double> alpha, beta, threshold, s0_threshold;
    std::optional<std::string> smoothing, neighbor_weight, seed_mode;
    std::string seed_file, eval_gt;
    bool linear = false;
    bool no_s0 = false;
};

std::vector<EntityPair> load_seed(const std::string& path, const KnowledgeBase& kb1,
                                  const KnowledgeBase& kb2)
{
    require_file(path);
    std::vector<EntityPair> seed;
    for (const SurfacePair& p : load_ground_truth(path)) {
        const auto i = kb1.find_entity(p.first);
        const auto j = kb2.find_entity(p.second);
        if (!i || !j) {
            throw UsageError(fmt::format("seed pair ({}, {}) names an unknown entity", p.first,
                                         p.second));
        }
        seed.push_back({*i, *j});
    }
    return seed;
}

int cmd_align(const AlignOptions& o)
{
    for (const auto* path : {&o.kb1_rel, &o.kb1_prop, &o.kb2_rel, &o.kb2_prop, &o.map}) {
        require_file(*path);
    }
    const auto start = std::chrono::steady_clock::now();
    AlignmentConfig config = load_alignment_config(o.map);
    auto set = [&](const char* name, const auto& value) {
        if (value) {
            config.set_param(name, fmt::format("{}", *value));
        }
    };
    set("alpha", o.alpha);
    set("beta", o.beta);
    set("threshold", o.threshold);
    set("s0_threshold", o.s0_threshold);
    set("smoothing", o.smoothing);
    set("neighbor_weight", o.neighbor_weight);
    set("seed_mode", o.seed_mode);
    if (o.no_s0) {
        config.use_s0 = false;
    }
    if (config.seed_mode == SeedMode::File && o.seed_file.empty()) {
        throw UsageError("--seed-mode file requires --seed-file");
    }

    const AlignmentProblem problem =
        make_problem(load_knowledge_base(o.kb1_rel, o.kb1_prop, "kb1"),
                     load_knowledge_base(o.kb2_rel, o.kb2_prop, "kb2"), config);
    for (const auto& w : problem.mapping.warnings) {
        spdlog::warn("{}", w);
    }
    const ScoringModel model(problem);
    std::vector<EntityPair> seed;
    if (config.seed_mode == SeedMode::File) {
        seed = load_seed(o.seed_file, problem.first, problem.second);
    }
    const auto loaded = std::chrono::steady_clock::now();

    const RunSettings settings =
        o.linear ? RunSettings::linear(config) : RunSettings::from(config);
    const RunResult result = run(model, settings, seed);
    const auto done = std::chrono::steady_clock::now();

    const auto pairs = predicted_pairs(result.matching, problem.first, problem.second);
    {
        auto f = open_out(o.out);
        write_matched_pairs(f, pairs);
    }
    if (!o.trace.empty()) {
        auto f = open_out(o.trace);
        f << "iteration\tkb1\tkb2\tscore\tsource\tstring_sim\tprop_sim\tstatic_sim\tgraph_inc\n";
        for (std::size_t t = 0; t < pairs.size(); ++t) {
            const ScoreParts& p = result.details[t].parts;
            f << fmt::format("{}\t{}\t{}\t{:.6f}\t{}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\n",
                             pairs[t].iteration, pairs[t].first, pairs[t].second, pairs[t].score,
                             result.details[t].source == CommitSource::Seed ? "seed" : "queue",
                             p.string_sim, p.prop_sim, p.static_sim, p.graph_inc);
        }
    }

    using secs = std::chrono::duration<double>;
    fmt::print("pairs={} seed={} stop={} load_s={:.2f} match_s={:.2f} total_s={:.2f}\n",
               pairs.size(), result.stats.seed_commits, to_string(result.stopped_reason),
               secs(loaded - start).count(), secs(done - loaded).count(),
               secs(done - start).count());
    if (!o.eval_gt.empty()) {
        require_file(o.eval_gt);
        const auto gt = load_ground_truth(o.eval_gt);
        const EvalReport r = evaluate(std::span<const PredictedPair>(pairs), gt);
        fmt::print("P={:.3f} R={:.3f} F={:.3f}\n", r.precision, r.recall, r.f_measure);
    }
    return kOk;
}

struct EvalOptions {
    std::string pred, gt, curve, sweep;
    std::size_t window = 1000;
};

int cmd_eval(const EvalOptions& o)
{
    require_file(o.pred);
    require_file(o.gt);
    const auto pred = load_matched_pairs(o.pred);
    const auto gt = load_ground_truth(o.gt);
    const EvalReport r = evaluate(std::span<const PredictedPair>(pred), gt);
    fmt::print("P={:.3f} R={:.3f} F={:.3f}\n", r.precision, r.recall, r.f_measure);
    if (!r.precision_defined) {
        spdlog::warn("no prediction has ground truth; precision reported as 0");
    }
    if (!o.sweep.empty()) {
        auto f = open_out(o.sweep);
        write_sweep_csv(f, pr_sweep(pred, gt));
    }
    if (!o.curve.empty()) {
        auto f = open_out(o.curve);
        write_curve_csv(f, iteration_curve(pred, gt, o.window));
    }
    return kOk;
}

int cmd_synth(SynthParams params, const std::string& out_dir)
{
    write_instance(generate(params), out_dir);
    fmt::print("wrote {} entities per KB to {}\n", params.n_entities, out_dir);
    return kOk;
}

constexpr std::size_t kMaxCheckEntities = 500;

int cmd_check(const std::string& dir)
{
    const fs::path d(dir);
    for (const char* name :
         {"kb1_rel.tsv", "kb1_prop.tsv", "kb2_rel.tsv", "kb2_prop.tsv", "mapping.tsv"}) {
        require_file((d / name).string());
    }
    const AlignmentProblem problem = make_problem(
        load_knowledge_base((d / "kb1_rel.tsv").string(), (d / "kb1_prop.tsv").string(), "kb1"),
        load_knowledge_base((d / "kb2_rel.tsv").string(), (d / "kb2_prop.tsv").string(), "kb2"),
        load_alignment_config((d / "mapping.tsv").string()));
    if (problem.first.num_entities() > kMaxCheckEntities ||
        problem.second.num_entities() > kMaxCheckEntities) {
        throw UsageError(fmt::format("check is limited to {} entities per KB", kMaxCheckEntities));
    }
    const ScoringModel model(problem);
    std::optional<std::vector<PredictedPair>> pred;
    if (fs::is_regular_file(d / "pred.tsv")) {
        pred = load_matched_pairs((d / "pred.tsv").string());
    }
    bool all = true;
    for (const auto& r : oracle::check_invariants(model, pred ? &*pred : nullptr)) {
        fmt::print("{} {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
        all = all && r.passed;
    }
    return all ? kOk : kViolation;
}

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("sigma");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::info);
    if (const char* level = std::getenv("SIGMA_LOG")) {
        spdlog::set_level(spdlog::level::from_str(level));
    }
}

}  // namespace

int main(int argc, char** argv)
{
    setup_logging();
    CLI::App app{"Greedy knowledge-base alignment"};
    app.require_subcommand(1);

    AlignOptions align;
    auto* a = app.add_subcommand("align", "align two knowledge bases");
    a->add_option("--kb1-rel", align.kb1_rel, "KB1 relationship facts")->required();
    a->add_option("--kb1-prop", align.kb1_prop, "KB1 property facts")->required();
    a->add_option("--kb2-rel", align.kb2_rel, "KB2 relationship facts")->required();
    a->add_option("--kb2-prop", align.kb2_prop, "KB2 property facts")->required();
    a->add_option("--map", align.map, "mapping file")->required();
    a->add_option("--out", align.out, "matched pairs output")->required();
    a->add_option("--trace", align.trace, "per-commit score breakdown (TSV)");
    a->add_option("--alpha", align.alpha, "graph tradeoff");
    a->add_option("--beta", align.beta, "property tradeoff");
    a->add_option("--threshold", align.threshold, "stopping threshold");
    a->add_option("--s0-threshold", align.s0_threshold, "S0 score cutoff");
    a->add_option("--smoothing", align.smoothing, "string smoothing: number or auto");
    a->add_option("--neighbor-weight", align.neighbor_weight, "neighbour weights")
        ->check(CLI::IsMember({"uniform", "inverse"}));
    a->add_flag("--linear", align.linear, "static scores only, no neighbour proposals");
    a->add_flag("--no-s0", align.no_s0, "disable S0 suggestions");
    a->add_option("--seed-mode", align.seed_mode, "seed matching source")
        ->check(CLI::IsMember({"exact", "file", "none"}));
    a->add_option("--seed-file", align.seed_file, "seed pairs (two columns)");
    a->add_option("--eval-gt", align.eval_gt, "ground truth to score the result against");

    EvalOptions eval;
    auto* e = app.add_subcommand("eval", "score a matched-pairs file");
    e->add_option("--pred", eval.pred, "matched pairs")->required();
    e->add_option("--gt", eval.gt, "ground truth")->required();
    e->add_option("--curve", eval.curve, "per-iteration curve CSV");
    e->add_option("--sweep", eval.sweep, "threshold sweep CSV");
    e->add_option("--window", eval.window, "curve window size")->check(CLI::PositiveNumber);

    SynthParams sp;
    std::string out_dir;
    auto* s = app.add_subcommand("synth", "generate a synthetic KB pair");
    s->add_option("--out-dir", out_dir, "output directory")->required();
    s->add_option("--n", sp.n_entities, "entities per KB")->required();
    s->add_option("--rng-seed", sp.rng_seed, "random seed")->required();
    s->add_option("--n-relations", sp.n_relations);
    s->add_option("--avg-degree", sp.avg_degree);
    s->add_option("--vocab-size", sp.vocab_size);
    s->add_option("--words-min", sp.words_min);
    s->add_option("--words-max", sp.words_max);
    s->add_option("--zipf-exponent", sp.zipf_exponent);
    s->add_option("--word-drop-prob", sp.word_drop_prob);
    s->add_option("--word-swap-prob", sp.word_swap_prob);
    s->add_option("--edge-drop-prob", sp.edge_drop_prob);
    s->add_option("--duplicate-label-frac", sp.duplicate_label_frac);
    s->add_option("--prop-year-frac", sp.prop_year_frac);
    s->add_option("--year-noise-prob", sp.year_noise_prob);

    std::string check_dir;
    auto* c = app.add_subcommand("check", "run the oracle invariants on a small instance");
    c->add_option("--dir", check_dir, "directory with the instance files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return kUsage;
    }

    try {
        if (a->parsed()) {
            return cmd_align(align);
        }
        if (e->parsed()) {
            return cmd_eval(eval);
        }
        if (s->parsed()) {
            return cmd_synth(sp, out_dir);
        }
        return cmd_check(check_dir);
    } catch (const std::exception& ex) {
        spdlog::error("{}", ex.what());
    }
    return kUsage;
}
