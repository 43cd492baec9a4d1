#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relmatch/classify.hpp"
#include "relmatch/engines.hpp"
#include "relmatch/meter.hpp"
#include "relmatch/nonlocal.hpp"
#include "relmatch/protocols.hpp"

namespace {

using namespace relmatch;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string read_stream_source(const std::string& source) {
    if (source == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    return read_file(source);
}

std::vector<std::string> split_symbols(const std::string& text, bool tokens) {
    std::vector<std::string> out;
    if (tokens) {
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) out.push_back(tok);
    } else {
        for (char c : text) {
            if (c == '\n' || c == '\r') continue;
            out.emplace_back(1, c);
        }
    }
    return out;
}

int cmd_classify(const std::string& matrix_path, const std::string& op_name) {
    const DeltaMatrix matrix = load_delta_matrix(read_file(matrix_path));
    const OperatorKind op = operator_from_name(op_name);
    try {
        const ClassificationReport report = classify(matrix, op);
        std::cout << report_to_json(report, matrix) << "\n";
        return report.valid ? 0 : 2;
    } catch (const RelationError&) {
        nlohmann::json j;
        j["valid"] = false;
        j["operator"] = operator_name(op);
        std::cout << j.dump() << "\n";
        return 2;
    }
}

// Engines that run under `match`, behind one push-based front.
struct MatchRunner {
    std::unique_ptr<Engine> engine;
    std::function<std::int64_t(const std::string&)> encode;
    bool negate_output = false;
};

MatchRunner build_matrix_runner(const DeltaMatrix& matrix, OperatorKind op,
                                const std::vector<std::string>& pattern_tokens,
                                const std::string& engine_choice,
                                std::optional<std::uint64_t> seed) {
    MatchRunner r;
    const Pattern pattern = make_pattern(matrix.pattern_alphabet(), pattern_tokens);

    bool sublinear = false;
    if (engine_choice == "sublinear" || engine_choice == "auto") {
        const ClassificationReport report = classify(matrix, op);
        const bool eligible =
            report.space_class == SpaceClass::Logarithmic &&
            (op == OperatorKind::And || op == OperatorKind::Or);
        if (eligible) {
            sublinear = true;
        } else if (engine_choice == "sublinear") {
            throw RelationError(
                "the sublinear engine needs a logarithmic-class AND/OR "
                "relation; this one is " +
                (report.space_class ? space_class_name(*report.space_class)
                                    : std::string("unclassified")) +
                " under " + operator_name(op));
        }
    }

    if (sublinear) {
        if (!seed)
            throw ParseError("--seed is required for the sublinear engine");
        // OR runs as AND on the negated relation with the output negated.
        const bool is_or = op == OperatorKind::Or;
        DeltaMatrix base = is_or ? matrix.negated() : matrix;
        r.engine = std::make_unique<ConjunctionEngine>(base, pattern, *seed);
        r.negate_output = is_or;
    } else {
        std::vector<std::int64_t> codes(pattern.ids.begin(), pattern.ids.end());
        r.engine = std::make_unique<RingEngine>(Relation::from_matrix(matrix),
                                                op, std::move(codes));
    }
    const Alphabet text_alphabet = matrix.text_alphabet();
    r.encode = [text_alphabet](const std::string& tok) {
        return static_cast<std::int64_t>(text_alphabet.id(tok));
    };
    return r;
}

MatchRunner build_nonlocal_runner(const std::string& op_name,
                                  const std::vector<std::string>& pattern_tokens) {
    MatchRunner r;
    std::vector<std::int64_t> codes;
    for (const auto& tok : pattern_tokens) {
        if (tok.size() != 1)
            throw ParseError("EDIT/SWAP patterns use single-character symbols");
        codes.push_back(static_cast<unsigned char>(tok[0]));
    }
    if (op_name == "EDIT")
        r.engine = std::make_unique<EditEngine>(std::move(codes), 8);
    else
        r.engine = std::make_unique<SwapEngine>(std::move(codes), 8);
    r.encode = [](const std::string& tok) {
        if (tok.size() != 1)
            throw ParseError("EDIT/SWAP streams use single-character symbols");
        return static_cast<std::int64_t>(static_cast<unsigned char>(tok[0]));
    };
    return r;
}

int cmd_match(const std::string& matrix_path, const std::string& op_name,
              const std::string& pattern_arg, const std::string& stream_source,
              const std::string& engine_choice, bool tokens,
              std::optional<std::uint64_t> seed) {
    std::string pattern_text = pattern_arg;
    if (!pattern_arg.empty() && pattern_arg[0] == '@') {
        pattern_text = read_file(pattern_arg.substr(1));
        while (!pattern_text.empty() &&
               (pattern_text.back() == '\n' || pattern_text.back() == '\r'))
            pattern_text.pop_back();
    }
    const auto pattern_tokens = split_symbols(pattern_text, tokens);
    if (pattern_tokens.empty()) throw ParseError("empty pattern");

    MatchRunner runner;
    if (op_name == "EDIT" || op_name == "SWAP") {
        runner = build_nonlocal_runner(op_name, pattern_tokens);
    } else {
        if (matrix_path.empty())
            throw ParseError("--matrix is required for relation operators");
        const DeltaMatrix matrix = load_delta_matrix(read_file(matrix_path));
        runner = build_matrix_runner(matrix, operator_from_name(op_name),
                                     pattern_tokens, engine_choice, seed);
    }

    const auto stream = split_symbols(read_stream_source(stream_source), tokens);
    std::uint64_t index = 0;
    for (const auto& tok : stream) {
        const auto out = runner.engine->push(runner.encode(tok));
        if (out) {
            const std::int64_t v =
                runner.negate_output ? (*out != 0 ? 0 : 1) : *out;
            std::cout << index << '\t' << v << '\n';
            std::cout.flush();
        }
        ++index;
    }
    return 0;
}

// Deterministic random instances for `reduce` trials.
std::vector<int> random_bits(std::mt19937_64& rng, std::uint64_t m) {
    std::vector<int> out(m);
    for (auto& b : out) b = static_cast<int>(rng() % 2);
    return out;
}

std::vector<std::uint64_t> sample_distinct(std::mt19937_64& rng,
                                           std::uint64_t count,
                                           std::uint64_t universe,
                                           std::set<std::uint64_t>& used) {
    std::vector<std::uint64_t> out;
    while (out.size() < count) {
        const std::uint64_t x = rng() % universe;
        if (used.insert(x).second) out.push_back(x);
    }
    return out;
}

int cmd_reduce(const std::string& name, std::uint64_t m, std::uint64_t c,
               std::uint64_t trials, std::uint64_t seed,
               const std::string& engine_choice, unsigned amplify,
               const std::string& csv_path) {
    nlohmann::json j;
    j["reduction"] = name;
    j["m"] = m;
    j["trials"] = trials;
    j["seed"] = seed;
    double csv_success_rate = 0;
    double csv_message_bits = 0;

    auto fill_summary = [&](const TrialSummary& s) {
        j["success_rate"] = s.success_rate;
        j["ci95"] = {s.ci95_low, s.ci95_high};
        j["message_bits"] = {{"mean", s.message_bits_mean},
                             {"min", s.message_bits_min},
                             {"max", s.message_bits_max}};
        csv_success_rate = s.success_rate;
        csv_message_bits = s.message_bits_mean;
    };

    if (name == "disjointness") {
        j["c"] = c;
        const std::uint64_t universe = 4 * c * m;
        auto instance = [&](std::uint64_t trial_seed, bool disjoint) {
            std::mt19937_64 rng(trial_seed);
            std::set<std::uint64_t> used;
            auto A = sample_distinct(rng, m, universe, used);
            std::vector<std::uint64_t> B;
            if (disjoint) {
                B = sample_distinct(rng, m, universe, used);
            } else {
                // Exactly one shared element, written first on both
                // sides so later writes can mask it: the arrangement
                // that maximises the false-disjoint probability.
                const std::uint64_t shared = A[rng() % m];
                std::rotate(A.begin(),
                            std::find(A.begin(), A.end(), shared), A.end());
                B = sample_distinct(rng, m - 1, universe, used);
                B.insert(B.begin(), shared);
            }
            return run_disjointness(A, B, c, universe, trial_seed);
        };
        const TrialSummary disjoint_runs = run_trials(
            [&](std::uint64_t s) { return instance(s, true); }, trials, seed);
        const TrialSummary overlap_runs = run_trials(
            [&](std::uint64_t s) { return instance(s, false); }, trials,
            split_seed(seed, 0x0D15));
        fill_summary(overlap_runs);
        j["declared_disjoint_on_disjoint_rate"] = disjoint_runs.success_rate;
        j["false_disjoint_rate"] = 1.0 - overlap_runs.success_rate;
        j["false_disjoint_ci95"] = {1.0 - overlap_runs.ci95_high,
                                    1.0 - overlap_runs.ci95_low};
        csv_success_rate = overlap_runs.success_rate;
    } else if (name == "equality") {
        const EqualityEngine engine = engine_choice == "sublinear"
                                          ? EqualityEngine::Sublinear
                                          : EqualityEngine::Baseline;
        j["engine"] = engine_choice.empty() ? "exact" : engine_choice;
        const TrialSummary s = run_trials(
            [&](std::uint64_t trial_seed) {
                std::mt19937_64 rng(trial_seed);
                auto X = random_bits(rng, m);
                auto Y = X;
                if (rng() % 2) Y[rng() % m] ^= 1; // half equal, half not
                return run_equality(X, Y, engine, trial_seed, amplify);
            },
            trials, seed);
        fill_summary(s);
    } else {
        auto one = [&](std::uint64_t trial_seed) {
            std::mt19937_64 rng(trial_seed);
            const auto X = random_bits(rng, m);
            const std::uint64_t n = rng() % m;
            if (name == "indexing-sum") return run_indexing_via_sum(X, n);
            if (name == "indexing-wildcard")
                return run_indexing_via_wildcard(X, n);
            if (name == "indexing-edit") return run_indexing_via_edit(X, n);
            if (name == "parity-indexing") return run_parity_indexing(X, n);
            throw ParseError("unknown reduction: " + name);
        };
        fill_summary(run_trials(one, trials, seed));
    }

    std::cout << j.dump() << "\n";
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw ParseError("cannot write CSV: " + csv_path);
        out << "m,message_bits,success_rate\n"
            << m << ',' << csv_message_bits << ',' << csv_success_rate << "\n";
    }
    return 0;
}

int cmd_meter(const std::string& engine_id, const std::string& ms_arg,
              std::uint64_t seed, const std::string& out_path, bool fit) {
    std::vector<std::uint64_t> ms;
    std::istringstream in(ms_arg);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (part.empty()) continue;
        ms.push_back(std::stoull(part));
    }
    if (ms.empty()) throw ParseError("--m needs a comma-separated length list");
    const auto samples = measure(engine_id, ms, seed);
    std::string payload;
    if (fit) {
        const GrowthFit f = fit_growth(samples);
        nlohmann::json j;
        j["engine_id"] = engine_id;
        j["slope"] = f.slope;
        j["r2"] = f.r2;
        payload = j.dump() + "\n";
    } else {
        payload = samples_to_csv(samples);
    }
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path);
        if (!out) throw ParseError("cannot write output: " + out_path);
        out << payload;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "relmatch: streaming sliding-window pattern matching under "
        "configurable (operator, relation) pairs, with space-class "
        "classification, communication-protocol reductions and state-size "
        "measurement"};
    app.require_subcommand(1);

    std::string matrix_path, op_name, pattern_arg, stream_source = "-";
    std::string engine_choice = "auto", reduction_name, ms_arg, out_path,
                csv_path;
    std::uint64_t m = 0, c = 8, trials = 1000, seed = 0;
    unsigned amplify = 1;
    bool tokens = false, fit = false;
    std::optional<std::uint64_t> opt_seed;

    auto* classify_cmd = app.add_subcommand("classify",
                                            "classify a relation + operator");
    classify_cmd->add_option("--matrix", matrix_path, "matrix JSON document")
        ->required();
    classify_cmd->add_option("--op", op_name, "operator name")->required();

    auto* match_cmd = app.add_subcommand("match", "stream a text through an engine");
    match_cmd->add_option("--matrix", matrix_path, "matrix JSON document");
    match_cmd->add_option("--op", op_name,
                          "operator name, or EDIT / SWAP")->required();
    match_cmd->add_option("--pattern", pattern_arg,
                          "pattern symbols inline, or @file")->required();
    match_cmd->add_option("--stream", stream_source,
                          "stream file, or - for standard input");
    match_cmd->add_option("--engine", engine_choice,
                          "baseline | sublinear | auto");
    match_cmd->add_flag("--tokens", tokens,
                        "whitespace-separated symbols instead of one byte each");
    match_cmd->add_option("--seed", opt_seed, "seed for randomized engines");

    auto* reduce_cmd = app.add_subcommand("reduce", "run a protocol reduction");
    reduce_cmd->add_option("--name", reduction_name,
                           "indexing-sum | indexing-wildcard | equality | "
                           "indexing-edit | parity-indexing | disjointness")
        ->required();
    reduce_cmd->add_option("--m", m, "input length")->required();
    reduce_cmd->add_option("--c", c, "disjointness hash range constant");
    reduce_cmd->add_option("--trials", trials, "number of trials");
    reduce_cmd->add_option("--seed", seed, "master seed")->required();
    reduce_cmd->add_option("--engine", engine_choice,
                           "equality engine: exact | sublinear");
    reduce_cmd->add_option("--amplify", amplify,
                           "odd majority-vote repeat count");
    reduce_cmd->add_option("--csv", csv_path, "also write a CSV row here");

    auto* meter_cmd = app.add_subcommand("meter", "measure engine state bits");
    meter_cmd->add_option("--engine", engine_choice, "engine id")->required();
    meter_cmd->add_option("--m", ms_arg, "comma-separated pattern lengths")
        ->required();
    meter_cmd->add_option("--seed", seed, "stream seed");
    meter_cmd->add_option("--out", out_path, "output path (default stdout)");
    meter_cmd->add_flag("--fit", fit, "print the log-log growth fit as JSON");

    try {
        app.parse(argc, argv);
        if (classify_cmd->parsed()) return cmd_classify(matrix_path, op_name);
        if (match_cmd->parsed())
            return cmd_match(matrix_path, op_name, pattern_arg, stream_source,
                             engine_choice, tokens, opt_seed);
        if (reduce_cmd->parsed()) {
            if (reduction_name == "equality" && engine_choice == "auto")
                engine_choice = "exact";
            return cmd_reduce(reduction_name, m, c, trials, seed,
                              engine_choice, amplify, csv_path);
        }
        if (meter_cmd->parsed()) {
            if (engine_choice == "auto")
                throw ParseError("meter needs --engine");
            return cmd_meter(engine_choice, ms_arg, seed, out_path, fit);
        }
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const RelationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
