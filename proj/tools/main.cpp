// latglr command line front end: build-table, parse, oracle-check.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "latglr/beam.hpp"
#include "latglr/engine.hpp"
#include "latglr/oracle.hpp"
#include "latglr/testgen.hpp"

namespace {

using namespace latglr;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_stats(const std::map<std::string, long>& stats) {
    for (const auto& [k, v] : stats) std::cout << k << "=" << v << "\n";
}

struct ParseArgs {
    std::string grammar_path, lattice_path, bigram_path;
    double lambda = 1.0;
    double beam = std::numeric_limits<double>::infinity();
    long max_recovered = std::numeric_limits<long>::max();
    bool strict_bigram = false;
    double floor_logp = -20.0;
    std::optional<uint64_t> seed;
    std::string forest_out;
    bool best = false;
};

int cmd_build_table(const std::string& grammar_path, const std::string& out_path) {
    Grammar g = parse_grammar(read_file(grammar_path));
    SlrTable t = build_slr_table(g);
    std::cout << "states: " << t.state_count << ", conflict cells: " << t.conflict_cells
              << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << table_to_json(g, t) << "\n";
    }
    return 0;
}

int cmd_parse(const ParseArgs& args) {
    Grammar g = parse_grammar(read_file(args.grammar_path));
    SlrTable t = build_slr_table(g);
    Lattice lattice = parse_lattice(read_file(args.lattice_path));
    BigramModel bigram = parse_bigram(read_file(args.bigram_path), args.floor_logp);

    EngineConfig cfg;
    cfg.scoring.lambda = args.lambda;
    cfg.scoring.strict_bigram = args.strict_bigram;

    bool exhaustive = std::isinf(args.beam);
    cfg.stop_at_first_accept = !exhaustive;  // beam mode stops at first accept

    Engine engine(g, t, lattice, bigram, cfg);
    ParseResult res;
    if (exhaustive) {
        ExhaustiveStrategy strategy(args.seed);
        res = run(engine, strategy);
    } else {
        BeamStrategy strategy(BeamConfig{args.beam, args.max_recovered}, true);
        res = run(engine, strategy);
        res.stats["pruned"] = strategy.pruned_count();
        res.stats["recovered"] = strategy.recovered_count();
    }

    std::cout << (res.accepted ? "accepted" : "no parse") << "\n";
    if (res.accepted) {
        auto best = engine.scorer().best_tree(res.roots);
        if (best)
            std::cout << best->tree << "\n"
                      << "score " << std::fixed << std::setprecision(6) << best->score
                      << "\n";
    }
    if (!args.forest_out.empty()) {
        std::ofstream out(args.forest_out);
        if (!out) throw std::runtime_error("cannot write " + args.forest_out);
        out << forest_to_json(g, engine.forest(), lattice.final_time, res.roots) << "\n";
    }
    print_stats(res.stats);
    return res.accepted ? 0 : 1;
}

struct CheckReport {
    bool agree = true;
    std::string detail;
};

CheckReport check_instance(const Grammar& g, const Lattice& lattice,
                           const BigramModel& bigram, double lambda,
                           bool corrupt_scoring) {
    SlrTable t = build_slr_table(g);
    EngineConfig cfg;
    cfg.scoring.lambda = lambda;
    Engine engine(g, t, lattice, bigram, cfg);
    ExhaustiveStrategy strategy;
    ParseResult res = run(engine, strategy);

    CheckReport rep;
    auto oracle_paths = grammatical_paths(g, lattice);
    bool oracle_accepts = !oracle_paths.empty();
    if (res.accepted != oracle_accepts) {
        rep.agree = false;
        rep.detail = "acceptance mismatch: engine=" + std::to_string(res.accepted) +
                     " oracle=" + std::to_string(oracle_accepts);
        return rep;
    }
    if (!res.accepted) return rep;

    auto engine_best = engine.scorer().best_tree(res.roots);
    auto oracle_best = best_path(g, lattice, bigram, {lambda});
    double engine_score = engine_best ? engine_best->score : 0;
    if (corrupt_scoring) engine_score += 0.5;  // negative-control hook
    if (!engine_best || !oracle_best ||
        std::abs(engine_score - oracle_best->score) > 1e-9) {
        rep.agree = false;
        std::ostringstream d;
        d << "best score mismatch: engine=" << std::setprecision(12) << engine_score
          << " oracle=" << (oracle_best ? oracle_best->score : 0);
        rep.detail = d.str();
    }
    return rep;
}

int cmd_oracle_check(const ParseArgs& args, int trials, int max_hyps, uint64_t seed,
                     bool corrupt_scoring) {
    if (trials > 0) {
        for (int i = 0; i < trials; ++i) {
            auto inst = random_instance(seed + i, max_hyps);
            auto rep = check_instance(inst.grammar, inst.lattice, inst.bigram,
                                      args.lambda, corrupt_scoring);
            if (!rep.agree) {
                std::cout << "disagree on trial " << i << " (" << inst.grammar_name
                          << ", seed " << seed + i << "): " << rep.detail << "\n";
                std::cout << "lattice:\n" << serialize_lattice(inst.lattice);
                return 1;
            }
        }
        std::cout << "agree (" << trials << " trials)\n";
        return 0;
    }
    Grammar g = parse_grammar(read_file(args.grammar_path));
    Lattice lattice = parse_lattice(read_file(args.lattice_path));
    BigramModel bigram = parse_bigram(read_file(args.bigram_path), args.floor_logp);
    auto rep = check_instance(g, lattice, bigram, args.lambda, corrupt_scoring);
    if (!rep.agree) {
        std::cout << "disagree: " << rep.detail << "\n";
        return 1;
    }
    std::cout << "agree\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"word-lattice GLR parser"};
    app.require_subcommand(1);

    std::string grammar_path, out_path;
    auto* build = app.add_subcommand("build-table", "compile a grammar to an SLR table");
    build->add_option("--grammar", grammar_path, "grammar file")->required();
    build->add_option("--out", out_path, "table JSON output path");

    ParseArgs pargs;
    auto* parse = app.add_subcommand("parse", "parse a word lattice");
    parse->add_option("--grammar", pargs.grammar_path)->required();
    parse->add_option("--lattice", pargs.lattice_path)->required();
    parse->add_option("--bigram", pargs.bigram_path)->required();
    parse->add_option("--lambda", pargs.lambda, "n-gram weight");
    parse->add_option("--beam", pargs.beam, "beam width (default: exhaustive)");
    parse->add_option("--max-recovered", pargs.max_recovered);
    parse->add_flag("--strict-bigram", pargs.strict_bigram);
    parse->add_option("--floor-logp", pargs.floor_logp);
    uint64_t seed_val = 0;
    auto* seed_opt = parse->add_option("--seed", seed_val, "randomized agenda order");
    parse->add_option("--forest", pargs.forest_out, "forest dump output path");
    parse->add_flag("--best", pargs.best, "print the best tree (default on accept)");

    ParseArgs cargs;
    int trials = 0, max_hyps = 10;
    uint64_t check_seed = 1;
    bool corrupt_scoring = false;
    auto* check = app.add_subcommand("oracle-check", "engine-vs-oracle agreement");
    check->add_option("--grammar", cargs.grammar_path);
    check->add_option("--lattice", cargs.lattice_path);
    check->add_option("--bigram", cargs.bigram_path);
    check->add_option("--lambda", cargs.lambda);
    check->add_option("--floor-logp", cargs.floor_logp);
    check->add_option("--trials", trials, "number of random instances");
    check->add_option("--max-hyps", max_hyps);
    check->add_option("--seed", check_seed);
    check->add_flag("--corrupt-scoring", corrupt_scoring)->group("");  // test hook

    try {
        app.parse(argc, argv);
        if (build->parsed()) return cmd_build_table(grammar_path, out_path);
        if (parse->parsed()) {
            if (seed_opt->count()) pargs.seed = seed_val;
            return cmd_parse(pargs);
        }
        if (check->parsed()) {
            if (trials == 0 && cargs.grammar_path.empty()) {
                std::cerr << "oracle-check needs --trials or input files\n";
                return 2;
            }
            return cmd_oracle_check(cargs, trials, max_hyps, check_seed, corrupt_scoring);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
