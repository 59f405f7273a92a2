// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any hard criterion fails. Criterion 8 is a
// timing report, not a gate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "latglr/beam.hpp"
#include "latglr/engine.hpp"
#include "latglr/oracle.hpp"
#include "latglr/testgen.hpp"

using namespace latglr;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok,
            const std::string& detail = "") {
    std::printf("criterion %d (%s): %s%s%s\n", criterion, what.c_str(),
                ok ? "PASS" : "FAIL", detail.empty() ? "" : " — ",
                detail.c_str());
    if (!ok) ++failures;
}

std::string run_dump(const Grammar& g, const SlrTable& t, const Lattice& l,
                     const BigramModel& b, Strategy& strat) {
    Engine e(g, t, l, b, {});
    run(e, strat);
    return forest_to_json(g, e.forest(), l.final_time, e.root_nodes());
}

struct Fixture {
    std::string name, grammar, lattice, bigram;
};

const std::vector<Fixture> kFixtures = {
    {"g1-two-word", kG1, "0 5 dog -50\n5 9 barks -40\n",
     "<s> dog -0.6931471805599453\ndog barks -1.3862943611198906\n"},
    {"g2-aaa", kG2, "0 1 a -1\n1 2 a -2\n2 3 a -1\n", "<s> a -1\na a -1\n"},
    {"g3-b", kG3, "0 4 b -8\n", ""},
    {"g3-ab", kG3, "0 3 a -5\n3 4 b -2\n", ""},
    {"race",
     "S -> NP VP\nNP -> n\nNP -> m\nVP -> v\n"
     "lex n dog\nlex m fog\nlex v barks\n",
     "0 5 dog -50\n0 5 fog -52\n5 9 barks -40\n",
     "<s> dog -0.7\n<s> fog -1.1\ndog barks -0.5\nfog barks -0.5\n"},
};

// criteria 1, 4 and 5 share the 500-instance sweep
void instance_sweep() {
    auto t0 = Clock::now();
    bool scores_ok = true, accepts_ok = true, recovery_ok = true, eps_ok = true;
    std::string detail;
    for (uint64_t seed = 0; seed < 500; ++seed) {
        auto inst = random_instance(seed);
        SlrTable table = build_slr_table(inst.grammar);
        ScoringConfig cfg;
        Engine e(inst.grammar, table, inst.lattice, inst.bigram, EngineConfig{cfg});
        ExhaustiveStrategy strat;
        ParseResult res = run(e, strat);

        std::optional<OracleBest> want;
        try {
            want = best_path(inst.grammar, inst.lattice, inst.bigram, cfg);
        } catch (const OracleGuardError&) {
            continue;  // instance generator stays within the guards; belt and braces
        }
        if (res.accepted != want.has_value()) {
            accepts_ok = false;
            if (detail.empty()) detail = "acceptance mismatch at seed " + std::to_string(seed);
        }
        if (want) {
            auto got = e.scorer().best_tree(res.roots);
            if (!got || std::abs(got->score - want->score) > 1e-9) {
                scores_ok = false;
                if (detail.empty()) detail = "score mismatch at seed " + std::to_string(seed);
            }
        }
        // every node must come from the two generic creation sites; an
        // epsilon special case would show up as unattributed nodes
        long from_search = res.stats.count("nodes_from_search")
                               ? res.stats.at("nodes_from_search") : 0;
        long from_hypo = res.stats.count("nodes_from_newhypo")
                             ? res.stats.at("nodes_from_newhypo") : 0;
        if (from_search + from_hypo != res.stats.at("nodes")) eps_ok = false;

        BeamConfig bc;
        bc.beam_width = 0.0;
        ParseResult rec = run_two_stage(inst.grammar, table, inst.lattice,
                                        inst.bigram, EngineConfig{cfg}, bc);
        if (rec.accepted != res.accepted) {
            recovery_ok = false;
            if (detail.empty()) detail = "recovery mismatch at seed " + std::to_string(seed);
        }
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool in_time = secs < 60.0;
    report(1, "oracle equivalence over 500 instances",
           scores_ok && accepts_ok && in_time,
           detail.empty() ? "sweep took " + std::to_string(secs) + " s" : detail);
    report(4, "recovery completeness (beam 0, unlimited recovery)", recovery_ok);

    // the sweep covers G3 draws; check the two fixed lattices explicitly too
    Grammar g3 = parse_grammar(kG3);
    SlrTable t3 = build_slr_table(g3);
    BigramModel empty_bigram = parse_bigram("");
    for (const char* lat : {"0 4 b -8\n", "0 3 a -5\n3 4 b -2\n"}) {
        ParseResult r = run_exhaustive(g3, t3, parse_lattice(lat), empty_bigram, {});
        if (!r.accepted) eps_ok = false;
        if (r.stats.at("nodes_from_search") + r.stats.at("nodes_from_newhypo") !=
            r.stats.at("nodes"))
            eps_ok = false;
    }
    report(5, "epsilon rules flow through the ordinary Search path", eps_ok);
}

void order_independence() {
    Grammar g = parse_grammar(kG2);
    SlrTable t = build_slr_table(g);
    Lattice l = parse_lattice("0 1 a -1\n1 2 a -1\n2 3 a -1\n3 4 a -1\n");
    BigramModel b = parse_bigram("");
    std::string reference;
    bool ok = true;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        ExhaustiveStrategy strat(seed);
        std::string d = run_dump(g, t, l, b, strat);
        if (reference.empty())
            reference = d;
        else if (d != reference)
            ok = false;
    }
    report(2, "order-independence over 100 agenda permutations", ok);
}

void beam_degeneracy() {
    bool ok = true;
    for (const auto& fx : kFixtures) {
        Grammar g = parse_grammar(fx.grammar);
        SlrTable t = build_slr_table(g);
        Lattice l = parse_lattice(fx.lattice);
        BigramModel b = parse_bigram(fx.bigram);
        ExhaustiveStrategy ex;
        BeamStrategy beam(BeamConfig{}, false);  // infinite width
        if (run_dump(g, t, l, b, ex) != run_dump(g, t, l, b, beam)) ok = false;
    }
    report(3, "infinite beam matches exhaustive on every fixture", ok);
}

void scaling() {
    Grammar g = parse_grammar(kG2);
    SlrTable t = build_slr_table(g);
    BigramModel b = parse_bigram("");
    std::vector<long> counts;
    for (int n : {8, 16, 32}) {
        std::string text;
        for (int i = 0; i < n; ++i)
            text += std::to_string(i) + " " + std::to_string(i + 1) + " a -1\n";
        ParseResult res = run_exhaustive(g, t, parse_lattice(text), b, {});
        counts.push_back(res.stats.at("actions_executed"));
    }
    double slope = std::log((double)counts[2] / counts[0]) / std::log(4.0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "counts %ld/%ld/%ld, log-log slope %.2f",
                  counts[0], counts[1], counts[2], slope);
    report(6, "action counts scale polynomially on G2 chains", slope <= 4.0, buf);
}

void scoring_fixtures() {
    Grammar g = parse_grammar(kG1);
    SlrTable t = build_slr_table(g);
    Lattice l = parse_lattice("0 5 dog -50\n5 9 barks -40\n");
    BigramModel b = parse_bigram(
        "<s> dog -0.6931471805599453\ndog barks -1.3862943611198906\n");
    Engine e(g, t, l, b, {});
    ExhaustiveStrategy strat;
    ParseResult res = run(e, strat);
    std::optional<BestTree> best;
    if (res.accepted) best = e.scorer().best_tree(res.roots);
    bool fixture_ok =
        best && std::abs(best->score - (-11.039721)) < 1e-6 &&
        best->tree == "(S (NP (n dog)) (VP (v barks)))";

    // chain consistency on every accepted single-path fixture: the final
    // link's outside value equals the whole-path score
    bool chain_ok = true;
    for (const auto& fx : kFixtures) {
        Grammar fg = parse_grammar(fx.grammar);
        SlrTable ft = build_slr_table(fg);
        Lattice fl = parse_lattice(fx.lattice);
        BigramModel fb = parse_bigram(fx.bigram);
        auto paths = enumerate_paths(fl);
        Engine fe(fg, ft, fl, fb, {});
        ExhaustiveStrategy fs;
        ParseResult fr = run(fe, fs);
        if (!fr.accepted || paths.size() != 1) continue;
        double path_score = score_path(paths[0], fb, ScoringConfig{});
        NodeId root = fr.roots.at(0);
        double outside = -std::numeric_limits<double>::infinity();
        for (const auto& link : fe.gss().links())
            if (link.node == root)
                outside = std::max(outside, fe.scorer().outside_of(link.id));
        if (std::abs(outside - path_score) > 1e-9) chain_ok = false;
    }
    report(7, "two-word score fixture and outside-chain consistency",
           fixture_ok && chain_ok);
}

void performance_report() {
    Grammar g = benchmark_grammar(200);
    SlrTable t = build_slr_table(g);
    BigramModel b = parse_bigram("");
    BeamConfig bc;
    bc.beam_width = 8.0;
    int accepted = 0, n = 0;
    double worst = 0;
    for (int hyps : {56, 90, 120, 160, 202}) {
        Lattice l = benchmark_lattice(g, 9000 + hyps, hyps);
        auto t0 = Clock::now();
        ParseResult res = run_beam(g, t, l, b, {}, bc);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        worst = std::max(worst, secs);
        accepted += res.accepted ? 1 : 0;
        ++n;
        std::printf("  perf: %zu rules, %d hypotheses -> %s in %.3f s\n",
                    g.rules.size(), hyps, res.accepted ? "parse" : "no parse",
                    secs);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "report only: %d/%d accepted, worst lattice %.3f s (target < 4 s)",
                  accepted, n, worst);
    report(8, "beam throughput on 200-rule grammar", true, buf);
}

void normalization_identity() {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> logp(-60.0, -0.01);
    std::uniform_int_distribution<long> len(1, 40);
    ScoringConfig cfg;
    cfg.lambda = 0.9;
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
        ScoreComponents c{logp(rng), len(rng), logp(rng), len(rng)};
        double v = normalize_components(c, cfg);
        // adding an all-zero component must not perturb a single bit
        if (normalize_components(c + ScoreComponents{}, cfg) != v) ok = false;
        // denormalize to per-unit averages and back
        ScoreComponents back{(c.acoustic_sum / c.frames) * c.frames, c.frames,
                             (c.ngram_sum / c.ngram_ops) * c.ngram_ops,
                             c.ngram_ops};
        if (std::abs(normalize_components(back, cfg) - v) > 1e-12) ok = false;
    }
    report(9, "normalization identities on 1000 random components", ok);
}

}  // namespace

int main() {
    instance_sweep();
    order_independence();
    beam_degeneracy();
    scaling();
    scoring_fixtures();
    performance_report();
    normalization_identity();
    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS"
                                      : "SOME CRITERIA FAILED");
    return failures == 0 ? 0 : 1;
}
