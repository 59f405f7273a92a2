#include <doctest.h>

#include <cmath>
#include <limits>

#include "latglr/beam.hpp"
#include "latglr/oracle.hpp"
#include "latglr/testgen.hpp"

using namespace latglr;

namespace {

// Three competing first words with distinct categories, so each gets its
// own shift at frame 5. Outside scores there: dog -10.7, fog -11.5,
// log -13.0.
const std::string kRaceGrammar =
    "S -> NP VP\n"
    "NP -> n\n"
    "NP -> m\n"
    "NP -> k\n"
    "VP -> v\n"
    "lex n dog\nlex m fog\nlex k log\nlex v barks\n";
const std::string kRaceLattice =
    "0 5 dog -50\n"
    "0 5 fog -52\n"
    "0 5 log -55\n"
    "5 9 barks -40\n";
const std::string kRaceBigram =
    "<s> dog -0.7\n<s> fog -1.1\n<s> log -2.0\n"
    "dog barks -0.5\nfog barks -0.5\nlog barks -0.5\n";

struct Inputs {
    Grammar g;
    SlrTable t;
    Lattice lattice;
    BigramModel bigram;
    Inputs(const std::string& gr, const std::string& la, const std::string& bi)
        : g(parse_grammar(gr)),
          t(build_slr_table(g)),
          lattice(parse_lattice(la)),
          bigram(parse_bigram(bi)) {}
};

}  // namespace

TEST_CASE("infinite beam degenerates to the exhaustive run") {
    Inputs in(kRaceGrammar, kRaceLattice, kRaceBigram);
    ParseResult full = run_exhaustive(in.g, in.t, in.lattice, in.bigram, {});
    ParseResult beamed = run_beam(in.g, in.t, in.lattice, in.bigram, {}, {});
    CHECK(beamed.accepted == full.accepted);
    CHECK(beamed.stats.at("pruned") == 0);
    for (const char* key : {"vertices", "links", "nodes"})
        CHECK(beamed.stats.at(key) == full.stats.at(key));
}

TEST_CASE("beam 1.0 prunes only the worst competitor") {
    Inputs in(kRaceGrammar, kRaceLattice, kRaceBigram);
    BeamConfig bc;
    bc.beam_width = 1.0;  // cut at -11.7: log (-13.0) falls below
    ParseResult res = run_beam(in.g, in.t, in.lattice, in.bigram, {}, bc);
    CHECK(res.accepted);
    CHECK(res.stats.at("pruned") == 1);
}

TEST_CASE("beam 0 keeps co-optimal actions only") {
    Inputs in(kRaceGrammar, kRaceLattice, kRaceBigram);
    BeamConfig bc;
    bc.beam_width = 0.0;
    ParseResult res = run_beam(in.g, in.t, in.lattice, in.bigram, {}, bc);
    CHECK(res.accepted);  // dog survives and parses
    CHECK(res.stats.at("pruned") == 2);

    // with an exact tie at the top, both survive a zero-width beam
    Inputs tie(kRaceGrammar, "0 5 dog -50\n0 5 fog -50\n5 9 barks -40\n",
               "<s> dog -0.7\n<s> fog -0.7\ndog barks -0.5\nfog barks -0.5\n");
    ParseResult res2 = run_beam(tie.g, tie.t, tie.lattice, tie.bigram, {}, bc);
    CHECK(res2.accepted);
    CHECK(res2.stats.at("pruned") == 0);
}

TEST_CASE("stage 2 recovers a parse the beam pruned away") {
    // only `log` can complete S; dog and fog shift into a dead end
    // because two adjacent NPs cannot both start at 0
    std::string grammar =
        "S -> KP VP\n"
        "KP -> k\n"
        "VP -> v\n"
        "S -> NP NP VP\n"
        "NP -> n\n"
        "NP -> m\n"
        "lex n dog\nlex m fog\nlex k log\nlex v barks\n";
    Inputs in(grammar, kRaceLattice, kRaceBigram);
    BeamConfig bc;
    bc.beam_width = 1.0;

    ParseResult stage1 = run_beam(in.g, in.t, in.lattice, in.bigram, {}, bc);
    CHECK_FALSE(stage1.accepted);
    CHECK(stage1.stats.at("pruned") == 1);

    ParseResult both = run_two_stage(in.g, in.t, in.lattice, in.bigram, {}, bc);
    CHECK(both.accepted);
    CHECK(both.stats.at("recovered") >= 1);

    SUBCASE("max_recovered = 0 disables the fallback") {
        BeamConfig none = bc;
        none.max_recovered = 0;
        ParseResult res = run_two_stage(in.g, in.t, in.lattice, in.bigram, {}, none);
        CHECK_FALSE(res.accepted);
        CHECK(res.stats.at("recovered") == 0);
    }
}

TEST_CASE("recovery replays the best pruned shift first") {
    // two pruned competitors; the better one (log) completes the parse,
    // so one recovery suffices when ordered best-first
    std::string grammar =
        "S -> KP VP\n"
        "KP -> k\n"
        "VP -> v\n"
        "S -> NP NP VP\n"
        "NP -> n\n"
        "NP -> m\n"
        "lex n dog\nlex m fog\nlex k log\nlex v barks\n";
    Inputs in(grammar, kRaceLattice, kRaceBigram);
    BeamConfig bc;
    bc.beam_width = 0.0;  // prunes fog and log
    bc.max_recovered = 1;
    ParseResult res = run_two_stage(in.g, in.t, in.lattice, in.bigram, {}, bc);
    // best pruned is fog (-11.5), which also dead-ends; one recovery is
    // not enough
    CHECK_FALSE(res.accepted);
    CHECK(res.stats.at("recovered") == 1);

    bc.max_recovered = 2;
    ParseResult res2 = run_two_stage(in.g, in.t, in.lattice, in.bigram, {}, bc);
    CHECK(res2.accepted);
    CHECK(res2.stats.at("recovered") == 2);
}

TEST_CASE("beam acceptance is monotone in the width") {
    const double widths[] = {0.0, 0.5, 2.0, std::numeric_limits<double>::infinity()};
    for (uint64_t seed = 300; seed < 330; ++seed) {
        auto inst = random_instance(seed);
        SlrTable t = build_slr_table(inst.grammar);
        bool prev = false;
        for (double w : widths) {
            BeamConfig bc;
            bc.beam_width = w;
            ParseResult res = run_beam(inst.grammar, t, inst.lattice, inst.bigram, {}, bc);
            if (prev) CHECK(res.accepted);  // widening never loses a parse
            prev = res.accepted;
        }
    }
}

TEST_CASE("two-stage with unlimited recovery matches exhaustive acceptance") {
    for (uint64_t seed = 400; seed < 430; ++seed) {
        auto inst = random_instance(seed);
        SlrTable t = build_slr_table(inst.grammar);
        ParseResult full = run_exhaustive(inst.grammar, t, inst.lattice, inst.bigram, {});
        BeamConfig bc;
        bc.beam_width = 0.5;
        ParseResult rec = run_two_stage(inst.grammar, t, inst.lattice, inst.bigram, {}, bc);
        CHECK(rec.accepted == full.accepted);
    }
}
