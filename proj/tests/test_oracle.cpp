#include <doctest.h>

#include "latglr/oracle.hpp"
#include "latglr/testgen.hpp"

using namespace latglr;

TEST_CASE("path enumeration tiles the lattice") {
    Lattice two = parse_lattice("0 5 dog -50\n5 9 barks -40\n");
    auto paths = enumerate_paths(two);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].size() == 2);
    CHECK(paths[0][0].key == "dog");
    CHECK(paths[0][1].key == "barks");

    Lattice fork = parse_lattice("0 5 dog -50\n0 5 fog -60\n5 9 barks -40\n");
    CHECK(enumerate_paths(fork).size() == 2);

    // a hypothesis that does not reach final_time contributes no path
    Lattice dangling = parse_lattice("0 5 dog -50\n5 9 barks -40\n5 7 bar -10\n");
    CHECK(enumerate_paths(dangling).size() == 1);

    CHECK(enumerate_paths(parse_lattice("")).empty());
}

TEST_CASE("path enumeration guards") {
    std::string big;
    for (int i = 0; i < 25; ++i)
        big += std::to_string(i) + " " + std::to_string(i + 1) + " w" +
               std::to_string(i) + " -1\n";
    CHECK_THROWS_AS(enumerate_paths(parse_lattice(big)), OracleGuardError);
}

TEST_CASE("recognizer counts derivations") {
    Grammar g1 = parse_grammar(kG1);
    std::vector<SymbolId> nv{g1.find_symbol("n"), g1.find_symbol("v")};
    auto trees = recognize(g1, nv);
    REQUIRE(trees.size() == 1);
    CHECK(serialize_tree(g1, trees[0]) == "(S (NP (n ?)) (VP (v ?)))");
    CHECK(recognize(g1, {g1.find_symbol("v"), g1.find_symbol("n")}).empty());
    CHECK(recognize(g1, {g1.find_symbol("n")}).empty());

    Grammar g2 = parse_grammar(kG2);
    SymbolId a = g2.find_symbol("a");
    CHECK(recognize(g2, {a}).size() == 1);
    CHECK(recognize(g2, {a, a}).size() == 1);
    CHECK(recognize(g2, {a, a, a}).size() == 2);   // Catalan(2)
    CHECK(recognize(g2, {a, a, a, a}).size() == 5);  // Catalan(3)
    CHECK(recognize(g2, {}).empty());

    Grammar g3 = parse_grammar(kG3);
    auto b_only = recognize(g3, {g3.find_symbol("b")});
    REQUIRE(b_only.size() == 1);
    CHECK(serialize_tree(g3, b_only[0]) == "(S (A) (b ?))");
    CHECK(recognize(g3, {g3.find_symbol("a"), g3.find_symbol("b")}).size() == 1);
}

TEST_CASE("path_grammatical tries every category assignment") {
    Grammar g = parse_grammar("S -> n v\nlex n bank\nlex v bank\nlex v runs\n");
    std::vector<WordHypothesis> path{{0, 2, "bank", -4}, {2, 4, "bank", -4}};
    CHECK(path_grammatical(g, path));  // n then v assignment exists
    std::vector<WordHypothesis> bad{{0, 2, "runs", -4}, {2, 4, "bank", -4}};
    CHECK_FALSE(path_grammatical(g, bad));  // runs is only ever a v
    std::vector<WordHypothesis> unknown{{0, 2, "zzz", -4}};
    CHECK_FALSE(path_grammatical(g, unknown));
}

TEST_CASE("score_path applies Eq. 1 with the begin marker") {
    BigramModel m = parse_bigram(
        "<s> dog -0.6931471805599453\ndog barks -1.3862943611198906\n");
    ScoringConfig cfg;
    std::vector<WordHypothesis> path{{0, 5, "dog", -50}, {5, 9, "barks", -40}};
    CHECK(score_path(path, m, cfg) ==
          doctest::Approx(-2.0794415416798357 / 2 - 90.0 / 9).epsilon(1e-9));
    // one word still has one op: the begin-marker bigram
    std::vector<WordHypothesis> one{{0, 5, "dog", -50}};
    CHECK(score_path(one, m, cfg) ==
          doctest::Approx(-0.6931471805599453 - 10.0).epsilon(1e-9));
    cfg.lambda = 0.0;
    CHECK(score_path(path, m, cfg) == doctest::Approx(-10.0));
}

TEST_CASE("best_path on the two-word fixture") {
    Grammar g = parse_grammar(kG1);
    Lattice l = parse_lattice("0 5 dog -50\n5 9 barks -40\n");
    BigramModel m = parse_bigram(
        "<s> dog -0.6931471805599453\ndog barks -1.3862943611198906\n");
    auto best = best_path(g, l, m, {});
    REQUIRE(best.has_value());
    CHECK(best->tree_text == "(S (NP (n dog)) (VP (v barks)))");
    CHECK(best->score == doctest::Approx(-11.039721).epsilon(1e-6));
}

TEST_CASE("best_path picks the higher-scoring competitor") {
    Grammar g = parse_grammar(
        "S -> NP VP\nNP -> n\nVP -> v\nlex n dog\nlex n fog\nlex v barks\n");
    Lattice l = parse_lattice("0 5 dog -52\n0 5 fog -48\n5 9 barks -40\n");
    BigramModel m = parse_bigram(
        "<s> dog -0.2\n<s> fog -8.0\ndog barks -0.2\nfog barks -8.0\n");
    ScoringConfig lm;
    auto with_lm = best_path(g, l, m, lm);
    REQUIRE(with_lm.has_value());
    CHECK(with_lm->path[0].key == "dog");
    ScoringConfig ac;
    ac.lambda = 0.0;
    auto no_lm = best_path(g, l, m, ac);
    REQUIRE(no_lm.has_value());
    CHECK(no_lm->path[0].key == "fog");
}

TEST_CASE("best_path is empty when nothing is grammatical") {
    Grammar g = parse_grammar(kG1);
    Lattice l = parse_lattice("0 5 barks -40\n5 9 dog -50\n");  // wrong order
    BigramModel m = parse_bigram("");
    CHECK_FALSE(best_path(g, l, m, {}).has_value());
    CHECK(grammatical_paths(g, l).empty());
}

TEST_CASE("grammatical_paths lists word sequences sorted") {
    Grammar g = parse_grammar(
        "S -> NP VP\nNP -> n\nVP -> v\nlex n dog\nlex n fog\nlex v barks\n");
    Lattice l = parse_lattice("0 5 fog -60\n0 5 dog -50\n5 9 barks -40\n");
    auto paths = grammatical_paths(g, l);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0] == std::vector<std::string>{"dog", "barks"});
    CHECK(paths[1] == std::vector<std::string>{"fog", "barks"});
}
