#include <doctest.h>

#include "latglr/forest.hpp"
#include "latglr/gss.hpp"
#include "latglr/testgen.hpp"

using namespace latglr;

TEST_CASE("vertex uniqueness per (time, state)") {
    Gss gss;
    auto [v1, c1] = gss.find_or_create_vertex(0, 0);
    CHECK(c1);
    auto [v2, c2] = gss.find_or_create_vertex(0, 0);
    CHECK_FALSE(c2);
    CHECK(v1 == v2);
    auto [v3, c3] = gss.find_or_create_vertex(5, 2);
    auto [v4, c4] = gss.find_or_create_vertex(5, 3);
    CHECK(c3);
    CHECK(c4);
    CHECK(v3 != v4);
}

TEST_CASE("node packing merges hypotheses") {
    Grammar g = parse_grammar(kG1);
    SymbolId n = g.find_symbol("n");
    Forest f;
    auto [node, created] = f.find_or_create(n, 0, 5);
    CHECK(created);
    CHECK(f.add_hypothesis(node, {0, 5, "dog", -50}));
    auto [node2, created2] = f.find_or_create(n, 0, 5);
    CHECK_FALSE(created2);
    CHECK(node == node2);
    CHECK(f.add_hypothesis(node2, {0, 5, "fog", -60}));
    CHECK_FALSE(f.add_hypothesis(node2, {0, 5, "dog", -50}));  // dedup
    CHECK(f.node(node).hyps.size() == 2);
}

TEST_CASE("epsilon node holds one empty sequence") {
    Grammar g = parse_grammar(kG3);
    SymbolId a_nt = g.find_symbol("A");
    Forest f;
    auto [node, created] = f.find_or_create(a_nt, 3, 3);
    CHECK(created);
    CHECK(f.add_sequence(node, {}));
    CHECK_FALSE(f.add_sequence(node, {}));
    CHECK(f.node(node).seqs.size() == 1);
    CHECK(f.validate(g).empty());
}

TEST_CASE("content kind mismatch is an error") {
    Grammar g = parse_grammar(kG1);
    Forest f;
    auto [t_node, c1] = f.find_or_create(g.find_symbol("n"), 0, 5);
    (void)c1;
    f.add_hypothesis(t_node, {0, 5, "dog", -50});
    CHECK_THROWS_AS(f.add_sequence(t_node, {}), std::logic_error);
}

TEST_CASE("validator flags broken tiling") {
    Grammar g = parse_grammar(kG1);
    Forest f;
    auto [n_node, c1] = f.find_or_create(g.find_symbol("n"), 0, 5);
    auto [v_node, c2] = f.find_or_create(g.find_symbol("v"), 6, 9);  // gap at 5..6
    (void)c1;
    (void)c2;
    f.add_hypothesis(n_node, {0, 5, "dog", -50});
    f.add_hypothesis(v_node, {6, 9, "barks", -40});
    auto [s_node, c3] = f.find_or_create(g.find_symbol("S"), 0, 9);
    (void)c3;
    f.add_sequence(s_node, {n_node, v_node});
    CHECK_FALSE(f.validate(g).empty());
}

TEST_CASE("link predecessor sets deduplicate") {
    Gss gss;
    auto [v0, a] = gss.find_or_create_vertex(0, 0);
    auto [v1, b] = gss.find_or_create_vertex(0, 1);
    auto [v2, c] = gss.find_or_create_vertex(5, 2);
    (void)a; (void)b; (void)c;
    LinkId l = gss.create_link(v2, 0, 0, 5, v0);
    CHECK_FALSE(gss.add_pred(l, v0));
    CHECK(gss.add_pred(l, v1));
    CHECK(gss.link(l).preds.size() == 2);
    CHECK(gss.find_link(v2, 0) == l);
    CHECK(gss.find_link(v2, 1) == -1);
}

TEST_CASE("search records deduplicate") {
    Gss gss;
    auto [v0, a] = gss.find_or_create_vertex(0, 0);
    (void)a;
    LinkId s = gss.create_sentinel(v0);
    SearchRecord rec{0, {}, 0, false, -1};
    CHECK(gss.add_record(s, rec));
    CHECK_FALSE(gss.add_record(s, rec));
}
