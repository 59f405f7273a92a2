#ifndef LATGLR_TESTGEN_HPP
#define LATGLR_TESTGEN_HPP

#include <random>
#include <string>

#include "latglr/bigram.hpp"
#include "latglr/grammar.hpp"
#include "latglr/lattice.hpp"

namespace latglr {

// Seeded generators for randomized engine-vs-oracle checks.

inline const std::string kG1 =
    "S -> NP VP\nNP -> n\nVP -> v\nlex n dog\nlex v barks\n";
inline const std::string kG2 = "S -> S S\nS -> a\nlex a a\n";
inline const std::string kG3 =
    "S -> A b\nA ->\nA -> a\nlex a a\nlex b b\n";

/// Deterministic pseudo-random CFG with `rule_count` rules plus a lexicon.
/// A small spine of reliable rules keeps a useful fraction of random
/// lattices grammatical.
Grammar random_grammar(uint64_t seed, int rule_count = 20);

/// Random lattice over the grammar's lexicon: a grammar-independent
/// random tiling of [0, frames] plus noise hypotheses. May be empty.
Lattice random_lattice(const Grammar& g, uint64_t seed, int max_hyps = 10,
                       int max_frames = 8);

/// Random bigram probabilities over the grammar's lexicon words.
BigramModel random_bigram(const Grammar& g, uint64_t seed, double floor_logp = -20.0);

struct RandomInstance {
    Grammar grammar;
    Lattice lattice;
    BigramModel bigram;
    std::string grammar_name;
};

/// Instance drawn from the {G1, G2, G3, random 20-rule CFG} pool.
RandomInstance random_instance(uint64_t seed, int max_hyps = 10, int max_frames = 8);

/// Large synthetic grammar (>= rule_count rules) accepting any category
/// sequence, for throughput benchmarks.
Grammar benchmark_grammar(int rule_count = 200);

/// Benchmark lattice with `hyp_count` hypotheses forming competing paths.
Lattice benchmark_lattice(const Grammar& g, uint64_t seed, int hyp_count);

}  // namespace latglr

#endif
