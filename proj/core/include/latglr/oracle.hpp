#ifndef LATGLR_ORACLE_HPP
#define LATGLR_ORACLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "latglr/bigram.hpp"
#include "latglr/grammar.hpp"
#include "latglr/lattice.hpp"
#include "latglr/scoring.hpp"

namespace latglr {

// Brute-force reference, independent of the engine and the link-score
// recursion: it enumerates lattice paths, tests membership with a
// tabular recognizer, and scores whole paths from raw sums.

class OracleGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleGuards {
    size_t max_hypotheses = 20;
    size_t max_paths = 10000;
    size_t max_words = 12;
    size_t max_trees = 200000;  // enumeration work budget (derive calls)
    // per-span cap on enumerated derivations; truncation keeps the
    // lexicographically smallest trees, so existence and path scores are
    // unaffected (grammaticality comes from an exact chart, and scores
    // depend on the word path, not the tree)
    size_t max_trees_per_span = 64;
};

/// All hypothesis sequences tiling [0, final_time] contiguously.
std::vector<std::vector<WordHypothesis>> enumerate_paths(
    const Lattice& lattice, const OracleGuards& guards = {});

/// A parse tree: terminal leaves carry the word, internal nodes the
/// nonterminal category.
struct OracleTree {
    SymbolId cat = -1;
    std::string word;                 // terminal leaves only
    std::vector<OracleTree> children;
};
std::string serialize_tree(const Grammar& g, const OracleTree& t);

/// All derivations of a terminal-category sequence (cyclic same-span
/// re-derivations excluded, which keeps infinitely ambiguous epsilon
/// grammars finite).
std::vector<OracleTree> recognize(const Grammar& g,
                                  const std::vector<SymbolId>& cats,
                                  const OracleGuards& guards = {});

/// True iff some category assignment of the path's words is grammatical.
bool path_grammatical(const Grammar& g, const std::vector<WordHypothesis>& path,
                      const OracleGuards& guards = {});

/// Whole-path normalized score: lambda * ngram/ops + acoustic/frames with
/// the begin-marker bigram included (n words -> n ops).
double score_path(const std::vector<WordHypothesis>& path, const BigramModel& bigram,
                  const ScoringConfig& cfg);

struct OracleBest {
    std::vector<WordHypothesis> path;
    OracleTree tree;
    std::string tree_text;
    double score = 0;
};

/// Max of score_path over grammatical paths; ties broken lexicographically
/// on the serialized tree.
std::optional<OracleBest> best_path(const Grammar& g, const Lattice& lattice,
                                    const BigramModel& bigram, const ScoringConfig& cfg,
                                    const OracleGuards& guards = {});

/// Word-key sequences of all grammatical paths (sorted, deduped).
std::vector<std::vector<std::string>> grammatical_paths(
    const Grammar& g, const Lattice& lattice, const OracleGuards& guards = {});

}  // namespace latglr

#endif
