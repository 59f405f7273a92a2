#ifndef LATGLR_SCORING_HPP
#define LATGLR_SCORING_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "latglr/bigram.hpp"
#include "latglr/forest.hpp"
#include "latglr/gss.hpp"
#include "latglr/grammar.hpp"

namespace latglr {

struct ScoringConfig {
    double lambda = 1.0;       // weight of the n-gram term
    bool strict_bigram = false;
    size_t table_cap = 256;    // max boundary entries kept per node/link
};

/// Denormalized score sums over a word sequence. Components add; the
/// normalized value divides each sum by its own length.
struct ScoreComponents {
    double acoustic_sum = 0;  // log P(words | word models)
    long frames = 0;          // time units covered
    double ngram_sum = 0;     // log P(words | bigram)
    long ngram_ops = 0;       // bigram applications (incl. begin-marker junction)

    ScoreComponents operator+(const ScoreComponents& o) const {
        return {acoustic_sum + o.acoustic_sum, frames + o.frames,
                ngram_sum + o.ngram_sum, ngram_ops + o.ngram_ops};
    }
    friend bool operator==(const ScoreComponents&, const ScoreComponents&) = default;
};

/// lambda * ngram_sum/ngram_ops + acoustic_sum/frames, with 0/0 = 0 for
/// either term (single-word sequences have no bigram op yet; empty
/// sequences score 0 overall).
double normalize_components(const ScoreComponents& c, const ScoringConfig& cfg);

/// Boundary-keyed score entry. Keeping entries keyed by the boundary
/// words plus the bigram-op count makes the maximization over packed
/// word sequences exact: any continuation scores all entries of one key
/// through the same linear functional of (acoustic_sum, ngram_sum).
struct BoundaryEntry {
    bool empty = true;         // epsilon-derived sequence
    std::string first, last;   // boundary words ("" when empty)
    ScoreComponents c;
    std::string tree;          // serialized best derivation (inside tables only)
};

/// Per-key Pareto table of BoundaryEntry. Within a (first, last, ops)
/// key, dominated entries (both sums <=) are dropped; ties keep the
/// shorter (then lexicographically smaller) tree, so cyclic re-wrappings
/// of a derivation never displace the acyclic original.
class BoundaryTable {
public:
    void insert(BoundaryEntry e, const ScoringConfig& cfg);
    const std::vector<BoundaryEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<BoundaryEntry> entries_;
};

struct BestTree {
    std::string tree;   // bracketed form, e.g. (S (NP (n dog)) (VP (v barks)))
    double score = 0;
    NodeId root = -1;
};

/// Inside/outside evaluation over the forest and GSS. Caches are keyed
/// on the structures' version counters, so queries during a run see
/// current content.
class Scorer {
public:
    Scorer(const Grammar& g, const Forest& f, const Gss& gss,
           const BigramModel& bigram, ScoringConfig cfg)
        : g_(g), f_(f), gss_(gss), bigram_(bigram), cfg_(cfg) {}

    const ScoringConfig& config() const { return cfg_; }

    /// Boundary table of the word sequences a node covers (inside parts;
    /// the begin-marker bigram is excluded).
    const BoundaryTable& inside_table(NodeId n);

    /// Best normalized inside value of a node (0 for pure-epsilon nodes).
    double inside_of(NodeId n);

    /// Boundary table over complete left contexts up to and including a
    /// link; paths start at the initial vertex with the begin marker.
    const BoundaryTable& outside_table(LinkId l);

    /// Best normalized outside value of an existing link.
    double outside_of(LinkId l);

    /// Outside value of the hypothetical link a pending Shift would
    /// create or extend: node shifted from `pred`.
    double score_shift(VertexId pred, NodeId node);

    /// Best-scoring derivation over the given roots, with lexicographic
    /// tie-break on the serialized tree.
    std::optional<BestTree> best_tree(const std::vector<NodeId>& roots);

private:
    // Tables are computed over the dependency closure of a query with a
    // fixpoint pass, so cyclic regions (same-span forest nodes, zero-span
    // link loops) converge instead of defeating the caches: a cycle only
    // re-wraps existing derivations without changing their components.
    void refresh_inside();
    void refresh_outside();
    void ensure_inside(NodeId n);
    void ensure_outside(const std::vector<LinkId>& roots);
    BoundaryTable compute_inside(NodeId n) const;
    BoundaryTable compute_outside(LinkId l) const;
    void outside_contexts(VertexId pred, std::vector<BoundaryEntry>& out) const;
    double junction(const std::string& prev_last, const std::string& next_first) const;

    const Grammar& g_;
    const Forest& f_;
    const Gss& gss_;
    const BigramModel& bigram_;
    ScoringConfig cfg_;

    std::map<NodeId, BoundaryTable> inside_cache_;
    std::set<NodeId> inside_done_;
    std::map<LinkId, BoundaryTable> outside_cache_;
    std::set<LinkId> outside_done_;

    // Incremental invalidation state: mutation logs are consumed from the
    // saved positions and only transitively affected entries are dropped.
    size_t f_log_pos_ = 0;
    size_t gss_log_pos_ = 0;
    std::map<NodeId, size_t> seqs_indexed_;          // per node, seqs already indexed
    std::map<NodeId, std::vector<NodeId>> parents_;  // child -> parent nodes
    size_t links_indexed_ = 0;
    std::map<NodeId, std::vector<LinkId>> links_by_node_;
    std::vector<NodeId> pending_dirty_nodes_;  // inside changes not yet seen by outside
};

}  // namespace latglr

#endif
