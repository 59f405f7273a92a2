#ifndef LATGLR_FOREST_HPP
#define LATGLR_FOREST_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "latglr/grammar.hpp"
#include "latglr/lattice.hpp"

namespace latglr {

using NodeId = int;

/// Packed-forest node, unique per (cat, start, end). Terminal nodes hold
/// word hypotheses; nonterminal nodes hold alternative subtree sequences
/// (local ambiguity packing). An epsilon-derived node has start == end
/// and one empty sequence.
struct Node {
    NodeId id = -1;
    SymbolId cat = -1;
    int start = 0;
    int end = 0;
    std::vector<WordHypothesis> hyps;          // terminal content
    std::vector<std::vector<NodeId>> seqs;     // nonterminal content, left-to-right
};

class Forest {
public:
    /// Local ambiguity packing: one node per key, content merged in.
    std::pair<NodeId, bool> find_or_create(SymbolId cat, int start, int end);
    NodeId find(SymbolId cat, int start, int end) const;  // -1 if absent

    /// Dedup'ed content adders; return true when content actually grew.
    bool add_hypothesis(NodeId n, const WordHypothesis& h);
    bool add_sequence(NodeId n, const std::vector<NodeId>& seq);

    const Node& node(NodeId n) const { return nodes_.at(n); }
    const std::vector<Node>& nodes() const { return nodes_; }
    size_t size() const { return nodes_.size(); }

    /// Content version, bumped on every mutation (score caches key on it).
    long version() const { return version_; }

    /// Append-only log of mutated node ids, one entry per version bump;
    /// incremental consumers remember their read position.
    const std::vector<NodeId>& mutation_log() const { return log_; }

    /// Tiling check: children of every sequence are contiguous in time and
    /// cover the parent span; terminal hyps match the node span. Returns a
    /// list of violations (empty = valid).
    std::vector<std::string> validate(const Grammar& g) const;

private:
    std::vector<Node> nodes_;
    std::map<std::tuple<SymbolId, int, int>, NodeId> index_;
    std::vector<NodeId> log_;
    long version_ = 0;
};

/// Canonical node key "cat:start:end" used by the JSON dump.
std::string node_key(const Grammar& g, const Node& n);

/// Deterministic JSON forest dump, byte-identical for equal forests
/// regardless of construction order.
std::string forest_to_json(const Grammar& g, const Forest& f, int final_time,
                           const std::vector<NodeId>& roots);

}  // namespace latglr

#endif
