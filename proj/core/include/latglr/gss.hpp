#ifndef LATGLR_GSS_HPP
#define LATGLR_GSS_HPP

#include <map>
#include <tuple>
#include <variant>
#include <vector>

#include "latglr/forest.hpp"
#include "latglr/lattice.hpp"

namespace latglr {

using VertexId = int;
using LinkId = int;

/// Record of a Search action that executed through a link; enough to
/// replay the traversal (incomplete) or the follow-up shifts (complete)
/// when the link later gains a predecessor vertex.
struct SearchRecord {
    int rule = -1;
    std::vector<NodeId> seq;   // SubtrSeq as received by that Search
    int ending_time = 0;
    bool complete = false;
    NodeId node = -1;          // node found-or-created at completion

    friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

/// A left context: unique per (time, slr state).
struct Vertex {
    VertexId id = -1;
    int time = 0;
    int state = 0;
    std::vector<LinkId> links;     // LinkSet
    std::vector<LinkId> pred_of;   // links whose predecessor set contains this vertex
    LinkId sentinel = -1;          // the sentinel link reductions start from
};

/// Connects a vertex to its predecessor vertices through a forest node.
/// Sentinel links (node == -1) anchor reductions at a freshly created
/// vertex; they are not members of any vertex's LinkSet.
struct Link {
    LinkId id = -1;
    VertexId owner = -1;           // -1 for sentinels
    NodeId node = -1;              // -1 for sentinels
    int start_time = 0;            // common time of all predecessors
    int end_time = 0;
    std::vector<VertexId> preds;   // PS
    std::vector<SearchRecord> records;
};

class Gss {
public:
    std::pair<VertexId, bool> find_or_create_vertex(int time, int state);
    VertexId find_vertex(int time, int state) const;  // -1 if absent

    /// Link of `owner` carrying `node`, or -1.
    LinkId find_link(VertexId owner, NodeId node) const;
    LinkId create_link(VertexId owner, NodeId node, int start_time, int end_time,
                       VertexId first_pred);
    LinkId create_sentinel(VertexId vertex);

    /// Adds `pred` to the link's predecessor set; false when already present.
    bool add_pred(LinkId link, VertexId pred);
    /// Dedup'ed record insertion; true when new.
    bool add_record(LinkId link, const SearchRecord& rec);

    Vertex& vertex(VertexId v) { return vertices_.at(v); }
    const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
    Link& link(LinkId l) { return links_.at(l); }
    const Link& link(LinkId l) const { return links_.at(l); }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Link>& links() const { return links_; }
    const std::vector<VertexId>& vertices_at(int time) const;

    long version() const { return version_; }

    /// Append-only log of links whose predecessor structure changed
    /// (creation or pred growth); incremental consumers remember their
    /// read position. Record additions are not logged.
    const std::vector<LinkId>& mutation_log() const { return log_; }

private:
    std::vector<Vertex> vertices_;
    std::vector<Link> links_;
    std::map<std::pair<int, int>, VertexId> index_;
    std::map<int, std::vector<VertexId>> by_time_;
    std::vector<LinkId> log_;
    long version_ = 0;
};

// --- agenda actions ---

struct ShiftAction {
    VertexId pred;  // the vertex being connected as predecessor
    NodeId node;
    int time;       // time of the target vertex (= node end)
    int state;      // target slr state

    friend bool operator==(const ShiftAction&, const ShiftAction&) = default;
    friend auto operator<=>(const ShiftAction&, const ShiftAction&) = default;
};

struct SearchAction {
    int rule;
    std::vector<NodeId> seq;  // accumulated children, leftmost first
    LinkId link;
    int ending_time;

    friend bool operator==(const SearchAction&, const SearchAction&) = default;
    friend auto operator<=>(const SearchAction&, const SearchAction&) = default;
};

struct NewHypoAction {
    WordHypothesis hyp;

    friend bool operator==(const NewHypoAction&, const NewHypoAction&) = default;
    friend auto operator<=>(const NewHypoAction&, const NewHypoAction&) = default;
};

using Action = std::variant<ShiftAction, SearchAction, NewHypoAction>;

/// Stable text key used for agenda dedup and deterministic tie-breaks.
std::string action_key(const Action& a);

}  // namespace latglr

#endif
