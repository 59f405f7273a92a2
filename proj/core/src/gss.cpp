#include "latglr/gss.hpp"

#include <algorithm>
#include <sstream>

namespace latglr {

std::pair<VertexId, bool> Gss::find_or_create_vertex(int time, int state) {
    auto key = std::make_pair(time, state);
    auto it = index_.find(key);
    if (it != index_.end()) return {it->second, false};
    Vertex v;
    v.id = static_cast<VertexId>(vertices_.size());
    v.time = time;
    v.state = state;
    vertices_.push_back(std::move(v));
    index_[key] = vertices_.back().id;
    by_time_[time].push_back(vertices_.back().id);
    ++version_;
    return {vertices_.back().id, true};
}

VertexId Gss::find_vertex(int time, int state) const {
    auto it = index_.find(std::make_pair(time, state));
    return it == index_.end() ? -1 : it->second;
}

LinkId Gss::find_link(VertexId owner, NodeId node) const {
    for (LinkId l : vertices_.at(owner).links)
        if (links_.at(l).node == node) return l;
    return -1;
}

LinkId Gss::create_link(VertexId owner, NodeId node, int start_time, int end_time,
                        VertexId first_pred) {
    Link l;
    l.id = static_cast<LinkId>(links_.size());
    l.owner = owner;
    l.node = node;
    l.start_time = start_time;
    l.end_time = end_time;
    l.preds.push_back(first_pred);
    links_.push_back(std::move(l));
    LinkId id = links_.back().id;
    vertices_.at(owner).links.push_back(id);
    vertices_.at(first_pred).pred_of.push_back(id);
    log_.push_back(id);
    ++version_;
    return id;
}

LinkId Gss::create_sentinel(VertexId vertex) {
    Link l;
    l.id = static_cast<LinkId>(links_.size());
    l.start_time = vertices_.at(vertex).time;
    l.end_time = l.start_time;
    l.preds.push_back(vertex);
    links_.push_back(std::move(l));
    LinkId id = links_.back().id;
    vertices_.at(vertex).sentinel = id;
    vertices_.at(vertex).pred_of.push_back(id);
    log_.push_back(id);
    ++version_;
    return id;
}

bool Gss::add_pred(LinkId link, VertexId pred) {
    auto& l = links_.at(link);
    if (std::find(l.preds.begin(), l.preds.end(), pred) != l.preds.end())
        return false;
    l.preds.push_back(pred);
    vertices_.at(pred).pred_of.push_back(link);
    log_.push_back(link);
    ++version_;
    return true;
}

bool Gss::add_record(LinkId link, const SearchRecord& rec) {
    auto& l = links_.at(link);
    if (std::find(l.records.begin(), l.records.end(), rec) != l.records.end())
        return false;
    l.records.push_back(rec);
    return true;
}

const std::vector<VertexId>& Gss::vertices_at(int time) const {
    static const std::vector<VertexId> empty;
    auto it = by_time_.find(time);
    return it == by_time_.end() ? empty : it->second;
}

std::string action_key(const Action& a) {
    std::ostringstream s;
    if (const auto* sh = std::get_if<ShiftAction>(&a)) {
        s << "S " << sh->pred << ' ' << sh->node << ' ' << sh->time << ' ' << sh->state;
    } else if (const auto* se = std::get_if<SearchAction>(&a)) {
        s << "R " << se->rule << ' ' << se->link << ' ' << se->ending_time << " [";
        for (NodeId n : se->seq) s << n << ' ';
        s << ']';
    } else {
        const auto& h = std::get<NewHypoAction>(a).hyp;
        s << "H " << h.start << ' ' << h.end << ' ' << h.key;
    }
    return s.str();
}

}  // namespace latglr
