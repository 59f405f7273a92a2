#include "latglr/forest.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <sstream>

namespace latglr {

std::pair<NodeId, bool> Forest::find_or_create(SymbolId cat, int start, int end) {
    auto key = std::make_tuple(cat, start, end);
    auto it = index_.find(key);
    if (it != index_.end()) return {it->second, false};
    Node n;
    n.id = static_cast<NodeId>(nodes_.size());
    n.cat = cat;
    n.start = start;
    n.end = end;
    nodes_.push_back(std::move(n));
    index_[key] = nodes_.back().id;
    log_.push_back(nodes_.back().id);
    ++version_;
    return {nodes_.back().id, true};
}

NodeId Forest::find(SymbolId cat, int start, int end) const {
    auto it = index_.find(std::make_tuple(cat, start, end));
    return it == index_.end() ? -1 : it->second;
}

bool Forest::add_hypothesis(NodeId n, const WordHypothesis& h) {
    auto& node = nodes_.at(n);
    if (!node.seqs.empty())
        throw std::logic_error("terminal content on a nonterminal node");
    if (std::find(node.hyps.begin(), node.hyps.end(), h) != node.hyps.end())
        return false;
    node.hyps.push_back(h);
    log_.push_back(n);
    ++version_;
    return true;
}

bool Forest::add_sequence(NodeId n, const std::vector<NodeId>& seq) {
    auto& node = nodes_.at(n);
    if (!node.hyps.empty())
        throw std::logic_error("nonterminal content on a terminal node");
    if (std::find(node.seqs.begin(), node.seqs.end(), seq) != node.seqs.end())
        return false;
    node.seqs.push_back(seq);
    log_.push_back(n);
    ++version_;
    return true;
}

std::vector<std::string> Forest::validate(const Grammar& g) const {
    std::vector<std::string> problems;
    for (const auto& n : nodes_) {
        std::string key = node_key(g, n);
        if (!n.hyps.empty() && !n.seqs.empty())
            problems.push_back(key + ": mixed terminal/nonterminal content");
        if (g.is_terminal(n.cat)) {
            if (!n.seqs.empty())
                problems.push_back(key + ": subtree sequences on terminal node");
            for (const auto& h : n.hyps)
                if (h.start != n.start || h.end != n.end)
                    problems.push_back(key + ": hypothesis span mismatch");
        } else {
            if (!n.hyps.empty())
                problems.push_back(key + ": hypotheses on nonterminal node");
            for (const auto& seq : n.seqs) {
                if (seq.empty()) {
                    if (n.start != n.end)
                        problems.push_back(key + ": epsilon sequence on nonzero span");
                    continue;
                }
                int t = n.start;
                for (NodeId c : seq) {
                    const auto& child = nodes_.at(c);
                    if (child.start != t)
                        problems.push_back(key + ": children not contiguous");
                    t = child.end;
                }
                if (t != n.end)
                    problems.push_back(key + ": children do not cover the span");
            }
        }
    }
    return problems;
}

std::string node_key(const Grammar& g, const Node& n) {
    return g.name(n.cat) + ":" + std::to_string(n.start) + ":" + std::to_string(n.end);
}

std::string forest_to_json(const Grammar& g, const Forest& f, int final_time,
                           const std::vector<NodeId>& roots) {
    nlohmann::ordered_json j;
    j["final_time"] = final_time;

    std::vector<std::string> root_keys;
    for (NodeId r : roots) root_keys.push_back(node_key(g, f.node(r)));
    std::sort(root_keys.begin(), root_keys.end());
    j["roots"] = root_keys;

    std::vector<std::pair<std::string, const Node*>> sorted;
    for (const auto& n : f.nodes()) sorted.emplace_back(node_key(g, n), &n);
    std::sort(sorted.begin(), sorted.end());

    nlohmann::ordered_json nodes;
    for (const auto& [key, n] : sorted) {
        nlohmann::ordered_json entry;
        if (g.is_terminal(n->cat)) {
            std::vector<std::string> hyps;
            for (const auto& h : n->hyps) {
                std::ostringstream s;
                s << h.start << ' ' << h.end << ' ' << h.key << ' ' << h.acoustic_logp;
                hyps.push_back(s.str());
            }
            std::sort(hyps.begin(), hyps.end());
            entry["hyps"] = hyps;
        } else {
            std::vector<std::vector<std::string>> seqs;
            for (const auto& seq : n->seqs) {
                std::vector<std::string> children;
                for (NodeId c : seq) children.push_back(node_key(g, f.node(c)));
                seqs.push_back(std::move(children));
            }
            std::sort(seqs.begin(), seqs.end());
            entry["seqs"] = seqs;
        }
        nodes[key] = std::move(entry);
    }
    j["nodes"] = std::move(nodes);
    return j.dump(2);
}

}  // namespace latglr
