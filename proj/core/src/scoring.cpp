#include "latglr/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace latglr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// shorter first, then lexicographic: cyclic re-wrapping of a derivation
// is strictly longer, so it can never displace the acyclic original
bool tree_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// canonical text form of a table, for fixpoint change detection
std::string table_signature(const BoundaryTable& t) {
    std::vector<std::string> lines;
    for (const auto& e : t.entries()) {
        std::ostringstream s;
        s << e.empty << '|' << e.first << '|' << e.last << '|' << e.c.ngram_ops
          << '|' << e.c.frames << '|' << std::hexfloat << e.c.acoustic_sum << '|'
          << e.c.ngram_sum << '|' << e.tree;
        lines.push_back(s.str());
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

}  // namespace

double normalize_components(const ScoreComponents& c, const ScoringConfig& cfg) {
    double ngram = c.ngram_ops > 0 ? c.ngram_sum / c.ngram_ops : 0.0;
    double acoustic = c.frames > 0 ? c.acoustic_sum / c.frames : 0.0;
    return cfg.lambda * ngram + acoustic;
}

void BoundaryTable::insert(BoundaryEntry e, const ScoringConfig& cfg) {
    auto same_key = [&](const BoundaryEntry& o) {
        return o.empty == e.empty && o.first == e.first && o.last == e.last &&
               o.c.ngram_ops == e.c.ngram_ops;
    };
    // Pareto check within the key: a continuation scores all same-key
    // entries through one linear functional of the two sums, so dominated
    // entries can never win.
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (!same_key(*it)) { ++it; continue; }
        bool old_ge_ac = it->c.acoustic_sum >= e.c.acoustic_sum;
        bool old_ge_ng = it->c.ngram_sum >= e.c.ngram_sum;
        bool old_le_ac = it->c.acoustic_sum <= e.c.acoustic_sum;
        bool old_le_ng = it->c.ngram_sum <= e.c.ngram_sum;
        if (old_ge_ac && old_ge_ng) {
            if (old_le_ac && old_le_ng && tree_less(e.tree, it->tree))
                it->tree = e.tree;
            return;  // dominated (or tied, tree kept minimal)
        }
        if (old_le_ac && old_le_ng) {
            it = entries_.erase(it);
            continue;
        }
        ++it;
    }
    entries_.push_back(std::move(e));
    if (entries_.size() > cfg.table_cap) {
        auto worst = std::min_element(
            entries_.begin(), entries_.end(),
            [&](const BoundaryEntry& a, const BoundaryEntry& b) {
                double va = a.empty ? 0.0 : normalize_components(a.c, cfg);
                double vb = b.empty ? 0.0 : normalize_components(b.c, cfg);
                if (va != vb) return va < vb;
                return tree_less(b.tree, a.tree);
            });
        entries_.erase(worst);
    }
}

double Scorer::junction(const std::string& prev_last,
                        const std::string& next_first) const {
    return bigram_.logprob(prev_last, next_first, cfg_.strict_bigram);
}

void Scorer::refresh_inside() {
    const auto& log = f_.mutation_log();
    if (f_log_pos_ == log.size()) return;
    std::set<NodeId> dirty;
    for (; f_log_pos_ < log.size(); ++f_log_pos_) {
        NodeId n = log[f_log_pos_];
        dirty.insert(n);
        // index any sequences added since the last refresh
        size_t& done = seqs_indexed_[n];
        const auto& seqs = f_.node(n).seqs;
        for (; done < seqs.size(); ++done)
            for (NodeId child : seqs[done]) parents_[child].push_back(n);
    }
    // a node's table feeds every ancestor's, so close upward
    std::vector<NodeId> stack(dirty.begin(), dirty.end());
    while (!stack.empty()) {
        NodeId n = stack.back();
        stack.pop_back();
        auto it = parents_.find(n);
        if (it == parents_.end()) continue;
        for (NodeId p : it->second)
            if (dirty.insert(p).second) stack.push_back(p);
    }
    for (NodeId n : dirty) {
        inside_cache_.erase(n);
        inside_done_.erase(n);
        pending_dirty_nodes_.push_back(n);
    }
}

void Scorer::refresh_outside() {
    refresh_inside();
    const auto& log = gss_.mutation_log();
    if (gss_log_pos_ == log.size() && pending_dirty_nodes_.empty()) return;
    const auto& links = gss_.links();
    for (; links_indexed_ < links.size(); ++links_indexed_) {
        NodeId n = links[links_indexed_].node;
        if (n >= 0) links_by_node_[n].push_back(links[links_indexed_].id);
    }
    std::set<LinkId> dirty;
    for (; gss_log_pos_ < log.size(); ++gss_log_pos_) dirty.insert(log[gss_log_pos_]);
    for (NodeId n : pending_dirty_nodes_) {
        auto it = links_by_node_.find(n);
        if (it != links_by_node_.end())
            dirty.insert(it->second.begin(), it->second.end());
    }
    pending_dirty_nodes_.clear();
    // a link's table is read by the links whose predecessor set contains
    // its owner, i.e. the owner's pred_of; sentinels (owner -1) feed no
    // other link, so the walk stops there
    std::vector<LinkId> stack(dirty.begin(), dirty.end());
    while (!stack.empty()) {
        LinkId l = stack.back();
        stack.pop_back();
        VertexId owner = gss_.link(l).owner;
        if (owner < 0) continue;
        for (LinkId d : gss_.vertex(owner).pred_of)
            if (dirty.insert(d).second) stack.push_back(d);
    }
    for (LinkId l : dirty) {
        outside_cache_.erase(l);
        outside_done_.erase(l);
    }
}

void Scorer::ensure_inside(NodeId n) {
    refresh_inside();
    if (inside_done_.count(n)) return;
    // dependency closure over child nodes, skipping finished regions
    std::vector<NodeId> order;
    std::set<NodeId> seen;
    std::vector<NodeId> stack{n};
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        if (inside_done_.count(id) || !seen.insert(id).second) continue;
        order.push_back(id);
        for (const auto& seq : f_.node(id).seqs)
            for (NodeId child : seq) stack.push_back(child);
    }
    // shorter spans first; same-span cycles converge by iteration because
    // a loop only re-wraps derivations without changing their components
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        const Node& x = f_.node(a);
        const Node& y = f_.node(b);
        int sx = x.end - x.start, sy = y.end - y.start;
        if (sx != sy) return sx < sy;
        if (x.start != y.start) return x.start < y.start;
        return a < b;
    });
    std::map<NodeId, std::string> sig;
    bool changed = true;
    for (size_t pass = 0; changed && pass < order.size() + 2; ++pass) {
        changed = false;
        for (NodeId id : order) {
            BoundaryTable t = compute_inside(id);
            std::string s = table_signature(t);
            auto it = sig.find(id);
            if (it == sig.end() || it->second != s) {
                sig[id] = std::move(s);
                inside_cache_[id] = std::move(t);
                changed = true;
            }
        }
    }
    inside_done_.insert(order.begin(), order.end());
}

const BoundaryTable& Scorer::inside_table(NodeId n) {
    ensure_inside(n);
    return inside_cache_.at(n);
}

BoundaryTable Scorer::compute_inside(NodeId nid) const {
    const Node& n = f_.node(nid);
    BoundaryTable t;
    const std::string cat = g_.name(n.cat);
    if (g_.is_terminal(n.cat)) {
        for (const auto& h : n.hyps) {
            BoundaryEntry e;
            e.empty = false;
            e.first = e.last = h.key;
            e.c = {h.acoustic_logp, h.frames(), 0.0, 0};
            e.tree = "(" + cat + " " + h.key + ")";
            t.insert(std::move(e), cfg_);
        }
        return t;
    }
    for (const auto& seq : n.seqs) {
        // Fold the children left to right, adding one bigram op per
        // junction of adjacent nonempty parts.
        BoundaryTable acc;
        acc.insert(BoundaryEntry{}, cfg_);  // unit: empty, zero components
        bool dead = false;
        for (NodeId child : seq) {
            auto ct = inside_cache_.find(child);
            if (ct == inside_cache_.end() || ct->second.empty()) {
                dead = true;  // not derivable (yet): skip this sequence
                break;
            }
            BoundaryTable next;
            for (const auto& a : acc.entries()) {
                for (const auto& b : ct->second.entries()) {
                    BoundaryEntry m;
                    m.tree = a.tree + " " + b.tree;
                    if (b.empty) {
                        m.empty = a.empty;
                        m.first = a.first;
                        m.last = a.last;
                        m.c = a.c;
                    } else if (a.empty) {
                        m.empty = false;
                        m.first = b.first;
                        m.last = b.last;
                        m.c = a.c + b.c;
                    } else {
                        m.empty = false;
                        m.first = a.first;
                        m.last = b.last;
                        m.c = a.c + b.c +
                              ScoreComponents{0, 0, junction(a.last, b.first), 1};
                    }
                    next.insert(std::move(m), cfg_);
                }
            }
            acc = std::move(next);
        }
        if (dead) continue;
        for (BoundaryEntry e : acc.entries()) {
            e.tree = "(" + cat + e.tree + ")";
            t.insert(std::move(e), cfg_);
        }
    }
    return t;
}

double Scorer::inside_of(NodeId n) {
    double best = kNegInf;
    for (const auto& e : inside_table(n).entries())
        best = std::max(best, e.empty ? 0.0 : normalize_components(e.c, cfg_));
    return best;
}

void Scorer::outside_contexts(VertexId pred, std::vector<BoundaryEntry>& out) const {
    // The start vertex contributes a zero context whose "last word" is the
    // begin marker; other vertices contribute their links' outside tables.
    if (pred == 0) {
        BoundaryEntry base;
        base.empty = false;
        base.first = base.last = bigram_.begin_marker;
        out.push_back(std::move(base));
        return;
    }
    for (LinkId l : gss_.vertex(pred).links) {
        auto it = outside_cache_.find(l);
        if (it == outside_cache_.end()) continue;
        const auto& entries = it->second.entries();
        out.insert(out.end(), entries.begin(), entries.end());
    }
}

void Scorer::ensure_outside(const std::vector<LinkId>& roots) {
    refresh_outside();
    // dependency closure: a link's table reads the tables of its
    // predecessors' links
    std::vector<LinkId> order;
    std::set<LinkId> seen;
    std::vector<LinkId> stack(roots);
    while (!stack.empty()) {
        LinkId l = stack.back();
        stack.pop_back();
        if (outside_done_.count(l) || !seen.insert(l).second) continue;
        order.push_back(l);
        for (VertexId pred : gss_.link(l).preds) {
            if (pred == 0) continue;
            for (LinkId pl : gss_.vertex(pred).links) stack.push_back(pl);
        }
    }
    for (LinkId l : order) {
        NodeId node = gss_.link(l).node;
        if (node >= 0) ensure_inside(node);
    }
    // earliest end time first; zero-span loops at one time converge by
    // iteration (a loop passes contexts through unchanged)
    std::sort(order.begin(), order.end(), [&](LinkId a, LinkId b) {
        int ea = gss_.link(a).end_time, eb = gss_.link(b).end_time;
        if (ea != eb) return ea < eb;
        return a < b;
    });
    std::map<LinkId, std::string> sig;
    bool changed = true;
    for (size_t pass = 0; changed && pass < order.size() + 2; ++pass) {
        changed = false;
        for (LinkId l : order) {
            BoundaryTable t = compute_outside(l);
            std::string s = table_signature(t);
            auto it = sig.find(l);
            if (it == sig.end() || it->second != s) {
                sig[l] = std::move(s);
                outside_cache_[l] = std::move(t);
                changed = true;
            }
        }
    }
    outside_done_.insert(order.begin(), order.end());
}

const BoundaryTable& Scorer::outside_table(LinkId l) {
    ensure_outside({l});
    return outside_cache_.at(l);
}

BoundaryTable Scorer::compute_outside(LinkId lid) const {
    const Link& link = gss_.link(lid);
    BoundaryTable t;
    std::vector<BoundaryEntry> contexts;
    for (VertexId pred : link.preds) outside_contexts(pred, contexts);
    if (link.node < 0) {
        // sentinel: the context itself
        for (auto& c : contexts) {
            c.tree.clear();
            t.insert(std::move(c), cfg_);
        }
        return t;
    }
    auto inside = inside_cache_.find(link.node);
    if (inside == inside_cache_.end()) return t;
    for (const auto& ctx : contexts) {
        for (const auto& e : inside->second.entries()) {
            BoundaryEntry m;
            m.empty = false;
            if (e.empty) {
                m.first = ctx.first;
                m.last = ctx.last;
                m.c = ctx.c;
            } else {
                m.first = ctx.first;
                m.last = e.last;
                m.c = ctx.c + e.c + ScoreComponents{0, 0, junction(ctx.last, e.first), 1};
            }
            t.insert(std::move(m), cfg_);
        }
    }
    return t;
}

double Scorer::outside_of(LinkId l) {
    double best = kNegInf;
    for (const auto& e : outside_table(l).entries())
        best = std::max(best, normalize_components(e.c, cfg_));
    return best;
}

double Scorer::score_shift(VertexId pred, NodeId node) {
    ensure_inside(node);
    if (pred != 0) ensure_outside(gss_.vertex(pred).links);
    std::vector<BoundaryEntry> contexts;
    outside_contexts(pred, contexts);
    const auto& inside = inside_cache_.at(node);
    double best = kNegInf;
    for (const auto& ctx : contexts) {
        for (const auto& e : inside.entries()) {
            ScoreComponents c =
                e.empty ? ctx.c
                        : ctx.c + e.c +
                              ScoreComponents{0, 0, junction(ctx.last, e.first), 1};
            best = std::max(best, normalize_components(c, cfg_));
        }
    }
    return best;
}

std::optional<BestTree> Scorer::best_tree(const std::vector<NodeId>& roots) {
    std::optional<BestTree> best;
    for (NodeId root : roots) {
        for (const auto& e : inside_table(root).entries()) {
            ScoreComponents total = e.c;
            if (!e.empty)
                total = total +
                        ScoreComponents{0, 0, junction(bigram_.begin_marker, e.first), 1};
            double score = normalize_components(total, cfg_);
            if (!best || score > best->score ||
                (score == best->score && tree_less(e.tree, best->tree))) {
                best = BestTree{e.tree, score, root};
            }
        }
    }
    return best;
}

}  // namespace latglr
