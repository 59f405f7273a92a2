#include "latglr/engine.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

namespace latglr {

Engine::Engine(const Grammar& g, const SlrTable& table, const Lattice& lattice,
               const BigramModel& bigram, EngineConfig cfg)
    : g_(g),
      table_(table),
      lattice_(lattice),
      bigram_(bigram),
      cfg_(cfg),
      scorer_(g_, forest_, gss_, bigram_, cfg.scoring) {}

void Engine::init(Strategy& strategy) {
    strategy_ = &strategy;
    auto [v0, created] = gss_.find_or_create_vertex(0, 0);
    (void)created;
    // The initial vertex gets the same reduction seeding as shift-created
    // vertices, so epsilon rules reducible in state 0 fire at time 0.
    seed_reductions(v0);
    for (const auto& h : lattice_.hypotheses) enqueue(NewHypoAction{h});
}

void Engine::enqueue(const Action& a) {
    if (!seen_.insert(action_key(a)).second) return;
    ++stats_["enqueued"];
    strategy_->on_enqueue(*this, a);
}

void Engine::execute(const Action& a) {
    ++executed_;
    if (const auto* sh = std::get_if<ShiftAction>(&a)) {
        ++stats_["shift_executed"];
        exec_shift(*sh);
    } else if (const auto* se = std::get_if<SearchAction>(&a)) {
        ++stats_["search_executed"];
        exec_search(*se);
    } else {
        ++stats_["newhypo_executed"];
        exec_new_hypo(std::get<NewHypoAction>(a));
    }
}

void Engine::seed_reductions(VertexId v) {
    const auto& vx = gss_.vertex(v);
    LinkId sentinel = gss_.create_sentinel(v);
    for (int rule : table_.reducible_rules(vx.state))
        enqueue(SearchAction{rule, {}, sentinel, vx.time});
}

void Engine::replay_hypos_at(VertexId v) {
    // Shift step 4: recorded NewHypos starting at this vertex's time may
    // now shift from the new vertex.
    const auto& vx = gss_.vertex(v);
    auto it = old_hypos_by_start_.find(vx.time);
    if (it == old_hypos_by_start_.end()) return;
    for (size_t idx : it->second) {
        const auto& h = old_hypos_[idx];
        for (SymbolId cat : g_.categories_of_key(h.key)) {
            int target = table_.shift_target(vx.state, cat);
            if (target < 0) continue;
            NodeId node = forest_.find(cat, h.start, h.end);
            if (node < 0) continue;  // cannot happen after exec_new_hypo
            enqueue(ShiftAction{v, node, h.end, target});
        }
    }
}

void Engine::on_new_link(VertexId owner, LinkId l) {
    // Shift step 3: in-flight Searches that already traversed `owner` as a
    // predecessor extend through the new link.
    NodeId nid = gss_.link(l).node;
    for (LinkId through : gss_.vertex(owner).pred_of) {
        if (through == l) continue;
        for (const auto& rec : gss_.link(through).records) {
            if (rec.complete) continue;
            std::vector<NodeId> seq;
            seq.reserve(rec.seq.size() + 1);
            seq.push_back(nid);
            seq.insert(seq.end(), rec.seq.begin(), rec.seq.end());
            enqueue(SearchAction{rec.rule, std::move(seq), l, rec.ending_time});
        }
    }
}

void Engine::exec_shift(const ShiftAction& a) {
    VertexId existing = gss_.find_vertex(a.time, a.state);
    if (existing >= 0) {
        LinkId lj = gss_.find_link(existing, a.node);
        if (lj >= 0) {
            // step 2: both exist; join the predecessor set and replay the
            // Searches that already went through this link.
            if (!gss_.add_pred(lj, a.pred)) return;
            const auto& pred = gss_.vertex(a.pred);
            for (const auto& rec : gss_.link(lj).records) {
                if (rec.complete) {
                    SymbolId head = g_.rules[rec.rule].head;
                    int target = table_.shift_target(pred.state, head);
                    if (target >= 0)
                        enqueue(ShiftAction{a.pred, rec.node, rec.ending_time, target});
                } else {
                    for (LinkId lk : pred.links) {
                        std::vector<NodeId> seq;
                        seq.reserve(rec.seq.size() + 1);
                        seq.push_back(gss_.link(lk).node);
                        seq.insert(seq.end(), rec.seq.begin(), rec.seq.end());
                        enqueue(SearchAction{rec.rule, std::move(seq), lk,
                                             rec.ending_time});
                    }
                }
            }
            return;
        }
        // step 3: vertex exists, link is new.
        const auto& node = forest_.node(a.node);
        LinkId nl = gss_.create_link(existing, a.node, node.start, node.end, a.pred);
        on_new_link(existing, nl);
        return;
    }
    // step 4: create both, then replay recorded NewHypos and seed the
    // vertex's reductions through a sentinel link.
    auto [v, created] = gss_.find_or_create_vertex(a.time, a.state);
    (void)created;
    const auto& node = forest_.node(a.node);
    gss_.create_link(v, a.node, node.start, node.end, a.pred);
    replay_hypos_at(v);
    seed_reductions(v);
}

void Engine::exec_search(const SearchAction& a) {
    const Rule& rule = g_.rules[a.rule];
    const Link& link = gss_.link(a.link);
    if (a.seq.size() == rule.rhs.size()) {
        // step 2: complete; pack the sequence into the head node and shift
        // it from every predecessor.
        auto [node, created] = forest_.find_or_create(rule.head, link.start_time,
                                                      a.ending_time);
        if (created) ++stats_["nodes_from_search"];
        forest_.add_sequence(node, a.seq);
        for (VertexId vm : gss_.link(a.link).preds) {
            int target = table_.shift_target(gss_.vertex(vm).state, rule.head);
            if (target < 0) continue;  // dead branch
            enqueue(ShiftAction{vm, node, a.ending_time, target});
        }
        gss_.add_record(a.link, SearchRecord{a.rule, a.seq, a.ending_time, true, node});
        return;
    }
    // step 3: walk one link leftward through every predecessor.
    gss_.add_record(a.link, SearchRecord{a.rule, a.seq, a.ending_time, false, -1});
    for (VertexId vi : gss_.link(a.link).preds) {
        for (LinkId lj : gss_.vertex(vi).links) {
            std::vector<NodeId> seq;
            seq.reserve(a.seq.size() + 1);
            seq.push_back(gss_.link(lj).node);
            seq.insert(seq.end(), a.seq.begin(), a.seq.end());
            enqueue(SearchAction{a.rule, std::move(seq), lj, a.ending_time});
        }
    }
}

void Engine::exec_new_hypo(const NewHypoAction& a) {
    const auto& h = a.hyp;
    for (SymbolId cat : g_.categories_of_key(h.key)) {
        auto [node, created] = forest_.find_or_create(cat, h.start, h.end);
        if (created) ++stats_["nodes_from_newhypo"];
        forest_.add_hypothesis(node, h);
        if (created) {
            for (VertexId v : gss_.vertices_at(h.start)) {
                int target = table_.shift_target(gss_.vertex(v).state, cat);
                if (target < 0) continue;
                enqueue(ShiftAction{v, node, h.end, target});
            }
        }
    }
    auto key = std::find(old_hypos_.begin(), old_hypos_.end(), h);
    if (key == old_hypos_.end()) {
        old_hypos_.push_back(h);
        old_hypos_by_start_[h.start].push_back(old_hypos_.size() - 1);
    }
}

bool Engine::accepted() const { return !root_nodes().empty(); }

std::vector<NodeId> Engine::root_nodes() const {
    std::vector<NodeId> roots;
    if (lattice_.hypotheses.empty()) return roots;
    NodeId r = forest_.find(g_.start, 0, lattice_.final_time);
    if (r >= 0) roots.push_back(r);
    return roots;
}

ParseResult Engine::result() const {
    ParseResult res;
    res.roots = root_nodes();
    res.accepted = !res.roots.empty();
    res.stats = stats_;
    res.stats["actions_executed"] = executed_;
    res.stats["vertices"] = static_cast<long>(gss_.vertices().size());
    long real_links = 0;
    for (const auto& l : gss_.links())
        if (l.node >= 0) ++real_links;
    res.stats["links"] = real_links;
    res.stats["nodes"] = static_cast<long>(forest_.size());
    return res;
}

ExhaustiveStrategy::ExhaustiveStrategy(std::optional<uint64_t> seed) {
    if (seed) rng_.emplace(*seed);
}

void ExhaustiveStrategy::on_enqueue(Engine&, const Action& a) {
    pending_.push_back(a);
}

std::optional<Action> ExhaustiveStrategy::next(Engine&) {
    if (pending_.empty()) return std::nullopt;
    size_t idx = pending_.size() - 1;
    if (rng_) idx = (*rng_)() % pending_.size();
    Action a = std::move(pending_[idx]);
    pending_[idx] = std::move(pending_.back());
    pending_.pop_back();
    return a;
}

ParseResult run(Engine& engine, Strategy& strategy) {
    engine.init(strategy);
    bool budget_hit = false;
    while (auto a = strategy.next(engine)) {
        engine.execute(*a);
        if (engine.config().stop_at_first_accept && engine.accepted()) break;
        if (engine.budget_exceeded()) {
            budget_hit = true;
            break;
        }
    }
    ParseResult res = engine.result();
    res.budget_exhausted = budget_hit;
    return res;
}

ParseResult run_exhaustive(const Grammar& g, const SlrTable& table,
                           const Lattice& lattice, const BigramModel& bigram,
                           const EngineConfig& cfg, std::optional<uint64_t> seed) {
    Engine engine(g, table, lattice, bigram, cfg);
    ExhaustiveStrategy strategy(seed);
    return run(engine, strategy);
}

std::string gss_to_json(const Grammar& g, const Forest& f, const Gss& gss) {
    std::vector<std::string> vertices;
    for (const auto& v : gss.vertices())
        vertices.push_back(std::to_string(v.time) + ":" + std::to_string(v.state));
    std::sort(vertices.begin(), vertices.end());

    std::vector<std::string> links;
    for (const auto& l : gss.links()) {
        if (l.node < 0) continue;  // sentinels are bookkeeping, not structure
        const auto& owner = gss.vertex(l.owner);
        std::vector<std::string> preds;
        for (VertexId p : l.preds) {
            const auto& pv = gss.vertex(p);
            preds.push_back(std::to_string(pv.time) + ":" + std::to_string(pv.state));
        }
        std::sort(preds.begin(), preds.end());
        std::string s = std::to_string(owner.time) + ":" + std::to_string(owner.state) +
                        " <- " + node_key(g, f.node(l.node)) + " <- [";
        for (const auto& p : preds) s += p + " ";
        s += "]";
        links.push_back(std::move(s));
    }
    std::sort(links.begin(), links.end());

    nlohmann::ordered_json j;
    j["vertices"] = vertices;
    j["links"] = links;
    return j.dump(2);
}

}  // namespace latglr
