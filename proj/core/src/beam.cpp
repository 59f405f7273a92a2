#include "latglr/beam.hpp"

#include <algorithm>
#include <cmath>

namespace latglr {

BeamStrategy::BeamStrategy(BeamConfig cfg, bool enable_recovery)
    : cfg_(cfg), enable_recovery_(enable_recovery) {}

void BeamStrategy::on_enqueue(Engine&, const Action& a) {
    if (const auto* sh = std::get_if<ShiftAction>(&a))
        shifts_[sh->time].push_back(*sh);
    else
        hi_.push_back(a);
}

std::optional<Action> BeamStrategy::next(Engine& e) {
    // Search/NewHypo first, LIFO.
    if (!hi_.empty()) {
        Action a = std::move(hi_.back());
        hi_.pop_back();
        return a;
    }
    while (!shifts_.empty()) {
        auto frame = shifts_.begin();  // earliest target-vertex time
        auto& bucket = frame->second;
        if (bucket.empty()) {
            shifts_.erase(frame);
            continue;
        }
        // Score the frame's candidates by the outside evaluation of the
        // link each Shift would create.
        std::vector<std::pair<double, size_t>> scored;
        scored.reserve(bucket.size());
        double best = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < bucket.size(); ++i) {
            double s = e.score_shift(bucket[i]);
            best = std::max(best, s);
            scored.emplace_back(s, i);
        }
        // Boundary ties (score exactly best - beam) survive, so beam 0
        // keeps all co-optimal actions.
        double cut = best - cfg_.beam_width;
        std::vector<std::pair<double, ShiftAction>> survivors;
        for (auto& [s, i] : scored) {
            const ShiftAction& a = bucket[i];
            if (s < cut) {
                pruned_.push_back(PrunedItem{s, action_key(Action{a}), a});
                std::push_heap(pruned_.begin(), pruned_.end(),
                               [](const PrunedItem& x, const PrunedItem& y) {
                                   if (x.score != y.score) return x.score < y.score;
                                   return x.key > y.key;
                               });
                ++pruned_total_;
            } else {
                survivors.emplace_back(s, a);
            }
        }
        // best first; ties broken on the stable action key
        std::sort(survivors.begin(), survivors.end(),
                  [](const auto& x, const auto& y) {
                      if (x.first != y.first) return x.first > y.first;
                      return action_key(Action{x.second}) < action_key(Action{y.second});
                  });
        bucket.clear();
        for (size_t i = 1; i < survivors.size(); ++i)
            bucket.push_back(survivors[i].second);  // rescored next round
        if (bucket.empty()) shifts_.erase(frame);
        if (!survivors.empty()) return Action{survivors.front().second};
    }
    // Stage 2: best-first replay of pruned Shifts.
    if (!enable_recovery_ || e.accepted()) return std::nullopt;
    if (pruned_.empty()) return std::nullopt;
    if (recovered_ >= cfg_.max_recovered) return std::nullopt;
    std::pop_heap(pruned_.begin(), pruned_.end(),
                  [](const PrunedItem& x, const PrunedItem& y) {
                      if (x.score != y.score) return x.score < y.score;
                      return x.key > y.key;
                  });
    PrunedItem item = std::move(pruned_.back());
    pruned_.pop_back();
    ++recovered_;
    return Action{item.action};
}

namespace {

ParseResult run_with_beam(const Grammar& g, const SlrTable& table,
                          const Lattice& lattice, const BigramModel& bigram,
                          const EngineConfig& cfg, const BeamConfig& beam,
                          bool recovery) {
    Engine engine(g, table, lattice, bigram, cfg);
    BeamStrategy strategy(beam, recovery);
    ParseResult res = run(engine, strategy);
    res.stats["pruned"] = strategy.pruned_count();
    res.stats["recovered"] = strategy.recovered_count();
    return res;
}

}  // namespace

ParseResult run_two_stage(const Grammar& g, const SlrTable& table,
                          const Lattice& lattice, const BigramModel& bigram,
                          const EngineConfig& cfg, const BeamConfig& beam) {
    return run_with_beam(g, table, lattice, bigram, cfg, beam, true);
}

ParseResult run_beam(const Grammar& g, const SlrTable& table, const Lattice& lattice,
                     const BigramModel& bigram, const EngineConfig& cfg,
                     const BeamConfig& beam) {
    return run_with_beam(g, table, lattice, bigram, cfg, beam, false);
}

}  // namespace latglr
