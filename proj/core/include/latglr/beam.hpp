#ifndef LATGLR_BEAM_HPP
#define LATGLR_BEAM_HPP

#include <limits>
#include <map>
#include <vector>

#include "latglr/engine.hpp"

namespace latglr {

struct BeamConfig {
    double beam_width = std::numeric_limits<double>::infinity();
    long max_recovered = std::numeric_limits<long>::max();
};

/// Frame-synchronous beam strategy. Search/NewHypo actions live on a
/// LIFO stack with priority over Shifts. Pending Shifts are grouped by
/// the target vertex time; within the earliest frame, actions scoring
/// below best-minus-beam (by outside evaluation) go to the PrunedAgenda.
/// With recovery enabled, an exhausted agenda without a parse falls back
/// to best-first replay of pruned Shifts (stage 2), the beam rule still
/// applying to actions they spawn.
class BeamStrategy : public Strategy {
public:
    BeamStrategy(BeamConfig cfg, bool enable_recovery);
    void on_enqueue(Engine& e, const Action& a) override;
    std::optional<Action> next(Engine& e) override;

    long pruned_count() const { return pruned_total_; }
    long recovered_count() const { return recovered_; }

private:
    struct PrunedItem {
        double score;
        std::string key;  // deterministic tie-break
        ShiftAction action;
    };

    BeamConfig cfg_;
    bool enable_recovery_;
    std::vector<Action> hi_;                       // Search/NewHypo stack
    std::map<int, std::vector<ShiftAction>> shifts_;  // by target vertex time
    std::vector<PrunedItem> pruned_;               // max-heap by (score, key)
    long pruned_total_ = 0;
    long recovered_ = 0;
};

/// Stage 1 (beam) then, if no parse, stage 2 (best-first recovery).
ParseResult run_two_stage(const Grammar& g, const SlrTable& table,
                          const Lattice& lattice, const BigramModel& bigram,
                          const EngineConfig& cfg, const BeamConfig& beam);

/// Stage 1 only.
ParseResult run_beam(const Grammar& g, const SlrTable& table,
                     const Lattice& lattice, const BigramModel& bigram,
                     const EngineConfig& cfg, const BeamConfig& beam);

}  // namespace latglr

#endif
