#ifndef LATGLR_ENGINE_HPP
#define LATGLR_ENGINE_HPP

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "latglr/bigram.hpp"
#include "latglr/forest.hpp"
#include "latglr/grammar.hpp"
#include "latglr/gss.hpp"
#include "latglr/lattice.hpp"
#include "latglr/scoring.hpp"
#include "latglr/slr.hpp"

namespace latglr {

struct EngineConfig {
    ScoringConfig scoring;
    long action_budget = 50'000'000;
    bool stop_at_first_accept = false;
};

struct ParseResult {
    bool accepted = false;
    std::vector<NodeId> roots;  // start-symbol nodes spanning [0, final_time]
    bool budget_exhausted = false;
    std::map<std::string, long> stats;
};

class Engine;

/// Orders and filters agenda contents; never fabricates actions.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual void on_enqueue(Engine& e, const Action& a) = 0;
    virtual std::optional<Action> next(Engine& e) = 0;
};

/// Executes the three basic actions (Shift, Search, NewHypo) on one
/// GssState. Single-threaded; all find-or-create paths are idempotent
/// and replay bookkeeping makes execution order irrelevant.
class Engine {
public:
    Engine(const Grammar& g, const SlrTable& table, const Lattice& lattice,
           const BigramModel& bigram, EngineConfig cfg);

    /// Creates the initial vertex (0, 0), seeds its reductions, and
    /// enqueues one NewHypo per word hypothesis.
    void init(Strategy& strategy);

    void execute(const Action& a);
    /// Dedup'ed: structurally identical actions enter the agenda once.
    void enqueue(const Action& a);

    bool accepted() const;
    std::vector<NodeId> root_nodes() const;
    ParseResult result() const;

    const Grammar& grammar() const { return g_; }
    const SlrTable& table() const { return table_; }
    const Lattice& lattice() const { return lattice_; }
    const Forest& forest() const { return forest_; }
    const Gss& gss() const { return gss_; }
    Scorer& scorer() { return scorer_; }
    const EngineConfig& config() const { return cfg_; }

    long executed_actions() const { return executed_; }
    bool budget_exceeded() const { return executed_ >= cfg_.action_budget; }
    std::map<std::string, long>& stats() { return stats_; }

    double score_shift(const ShiftAction& a) { return scorer_.score_shift(a.pred, a.node); }

private:
    void exec_shift(const ShiftAction& a);
    void exec_search(const SearchAction& a);
    void exec_new_hypo(const NewHypoAction& a);
    void seed_reductions(VertexId v);
    void replay_hypos_at(VertexId v);
    void on_new_link(VertexId owner, LinkId l);

    const Grammar& g_;
    const SlrTable& table_;
    const Lattice& lattice_;
    const BigramModel& bigram_;
    EngineConfig cfg_;

    Forest forest_;
    Gss gss_;
    std::set<std::string> seen_;  // agenda dedup (set semantics)
    std::vector<WordHypothesis> old_hypos_;
    std::map<int, std::vector<size_t>> old_hypos_by_start_;
    Strategy* strategy_ = nullptr;
    Scorer scorer_;
    long executed_ = 0;
    std::map<std::string, long> stats_;
};

/// Executes every pending action; with a seed, picks uniformly at random
/// among pending actions (for order-independence checks), otherwise FIFO.
class ExhaustiveStrategy : public Strategy {
public:
    explicit ExhaustiveStrategy(std::optional<uint64_t> seed = std::nullopt);
    void on_enqueue(Engine& e, const Action& a) override;
    std::optional<Action> next(Engine& e) override;

private:
    std::vector<Action> pending_;
    std::optional<std::mt19937_64> rng_;
};

/// Runs the main routine to agenda exhaustion (or first accept / budget,
/// per config) under the given strategy.
ParseResult run(Engine& engine, Strategy& strategy);

ParseResult run_exhaustive(const Grammar& g, const SlrTable& table,
                           const Lattice& lattice, const BigramModel& bigram,
                           const EngineConfig& cfg,
                           std::optional<uint64_t> seed = std::nullopt);

/// Canonical JSON of the GSS key structure (vertices and links), for
/// order-independence checks.
std::string gss_to_json(const Grammar& g, const Forest& f, const Gss& gss);

}  // namespace latglr

#endif
