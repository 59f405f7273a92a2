#ifndef LATGLR_SLR_HPP
#define LATGLR_SLR_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "latglr/grammar.hpp"

namespace latglr {

enum class ActionKind { Shift, Reduce, Accept };

struct TableAction {
    ActionKind kind;
    int target = -1;  // next state for Shift, rule id for Reduce

    friend bool operator==(const TableAction&, const TableAction&) = default;
    friend auto operator<=>(const TableAction&, const TableAction&) = default;
};

/// SLR(1) table. Cells may hold several actions (shift/reduce and
/// reduce/reduce conflicts are legal for GLR). Shift entries exist for
/// nonterminals as well; they double as the goto function.
struct SlrTable {
    int state_count = 0;
    SymbolId end_symbol = -1;  // end-of-input pseudo-symbol
    // actions[state] maps symbol -> ordered action set
    std::vector<std::map<SymbolId, std::set<TableAction>>> actions;
    int conflict_cells = 0;

    const std::set<TableAction>* cell(int state, SymbolId sym) const {
        auto& row = actions.at(state);
        auto it = row.find(sym);
        return it == row.end() ? nullptr : &it->second;
    }
    /// The unique shift/goto target, or -1. The LR(0) automaton has at
    /// most one transition per (state, symbol).
    int shift_target(int state, SymbolId sym) const;
    /// Distinct rule ids reducible somewhere in this state's row.
    std::vector<int> reducible_rules(int state) const;
};

SlrTable build_slr_table(const Grammar& g);

/// FIRST/FOLLOW as computed by the table builder, exposed so tests can
/// cross-check against an independent fixpoint.
struct FollowSets {
    std::map<SymbolId, std::set<SymbolId>> follow;  // nonterminal -> terminals (+end)
    std::set<SymbolId> nullable;
};
FollowSets compute_follow(const Grammar& g, SymbolId end_symbol);

/// Deterministic JSON dump for golden tests.
std::string table_to_json(const Grammar& g, const SlrTable& t);

}  // namespace latglr

#endif
