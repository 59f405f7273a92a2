#include "latglr/slr.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

namespace latglr {

int SlrTable::shift_target(int state, SymbolId sym) const {
    const auto* c = cell(state, sym);
    if (!c) return -1;
    for (const auto& a : *c)
        if (a.kind == ActionKind::Shift) return a.target;
    return -1;
}

std::vector<int> SlrTable::reducible_rules(int state) const {
    std::set<int> rules;
    for (const auto& [sym, acts] : actions.at(state))
        for (const auto& a : acts)
            if (a.kind == ActionKind::Reduce) rules.insert(a.target);
    return {rules.begin(), rules.end()};
}

namespace {

// LR(0) item: position `dot` in rule `rule` of the augmented grammar.
struct Item {
    int rule;
    int dot;
    friend auto operator<=>(const Item&, const Item&) = default;
};
using ItemSet = std::set<Item>;

}  // namespace

FollowSets compute_follow(const Grammar& g, SymbolId end_symbol) {
    FollowSets fs;

    // nullable
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g.rules) {
            if (fs.nullable.count(r.head)) continue;
            bool all = true;
            for (SymbolId s : r.rhs)
                if (!fs.nullable.count(s)) { all = false; break; }
            if (all) { fs.nullable.insert(r.head); changed = true; }
        }
    }

    // FIRST
    std::map<SymbolId, std::set<SymbolId>> first;
    for (const auto& s : g.symbols)
        if (s.kind == SymbolKind::Terminal) first[s.id] = {s.id};
    changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g.rules) {
            auto& f = first[r.head];
            size_t before = f.size();
            for (SymbolId s : r.rhs) {
                const auto& fsym = first[s];
                f.insert(fsym.begin(), fsym.end());
                if (!fs.nullable.count(s)) break;
            }
            if (f.size() != before) changed = true;
        }
    }

    auto first_of_tail = [&](const std::vector<SymbolId>& rhs, size_t from,
                             bool& tail_nullable) {
        std::set<SymbolId> out;
        tail_nullable = true;
        for (size_t i = from; i < rhs.size(); ++i) {
            const auto& f = first[rhs[i]];
            out.insert(f.begin(), f.end());
            if (!fs.nullable.count(rhs[i])) { tail_nullable = false; break; }
        }
        return out;
    };

    // FOLLOW; the augmented start rule contributes end_symbol to FOLLOW(start).
    for (const auto& s : g.symbols)
        if (s.kind == SymbolKind::Nonterminal) fs.follow[s.id] = {};
    fs.follow[g.start].insert(end_symbol);
    changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g.rules) {
            for (size_t i = 0; i < r.rhs.size(); ++i) {
                SymbolId b = r.rhs[i];
                if (g.is_terminal(b)) continue;
                auto& fb = fs.follow[b];
                size_t before = fb.size();
                bool tail_nullable;
                auto tail = first_of_tail(r.rhs, i + 1, tail_nullable);
                fb.insert(tail.begin(), tail.end());
                if (tail_nullable) {
                    const auto& fh = fs.follow[r.head];
                    fb.insert(fh.begin(), fh.end());
                }
                if (fb.size() != before) changed = true;
            }
        }
    }
    return fs;
}

SlrTable build_slr_table(const Grammar& g) {
    SlrTable t;
    t.end_symbol = static_cast<SymbolId>(g.symbols.size());

    // Augmented grammar: rule index g.rules.size() is S' -> S.
    const int aug_rule = static_cast<int>(g.rules.size());
    auto rule_rhs = [&](int r) -> std::vector<SymbolId> {
        if (r == aug_rule) return {g.start};
        return g.rules[r].rhs;
    };
    auto rule_head = [&](int r) -> SymbolId {
        // S' has no id; never looked up for the augmented rule.
        return r == aug_rule ? -2 : g.rules[r].head;
    };

    std::map<SymbolId, std::vector<int>> rules_by_head;
    for (const auto& r : g.rules) rules_by_head[r.head].push_back(r.id);

    auto closure = [&](ItemSet items) {
        std::vector<Item> work(items.begin(), items.end());
        while (!work.empty()) {
            Item it = work.back();
            work.pop_back();
            auto rhs = rule_rhs(it.rule);
            if (it.dot >= static_cast<int>(rhs.size())) continue;
            SymbolId next = rhs[it.dot];
            if (g.is_terminal(next)) continue;
            for (int r : rules_by_head[next]) {
                Item ni{r, 0};
                if (items.insert(ni).second) work.push_back(ni);
            }
        }
        return items;
    };

    std::vector<ItemSet> states;
    std::map<ItemSet, int> state_index;
    auto add_state = [&](const ItemSet& items) {
        auto it = state_index.find(items);
        if (it != state_index.end()) return std::pair{it->second, false};
        int id = static_cast<int>(states.size());
        states.push_back(items);
        state_index[items] = id;
        return std::pair{id, true};
    };

    auto [s0, c0] = add_state(closure({Item{aug_rule, 0}}));
    (void)s0; (void)c0;
    t.actions.emplace_back();

    auto follow = compute_follow(g, t.end_symbol);

    for (int s = 0; s < static_cast<int>(states.size()); ++s) {
        if (s >= static_cast<int>(t.actions.size())) t.actions.emplace_back();
        // transitions, grouped by symbol in id order for determinism
        std::map<SymbolId, ItemSet> moved;
        for (const Item& it : states[s]) {
            auto rhs = rule_rhs(it.rule);
            if (it.dot < static_cast<int>(rhs.size()))
                moved[rhs[it.dot]].insert(Item{it.rule, it.dot + 1});
        }
        for (auto& [sym, kernel] : moved) {
            auto [target, created] = add_state(closure(kernel));
            if (created) t.actions.emplace_back();
            t.actions[s][sym].insert(TableAction{ActionKind::Shift, target});
        }
        // completed items
        for (const Item& it : states[s]) {
            auto rhs = rule_rhs(it.rule);
            if (it.dot != static_cast<int>(rhs.size())) continue;
            if (it.rule == aug_rule) {
                t.actions[s][t.end_symbol].insert(TableAction{ActionKind::Accept, -1});
            } else {
                for (SymbolId la : follow.follow[rule_head(it.rule)])
                    t.actions[s][la].insert(TableAction{ActionKind::Reduce, it.rule});
            }
        }
    }

    t.state_count = static_cast<int>(states.size());
    t.actions.resize(t.state_count);
    for (const auto& row : t.actions)
        for (const auto& [sym, acts] : row)
            if (acts.size() > 1) ++t.conflict_cells;
    return t;
}

std::string table_to_json(const Grammar& g, const SlrTable& t) {
    nlohmann::ordered_json j;
    j["state_count"] = t.state_count;
    j["conflict_cells"] = t.conflict_cells;
    auto sym_name = [&](SymbolId s) {
        return s == t.end_symbol ? std::string("$end") : g.name(s);
    };
    nlohmann::ordered_json states = nlohmann::ordered_json::array();
    for (int s = 0; s < t.state_count; ++s) {
        nlohmann::ordered_json row;
        // symbol keys in id order (stable across builds)
        for (const auto& [sym, acts] : t.actions[s]) {
            nlohmann::ordered_json cell = nlohmann::ordered_json::array();
            for (const auto& a : acts) {
                switch (a.kind) {
                    case ActionKind::Shift:
                        cell.push_back("s" + std::to_string(a.target));
                        break;
                    case ActionKind::Reduce:
                        cell.push_back("r" + std::to_string(a.target));
                        break;
                    case ActionKind::Accept:
                        cell.push_back("acc");
                        break;
                }
            }
            row[sym_name(sym)] = std::move(cell);
        }
        states.push_back(std::move(row));
    }
    j["states"] = std::move(states);
    return j.dump(2);
}

}  // namespace latglr
