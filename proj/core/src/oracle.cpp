#include "latglr/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace latglr {

std::vector<std::vector<WordHypothesis>> enumerate_paths(const Lattice& lattice,
                                                         const OracleGuards& guards) {
    if (lattice.hypotheses.size() > guards.max_hypotheses)
        throw OracleGuardError("lattice too large for the oracle");
    std::vector<std::vector<WordHypothesis>> paths;
    if (lattice.hypotheses.empty()) return paths;

    std::map<int, std::vector<WordHypothesis>> by_start;
    for (const auto& h : lattice.hypotheses) by_start[h.start].push_back(h);

    std::vector<WordHypothesis> cur;
    std::function<void(int)> dfs = [&](int t) {
        if (t == lattice.final_time && !cur.empty()) {
            paths.push_back(cur);
            if (paths.size() > guards.max_paths)
                throw OracleGuardError("too many lattice paths");
            return;
        }
        auto it = by_start.find(t);
        if (it == by_start.end()) return;
        for (const auto& h : it->second) {
            cur.push_back(h);
            dfs(h.end);
            cur.pop_back();
        }
    };
    dfs(0);
    return paths;
}

std::string serialize_tree(const Grammar& g, const OracleTree& t) {
    std::string s = "(" + g.name(t.cat);
    if (!t.word.empty()) {
        s += " " + t.word;
    } else {
        for (const auto& c : t.children) s += " " + serialize_tree(g, c);
    }
    s += ")";
    return s;
}

namespace {

// Exact derivability of cats[i..j) per symbol, computed as a monotone
// fixpoint over the (symbol, span) chart. Also records one witness split
// per derivable key; a witness only references keys that became derivable
// strictly earlier, so the witness tree is always finite even when the
// grammar is infinitely ambiguous.
struct Chart {
    const Grammar& g;
    const std::vector<SymbolId>& cats;
    int n;
    std::map<SymbolId, std::vector<const Rule*>> by_head;

    struct Witness {
        const Rule* rule = nullptr;
        std::vector<int> cuts;  // child span boundaries, size rhs+1
    };
    // keyed (sym, i, j); presence means derivable
    std::map<std::tuple<SymbolId, int, int>, Witness> table;

    Chart(const Grammar& gr, const std::vector<SymbolId>& cs)
        : g(gr), cats(cs), n(static_cast<int>(cs.size())) {
        for (const auto& r : g.rules) by_head[r.head].push_back(&r);
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [head, rules] : by_head)
                for (int i = 0; i <= n; ++i)
                    for (int j = i; j <= n; ++j) {
                        auto key = std::make_tuple(head, i, j);
                        if (table.count(key)) continue;
                        for (const Rule* r : rules) {
                            std::vector<int> cuts{i};
                            if (!find_split(*r, 0, i, j, cuts)) continue;
                            table[key] = Witness{r, cuts};
                            changed = true;
                            break;
                        }
                    }
        }
    }

    bool derivable(SymbolId sym, int i, int j) const {
        if (g.is_terminal(sym)) return j == i + 1 && cats[i] == sym;
        return table.count(std::make_tuple(sym, i, j)) > 0;
    }

    bool find_split(const Rule& r, size_t k, int pos, int j,
                    std::vector<int>& cuts) const {
        if (k == r.rhs.size()) return pos == j;
        for (int mid = pos; mid <= j; ++mid) {
            if (!derivable(r.rhs[k], pos, mid)) continue;
            cuts.push_back(mid);
            if (find_split(r, k + 1, mid, j, cuts)) return true;
            cuts.pop_back();
        }
        return false;
    }

    OracleTree witness_tree(SymbolId sym, int i, int j) const {
        OracleTree t;
        t.cat = sym;
        if (g.is_terminal(sym)) {
            t.word = "?";
            return t;
        }
        const Witness& w = table.at(std::make_tuple(sym, i, j));
        for (size_t k = 0; k < w.rule->rhs.size(); ++k)
            t.children.push_back(
                witness_tree(w.rule->rhs[k], w.cuts[k], w.cuts[k + 1]));
        return t;
    }
};

// Enumerates derivations of cats[i..j) for a symbol, excluding
// re-derivations of the same (symbol, span) nested inside themselves.
// Context-dependent (cycle-skipping) results cannot be memoized, so the
// whole enumeration runs under a work budget; when the budget trips, the
// caller falls back to the chart's witness tree. Dead branches are pruned
// through the chart, which keeps the common case cheap and exact.
struct Recognizer {
    const Grammar& g;
    const std::vector<SymbolId>& cats;
    const OracleGuards& guards;
    const Chart& chart;
    std::set<std::tuple<SymbolId, int, int>> in_progress;
    std::map<std::tuple<SymbolId, int, int>, std::vector<OracleTree>> memo;
    bool tainted = false;
    size_t work = 0;
    bool truncated = false;

    std::vector<OracleTree> derive(SymbolId sym, int i, int j) {
        std::vector<OracleTree> out;
        if (g.is_terminal(sym)) {
            if (j == i + 1 && cats[i] == sym) {
                OracleTree t;
                t.cat = sym;
                t.word = "?";  // leaf category match; word filled by caller
                out.push_back(std::move(t));
            }
            return out;
        }
        if (!chart.derivable(sym, i, j)) return out;
        auto key = std::make_tuple(sym, i, j);
        auto hit = memo.find(key);
        if (hit != memo.end()) return hit->second;
        if (in_progress.count(key)) {
            tainted = true;
            return out;
        }
        if (++work > guards.max_trees) {
            truncated = true;
            return out;
        }
        in_progress.insert(key);
        bool outer_tainted = tainted;
        tainted = false;
        const size_t work_cap = guards.max_trees_per_span * 64;
        for (const Rule* r : chart.by_head.at(sym)) {
            // all splits of [i, j) into |rhs| contiguous (possibly empty) spans
            std::function<void(size_t, int, std::vector<OracleTree>&)> split =
                [&](size_t k, int pos, std::vector<OracleTree>& acc) {
                    if (out.size() >= work_cap || truncated) return;
                    if (k == r->rhs.size()) {
                        if (pos != j) return;
                        OracleTree t;
                        t.cat = sym;
                        t.children = acc;
                        out.push_back(std::move(t));
                        return;
                    }
                    for (int mid = pos; mid <= j; ++mid) {
                        if (!chart.derivable(r->rhs[k], pos, mid)) continue;
                        auto subs = derive(r->rhs[k], pos, mid);
                        for (auto& s : subs) {
                            acc.push_back(s);
                            split(k + 1, mid, acc);
                            acc.pop_back();
                        }
                    }
                };
            std::vector<OracleTree> acc;
            split(0, i, acc);
        }
        in_progress.erase(key);
        if (out.size() > guards.max_trees_per_span) {
            truncated = true;
            std::sort(out.begin(), out.end(),
                      [&](const OracleTree& a, const OracleTree& b) {
                          return serialize_tree(g, a) < serialize_tree(g, b);
                      });
            out.resize(guards.max_trees_per_span);
        }
        if (!tainted && !truncated) memo[key] = out;
        tainted = tainted || outer_tainted;
        return out;
    }
};

void fill_words(OracleTree& t, const std::vector<std::string>& words, int& pos,
                const Grammar& g) {
    if (g.is_terminal(t.cat)) {
        t.word = words[pos++];
        return;
    }
    for (auto& c : t.children) fill_words(c, words, pos, g);
}

}  // namespace

std::vector<OracleTree> recognize(const Grammar& g, const std::vector<SymbolId>& cats,
                                  const OracleGuards& guards) {
    if (cats.size() > guards.max_words)
        throw OracleGuardError("sequence too long for the oracle");
    Chart chart(g, cats);
    int n = static_cast<int>(cats.size());
    if (!chart.derivable(g.start, 0, n)) return {};
    Recognizer rec{g, cats, guards, chart, {}, {}, false, 0, false};
    auto trees = rec.derive(g.start, 0, n);
    // budget exhaustion can leave the enumeration empty even though the
    // sequence is derivable; the chart witness restores completeness
    if (trees.empty()) trees.push_back(chart.witness_tree(g.start, 0, n));
    return trees;
}

namespace {

// All category assignments of a word path, bounded.
std::vector<std::vector<SymbolId>> category_assignments(
    const Grammar& g, const std::vector<WordHypothesis>& path) {
    std::vector<std::vector<SymbolId>> out{{}};
    for (const auto& h : path) {
        auto cats = g.categories_of_key(h.key);
        if (cats.empty()) return {};
        std::vector<std::vector<SymbolId>> next;
        for (const auto& prefix : out) {
            for (SymbolId c : cats) {
                auto seq = prefix;
                seq.push_back(c);
                next.push_back(std::move(seq));
            }
        }
        out = std::move(next);
        if (out.size() > 4096) throw OracleGuardError("too many category assignments");
    }
    return out;
}

std::vector<OracleTree> trees_of_path(const Grammar& g,
                                      const std::vector<WordHypothesis>& path,
                                      const OracleGuards& guards) {
    std::vector<OracleTree> all;
    for (const auto& cats : category_assignments(g, path)) {
        auto trees = recognize(g, cats, guards);
        std::vector<std::string> words;
        for (const auto& h : path) words.push_back(h.key);
        for (auto& t : trees) {
            int pos = 0;
            fill_words(t, words, pos, g);
            all.push_back(std::move(t));
        }
    }
    return all;
}

}  // namespace

bool path_grammatical(const Grammar& g, const std::vector<WordHypothesis>& path,
                      const OracleGuards& guards) {
    for (const auto& cats : category_assignments(g, path)) {
        if (cats.size() > guards.max_words)
            throw OracleGuardError("sequence too long for the oracle");
        Chart chart(g, cats);
        if (chart.derivable(g.start, 0, static_cast<int>(cats.size()))) return true;
    }
    return false;
}

double score_path(const std::vector<WordHypothesis>& path, const BigramModel& bigram,
                  const ScoringConfig& cfg) {
    // Recomputed from raw sums, sharing nothing with the link recursion.
    double acoustic = 0, ngram = 0;
    long frames = 0, ops = 0;
    std::string prev = bigram.begin_marker;
    for (const auto& h : path) {
        acoustic += h.acoustic_logp;
        frames += h.frames();
        ngram += bigram.logprob(prev, h.key, cfg.strict_bigram);
        ops += 1;
        prev = h.key;
    }
    double ng = ops > 0 ? ngram / ops : 0.0;
    double ac = frames > 0 ? acoustic / frames : 0.0;
    return cfg.lambda * ng + ac;
}

std::optional<OracleBest> best_path(const Grammar& g, const Lattice& lattice,
                                    const BigramModel& bigram, const ScoringConfig& cfg,
                                    const OracleGuards& guards) {
    std::optional<OracleBest> best;
    for (const auto& path : enumerate_paths(lattice, guards)) {
        auto trees = trees_of_path(g, path, guards);
        if (trees.empty()) continue;
        double score = score_path(path, bigram, cfg);
        std::string tree_text;
        const OracleTree* tree = nullptr;
        for (const auto& t : trees) {
            auto s = serialize_tree(g, t);
            if (!tree || s < tree_text) {
                tree_text = std::move(s);
                tree = &t;
            }
        }
        if (!best || score > best->score ||
            (score == best->score && tree_text < best->tree_text)) {
            best = OracleBest{path, *tree, tree_text, score};
        }
    }
    return best;
}

std::vector<std::vector<std::string>> grammatical_paths(const Grammar& g,
                                                        const Lattice& lattice,
                                                        const OracleGuards& guards) {
    std::set<std::vector<std::string>> out;
    for (const auto& path : enumerate_paths(lattice, guards)) {
        if (!path_grammatical(g, path, guards)) continue;
        std::vector<std::string> words;
        for (const auto& h : path) words.push_back(h.key);
        out.insert(std::move(words));
    }
    return {out.begin(), out.end()};
}

}  // namespace latglr
