#include "latglr/grammar.hpp"

#include <algorithm>
#include <sstream>

namespace latglr {

SymbolId Grammar::find_symbol(const std::string& name) const {
    for (const auto& s : symbols)
        if (s.name == name) return s.id;
    return -1;
}

std::set<SymbolId> Grammar::categories_of_key(const std::string& key) const {
    auto it = lexicon.find(key);
    if (it == lexicon.end()) return {};
    return it->second;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

}  // namespace

Grammar parse_grammar(const std::string& text) {
    struct RawRule {
        std::string head;
        std::vector<std::string> rhs;
        int line;
    };
    std::vector<RawRule> raw_rules;
    std::vector<std::pair<std::string, std::string>> raw_lex;  // (cat, word)
    std::vector<int> lex_lines;
    std::string start_name;
    int start_line = 0;

    std::istringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "lex") {
            if (toks.size() != 3)
                throw GrammarError("lex line needs 'lex CAT word'", lineno);
            raw_lex.emplace_back(toks[1], toks[2]);
            lex_lines.push_back(lineno);
        } else if (toks[0] == "start") {
            if (toks.size() != 2)
                throw GrammarError("start line needs 'start SYM'", lineno);
            start_name = toks[1];
            start_line = lineno;
        } else {
            if (toks.size() < 2 || toks[1] != "->")
                throw GrammarError("expected 'HEAD -> ...', 'lex CAT word' or 'start SYM'",
                                   lineno);
            RawRule r{toks[0], {toks.begin() + 2, toks.end()}, lineno};
            raw_rules.push_back(std::move(r));
        }
    }
    if (raw_rules.empty()) throw GrammarError("grammar has no rules");

    // A symbol is a nonterminal iff it appears as a rule head.
    std::set<std::string> heads;
    for (const auto& r : raw_rules) heads.insert(r.head);

    Grammar g;
    auto intern = [&](const std::string& name) -> SymbolId {
        SymbolId id = g.find_symbol(name);
        if (id >= 0) return id;
        Symbol s;
        s.id = static_cast<SymbolId>(g.symbols.size());
        s.name = name;
        s.kind = heads.count(name) ? SymbolKind::Nonterminal : SymbolKind::Terminal;
        g.symbols.push_back(s);
        return s.id;
    };

    for (const auto& r : raw_rules) {
        Rule rule;
        rule.id = static_cast<int>(g.rules.size());
        rule.head = intern(r.head);
        for (const auto& sym : r.rhs) rule.rhs.push_back(intern(sym));
        g.rules.push_back(std::move(rule));
    }
    for (size_t i = 0; i < raw_lex.size(); ++i) {
        const auto& [cat, word] = raw_lex[i];
        SymbolId id = intern(cat);
        if (g.symbols[id].kind != SymbolKind::Terminal)
            throw GrammarError("lexicon category '" + cat + "' is a nonterminal",
                               lex_lines[i]);
        g.lexicon[word].insert(id);  // duplicate lines merge
    }

    if (start_name.empty()) {
        g.start = g.rules[0].head;
    } else {
        g.start = g.find_symbol(start_name);
        if (g.start < 0 || g.symbols[g.start].kind != SymbolKind::Nonterminal)
            throw GrammarError("start symbol '" + start_name + "' is not a declared nonterminal",
                               start_line);
    }
    return g;
}

}  // namespace latglr
