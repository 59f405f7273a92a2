#ifndef LATGLR_GRAMMAR_HPP
#define LATGLR_GRAMMAR_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace latglr {

using SymbolId = int;

enum class SymbolKind { Terminal, Nonterminal };

struct Symbol {
    SymbolId id = -1;
    std::string name;
    SymbolKind kind = SymbolKind::Terminal;
};

struct Rule {
    int id = -1;                  // dense, assigned in file order
    SymbolId head = -1;           // nonterminal
    std::vector<SymbolId> rhs;    // may be empty (epsilon rule)
};

class GrammarError : public std::runtime_error {
public:
    GrammarError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// A context-free grammar with a lexicon mapping surface words to
/// terminal categories.
struct Grammar {
    std::vector<Symbol> symbols;
    std::vector<Rule> rules;
    SymbolId start = -1;
    std::map<std::string, std::set<SymbolId>> lexicon;

    const Symbol& symbol(SymbolId id) const { return symbols.at(id); }
    const std::string& name(SymbolId id) const { return symbols.at(id).name; }
    bool is_terminal(SymbolId id) const {
        return symbols.at(id).kind == SymbolKind::Terminal;
    }
    SymbolId find_symbol(const std::string& name) const;  // -1 if absent

    /// Terminal categories a lexical key can realize; empty set for
    /// unknown keys. Deterministic order (by symbol id).
    std::set<SymbolId> categories_of_key(const std::string& key) const;
};

/// Parses the grammar file format:
///   HEAD -> SYM SYM ...     (empty rhs = epsilon rule, written "HEAD ->")
///   lex CAT word
///   start SYM
///   # comment
/// The first rule's head is the start symbol unless a `start` line appears.
Grammar parse_grammar(const std::string& text);

}  // namespace latglr

#endif
