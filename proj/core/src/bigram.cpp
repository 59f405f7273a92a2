#include "latglr/bigram.hpp"

#include <sstream>

namespace latglr {

BigramModel parse_bigram(const std::string& text, double floor_logp) {
    BigramModel m;
    m.floor_logp = floor_logp;
    std::istringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        std::string w1, w2;
        double logp;
        std::istringstream again(line);
        if (!(again >> w1 >> w2 >> logp))
            throw BigramError("expected 'w1 w2 logprob'", lineno);
        if (logp > 0) throw BigramError("positive log-probability", lineno);
        if (w2 == m.begin_marker)
            throw BigramError("begin marker cannot be predicted", lineno);
        m.probs[{w1, w2}] = logp;
    }
    return m;
}

}  // namespace latglr
