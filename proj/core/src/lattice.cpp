#include "latglr/lattice.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

namespace latglr {

Lattice parse_lattice(const std::string& text) {
    std::map<std::tuple<int, int, std::string>, double> merged;
    std::istringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        int start, end;
        std::string key;
        double logp;
        std::istringstream again(line);
        if (!(again >> start >> end >> key >> logp))
            throw LatticeError("expected 'start end word acoustic_logp'", lineno);
        std::string rest;
        if (again >> rest && rest[0] != '#')
            throw LatticeError("trailing tokens after acoustic_logp", lineno);
        if (start < 0) throw LatticeError("negative start frame", lineno);
        if (start >= end) throw LatticeError("start must be < end", lineno);
        if (logp > 0) throw LatticeError("positive acoustic log-probability", lineno);
        auto k = std::make_tuple(start, end, key);
        auto it = merged.find(k);
        if (it == merged.end())
            merged[k] = logp;
        else
            it->second = std::max(it->second, logp);  // duplicate keeps the best
    }

    Lattice l;
    for (const auto& [k, logp] : merged) {
        const auto& [start, end, key] = k;
        l.hypotheses.push_back(WordHypothesis{start, end, key, logp});
        l.final_time = std::max(l.final_time, end);
    }
    return l;
}

std::string serialize_lattice(const Lattice& l) {
    std::ostringstream out;
    out.precision(std::numeric_limits<double>::max_digits10);
    for (const auto& h : l.hypotheses)
        out << h.start << ' ' << h.end << ' ' << h.key << ' ' << h.acoustic_logp << '\n';
    return out.str();
}

}  // namespace latglr
