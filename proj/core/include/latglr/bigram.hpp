#ifndef LATGLR_BIGRAM_HPP
#define LATGLR_BIGRAM_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace latglr {

inline const std::string kBeginMarker = "<s>";

class BigramError : public std::runtime_error {
public:
    BigramError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg) {}
};

/// Bigram language model over natural-log probabilities. Absent pairs
/// score floor_logp; strict mode raises instead (for oracle comparisons).
struct BigramModel {
    std::string begin_marker = kBeginMarker;
    std::map<std::pair<std::string, std::string>, double> probs;
    double floor_logp = -20.0;

    double logprob(const std::string& prev, const std::string& next,
                   bool strict = false) const {
        auto it = probs.find({prev, next});
        if (it != probs.end()) return it->second;
        if (strict) throw BigramError("unknown bigram: " + prev + " " + next);
        return floor_logp;
    }
};

/// Parses `w1 w2 logprob` lines; `<s>` denotes the begin marker.
BigramModel parse_bigram(const std::string& text, double floor_logp = -20.0);

}  // namespace latglr

#endif
