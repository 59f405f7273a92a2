#ifndef LATGLR_LATTICE_HPP
#define LATGLR_LATTICE_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace latglr {

class LatticeError : public std::runtime_error {
public:
    LatticeError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg) {}
};

/// One time-stamped scored word candidate from the recognizer.
struct WordHypothesis {
    int start = 0;             // frame index
    int end = 0;               // frame index, end > start
    std::string key;           // lexical key
    double acoustic_logp = 0;  // log P(word | word model), <= 0

    int frames() const { return end - start; }

    friend bool operator==(const WordHypothesis&, const WordHypothesis&) = default;
    friend auto operator<=>(const WordHypothesis&, const WordHypothesis&) = default;
};

struct Lattice {
    std::vector<WordHypothesis> hypotheses;  // sorted (start, end, key)
    int final_time = 0;                      // max end, 0 when empty
};

/// Parses `start end word acoustic_logp` lines; `#` comments. Duplicate
/// (start, end, key) lines are merged keeping the max acoustic_logp.
Lattice parse_lattice(const std::string& text);

std::string serialize_lattice(const Lattice& l);

}  // namespace latglr

#endif
