#include "latglr/testgen.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace latglr {

namespace {

double neg_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return -d(rng);
}

}  // namespace

Grammar random_grammar(uint64_t seed, int rule_count) {
    std::mt19937_64 rng(seed);
    std::ostringstream g;
    // Spine: sequences of ta/tb words are grammatical, tc needs luck with
    // the filler rules, so random lattices split into accepts and rejects.
    g << "S -> A\n";          // 1
    g << "S -> S A\n";        // 2
    g << "A -> ta\n";         // 3
    g << "A -> tb\n";         // 4
    const char* nonterms[] = {"S", "A", "B", "C"};
    const char* terms[] = {"ta", "tb", "tc"};
    std::uniform_int_distribution<int> nt(0, 3), t(0, 2), len(0, 3), pick(0, 1);
    for (int i = 4; i < rule_count; ++i) {
        g << nonterms[nt(rng)] << " ->";
        int n = len(rng);
        for (int k = 0; k < n; ++k)
            g << " " << (pick(rng) ? nonterms[nt(rng)] : terms[t(rng)]);
        g << "\n";
    }
    std::uniform_int_distribution<int> ncat(1, 2);
    for (int w = 0; w < 6; ++w) {
        std::set<int> cats;
        int n = ncat(rng);
        while (static_cast<int>(cats.size()) < n) cats.insert(t(rng));
        for (int c : cats) g << "lex " << terms[c] << " w" << w << "\n";
    }
    g << "start S\n";
    return parse_grammar(g.str());
}

Lattice random_lattice(const Grammar& g, uint64_t seed, int max_hyps, int max_frames) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> words;
    for (const auto& [w, cats] : g.lexicon) words.push_back(w);
    if (words.empty()) return {};

    std::uniform_int_distribution<int> frames_d(2, std::max(2, max_frames));
    int frames = frames_d(rng);
    std::ostringstream out;
    int hyps = 0;
    // one random tiling of [0, frames]
    int tpos = 0;
    while (tpos < frames && hyps < max_hyps) {
        std::uniform_int_distribution<int> w_d(1, std::min(3, frames - tpos));
        int width = w_d(rng);
        std::uniform_int_distribution<size_t> word_d(0, words.size() - 1);
        const std::string& word = words[word_d(rng)];
        out << tpos << ' ' << tpos + width << ' ' << word << ' '
            << neg_uniform(rng, 1.0, 10.0) * width << '\n';
        tpos += width;
        ++hyps;
    }
    // noise hypotheses, occasionally with an out-of-lexicon word
    std::uniform_int_distribution<int> extra_d(0, std::max(0, max_hyps - hyps));
    int extra = extra_d(rng);
    for (int i = 0; i < extra; ++i) {
        std::uniform_int_distribution<int> s_d(0, frames - 1);
        int s = s_d(rng);
        std::uniform_int_distribution<int> e_d(s + 1, frames);
        int e = e_d(rng);
        std::uniform_int_distribution<size_t> word_d(0, words.size());
        size_t wi = word_d(rng);
        std::string word = wi == words.size() ? "zz" : words[wi];
        out << s << ' ' << e << ' ' << word << ' '
            << neg_uniform(rng, 1.0, 10.0) * (e - s) << '\n';
    }
    return parse_lattice(out.str());
}

BigramModel random_bigram(const Grammar& g, uint64_t seed, double floor_logp) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> words;
    for (const auto& [w, cats] : g.lexicon) words.push_back(w);
    BigramModel m;
    m.floor_logp = floor_logp;
    std::bernoulli_distribution keep(0.7);
    std::vector<std::string> prevs = words;
    prevs.push_back(m.begin_marker);
    for (const auto& p : prevs)
        for (const auto& w : words)
            if (keep(rng)) m.probs[{p, w}] = neg_uniform(rng, 0.1, 5.0);
    return m;
}

RandomInstance random_instance(uint64_t seed, int max_hyps, int max_frames) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> which_d(0, 3);
    int which = which_d(rng);
    RandomInstance inst;
    switch (which) {
        case 0: inst.grammar = parse_grammar(kG1); inst.grammar_name = "G1"; break;
        case 1: inst.grammar = parse_grammar(kG2); inst.grammar_name = "G2"; break;
        case 2: inst.grammar = parse_grammar(kG3); inst.grammar_name = "G3"; break;
        default:
            inst.grammar = random_grammar(rng(), 20);
            inst.grammar_name = "R20";
            break;
    }
    inst.lattice = random_lattice(inst.grammar, rng(), max_hyps, max_frames);
    inst.bigram = random_bigram(inst.grammar, rng());
    return inst;
}

Grammar benchmark_grammar(int rule_count) {
    const int cats = 40;
    std::ostringstream g;
    g << "S -> P\nP -> P W\nP -> W\n";
    for (int i = 0; i < cats; ++i) g << "W -> c" << i << "\n";
    int rules = 3 + cats;
    // two-word alternatives create packing ambiguity on adjacent pairs
    for (int j = 0; rules < rule_count; ++j) {
        g << "W -> A" << j << "\n";
        g << "A" << j << " -> c" << (j % cats) << " c" << ((j * 7 + 3) % cats) << "\n";
        rules += 2;
    }
    for (int w = 0; w < 120; ++w) g << "lex c" << (w % cats) << " v" << w << "\n";
    g << "start S\n";
    return parse_grammar(g.str());
}

Lattice benchmark_lattice(const Grammar& g, uint64_t seed, int hyp_count) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> words;
    for (const auto& [w, cats] : g.lexicon) words.push_back(w);
    std::uniform_int_distribution<size_t> word_d(0, words.size() - 1);
    // backbone chain of unit-width hypotheses, then competitors over the
    // same spans until hyp_count is reached
    int frames = std::max(4, hyp_count / 3);
    std::ostringstream out;
    int hyps = 0;
    for (int t = 0; t < frames && hyps < hyp_count; ++t, ++hyps)
        out << t << ' ' << t + 1 << ' ' << words[word_d(rng)] << ' '
            << neg_uniform(rng, 1.0, 10.0) << '\n';
    while (hyps < hyp_count) {
        std::uniform_int_distribution<int> s_d(0, frames - 1);
        int s = s_d(rng);
        std::uniform_int_distribution<int> w_d(1, std::min(2, frames - s));
        int e = s + w_d(rng);
        out << s << ' ' << e << ' ' << words[word_d(rng)] << ' '
            << neg_uniform(rng, 1.0, 10.0) * (e - s) << '\n';
        ++hyps;
    }
    return parse_lattice(out.str());
}

}  // namespace latglr
