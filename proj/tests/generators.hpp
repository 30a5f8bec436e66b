// generators.hpp -- extra test-side instance generators
#ifndef PRE_TESTS_GENERATORS_HPP
#define PRE_TESTS_GENERATORS_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "pre/gpts.hpp"
#include "pre/random.hpp"

namespace testgen {

// Fully stochastic rows with three steps plus optional termination; a
// harder regime for the elimination formulas than the library generator.
inline pre::Gpts dense_gpts(pre::Rng& rng, int n_states, const std::vector<char>& alphabet,
                            int max_den = 12) {
    pre::Gpts g;
    for (int q = 0; q < n_states; ++q) g.states.push_back("q" + std::to_string(q));
    g.alphabet = alphabet;
    g.start = {0};
    g.trans.resize(n_states);
    for (int q = 0; q < n_states; ++q) {
        int den = pre::pick(rng, 4, max_den);
        std::vector<int> cuts{pre::pick(rng, 0, den), pre::pick(rng, 0, den),
                              pre::pick(rng, 0, den), den};
        std::sort(cuts.begin(), cuts.end());
        int prev = 0;
        for (int i = 0; i < 4; ++i) {
            int c = cuts[i] - prev;
            prev = cuts[i];
            if (c == 0) continue;
            if (i == 0) {
                g.trans[q].add(pre::Output<pre::StateId>::make_term(), pre::Rational(c, den));
                continue;
            }
            char a = alphabet[pre::pick(rng, 0, static_cast<int>(alphabet.size()) - 1)];
            int target = pre::pick(rng, 0, n_states - 1);
            g.trans[q].add(pre::Output<pre::StateId>::step(a, target), pre::Rational(c, den));
        }
    }
    return g;
}

}  // namespace testgen

#endif  // PRE_TESTS_GENERATORS_HPP
