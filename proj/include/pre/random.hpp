// random.hpp -- seeded generators for expressions and transition systems
#ifndef PRE_RANDOM_HPP
#define PRE_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "pre/expr.hpp"
#include "pre/gpts.hpp"
#include "pre/rational.hpp"

namespace pre {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random rational in [0,1] with denominator at most max_den.
inline Prob random_prob(Rng& rng, int max_den = 12) {
    int den = pick(rng, 1, max_den);
    int num = pick(rng, 0, den);
    return Prob(num, den);
}

inline Expr random_expr(Rng& rng, int max_depth, const std::vector<char>& alphabet,
                        int max_den = 12) {
    int k = max_depth <= 0 ? pick(rng, 0, 3) : pick(rng, 0, 9);
    switch (k) {
        case 0: return Expr::zero();
        case 1: return Expr::one();
        case 2:
        case 3: return Expr::act(alphabet[pick(rng, 0, static_cast<int>(alphabet.size()) - 1)]);
        case 4:
        case 5:
            return Expr::choice(random_expr(rng, max_depth - 1, alphabet, max_den),
                                random_prob(rng, max_den),
                                random_expr(rng, max_depth - 1, alphabet, max_den));
        case 6:
        case 7:
            return Expr::seq(random_expr(rng, max_depth - 1, alphabet, max_den),
                             random_expr(rng, max_depth - 1, alphabet, max_den));
        default:
            return Expr::star(random_expr(rng, max_depth - 1, alphabet, max_den),
                              random_prob(rng, max_den));
    }
}

/// Random expression that cannot terminate immediately, for side
/// conditions requiring a zero termination weight.
inline Expr random_productive_expr(Rng& rng, int max_depth, const std::vector<char>& alphabet,
                                   int max_den = 12) {
    Expr e = random_expr(rng, max_depth, alphabet, max_den);
    if (termination_weight(e) == 0) return e;
    char a = alphabet[pick(rng, 0, static_cast<int>(alphabet.size()) - 1)];
    return Expr::seq(Expr::act(a), e);
}

/// Random automaton with up to max_states states. Row masses are exact
/// rationals over one denominator per state; up to three outgoing steps
/// plus optional termination, so rows stay sparse.
inline Gpts random_gpts(Rng& rng, int max_states, const std::vector<char>& alphabet,
                        int max_den = 12) {
    Gpts g;
    int n = pick(rng, 1, max_states);
    for (int q = 0; q < n; ++q) g.states.push_back("q" + std::to_string(q));
    g.alphabet = alphabet;
    g.start = {0};
    g.trans.resize(n);
    for (int q = 0; q < n; ++q) {
        int den = pick(rng, 1, max_den);
        // Half of the rows get full mass, the rest are substochastic;
        // zero-budget rows come out as deadlocks.
        int budget = pick(rng, 0, 1) == 0 ? den : pick(rng, 0, den);
        int slots = pick(rng, 1, 3);
        bool with_term = pick(rng, 0, 1) == 1;
        int parts = slots + (with_term ? 1 : 0);
        if (parts == 0) continue;  // deadlock row
        // Random composition of the budget into `parts` pieces.
        std::vector<int> cuts;
        for (int i = 0; i + 1 < parts; ++i) cuts.push_back(pick(rng, 0, budget));
        cuts.push_back(budget);
        std::sort(cuts.begin(), cuts.end());
        int prev = 0;
        int part = 0;
        if (with_term) {
            int c = cuts[part] - prev;
            prev = cuts[part++];
            if (c > 0) g.trans[q].add(Output<StateId>::make_term(), Rational(c, den));
        }
        for (int i = 0; i < slots; ++i) {
            int c = cuts[part] - prev;
            prev = cuts[part++];
            char a = alphabet[pick(rng, 0, static_cast<int>(alphabet.size()) - 1)];
            int target = pick(rng, 0, n - 1);
            if (c > 0) g.trans[q].add(Output<StateId>::step(a, target), Rational(c, den));
        }
    }
    return g;
}

}  // namespace pre

#endif  // PRE_RANDOM_HPP
