// gpts.hpp -- generative probabilistic transition systems
//
// A Gpts maps every state to a subdistribution over "terminate" and
// "(letter, successor)" outcomes. Per-state mass may be below one; the
// deficit models deadlock. The reactive view regroups the same data as an
// acceptance weight plus per-letter successor subdistributions.
#ifndef PRE_GPTS_HPP
#define PRE_GPTS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pre/rational.hpp"
#include "pre/subdist.hpp"

namespace pre {

/// One outcome of a transition step: either successful termination or an
/// a-labelled move to a successor.
template <class S>
struct Output {
    bool term = true;
    char letter = '\0';
    S target{};

    static Output make_term() { return Output{}; }
    static Output step(char a, S t) { return Output{false, a, std::move(t)}; }

    bool operator==(const Output& o) const {
        if (term != o.term) return false;
        if (term) return true;
        return letter == o.letter && target == o.target;
    }
};

template <class S, class SHash = std::hash<S>>
struct OutputHash {
    std::size_t operator()(const Output<S>& o) const {
        if (o.term) return 0x7e57ull;
        std::size_t h = SHash{}(o.target);
        h ^= static_cast<std::size_t>(o.letter) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

using StateId = int;
using StateDist = SubDist<Output<StateId>, OutputHash<StateId>>;

struct Gpts {
    std::vector<std::string> states;  // index is the state id
    std::vector<char> alphabet;       // sorted, duplicate free
    std::vector<StateDist> trans;     // one row per state
    std::vector<StateId> start;       // optional designated states

    std::optional<StateId> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i] == name) return static_cast<StateId>(i);
        return std::nullopt;
    }

    bool has_letter(char a) const {
        return std::find(alphabet.begin(), alphabet.end(), a) != alphabet.end();
    }
};

/// Checks that step targets are declared states, letters belong to the
/// alphabet, and per-state mass does not exceed one. Returns one message
/// per violation; valid automata yield an empty list.
inline std::vector<std::string> validate(const Gpts& g) {
    std::vector<std::string> violations;
    const int n = static_cast<int>(g.states.size());
    if (g.trans.size() != g.states.size())
        violations.push_back("transition rows do not match the state count");
    for (int q = 0; q < static_cast<int>(g.trans.size()); ++q) {
        const std::string& name = q < n ? g.states[q] : std::to_string(q);
        for (const auto& [o, m] : g.trans[q]) {
            if (o.term) continue;
            if (o.target < 0 || o.target >= n)
                violations.push_back("state " + name + ": dangling target " +
                                     std::to_string(o.target));
            if (!g.has_letter(o.letter))
                violations.push_back("state " + name + ": letter '" + o.letter +
                                     "' outside alphabet");
        }
        Rational mass = g.trans[q].mass();
        if (mass > 1)
            violations.push_back("state " + name + ": mass " + to_string(mass) + " > 1");
    }
    for (StateId s : g.start)
        if (s < 0 || s >= n) violations.push_back("start state " + std::to_string(s) + " undeclared");
    return violations;
}

/// Probability that state q generates the word: the termination mass for
/// the empty word, otherwise the mass-weighted sum over matching steps.
/// Evaluated by vector iteration over suffixes.
inline Rational word_prob(const Gpts& g, StateId q, std::string_view word) {
    if (q < 0 || q >= static_cast<StateId>(g.states.size()))
        throw std::out_of_range("unknown state " + std::to_string(q));
    for (char a : word)
        if (!g.has_letter(a)) throw std::invalid_argument(std::string("letter outside alphabet: ") + a);
    const std::size_t n = g.states.size();
    std::vector<Rational> value(n);
    for (std::size_t s = 0; s < n; ++s) value[s] = g.trans[s].at(Output<StateId>::make_term());
    for (std::size_t i = word.size(); i-- > 0;) {
        std::vector<Rational> next(n, Rational(0));
        for (std::size_t s = 0; s < n; ++s)
            for (const auto& [o, m] : g.trans[s])
                if (!o.term && o.letter == word[i]) next[s] += m * value[o.target];
        value = std::move(next);
    }
    return value[q];
}

struct Rpts {
    std::vector<Rational> accept;                         // o_x per state
    std::vector<std::map<char, SubDist<StateId>>> next;   // n_x per state and letter
};

/// Reshuffles each transition subdistribution into the reactive view;
/// no information is gained or lost.
inline Rpts to_rpts(const Gpts& g) {
    Rpts r;
    r.accept.resize(g.states.size(), Rational(0));
    r.next.resize(g.states.size());
    for (std::size_t q = 0; q < g.states.size(); ++q) {
        for (const auto& [o, m] : g.trans[q]) {
            if (o.term)
                r.accept[q] = m;
            else
                r.next[q][o.letter].add(o.target, m);
        }
    }
    return r;
}

/// Side-by-side union with states renamed apart; the right automaton's
/// state i becomes state i + offset.
struct UnionGpts {
    Gpts g;
    StateId offset;
};

inline UnionGpts disjoint_union(const Gpts& a, const Gpts& b) {
    UnionGpts u;
    u.offset = static_cast<StateId>(a.states.size());
    for (const auto& s : a.states) u.g.states.push_back("0." + s);
    for (const auto& s : b.states) u.g.states.push_back("1." + s);
    u.g.alphabet = a.alphabet;
    for (char c : b.alphabet)
        if (!u.g.has_letter(c)) u.g.alphabet.push_back(c);
    std::sort(u.g.alphabet.begin(), u.g.alphabet.end());
    u.g.trans = a.trans;
    for (const auto& row : b.trans) {
        StateDist shifted;
        for (const auto& [o, m] : row) {
            if (o.term)
                shifted.add(Output<StateId>::make_term(), m);
            else
                shifted.add(Output<StateId>::step(o.letter, o.target + u.offset), m);
        }
        u.g.trans.push_back(std::move(shifted));
    }
    for (StateId s : a.start) u.g.start.push_back(s);
    for (StateId s : b.start) u.g.start.push_back(s + u.offset);
    return u;
}

}  // namespace pre

#endif  // PRE_GPTS_HPP
