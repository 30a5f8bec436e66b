// equiv.hpp -- exact language equivalence and bisimilarity
//
// Language equivalence is decided over the reactive view: the difference
// of the two start Diracs is pushed through the per-letter linear maps in
// breadth-first word order while a basis of the visited vectors is kept
// in echelon form. A vector outside the span is inserted (at most one
// insertion per state, which bounds the run); a nonzero product with the
// acceptance vector yields the first distinguishing word in BFS order,
// ties broken by the alphabet.
#ifndef PRE_EQUIV_HPP
#define PRE_EQUIV_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pre/deriv.hpp"
#include "pre/expr.hpp"
#include "pre/gpts.hpp"
#include "pre/rational.hpp"

namespace pre {

struct EquivVerdict {
    bool equal;
    std::string word;           // distinguishing word when !equal
    Rational left_value;        // word_prob at the first state
    Rational right_value;       // word_prob at the second state

    static EquivVerdict make_equal() { return {true, "", 0, 0}; }
    static EquivVerdict distinguished(std::string w, Rational l, Rational r) {
        return {false, std::move(w), std::move(l), std::move(r)};
    }
};

namespace detail {

using SparseVec = std::map<StateId, Rational>;

inline void vec_add_scaled(SparseVec& v, const SparseVec& w, const Rational& c) {
    for (const auto& [i, x] : w) {
        Rational& slot = v[i];
        slot += c * x;
        if (slot == 0) v.erase(i);
    }
}

// Basis in echelon form, keyed by pivot index. Reduces v in place and
// reports whether anything remains.
struct EchelonBasis {
    std::map<StateId, SparseVec> rows;

    bool reduce(SparseVec& v) const {
        for (const auto& [pivot, row] : rows) {
            auto it = v.find(pivot);
            if (it == v.end()) continue;
            Rational factor = -(it->second / row.at(pivot));
            vec_add_scaled(v, row, factor);
        }
        return !v.empty();
    }

    void insert(SparseVec v) { rows.emplace(v.begin()->first, std::move(v)); }
};

}  // namespace detail

/// Decides whether two states of one automaton generate the same
/// probabilistic language; otherwise returns a shortest distinguishing
/// word among those examined, with the exact values on both sides.
inline EquivVerdict lang_equiv(const Gpts& g, StateId x, StateId y) {
    const int n = static_cast<int>(g.states.size());
    if (x < 0 || x >= n) throw std::out_of_range("unknown state " + std::to_string(x));
    if (y < 0 || y >= n) throw std::out_of_range("unknown state " + std::to_string(y));
    if (x == y) return EquivVerdict::make_equal();

    std::vector<Rational> accept(n, Rational(0));
    // Per-letter adjacency: state -> list of (target, mass).
    std::map<char, std::vector<std::vector<std::pair<StateId, Rational>>>> step;
    for (char a : g.alphabet) step[a].resize(n);
    for (StateId q = 0; q < n; ++q) {
        for (const auto& [o, m] : g.trans[q]) {
            if (o.term)
                accept[q] = m;
            else
                step[o.letter][q].emplace_back(o.target, m);
        }
    }

    detail::SparseVec init;
    init[x] += 1;
    init[y] -= 1;
    if (init.empty()) return EquivVerdict::make_equal();

    detail::EchelonBasis basis;
    std::deque<std::pair<std::string, detail::SparseVec>> queue;
    queue.emplace_back("", std::move(init));

    while (!queue.empty()) {
        auto [word, vec] = std::move(queue.front());
        queue.pop_front();
        if (!basis.reduce(vec)) continue;

        Rational value = 0;
        for (const auto& [q, c] : vec) value += c * accept[q];
        if (value != 0)
            return EquivVerdict::distinguished(word, word_prob(g, x, word), word_prob(g, y, word));

        for (char a : g.alphabet) {
            detail::SparseVec next;
            const auto& rows = step[a];
            for (const auto& [q, c] : vec)
                for (const auto& [target, m] : rows[q]) {
                    Rational& slot = next[target];
                    slot += c * m;
                    if (slot == 0) next.erase(target);
                }
            if (!next.empty()) queue.emplace_back(word + a, std::move(next));
        }
        basis.insert(std::move(vec));
    }
    return EquivVerdict::make_equal();
}

/// Language equivalence of expressions: both derivative closures are put
/// side by side and the roots are compared over the common alphabet. An
/// empty alphabet argument means the union of both expressions' letters.
inline EquivVerdict expr_equiv(const Expr& e, const Expr& f, std::vector<char> alphabet = {}) {
    if (alphabet.empty()) {
        auto le = collect_letters(e);
        auto lf = collect_letters(f);
        alphabet.assign(le.begin(), le.end());
        alphabet.insert(alphabet.end(), lf.begin(), lf.end());
    }
    Gpts ge = reachable(e, alphabet);
    Gpts gf = reachable(f, alphabet);
    UnionGpts u = disjoint_union(ge, gf);
    return lang_equiv(u.g, 0, u.offset);
}

struct Partition {
    std::vector<int> block_of;  // state -> block id
    int block_count = 0;

    std::vector<std::vector<StateId>> blocks() const {
        std::vector<std::vector<StateId>> out(block_count);
        for (StateId q = 0; q < static_cast<StateId>(block_of.size()); ++q)
            out[block_of[q]].push_back(q);
        return out;
    }
};

/// Coarsest partition in which related states agree on termination mass
/// and, for every letter, on the aggregate mass into each block. Computed
/// by iterated splitting; block ids follow state order, so the result is
/// reproducible.
inline Partition bisim_classes(const Gpts& g) {
    const int n = static_cast<int>(g.states.size());
    Partition part;
    part.block_of.assign(n, 0);

    // Initial split on termination mass.
    {
        std::map<Rational, int> by_mass;
        std::vector<Rational> mass(n);
        for (StateId q = 0; q < n; ++q) mass[q] = g.trans[q].at(Output<StateId>::make_term());
        for (StateId q = 0; q < n; ++q)
            if (!by_mass.contains(mass[q])) {
                int id = static_cast<int>(by_mass.size());
                by_mass.emplace(mass[q], id);
            }
        // Renumber by first occurrence in state order.
        std::map<int, int> seen;
        for (StateId q = 0; q < n; ++q) {
            int raw = by_mass.at(mass[q]);
            if (!seen.contains(raw)) seen.emplace(raw, static_cast<int>(seen.size()));
            part.block_of[q] = seen.at(raw);
        }
        part.block_count = static_cast<int>(seen.size());
    }

    while (true) {
        // Signature: old block plus per (letter, block) aggregate mass.
        using Signature = std::pair<int, std::vector<std::pair<std::pair<char, int>, Rational>>>;
        std::vector<Signature> sig(n);
        for (StateId q = 0; q < n; ++q) {
            std::map<std::pair<char, int>, Rational> agg;
            for (const auto& [o, m] : g.trans[q])
                if (!o.term) agg[{o.letter, part.block_of[o.target]}] += m;
            sig[q] = {part.block_of[q], {agg.begin(), agg.end()}};
        }
        std::map<Signature, int> ids;
        std::vector<int> next(n);
        for (StateId q = 0; q < n; ++q) {
            auto it = ids.find(sig[q]);
            if (it == ids.end()) it = ids.emplace(sig[q], static_cast<int>(ids.size())).first;
            next[q] = it->second;
        }
        if (static_cast<int>(ids.size()) == part.block_count) break;
        part.block_of = std::move(next);
        part.block_count = static_cast<int>(ids.size());
    }
    return part;
}

}  // namespace pre

#endif  // PRE_EQUIV_HPP
