// deriv.hpp -- small-step semantics of expressions via derivatives
//
// derivative() maps an expression to a subdistribution over "accept" and
// "perform a letter, continue as e'". reachable() closes that off into a
// finite transition system; finiteness is guaranteed because the number
// of derivative states is bounded by size_bound().
#ifndef PRE_DERIV_HPP
#define PRE_DERIV_HPP

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pre/expr.hpp"
#include "pre/gpts.hpp"
#include "pre/subdist.hpp"

namespace pre {

using ExprOutput = Output<Expr>;
using ExprDist = SubDist<ExprOutput, OutputHash<Expr, ExprHash>>;

inline ExprDist dirac(ExprOutput o) { return ExprDist::dirac(std::move(o)); }

/// Memo for derivatives, keyed by structural equality. One cache can be
/// shared across the states of a closure, where subterms recur heavily.
using DerivCache = std::unordered_map<Expr, ExprDist, ExprHash>;

/// The derivative of a single expression. Works iteratively over the
/// subterm graph so deeply nested expressions do not exhaust the stack.
inline const ExprDist& derivative(const Expr& e, DerivCache& cache) {
    std::vector<Expr> todo{e};
    while (!todo.empty()) {
        Expr cur = todo.back();
        if (cache.contains(cur)) {
            todo.pop_back();
            continue;
        }
        auto ready = [&cache](const Expr& x) { return cache.contains(x); };
        switch (cur.kind()) {
            case Expr::Kind::zero:
                cache.emplace(cur, ExprDist{});
                todo.pop_back();
                break;
            case Expr::Kind::one:
                cache.emplace(cur, dirac(ExprOutput::make_term()));
                todo.pop_back();
                break;
            case Expr::Kind::act:
                cache.emplace(cur, dirac(ExprOutput::step(cur.letter(), Expr::one())));
                todo.pop_back();
                break;
            case Expr::Kind::choice: {
                if (!ready(cur.left())) { todo.push_back(cur.left()); break; }
                if (!ready(cur.right())) { todo.push_back(cur.right()); break; }
                ExprDist combined = ExprDist::convex_combine(cur.prob(), cache.at(cur.left()),
                                                             cache.at(cur.right()));
                cache.emplace(cur, std::move(combined));
                todo.pop_back();
                break;
            }
            case Expr::Kind::seq: {
                if (!ready(cur.left())) { todo.push_back(cur.left()); break; }
                if (!ready(cur.right())) { todo.push_back(cur.right()); break; }
                const ExprDist& dl = cache.at(cur.left());
                ExprDist out;
                Rational term_mass = 0;
                for (const auto& [o, m] : dl) {
                    if (o.term)
                        term_mass = m;
                    else
                        out.add(ExprOutput::step(o.letter, Expr::seq(o.target, cur.right())), m);
                }
                // Acceptance of the left factor reroutes into the behaviour
                // of the right one; colliding (letter, target) entries sum.
                if (term_mass != 0)
                    for (const auto& [o, m] : cache.at(cur.right())) out.add(o, term_mass * m);
                cache.emplace(cur, std::move(out));
                todo.pop_back();
                break;
            }
            case Expr::Kind::star: {
                if (!ready(cur.body())) { todo.push_back(cur.body()); break; }
                const ExprDist& db = cache.at(cur.body());
                const Prob& p = cur.prob();
                const Rational t = db.at(ExprOutput::make_term());
                ExprDist out;
                if (!(t == 1 && p == 1)) {
                    // Divergent loops deadlock; otherwise the mass of
                    // entering and immediately exiting the body is
                    // redistributed over the remaining branches.
                    const Rational denom = Rational(1) - p * t;
                    out.add(ExprOutput::make_term(), complement(p) / denom);
                    for (const auto& [o, m] : db) {
                        if (o.term) continue;
                        out.add(ExprOutput::step(o.letter, Expr::seq(o.target, cur)), p * m / denom);
                    }
                }
                cache.emplace(cur, std::move(out));
                todo.pop_back();
                break;
            }
        }
    }
    return cache.at(e);
}

inline ExprDist derivative(const Expr& e) {
    DerivCache cache;
    return derivative(e, cache);
}

/// Breadth-first closure of the derivative relation from e, deduplicating
/// states by structural equality. State 0 is e itself and is marked as
/// the designated start; state names are the rendered expressions.
/// Successors are explored termination first, then by (letter, rendered
/// target), which fixes the numbering.
inline Gpts reachable(const Expr& e, std::vector<char> alphabet = {}) {
    if (alphabet.empty()) {
        auto letters = collect_letters(e);
        alphabet.assign(letters.begin(), letters.end());
    }
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

    Gpts g;
    g.alphabet = alphabet;
    g.start = {0};

    std::unordered_map<Expr, StateId, ExprHash> index;
    std::vector<Expr> worklist_exprs;
    auto intern = [&](const Expr& x, const std::string& name) {
        auto it = index.find(x);
        if (it != index.end()) return it->second;
        StateId id = static_cast<StateId>(g.states.size());
        index.emplace(x, id);
        g.states.push_back(name);
        worklist_exprs.push_back(x);
        return id;
    };

    DerivCache cache;
    intern(e, render(e));
    for (std::size_t next = 0; next < worklist_exprs.size(); ++next) {
        Expr cur = worklist_exprs[next];
        const ExprDist& d = derivative(cur, cache);
        struct Succ {
            char letter;
            std::string name;
            Expr target;
            Rational mass;
        };
        StateDist row;
        std::vector<Succ> steps;
        for (const auto& [o, m] : d) {
            if (o.term) {
                row.add(Output<StateId>::make_term(), m);
                continue;
            }
            auto it = index.find(o.target);
            std::string name = it != index.end() ? g.states[it->second] : render(o.target);
            steps.push_back({o.letter, std::move(name), o.target, m});
        }
        std::sort(steps.begin(), steps.end(), [](const Succ& a, const Succ& b) {
            return std::tie(a.letter, a.name) < std::tie(b.letter, b.name);
        });
        for (const Succ& s : steps)
            row.add(Output<StateId>::step(s.letter, intern(s.target, s.name)), s.mass);
        g.trans.push_back(std::move(row));
    }
    return g;
}

/// Normal-form decomposition: the convex sum, over the derivative's
/// support, of "1" for acceptance and "a;e'" for each step. Support order
/// is the termination outcome first, then (letter, rendered target).
inline Expr fundamental_form(const Expr& e) {
    ExprDist d = derivative(e);
    std::vector<std::pair<Prob, Expr>> terms;
    Rational t = d.at(ExprOutput::make_term());
    if (t != 0) terms.emplace_back(t, Expr::one());
    std::vector<std::pair<std::pair<char, std::string>, std::pair<Prob, Expr>>> steps;
    for (const auto& [o, m] : d) {
        if (o.term) continue;
        steps.push_back({{o.letter, render(o.target)},
                         {m, Expr::seq(Expr::act(o.letter), o.target)}});
    }
    std::sort(steps.begin(), steps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& s : steps) terms.push_back(std::move(s.second));
    return nary_choice(terms);
}

}  // namespace pre

#endif  // PRE_DERIV_HPP
