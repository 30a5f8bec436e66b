// solver.hpp -- left-affine equation systems and their unique solutions
//
// A generative transition system induces a left-affine system over its
// states; eliminating unknowns one at a time (highest index first) and
// back-substituting yields expressions whose languages match the source
// states. Every intermediate system keeps the row-sum and productivity
// invariants, so each elimination step is again left-affine.
#ifndef PRE_SOLVER_HPP
#define PRE_SOLVER_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pre/expr.hpp"
#include "pre/gpts.hpp"
#include "pre/rational.hpp"

namespace pre {

/// Equations h(q) = (sum over q' of p[q][q'] * M[q][q'];h(q')) + r[q]*b[q]
/// with row sums p[q][*] + r[q] = 1 and productive coefficients
/// (termination weight of every M entry is zero).
struct LeftAffineSystem {
    std::vector<std::string> unknowns;
    std::vector<std::vector<Expr>> M;
    std::vector<std::vector<Prob>> p;
    std::vector<Expr> b;
    std::vector<Prob> r;

    std::size_t size() const { return unknowns.size(); }
};

inline std::vector<std::string> validate_system(const LeftAffineSystem& s) {
    std::vector<std::string> violations;
    const std::size_t n = s.size();
    if (s.M.size() != n || s.p.size() != n || s.b.size() != n || s.r.size() != n) {
        violations.push_back("coefficient tables do not match the unknown count");
        return violations;
    }
    for (std::size_t q = 0; q < n; ++q) {
        if (s.M[q].size() != n || s.p[q].size() != n) {
            violations.push_back("row " + s.unknowns[q] + ": wrong width");
            continue;
        }
        Rational sum = s.r[q];
        if (!is_prob(s.r[q]))
            violations.push_back("row " + s.unknowns[q] + ": exit weight " + to_string(s.r[q]) +
                                 " outside [0,1]");
        for (std::size_t i = 0; i < n; ++i) {
            sum += s.p[q][i];
            if (!is_prob(s.p[q][i]))
                violations.push_back("row " + s.unknowns[q] + ": weight " + to_string(s.p[q][i]) +
                                     " outside [0,1]");
            if (termination_weight(s.M[q][i]) != 0)
                violations.push_back("row " + s.unknowns[q] + ": coefficient " +
                                     std::to_string(i) + " can terminate immediately");
        }
        if (sum != 1)
            violations.push_back("row " + s.unknowns[q] + ": row sum " + to_string(sum) +
                                 " != 1");
    }
    return violations;
}

/// The system associated with a transition system: per target, the step
/// mass is aggregated over letters into p, and the letter mix becomes the
/// coefficient expression; the residual mass (termination plus deadlock
/// deficit) goes to r with a one-point exit expression b.
inline LeftAffineSystem system_of(const Gpts& g) {
    LeftAffineSystem s;
    const std::size_t n = g.states.size();
    s.unknowns = g.states;
    s.M.assign(n, std::vector<Expr>(n, Expr::zero()));
    s.p.assign(n, std::vector<Prob>(n, Prob(0)));
    s.b.assign(n, Expr::zero());
    s.r.assign(n, Prob(0));
    for (std::size_t x = 0; x < n; ++x) {
        Rational step_mass = 0;
        Rational term_mass = g.trans[x].at(Output<StateId>::make_term());
        for (const auto& [o, m] : g.trans[x]) {
            if (!o.term) {
                s.p[x][o.target] += m;
                step_mass += m;
            }
        }
        for (std::size_t y = 0; y < n; ++y) {
            if (s.p[x][y] == 0) continue;
            std::vector<std::pair<Prob, Expr>> letters;
            for (char a : g.alphabet) {
                Rational m = g.trans[x].at(Output<StateId>::step(a, static_cast<StateId>(y)));
                if (m != 0) letters.emplace_back(m / s.p[x][y], Expr::act(a));
            }
            s.M[x][y] = nary_choice(letters);
        }
        s.r[x] = Rational(1) - step_mass;
        if (s.r[x] != 0 && term_mass != 0)
            s.b[x] = nary_choice({{term_mass / s.r[x], Expr::one()}});
    }
    return s;
}

enum class EliminationOrder {
    last_first,   // the documented default: always the highest index
    first_first,  // alternative order used to exercise solution uniqueness
};

namespace detail {

// n-ary convex sum over the non-zero-weight terms.
inline Expr nary_nonzero(std::vector<std::pair<Prob, Expr>> terms) {
    std::erase_if(terms, [](const auto& t) { return t.first == 0; });
    return nary_choice(terms);
}

inline std::vector<Expr> solve_impl(std::vector<std::vector<Expr>> M,
                                    std::vector<std::vector<Prob>> p, std::vector<Expr> b,
                                    std::vector<Prob> r) {
    const std::size_t n = b.size();
    if (n == 1) return {Expr::seq(Expr::star(M[0][0], p[0][0]), b[0])};

    const std::size_t m = n - 1;
    const Prob pi = p[m][m];
    const Rational pbar = complement(pi);
    const Expr loop = Expr::star(M[m][m], pi);

    std::vector<std::vector<Expr>> M2(m, std::vector<Expr>(m, Expr::zero()));
    std::vector<std::vector<Prob>> p2(m, std::vector<Prob>(m, Prob(0)));
    std::vector<Expr> b2(m, Expr::zero());
    std::vector<Prob> r2(m, Prob(0));

    for (std::size_t j = 0; j < m; ++j) {
        if (pbar != 0) {
            for (std::size_t i = 0; i < m; ++i) {
                Rational via = p[j][m] * p[m][i] / pbar;
                p2[j][i] = p[j][i] + via;
                if (p2[j][i] == 0) continue;
                M2[j][i] = nary_nonzero(
                    {{p[j][i] / p2[j][i], M[j][i]},
                     {via / p2[j][i], Expr::seq(M[j][m], Expr::seq(loop, M[m][i]))}});
            }
            Rational via_exit = p[j][m] * r[m] / pbar;
            r2[j] = r[j] + via_exit;
            if (r2[j] != 0)
                b2[j] = nary_nonzero(
                    {{r[j] / r2[j], b[j]},
                     {via_exit / r2[j], Expr::seq(M[j][m], Expr::seq(loop, b[m]))}});
        } else {
            // The eliminated row is a probability-one self loop: its whole
            // row quotient vanishes, the unknown solves to a divergent
            // expression, and the mass into it becomes exit mass.
            for (std::size_t i = 0; i < m; ++i) {
                p2[j][i] = p[j][i];
                M2[j][i] = p[j][i] == 0 ? Expr::zero() : M[j][i];
            }
            r2[j] = r[j] + p[j][m];
            if (r2[j] != 0)
                b2[j] = nary_nonzero(
                    {{r[j] / r2[j], b[j]},
                     {p[j][m] / r2[j],
                      Expr::seq(M[j][m], Expr::seq(loop, Expr::zero()))}});
        }
    }

    std::vector<Expr> h = m == 0 ? std::vector<Expr>{}
                                 : solve_impl(std::move(M2), std::move(p2), std::move(b2),
                                              std::move(r2));

    Expr tail = Expr::zero();
    if (pbar != 0) {
        std::vector<std::pair<Prob, Expr>> terms;
        for (std::size_t i = 0; i < m; ++i)
            terms.emplace_back(p[m][i] / pbar, Expr::seq(M[m][i], h[i]));
        terms.emplace_back(r[m] / pbar, b[m]);
        tail = nary_nonzero(std::move(terms));
    }
    h.push_back(Expr::seq(loop, tail));
    return h;
}

}  // namespace detail

/// Solves the system; the result satisfies each defining equation up to
/// language equivalence. Rejects systems violating the invariants.
inline std::vector<Expr> solve(const LeftAffineSystem& s,
                               EliminationOrder order = EliminationOrder::last_first) {
    auto violations = validate_system(s);
    if (!violations.empty())
        throw std::invalid_argument("invalid left-affine system: " + violations.front());
    if (s.size() == 0) return {};

    const std::size_t n = s.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (order == EliminationOrder::first_first) std::reverse(perm.begin(), perm.end());

    std::vector<std::vector<Expr>> M(n, std::vector<Expr>(n));
    std::vector<std::vector<Prob>> p(n, std::vector<Prob>(n));
    std::vector<Expr> b(n);
    std::vector<Prob> r(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            M[j][i] = s.M[perm[j]][perm[i]];
            p[j][i] = s.p[perm[j]][perm[i]];
        }
        b[j] = s.b[perm[j]];
        r[j] = s.r[perm[j]];
    }
    std::vector<Expr> solved = detail::solve_impl(std::move(M), std::move(p), std::move(b),
                                                  std::move(r));
    std::vector<Expr> out(n);
    for (std::size_t j = 0; j < n; ++j) out[perm[j]] = solved[j];
    return out;
}

/// The expression denoting the language of one state.
inline Expr gpts_to_expr(const Gpts& g, StateId x) {
    if (x < 0 || x >= static_cast<StateId>(g.states.size()))
        throw std::out_of_range("unknown state " + std::to_string(x));
    return solve(system_of(g))[x];
}

}  // namespace pre

#endif  // PRE_SOLVER_HPP
