// axioms.hpp -- equational schemas and the soundness harness
//
// Each schema instantiates to a pair of expressions that must denote the
// same probabilistic language. Schemas dividing probabilities are
// undefined when the denominator vanishes and reject such bindings. The
// fixpoint rule is special: its left-hand side must already satisfy the
// defining equation, so the harness constructs it by solving the
// corresponding one-unknown system.
#ifndef PRE_AXIOMS_HPP
#define PRE_AXIOMS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pre/equiv.hpp"
#include "pre/expr.hpp"
#include "pre/random.hpp"
#include "pre/rational.hpp"
#include "pre/solver.hpp"

namespace pre {

enum class AxiomName {
    c1, c2, c3, c4, d1, d2,
    zero_seq, seq_zero, one_seq, seq_one, seq_assoc,
    unroll, tight, divergence,
    unique,
};

inline const char* axiom_name_string(AxiomName a) {
    switch (a) {
        case AxiomName::c1: return "C1";
        case AxiomName::c2: return "C2";
        case AxiomName::c3: return "C3";
        case AxiomName::c4: return "C4";
        case AxiomName::d1: return "D1";
        case AxiomName::d2: return "D2";
        case AxiomName::zero_seq: return "0S";
        case AxiomName::seq_zero: return "S0";
        case AxiomName::one_seq: return "1S";
        case AxiomName::seq_one: return "S1";
        case AxiomName::seq_assoc: return "S";
        case AxiomName::unroll: return "Unroll";
        case AxiomName::tight: return "Tight";
        case AxiomName::divergence: return "Div";
        case AxiomName::unique: return "Unique";
    }
    return "?";
}

inline std::vector<AxiomName> all_axiom_schemas() {
    return {AxiomName::c1,       AxiomName::c2,      AxiomName::c3,      AxiomName::c4,
            AxiomName::d1,       AxiomName::d2,      AxiomName::zero_seq, AxiomName::seq_zero,
            AxiomName::one_seq,  AxiomName::seq_one, AxiomName::seq_assoc, AxiomName::unroll,
            AxiomName::tight,    AxiomName::divergence, AxiomName::unique};
}

struct AxiomBindings {
    Expr e, f, g;
    Prob p = 0, q = 0;
};

/// Undefined or side-condition-violating instantiation.
struct AxiomError : std::domain_error {
    using std::domain_error::domain_error;
};

inline std::pair<Expr, Expr> instantiate_axiom(AxiomName name, const AxiomBindings& b) {
    const Expr& e = b.e;
    const Expr& f = b.f;
    const Expr& g = b.g;
    const Prob& p = b.p;
    const Prob& q = b.q;
    switch (name) {
        case AxiomName::c1: return {e, Expr::choice(e, p, e)};
        case AxiomName::c2: return {e, Expr::choice(e, 1, f)};
        case AxiomName::c3: return {Expr::choice(e, p, f), Expr::choice(f, complement(p), e)};
        case AxiomName::c4: {
            Rational denom = Rational(1) - p * q;
            if (denom == 0) throw AxiomError("undefined instance: denominator 1-pq is zero");
            return {Expr::choice(Expr::choice(e, p, f), q, g),
                    Expr::choice(e, p * q, Expr::choice(f, complement(p) * q / denom, g))};
        }
        case AxiomName::d1:
            return {Expr::seq(Expr::choice(e, p, f), g),
                    Expr::choice(Expr::seq(e, g), p, Expr::seq(f, g))};
        case AxiomName::d2:
            return {Expr::seq(e, Expr::choice(f, p, g)),
                    Expr::choice(Expr::seq(e, f), p, Expr::seq(e, g))};
        case AxiomName::zero_seq: return {Expr::seq(Expr::zero(), e), Expr::zero()};
        case AxiomName::seq_zero: return {Expr::seq(e, Expr::zero()), Expr::zero()};
        case AxiomName::one_seq: return {Expr::seq(Expr::one(), e), e};
        case AxiomName::seq_one: return {Expr::seq(e, Expr::one()), e};
        case AxiomName::seq_assoc:
            return {Expr::seq(e, Expr::seq(f, g)), Expr::seq(Expr::seq(e, f), g)};
        case AxiomName::unroll:
            return {Expr::choice(Expr::seq(e, Expr::star(e, p)), p, Expr::one()),
                    Expr::star(e, p)};
        case AxiomName::tight: {
            Rational denom = Rational(1) - complement(p) * q;
            if (denom == 0) throw AxiomError("undefined instance: denominator 1-(1-p)q is zero");
            return {Expr::seq(Expr::star(Expr::choice(e, p, Expr::one()), q), Expr::one()),
                    Expr::star(e, p * q / denom)};
        }
        case AxiomName::divergence: return {Expr::star(Expr::one(), 1), Expr::zero()};
        case AxiomName::unique:
            if (termination_weight(e) != 0)
                throw AxiomError("side condition E(e)=0 violated");
            return {g, Expr::seq(Expr::star(e, p), f)};
    }
    throw AxiomError("unknown schema");
}

struct SchemaReport {
    AxiomName name;
    int trials = 0;
    int passed = 0;
    std::string first_failure;

    bool ok() const { return passed == trials; }
};

/// Instantiates every schema `trials` times with random well-formed
/// bindings (resampling until side conditions hold) and checks that both
/// sides are language equivalent. For the fixpoint rule the left-hand
/// side is produced by the one-unknown solver, and the premise
/// g == e;g (+p) f is checked as well.
inline std::vector<SchemaReport> run_axiom_soundness(std::uint64_t seed, int trials,
                                                     int max_depth = 4,
                                                     std::vector<char> alphabet = {'a', 'b'},
                                                     int max_den = 12) {
    Rng rng(seed);
    std::vector<SchemaReport> reports;
    for (AxiomName name : all_axiom_schemas()) {
        SchemaReport rep{name, trials, 0, ""};
        for (int t = 0; t < trials; ++t) {
            AxiomBindings b;
            b.f = random_expr(rng, max_depth, alphabet, max_den);
            b.g = random_expr(rng, max_depth, alphabet, max_den);
            b.p = random_prob(rng, max_den);
            b.q = random_prob(rng, max_den);
            bool premise_ok = true;
            if (name == AxiomName::unique) {
                b.e = random_productive_expr(rng, max_depth, alphabet, max_den);
                LeftAffineSystem sys;
                sys.unknowns = {"x"};
                sys.M = {{b.e}};
                sys.p = {{b.p}};
                sys.b = {b.f};
                sys.r = {complement(b.p)};
                b.g = solve(sys)[0];
                EquivVerdict premise =
                    expr_equiv(b.g, Expr::choice(Expr::seq(b.e, b.g), b.p, b.f));
                premise_ok = premise.equal;
            } else {
                b.e = random_expr(rng, max_depth, alphabet, max_den);
                if (name == AxiomName::c4)
                    while (b.p * b.q == 1) b.q = random_prob(rng, max_den);
                if (name == AxiomName::tight)
                    while (complement(b.p) * b.q == 1) b.q = random_prob(rng, max_den);
            }
            auto [lhs, rhs] = instantiate_axiom(name, b);
            EquivVerdict v = expr_equiv(lhs, rhs);
            if (v.equal && premise_ok) {
                ++rep.passed;
            } else if (rep.first_failure.empty()) {
                rep.first_failure = std::string(axiom_name_string(name)) + ": " + render(lhs) +
                                    "  vs  " + render(rhs);
                if (!v.equal)
                    rep.first_failure += "  differ at \"" + v.word + "\": " +
                                         to_string(v.left_value) + " vs " +
                                         to_string(v.right_value);
                else
                    rep.first_failure += "  premise violated";
            }
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace pre

#endif  // PRE_AXIOMS_HPP
