#include <catch2/catch_amalgamated.hpp>

#include "pre/axioms.hpp"
#include "pre/parse.hpp"

using namespace pre;

namespace {
const Expr A = Expr::act('a');
}

TEST_CASE("instantiation goldens") {
    AxiomBindings b;
    b.e = A;
    b.p = Rational(1, 4);
    auto [lhs, rhs] = instantiate_axiom(AxiomName::unroll, b);
    CHECK(lhs == Expr::choice(Expr::seq(A, Expr::star(A, Rational(1, 4))), Rational(1, 4),
                              Expr::one()));
    CHECK(rhs == Expr::star(A, Rational(1, 4)));

    auto [dl, dr] = instantiate_axiom(AxiomName::divergence, AxiomBindings{});
    CHECK(dl == Expr::star(Expr::one(), 1));
    CHECK(dr == Expr::zero());
}

TEST_CASE("undefined instances are rejected") {
    AxiomBindings b;
    b.e = A;
    b.f = A;
    b.g = A;
    b.p = 1;
    b.q = 1;
    CHECK_THROWS_AS(instantiate_axiom(AxiomName::c4, b), AxiomError);
    b.p = 0;
    CHECK_THROWS_AS(instantiate_axiom(AxiomName::tight, b), AxiomError);
    // The fixpoint rule requires a productive loop body.
    b.e = Expr::one();
    CHECK_THROWS_AS(instantiate_axiom(AxiomName::unique, b), AxiomError);
}

TEST_CASE("well-formed instances stay in range") {
    AxiomBindings b;
    b.e = A;
    b.f = Expr::act('b');
    b.g = Expr::zero();
    b.p = Rational(2, 3);
    b.q = Rational(3, 4);
    auto [lhs, rhs] = instantiate_axiom(AxiomName::c4, b);
    // (2/3)(3/4) = 1/2 and (1/3)(3/4)/(1/2) = 1/2
    CHECK(rhs == Expr::choice(A, Rational(1, 2),
                              Expr::choice(Expr::act('b'), Rational(1, 2), Expr::zero())));
    CHECK(expr_equiv(lhs, rhs).equal);
}

TEST_CASE("every schema is sound on random instances", "[harness]") {
    auto reports = run_axiom_soundness(2026, 25);
    CHECK(reports.size() == all_axiom_schemas().size());
    for (const auto& rep : reports) {
        INFO(axiom_name_string(rep.name) << ": " << rep.first_failure);
        CHECK(rep.passed == rep.trials);
    }
}
