#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wk/derivation.hpp"

using namespace wk;

namespace {
Poly P(const std::string& text, int n) { return parse_poly(text, n); }
}

TEST_CASE("weitzenboeck lowers the index") {
    LinearDerivation d = weitzenboeck(2);
    CHECK(apply(d, Poly::variable(2, 2)) == Poly::variable(2, 1));
    CHECK(apply(d, Poly::variable(2, 1)) == Poly::variable(2, 0));
    CHECK(apply(d, Poly::variable(2, 0)).is_zero());
    LinearDerivation d0 = weitzenboeck(0);
    CHECK(apply(d0, Poly::variable(0, 0)).is_zero());
}

TEST_CASE("raising coefficients") {
    CHECK(apply(raising(2), Poly::variable(2, 0)) == P("2*x1", 2));
    CHECK(apply(raising(2), Poly::variable(2, 1)) == P("2*x2", 2));
    CHECK(apply(raising(2), Poly::variable(2, 2)).is_zero());
    CHECK(apply(raising(3), Poly::variable(3, 1)) == P("4*x2", 3));
    CHECK(apply(raising(1), Poly::variable(1, 0)) == P("x1", 1));
}

TEST_CASE("toral is diagonal by weight") {
    CHECK(apply(toral(2), Poly::variable(2, 0)) == P("2*x0", 2));
    CHECK(apply(toral(2), Poly::variable(2, 1)).is_zero());
    CHECK(apply(toral(2), Poly::variable(2, 2)) == P("-2*x2", 2));
    CHECK(apply(toral(4), Poly::variable(4, 2)).is_zero());
    // e multiplies a monomial by its weight.
    Poly m = P("x0*x2", 3);
    CHECK(apply(toral(3), m) == scale(Rational(2), m));
}

TEST_CASE("apply on polynomials") {
    LinearDerivation d = weitzenboeck(2);
    CHECK(apply(d, P("x1^2 - 2*x0*x2", 2)).is_zero());
    CHECK(apply(d, P("x1^2", 2)) == P("2*x0*x1", 2));
    CHECK_THROWS_AS(apply(d, Poly::variable(3, 0)), std::invalid_argument);
}

TEST_CASE("Leibniz rule on random polynomials") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 30; ++iter) {
        int n = 1 + static_cast<int>(rng() % 3);
        LinearDerivation d = (iter % 2) ? weitzenboeck(n) : raising(n);
        std::vector<Poly::Term> at, bt;
        for (int t = 0; t < 4; ++t) {
            Monomial m;
            for (int i = 0; i <= n; ++i) m.set_exponent(i, static_cast<int>(rng() % 3));
            at.push_back({m, Rational(static_cast<long>(rng() % 5) - 2)});
            Monomial m2;
            for (int i = 0; i <= n; ++i) m2.set_exponent(i, static_cast<int>(rng() % 3));
            bt.push_back({m2, Rational(static_cast<long>(rng() % 5) - 2)});
        }
        Poly a = Poly::from_terms(n, at), b = Poly::from_terms(n, bt);
        CHECK(apply(d, a * b) == apply(d, a) * b + a * apply(d, b));
    }
}

TEST_CASE("sl2 commutator identities for n up to 8") {
    for (int n = 1; n <= 8; ++n) {
        LinearDerivation d = weitzenboeck(n), up = raising(n), e = toral(n);
        CHECK(commutator(d, up).lambda == e.lambda);
        QMatrix minus2d(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1);
        QMatrix plus2up(minus2d);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                minus2d.at(i, j) = Rational(-2) * d.lambda.at(i, j);
                plus2up.at(i, j) = Rational(2) * up.lambda.at(i, j);
            }
        CHECK(commutator(d, e).lambda == minus2d);
        CHECK(commutator(up, e).lambda == plus2up);
    }
}

TEST_CASE("order of basic elements") {
    CHECK(order(Poly::variable(3, 0), 3) == 3);
    CHECK(order(Poly::constant(2, Rational(1)), 2) == 0);
    CHECK(order(P("x1^2 - 2*x0*x2", 3), 3) == 2);
    CHECK_THROWS_AS(order(Poly::zero(2), 2), std::invalid_argument);
    for (int n = 1; n <= 6; ++n) CHECK(order(Poly::variable(n, 0), n) == n);
}

TEST_CASE("order is additive") {
    std::mt19937_64 rng(5150);
    Poly t = Poly::variable(3, 0);
    Poly dv = P("x1^2 - 2*x0*x2", 3);
    CHECK(order(t * dv, 3) == order(t, 3) + order(dv, 3));
    CHECK(order(dv * dv, 3) == 2 * order(dv, 3));
    CHECK(order(t * t * dv, 3) == 8);
}

TEST_CASE("toral eigenvalue equals weight for isobaric polynomials") {
    Poly dv = P("x1^2 - 2*x0*x2", 3);
    CHECK(apply(toral(3), dv) == scale(Rational(weight(dv)), dv));
}

TEST_CASE("isobaric decomposition") {
    auto parts = isobaric_components(P("x0 + x1", 2));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].weight == 0);
    CHECK(parts[0].part == Poly::variable(2, 1));
    CHECK(parts[1].weight == 2);
    CHECK(parts[1].part == Poly::variable(2, 0));

    auto single = isobaric_components(P("x1^2 - 2*x0*x2", 2));
    REQUIRE(single.size() == 1);

    CHECK(isobaric_components(Poly::zero(2)).empty());

    // Summing the parts restores the polynomial.
    Poly q = P("x0^2 + x1*x2 - 3*x0 + 1/2*x2", 2);
    Poly sum = Poly::zero(2);
    for (const auto& comp : isobaric_components(q)) sum = sum + comp.part;
    CHECK(sum == q);
}

TEST_CASE("raising power bound") {
    std::mt19937_64 rng(8);
    Poly q = P("x0*x1 - x2^2", 2);
    LinearDerivation up = raising(2);
    Poly it = q;
    for (int s = 0; s < 2 * degree(q) + 1 && !it.is_zero(); ++s) it = apply(up, it);
    CHECK(it.is_zero());
}

TEST_CASE("matrix text format round trip") {
    LinearDerivation d = parse_derivation_matrix("0 0\n1 0\n");
    CHECK(d.n == 1);
    CHECK(d.lambda == weitzenboeck(1).lambda);
    LinearDerivation q = parse_derivation_matrix("1/2 0\n-3 2/3");
    CHECK(q.lambda.at(0, 0) == make_rational(1, 2));
    CHECK(q.lambda.at(1, 1) == make_rational(2, 3));
    CHECK_THROWS_AS(parse_derivation_matrix(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_derivation_matrix("1 2\n3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_derivation_matrix("a b\nc d"), std::invalid_argument);
}
