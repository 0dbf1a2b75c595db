#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wk/linalg.hpp"

using namespace wk;

namespace {

QMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = Rational(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("rank of simple matrices") {
    CHECK(rank(from_rows({{1, 2}, {2, 4}})) == 1);
    CHECK(rank(from_rows({{1, 0}, {0, 1}})) == 2);
    CHECK(rank(from_rows({{0, 0}, {0, 0}})) == 0);
    CHECK(rank(from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 2);
}

TEST_CASE("rank with rational entries") {
    QMatrix m(2, 2);
    m.at(0, 0) = make_rational(1, 2);
    m.at(0, 1) = make_rational(1, 3);
    m.at(1, 0) = make_rational(3, 2);
    m.at(1, 1) = make_rational(1, 1);
    CHECK(rank(m) == 1);
}

TEST_CASE("nullspace vectors annihilate") {
    QMatrix m = from_rows({{1, 2, 1}, {2, 4, 0}});
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational s(0);
        for (std::size_t j = 0; j < m.cols(); ++j) s += m.at(i, j) * ns[0][j];
        CHECK(s == 0);
    }
}

TEST_CASE("nullspace rank-nullity on random integer matrices") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 50; ++iter) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        QMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m.at(i, j) = Rational(static_cast<long>(rng() % 7) - 3);
        std::size_t rk = rank(m);
        auto ns = nullspace(m);
        CHECK(rk + ns.size() == c);
        for (const auto& v : ns)
            for (std::size_t i = 0; i < r; ++i) {
                Rational s(0);
                for (std::size_t j = 0; j < c; ++j) s += m.at(i, j) * v[j];
                REQUIRE(s == 0);
            }
    }
}

TEST_CASE("solve consistent and inconsistent systems") {
    QMatrix a = from_rows({{1, 1}, {1, -1}});
    auto sol = solve(a, {Rational(3), Rational(1)});
    REQUIRE(sol.has_value());
    CHECK(sol->particular == std::vector<Rational>{Rational(2), Rational(1)});
    CHECK(sol->nullspace.empty());

    QMatrix b = from_rows({{1, 1}, {2, 2}});
    CHECK_FALSE(solve(b, {Rational(1), Rational(3)}).has_value());

    auto under = solve(from_rows({{1, 1}}), {Rational(2)});
    REQUIRE(under.has_value());
    CHECK(under->nullspace.size() == 1);
}

TEST_CASE("solve validates random right-hand sides") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        QMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m.at(i, j) = make_rational(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3);
        std::vector<Rational> x(c);
        for (auto& v : x) v = make_rational(static_cast<long>(rng() % 9) - 4, 1 + rng() % 2);
        std::vector<Rational> b(r, Rational(0));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) b[i] += m.at(i, j) * x[j];
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        for (std::size_t i = 0; i < r; ++i) {
            Rational s(0);
            for (std::size_t j = 0; j < c; ++j) s += m.at(i, j) * sol->particular[j];
            REQUIRE(s == b[i]);
        }
    }
}
