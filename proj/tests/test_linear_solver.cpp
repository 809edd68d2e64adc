#include <doctest.h>

#include <random>

#include "kleinian/linear_solver.hpp"
#include "oracles.hpp"

using namespace kleinian;

TEST_CASE("one by one") {
    LinearSystem sys;
    sys.unknowns = {"x"};
    sys.add_row({{0, Rational(1)}}, Rational(2));
    SolveResult r = solve_exact(sys);
    CHECK(r.kind == SolveResult::Kind::Unique);
    CHECK(r.particular[0] == Rational(2));
}

TEST_CASE("underdetermined reports a nullspace") {
    // 2 equations, 3 unknowns, consistent
    LinearSystem sys;
    sys.unknowns = {"x", "y", "z"};
    sys.add_row({{0, Rational(1)}, {1, Rational(1)}}, Rational(3));
    sys.add_row({{1, Rational(1)}, {2, Rational(1)}}, Rational(5));
    SolveResult r = solve_exact(sys);
    CHECK(r.kind == SolveResult::Kind::Family);
    CHECK(r.rank == 2);
    CHECK(r.nullspace.size() == 1);
    // particular solves the system
    CHECK(r.particular[0] + r.particular[1] == Rational(3));
    CHECK(r.particular[1] + r.particular[2] == Rational(5));
    // nullspace vector is in the kernel
    const auto& v = r.nullspace[0];
    CHECK(v[0] + v[1] == Rational(0));
    CHECK(v[1] + v[2] == Rational(0));
}

TEST_CASE("inconsistency is a result, not an error") {
    LinearSystem sys;
    sys.unknowns = {"x"};
    sys.add_row({{0, Rational(1)}}, Rational(1));
    sys.add_row({{0, Rational(1)}}, Rational(2));
    CHECK(solve_exact(sys).kind == SolveResult::Kind::Inconsistent);
}

TEST_CASE("random systems match the naive elimination oracle") {
    std::mt19937_64 rng(17);
    for (int n = 1; n <= 8; ++n) {
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<std::vector<Rational>> m(static_cast<size_t>(n),
                                                 std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
            std::vector<Rational> rhs(static_cast<size_t>(n), Rational(0));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) m[size_t(i)][size_t(j)] = oracles::random_rational(rng);
                rhs[size_t(i)] = oracles::random_rational(rng);
            }
            std::vector<Rational> expect;
            bool regular = oracles::naive_solve(m, rhs, expect);

            LinearSystem sys;
            for (int j = 0; j < n; ++j) sys.unknowns.push_back("x" + std::to_string(j));
            for (int i = 0; i < n; ++i) {
                std::vector<std::pair<int, Rational>> row;
                for (int j = 0; j < n; ++j)
                    if (!m[size_t(i)][size_t(j)].is_zero()) row.push_back({j, m[size_t(i)][size_t(j)]});
                sys.add_row(std::move(row), rhs[size_t(i)]);
            }
            SolveResult r = solve_exact(sys);
            if (regular) {
                REQUIRE(r.kind == SolveResult::Kind::Unique);
                for (int j = 0; j < n; ++j) CHECK(r.particular[size_t(j)] == expect[size_t(j)]);
            } else {
                CHECK(r.kind != SolveResult::Kind::Unique);
            }
        }
    }
}

TEST_CASE("rank of wide and tall matrices") {
    std::vector<std::vector<Rational>> rows = {
        {Rational(1), Rational(2), Rational(3)},
        {Rational(2), Rational(4), Rational(6)},
        {Rational(0), Rational(1), Rational(1)},
    };
    CHECK(matrix_rank(rows) == 2);
}
