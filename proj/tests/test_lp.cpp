#include "circres/lp.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace circres;
using lp::LinearProgram;

namespace {

/// Fourier-Motzkin elimination: feasibility of a >= system over free variables.
bool fm_feasible(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs, int n) {
    for (int k = n - 1; k >= 0; --k) {
        std::vector<std::vector<Rational>> next;
        std::vector<Rational> next_rhs;
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][k] > 0) pos.push_back(i);
            else if (rows[i][k] < 0) neg.push_back(i);
            else {
                next.push_back(rows[i]);
                next_rhs.push_back(rhs[i]);
            }
        }
        for (std::size_t p : pos) {
            for (std::size_t q : neg) {
                Rational a = rows[p][k];
                Rational b = -rows[q][k];
                std::vector<Rational> r(static_cast<std::size_t>(n));
                for (int j = 0; j < n; ++j) r[j] = b * rows[p][j] + a * rows[q][j];
                next.push_back(std::move(r));
                next_rhs.push_back(b * rhs[p] + a * rhs[q]);
            }
        }
        rows = std::move(next);
        rhs = std::move(next_rhs);
    }
    for (const Rational& b : rhs) {
        if (b > 0) return false;
    }
    return true;
}

}  // namespace

TEST(Lp, BoundedInterval) {
    LinearProgram p(1);
    p.add_constraint({{0, 1}}, 1);
    p.add_constraint({{0, -1}}, -2);
    auto y = lp::feasible(p);
    ASSERT_TRUE(y);
    EXPECT_GE((*y)[0], 1);
    EXPECT_LE((*y)[0], 2);
    EXPECT_FALSE(lp::farkas_certificate(p));
}

TEST(Lp, ContradictoryBounds) {
    LinearProgram p(1);
    p.add_constraint({{0, 1}}, 1);
    p.add_constraint({{0, -1}}, 0);
    EXPECT_FALSE(lp::feasible(p));
    auto lambda = lp::farkas_certificate(p);
    ASSERT_TRUE(lambda);
    EXPECT_EQ((*lambda)[0], 1);
    EXPECT_EQ((*lambda)[1], 1);
}

TEST(Lp, EmptyProgramIsFeasible) {
    LinearProgram p(3);
    auto y = lp::feasible(p);
    ASSERT_TRUE(y);
    EXPECT_EQ(y->size(), 3u);
}

TEST(Lp, ZeroRowWithPositiveRhs) {
    LinearProgram p(2);
    p.add_constraint({{0, 1}, {0, -1}}, Rational(1, 3));
    auto sol = lp::solve(p);
    ASSERT_TRUE(sol.certificate);
    EXPECT_TRUE(lp::is_farkas_certificate(p, *sol.certificate));
}

TEST(Lp, CanonicalRows) {
    LinearProgram p(3);
    p.add_constraint({{2, 1}, {0, 3}, {2, -1}, {1, 2}}, 0);
    const auto& row = p.constraints()[0].coeffs;
    ASSERT_EQ(row.size(), 2u);
    EXPECT_EQ(row[0].var, 0);
    EXPECT_EQ(row[1].var, 1);
    EXPECT_THROW(p.add_constraint({{3, 1}}, 0), std::out_of_range);
}

TEST(Lp, CertificateCheckerRejectsTampering) {
    LinearProgram p(1);
    p.add_constraint({{0, 1}}, 1);
    p.add_constraint({{0, -1}}, 0);
    std::vector<Rational> good{1, 1};
    EXPECT_TRUE(lp::is_farkas_certificate(p, good));
    std::vector<Rational> bad{1, Rational(8, 7)};
    EXPECT_FALSE(lp::is_farkas_certificate(p, bad));
    std::vector<Rational> negative{-1, -1};
    EXPECT_FALSE(lp::is_farkas_certificate(p, negative));
}

TEST(Lp, StrongAlternativeOnRandomPrograms) {
    std::mt19937_64 rng(123);
    int feasible_count = 0;
    for (int round = 0; round < 600; ++round) {
        int n = 1 + static_cast<int>(rng() % 4);
        int m = 1 + static_cast<int>(rng() % 6);
        LinearProgram p(n);
        std::vector<std::vector<Rational>> dense;
        std::vector<Rational> rhs;
        for (int i = 0; i < m; ++i) {
            std::vector<lp::Term> terms;
            std::vector<Rational> row(static_cast<std::size_t>(n), Rational(0));
            for (int j = 0; j < n; ++j) {
                if (rng() % 3 == 0) continue;
                int c = static_cast<int>(rng() % 5) - 2;
                if (round % 2 == 0 && c != 0) c = c > 0 ? 1 : -1;
                row[j] = c;
                terms.push_back({j, Rational(c)});
            }
            Rational b(static_cast<int>(rng() % 7) - 3, 1 + static_cast<int>(rng() % 3));
            p.add_constraint(terms, b);
            dense.push_back(row);
            rhs.push_back(b);
        }
        bool oracle = fm_feasible(dense, rhs, n);
        lp::Solution sol = lp::solve(p);
        ASSERT_EQ(sol.point.has_value(), !sol.certificate.has_value());
        ASSERT_EQ(sol.feasible(), oracle) << "round " << round;
        if (sol.point) {
            EXPECT_TRUE(lp::satisfies(p, *sol.point));
            ++feasible_count;
        } else {
            EXPECT_TRUE(lp::is_farkas_certificate(p, *sol.certificate));
        }
    }
    EXPECT_GT(feasible_count, 50);
    EXPECT_LT(feasible_count, 550);
}

TEST(Lp, PresolveDischargesMonotoneColumns) {
    // y0 >= 1 as a bound; y0 - y1 >= 0 and y1 + y2 >= 5 are discharged by y0 and y2.
    LinearProgram p(3);
    p.add_constraint({{0, 1}}, 1);
    p.add_constraint({{1, 1}}, 0);
    p.add_constraint({{0, 1}, {1, -1}}, 0);
    p.add_constraint({{1, 1}, {2, 1}}, 5);
    auto sol = lp::solve(p);
    ASSERT_TRUE(sol.point);
    EXPECT_TRUE(lp::satisfies(p, *sol.point));
    EXPECT_EQ(sol.stats.rows, 0u);
}

TEST(Lp, GuidedSolveAgreesWithExact) {
    std::mt19937_64 rng(321);
    int reached_points = 0;
    int reached_certificates = 0;
    int guided_points = 0;
    int guided_certificates = 0;
    int feasible_count = 0;
    for (int round = 0; round < 400; ++round) {
        int n = 2 + static_cast<int>(rng() % 8);
        int m = 2 + static_cast<int>(rng() % 10);
        LinearProgram p(n);
        for (int j = 0; j < n; ++j) p.add_constraint({{j, Rational(1)}}, 0);
        for (int i = 0; i < m; ++i) {
            std::vector<lp::Term> terms;
            for (int j = 0; j < n; ++j) {
                if (rng() % 2 == 0) continue;
                terms.push_back({j, Rational(static_cast<int>(rng() % 5) - 2, 1 + static_cast<int>(rng() % 3))});
            }
            p.add_constraint(terms, Rational(static_cast<int>(rng() % 5) - 2, 1 + static_cast<int>(rng() % 2)));
        }
        lp::Solution exact = lp::solve(p);
        lp::Solution fast = lp::solve(p, {.float_guided = true});
        ASSERT_EQ(fast.feasible(), exact.feasible()) << "round " << round;
        if (fast.point) {
            EXPECT_TRUE(lp::satisfies(p, *fast.point));
            ++feasible_count;
        } else {
            EXPECT_TRUE(lp::is_farkas_certificate(p, *fast.certificate));
        }
        if (fast.stats.rows == 0 || fast.stats.columns == 0) continue;  // settled without a simplex
        ++(fast.point ? reached_points : reached_certificates);
        if (fast.stats.guided) ++(fast.point ? guided_points : guided_certificates);
    }
    EXPECT_GT(feasible_count, 40);
    EXPECT_LT(feasible_count, 360);
    // Programs that reach the simplex are answered by the floating-point guide.
    EXPECT_GT(reached_points, 30);
    EXPECT_GT(reached_certificates, 30);
    EXPECT_EQ(guided_points, reached_points);
    EXPECT_GE(guided_certificates * 10, reached_certificates * 9);
}
