#include "pellcrit/localanalysis.hpp"
#include "pellcrit/pellsolver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <stdexcept>

using namespace pellcrit;

namespace {

// Smallest y > 0 with D y^2 - 1 or D y^2 + 1 a square, and which sign.
std::pair<long, int> brute_unit(long D) {
    for (long y = 1; y < 10'000'000; ++y) {
        Int d = Int(D) * y * y;
        if (is_square(d - 1)) return {y, -1};
        if (is_square(d + 1)) return {y, 1};
    }
    return {-1, 0};
}

// Smallest y >= 0 with x^2 - D y^2 = n for each |n| <= N, y <= Y.
std::map<long, long> brute_min_y(long D, long N, long Y) {
    std::map<long, long> out;
    for (long y = 0; y <= Y; ++y) {
        __int128 dy2 = (__int128)D * y * y;
        __int128 lo = dy2 - N < 0 ? 0 : dy2 - N;
        long x = std::max(0L, (long)std::sqrt((double)lo) - 2);
        for (;; ++x) {
            __int128 v = (__int128)x * x - dy2;
            if (v > N) break;
            if (v >= -N && v != 0 && !out.count((long)v)) out[(long)v] = y;
        }
    }
    return out;
}

// Positive norm-one unit.
std::pair<Int, Int> unit_plus(const Int& D) {
    const PellFundamental& u = fundamental_unit(D);
    if (u.unit_norm == 1) return {u.x1, u.y1};
    return {u.x1 * u.x1 + D * u.y1 * u.y1, 2 * u.x1 * u.y1};
}

}  // namespace

TEST(CfFundamental, Examples) {
    auto [cf, u] = cf_fundamental(221);
    EXPECT_EQ(u.x1, 1665);
    EXPECT_EQ(u.y1, 112);
    EXPECT_EQ(u.unit_norm, 1);
    EXPECT_EQ(cf.period.size(), 6u);
    EXPECT_EQ(cf.a0, 14);
    auto [cf10, u10] = cf_fundamental(10);
    EXPECT_EQ((std::array<Int, 2>{u10.x1, u10.y1}), (std::array<Int, 2>{3, 1}));
    EXPECT_EQ(u10.unit_norm, -1);
    auto u34 = cf_fundamental(34).second;
    EXPECT_EQ((std::array<Int, 2>{u34.x1, u34.y1}), (std::array<Int, 2>{35, 6}));
    EXPECT_EQ(u34.unit_norm, 1);
}

TEST(CfFundamental, RejectsSquares) {
    EXPECT_THROW(cf_fundamental(49), std::invalid_argument);
    EXPECT_THROW(cf_fundamental(0), std::invalid_argument);
}

TEST(CfFundamental, NormMatchesPeriodParity) {
    for (long D = 2; D <= 2000; ++D) {
        if (is_square(Int(D))) continue;
        auto [cf, u] = cf_fundamental(D);
        EXPECT_EQ(u.unit_norm == -1, cf.period.size() % 2 == 1) << D;
        EXPECT_EQ(u.x1 * u.x1 - D * u.y1 * u.y1, u.unit_norm) << D;
        EXPECT_EQ(cf.pq_states.size(), cf.period.size() + 1) << D;
    }
}

TEST(CfFundamental, MinimalAgainstSearch) {
    for (long D = 2; D <= 120; ++D) {
        if (is_square(Int(D))) continue;
        const PellFundamental& u = fundamental_unit(D);
        auto [y, sign] = brute_unit(D);
        EXPECT_EQ(u.y1, y) << D;
        EXPECT_EQ(u.unit_norm, sign) << D;
    }
}

TEST(Solve, Examples) {
    Verdict v = solve(221, 17);
    ASSERT_TRUE(v.solvable());
    EXPECT_EQ(*v.witness, (std::pair<Int, Int>{119, 8}));
    EXPECT_EQ(v.provenance, "oracle");

    v = solve(82, 2);
    EXPECT_EQ(v.status, Status::Unsolvable);
    EXPECT_NE(v.reason, Reason::LocalObstruction);

    v = solve(305, 5);
    ASSERT_TRUE(v.solvable());
    EXPECT_EQ(*v.witness, (std::pair<Int, Int>{35, 2}));

    v = solve(221, -4);
    EXPECT_EQ(v.status, Status::Unsolvable);

    v = solve(21, -1);
    EXPECT_EQ(v.status, Status::Unsolvable);
    EXPECT_EQ(v.reason, Reason::LocalObstruction);
    EXPECT_EQ(v.obstruction_prime, 3);
}

TEST(Solve, Rejects) {
    EXPECT_THROW(solve(221, 0), std::invalid_argument);
    EXPECT_THROW(solve(16, 3), std::invalid_argument);
    EXPECT_THROW(solve(-5, 3), std::invalid_argument);
}

TEST(Solve, AgreesWithDirectSearch) {
    const long N = 50, Y = 10000;
    for (long D = 2; D <= 500; ++D) {
        if (is_square(Int(D))) continue;
        auto min_y = brute_min_y(D, N, Y);
        for (long n = -N; n <= N; ++n) {
            if (n == 0) continue;
            Verdict v = solve(D, n);
            auto it = min_y.find(n);
            if (v.solvable()) {
                const auto& [x, y] = *v.witness;
                ASSERT_EQ(x * x - D * y * y, n) << D << " " << n;
                EXPECT_GE(x, 0);
                EXPECT_GE(y, 0);
                if (y <= Y) {
                    ASSERT_NE(it, min_y.end()) << D << " " << n;
                    EXPECT_EQ(y, it->second) << D << " " << n;
                } else {
                    EXPECT_EQ(it, min_y.end()) << D << " " << n;
                }
            } else {
                EXPECT_EQ(it, min_y.end()) << D << " " << n;
            }
        }
    }
}

TEST(Solve, UnitTranslatesStaySolutions) {
    for (long D : {7L, 34L, 146L, 221L, 1394L})
        for (long n = -40; n <= 40; ++n) {
            if (n == 0) continue;
            Verdict v = solve(D, n);
            if (!v.solvable()) continue;
            auto [a, b] = unit_plus(D);
            auto [x, y] = *v.witness;
            Int x2 = x * a + D * y * b, y2 = x * b + y * a;
            EXPECT_EQ(x2 * x2 - D * y2 * y2, n);
            EXPECT_GT(y2, y);
        }
}

TEST(Solve, SearchAndClassesAgree) {
    for (long D = 2; D <= 400; ++D) {
        if (is_square(Int(D))) continue;
        const PellFundamental& u = fundamental_unit(D);
        for (long n = -60; n <= 60; ++n) {
            if (n == 0) continue;
            Int bound = orbit_search_bound(D, n, u);
            if (bound > 200'000) continue;
            Verdict s = solve_by_search(D, n, bound), c = solve_by_classes(D, n);
            ASSERT_EQ(s.status, c.status) << D << " " << n;
            if (s.solvable()) EXPECT_EQ(*s.witness, *c.witness) << D << " " << n;
        }
    }
}

TEST(Solve, LargeCoefficients) {
    // The unit of 991 does not fit in 64 bits.
    const Int D = 991;
    const PellFundamental& u = fundamental_unit(D);
    EXPECT_GT(u.y1, Int("10000000000000000000"));
    Verdict v = solve(D, 1);
    ASSERT_TRUE(v.solvable());
    EXPECT_EQ(*v.witness, (std::pair<Int, Int>{1, 0}));
    v = solve(D, -1);
    EXPECT_EQ(v.status, Status::Unsolvable);
    for (long n = -30; n <= 30; ++n) {
        if (n == 0) continue;
        v = solve(D, n);
        if (v.solvable()) EXPECT_EQ(v.witness->first * v.witness->first - D * v.witness->second * v.witness->second, n);
    }
}

TEST(OrbitSearchBound, ExactInequality) {
    for (long D : {2L, 13L, 34L, 221L, 991L})
        for (long n : {-50L, -7L, 1L, 17L, 300L}) {
            const PellFundamental& f = fundamental_unit(D);
            const Int &a = f.x1, &b = f.y1;
            Int an = std::labs(n);
            // D y^2 < |n| (x1 + y1 sqrt D)
            auto inside = [&](const Int& y) {
                Int lhs = D * y * y - an * a;
                return lhs < 0 || lhs * lhs < an * an * b * b * D;
            };
            Int y = orbit_search_bound(D, n, f);
            EXPECT_TRUE(y == 0 || inside(y)) << D << " " << n;
            EXPECT_FALSE(inside(y + 1)) << D << " " << n;
        }
}
