// Acceptance run: one PASS/FAIL line per criterion.

#include "pellcrit/artin.hpp"
#include "pellcrit/criteria.hpp"
#include "pellcrit/localanalysis.hpp"
#include "pellcrit/pellsolver.hpp"
#include "pellcrit/quadring.hpp"
#include "pellcrit/symbols.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace pellcrit;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<long> primes_upto(long n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<long> out;
    for (long i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (long j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

// a^((p-1)/4) mod p as +-1, computed directly.
int quartic(long a, long p) {
    Int r = powmod(a, (p - 1) / 4, p);
    if (r == 1) return 1;
    if (r == p - 1) return -1;
    throw std::logic_error("quartic: not a quadratic residue");
}

Outcome criterion_1() {
    long mismatches = 0, total = 0;
    for (long n = -20000; n <= 20000; ++n) {
        if (n == 0) continue;
        ++total;
        if (decide_221(n).status != solve(221, n).status) ++mismatches;
    }
    return {mismatches == 0, std::to_string(total) + " values of n, " + std::to_string(mismatches) + " mismatches"};
}

Outcome criterion_2() {
    long pairs = 0, exceptions = 0;
    std::vector<long> ps;
    for (long p : primes_upto(1000))
        if (p % 4 == 1) ps.push_back(p);
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            long p = ps[i], q = ps[j];
            if (jacobi(q, p) != 1) continue;
            int qp = quartic(q, p), pq = quartic(p, q);
            if (qp * pq != -1) continue;
            ++pairs;
            Int D = Int(p) * q;
            bool ok = !solve(D, -1).solvable();
            if (qp == 1) ok = ok && solve(D, p).solvable();
            else ok = ok && solve(D, q).solvable() && !solve(D, p).solvable();
            if (!ok) ++exceptions;
        }
    return {exceptions == 0 && pairs > 0, std::to_string(pairs) + " pairs, " + std::to_string(exceptions) + " exceptions"};
}

Outcome criterion_3() {
    long checked = 0, exceptions = 0;
    for (long p : primes_upto(10000)) {
        Int D = 2 * Int(p);
        if (p % 16 == 9) {
            ++checked;
            int t = quartic(2, p);
            if (!solve(D, t == -1 ? -1 : -2).solvable()) ++exceptions;
        } else if (p % 16 == 1 && quartic(2, p) == -1) {
            ++checked;
            if (!solve(D, 2).solvable()) ++exceptions;
        }
    }
    return {exceptions == 0 && checked > 0, std::to_string(checked) + " primes, " + std::to_string(exceptions) + " exceptions"};
}

Outcome criterion_4() {
    long checked = 0, exceptions = 0;
    for (long d = 9; d <= 3000; d += 16) {
        bool ok_primes = true;
        for (const Int& l : prime_divisors(d))
            if (mod(l, 8) != 1 && mod(l, 8) != 7) ok_primes = false;
        if (!ok_primes) continue;
        ++checked;
        if (solve(2 * Int(d), 2).solvable()) ++exceptions;
    }
    // x^2 - 82 y^2 = 2 has points over every Z_l (and over R since 2 > 0).
    bool local_everywhere = true;
    for (const Int& l : prime_divisors(Int(2 * 82 * 2)))
        if (!local_solvable(82, 2, l)) local_everywhere = false;
    for (long l : primes_upto(200))
        if (!local_solvable(82, 2, l)) local_everywhere = false;
    std::ostringstream os;
    os << checked << " values of d, " << exceptions << " exceptions; d=41 locally solvable everywhere: "
       << (local_everywhere ? "yes" : "no");
    return {exceptions == 0 && checked > 0 && local_everywhere, os.str()};
}

Outcome criterion_5() {
    long with_rep = 0, exceptions = 0, products = 0;
    for (long d = 17; d <= 3000; d += 8) {
        Factorization f = factor(d);
        bool ok = true;
        for (const auto& pp : f.factors)
            if (pp.exponent != 1 || mod(pp.prime, 8) != 1) ok = false;
        if (!ok) continue;
        ++products;
        Int D = 2 * Int(d);
        if (has_pm3_two_squares(D)) {
            ++with_rep;
            if (solve(D, -1).solvable()) ++exceptions;
        }
        int two4 = 1;
        for (const auto& pp : f.factors) two4 *= quartic(2, pp.prime.get_si());
        if (solve(D, -2).solvable() && two4 != 1) ++exceptions;
    }
    std::ostringstream os;
    os << products << " values of d (" << with_rep << " with a +-3 representation), " << exceptions << " exceptions";
    return {exceptions == 0 && with_rep > 0, os.str()};
}

Outcome criterion_6() {
    CharacterTable t34 = theta_character(34, ThetaData{6, 1, 1, 2, 34});
    CharacterTable t146 = theta_character(146, ThetaData{14, 1, 5, 2, 146});
    CharacterTable e34{1, -1, 1, -1}, e146{1, -1, -1, 1};
    auto show = [](const CharacterTable& t) {
        std::ostringstream os;
        os << "{" << t.chi_1 << "," << t.chi_neg1 << "," << t.chi_2 << "," << t.chi_neg2 << "}";
        return os.str();
    };
    return {t34 == e34 && t146 == e146, "D=34 " + show(t34) + ", D=146 " + show(t146)};
}

Outcome criterion_7() {
    long pairs = 0, exceptions = 0;
    std::vector<long> ps;
    for (long p : primes_upto(2000))
        if (p % 4 == 1) ps.push_back(p);
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            long p = ps[i], q = ps[j];
            if (jacobi(p, q) != 1) continue;
            ++pairs;
            if (burde_product(p, q) != quartic_residue(p, q) * quartic_residue(q, p)) ++exceptions;
        }
    return {exceptions == 0 && pairs > 0, std::to_string(pairs) + " pairs, " + std::to_string(exceptions) + " exceptions"};
}

Outcome criterion_8() {
    std::mt19937_64 rng(20260419);
    std::uniform_int_distribution<long> dist(-10000, 10000);
    long exceptions = 0;
    for (int i = 0; i < 10000; ++i) {
        long a = 0, b = 0;
        while (a == 0) a = dist(rng);
        while (b == 0) b = dist(rng);
        int prod = 1;
        for (const Place& v : relevant_places(a, b)) prod *= hilbert_q(a, b, v);
        if (prod != 1) ++exceptions;
    }
    return {exceptions == 0, "10000 pairs, " + std::to_string(exceptions) + " exceptions"};
}

Outcome criterion_9() {
    std::vector<std::pair<Int, long>> cases{{221, 2000}};
    for (long D = 2; D <= 1000; D += 2)
        if (!is_square(D) && classify_order(D).family == QuadOrderInfo::Family::TwoD) cases.push_back({D, 500});
    cases.push_back({1394, 500});
    long mismatches = 0, total = 0;
    std::ostringstream ds;
    for (const auto& [D, N] : cases) {
        ds << (total ? "," : "") << D;
        for (long n = -N; n <= N; ++n) {
            if (n == 0) continue;
            ++total;
            if (joint_artin_decide(D, n).status != solve(D, n).status) ++mismatches;
        }
    }
    return {mismatches == 0, "D in {" + ds.str() + "}, " + std::to_string(total) + " instances, " +
                                 std::to_string(mismatches) + " mismatches"};
}

Outcome criterion_10() {
    const long Y = 10000, N = 50;
    long mismatches = 0, instances = 0;
    for (long D = 2; D <= 300; ++D) {
        long r = std::lround(std::sqrt(double(D)));
        if (r * r == D) continue;
        // Smallest y with x^2 - D y^2 = n for some x >= 0, by direct search.
        std::map<long, long> min_y;
        for (long y = 0; y <= Y; ++y) {
            __int128 dy2 = (__int128)D * y * y;
            __int128 lo = dy2 - N < 0 ? 0 : dy2 - N;
            long x = std::max(0L, (long)std::sqrt((double)lo) - 2);
            for (;; ++x) {
                __int128 v = (__int128)x * x - dy2;
                if (v > N) break;
                if (v >= -N && v != 0 && !min_y.count((long)v)) min_y[(long)v] = y;
            }
        }
        for (long n = -N; n <= N; ++n) {
            if (n == 0) continue;
            ++instances;
            Verdict v = solve(D, n);
            auto it = min_y.find(n);
            bool brute = it != min_y.end();
            bool oracle = v.solvable() && v.witness->second <= Y;
            if (brute != oracle || (brute && v.witness->second != it->second)) ++mismatches;
        }
    }
    return {mismatches == 0, std::to_string(instances) + " instances, " + std::to_string(mismatches) + " mismatches"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"221 criterion equals oracle for 0 < |n| <= 20000", criterion_1},
        {"pq trichotomy for p < q <= 1000", criterion_2},
        {"2p targets for p <= 10^4, p = 1 or 9 mod 16", criterion_3},
        {"x^2 - 2d y^2 = 2 unsolvable for d = 9 mod 16, d <= 3000", criterion_4},
        {"-1 and -2 obstructions for d <= 3000", criterion_5},
        {"character tables at 2 for D = 34 and D = 146", criterion_6},
        {"rational formula for the quartic symbol product, p < q <= 2000", criterion_7},
        {"Hilbert reciprocity on random pairs", criterion_8},
        {"joint Artin decision equals oracle", criterion_9},
        {"oracle agrees with direct search, D <= 300, |n| <= 50", criterion_10},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
                  << o.detail << "; " << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
