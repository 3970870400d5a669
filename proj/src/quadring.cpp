#include "pellcrit/quadring.hpp"

#include "pellcrit/pellsolver.hpp"
#include "pellcrit/symbols.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pellcrit {

std::string to_string(SplittingType t) {
    switch (t) {
        case SplittingType::Split: return "split";
        case SplittingType::Inert: return "inert";
        case SplittingType::Ramified: return "ramified";
    }
    return "?";
}

SplittingType splitting_type(const Int& D, const Int& l) {
    Int k = squarefree_part(D);
    if (l == 2) {
        Int r = mod(k, 8);
        if (r == 1) return SplittingType::Split;
        if (r == 5) return SplittingType::Inert;
        return SplittingType::Ramified;
    }
    if (mod(k, l) == 0) return SplittingType::Ramified;
    return jacobi(k, l) == 1 ? SplittingType::Split : SplittingType::Inert;
}

bool has_pm3_two_squares(const Int& two_d) {
    for (const auto& rep : two_squares_all(two_d)) {
        Int r = mod(rep.r, 8), s = mod(rep.s, 8);
        if ((r == 3 || r == 5) && (s == 3 || s == 5)) return true;
    }
    return false;
}

QuadOrderInfo classify_order(const Int& D) {
    if (D <= 0 || is_square(D)) throw std::invalid_argument("D must be a positive non-square");
    QuadOrderInfo info;
    info.D = D;
    info.discriminant = 4 * D;
    Factorization f = factor(D);
    if (f.factors.size() == 2 && f.factors[0].exponent == 1 && f.factors[1].exponent == 1) {
        const Int& p = f.factors[0].prime;
        const Int& q = f.factors[1].prime;
        if (mod(p, 4) == 1 && mod(q, 4) == 1 && jacobi(q, p) == 1 &&
            quartic_residue(p, q) * quartic_residue(q, p) == -1) {
            info.family = QuadOrderInfo::Family::PQ;
            info.p = p;
            info.q = q;
            return info;
        }
    }
    if (f.factors.size() >= 2 && f.factors[0].prime == 2 && f.factors[0].exponent == 1) {
        bool ok = true;
        for (std::size_t i = 1; i < f.factors.size(); ++i)
            ok = ok && f.factors[i].exponent == 1 && mod(f.factors[i].prime, 8) == 1;
        if (ok && has_pm3_two_squares(D)) {
            info.family = QuadOrderInfo::Family::TwoD;
            info.d = D / 2;
        }
    }
    return info;
}

std::pair<Int, Int> two_squares_prime(const Int& p) {
    if (p == 2) return {1, 1};
    if (mod(p, 4) != 1 || !is_prime(p)) throw std::invalid_argument("two_squares_prime: p must be 2 or a prime = 1 mod 4");
    // Cornacchia with d = 1
    Int x0 = *sqrt_mod(-1, p);
    Int a = p, b = p - x0, bound = isqrt(p);
    while (b > bound) {
        Int t = a % b;
        a = b;
        b = t;
    }
    Int c = isqrt(p - b * b);
    if (b * b + c * c != p) throw std::logic_error("two_squares_prime: Cornacchia failed");
    if (mpz_even_p(b.get_mpz_t())) std::swap(b, c);
    return {b, c};
}

std::vector<TwoSquaresRep> two_squares_all(const Int& m) {
    if (m < 2) return {};
    // Gaussian integers x + iy composed over the prime splittings of m.
    std::vector<std::pair<Int, Int>> acc{{Int(1), Int(0)}};
    for (const auto& pp : factor(m).factors) {
        if (pp.prime == 2) {
            if (pp.exponent > 1) return {};
            for (auto& [x, y] : acc) {
                Int nx = x - y, ny = x + y;
                x = nx;
                y = ny;
            }
            continue;
        }
        if (mod(pp.prime, 4) == 3) return {};
        auto [a, b] = two_squares_prime(pp.prime);
        Int pa = 1, pb = 0;
        for (unsigned i = 0; i < pp.exponent; ++i) {
            Int na = pa * a - pb * b, nb = pa * b + pb * a;
            pa = na;
            pb = nb;
        }
        std::vector<std::pair<Int, Int>> next;
        for (const auto& [x, y] : acc) {
            next.emplace_back(x * pa - y * pb, x * pb + y * pa);
            next.emplace_back(x * pa + y * pb, y * pa - x * pb);
        }
        acc = std::move(next);
    }
    std::set<std::pair<Int, Int>> seen;
    std::vector<TwoSquaresRep> out;
    for (auto [x, y] : acc) {
        x = abs(x);
        y = abs(y);
        if (x == 0 || y == 0) continue;
        bool x_odd = mpz_odd_p(x.get_mpz_t()), y_odd = mpz_odd_p(y.get_mpz_t());
        if (x_odd && y_odd) {
            if (x < y) std::swap(x, y);
        } else if (!x_odd) {
            std::swap(x, y);
        }
        if (seen.insert({x, y}).second) out.push_back({x, y});
    }
    std::sort(out.begin(), out.end(), [](const auto& u, const auto& v) { return u.r < v.r; });
    return out;
}

std::optional<std::pair<Int, Int>> repr_x2_plus_2y2(const Int& m) {
    if (m < 1) return std::nullopt;
    if (m == 1) return std::pair<Int, Int>{1, 0};
    if (m == 2) return std::pair<Int, Int>{0, 1};
    std::optional<std::pair<Int, Int>> best;
    Int bound = isqrt(m);
    for (const Int& root : sqrt_mod_all(-2, m)) {
        Int a = m, b = root;
        while (b > bound) {
            Int t = a % b;
            a = b;
            b = t;
        }
        Int rest = m - b * b;
        if (rest < 0 || mpz_odd_p(rest.get_mpz_t())) continue;
        rest /= 2;
        if (!is_square(rest)) continue;
        Int c = isqrt(rest);
        if (gcd(b, c) != 1) continue;
        if (!best || c < best->second) best = std::pair<Int, Int>{b, c};
    }
    return best;
}

ThetaData find_theta_data(const Int& D, const Int& ell, unsigned max_z) {
    if (D <= 0 || is_square(D)) throw std::invalid_argument("find_theta_data: D must be a positive non-square");
    for (unsigned z = 1; z <= max_z; ++z) {
        Int rhs = ell * z * z;
        Verdict v = solve(D, rhs);
        if (v.status != Status::Solvable) continue;
        // Minimal z0 forces every solution to be primitive.
        Int x = abs(v.witness->first), y = abs(v.witness->second);
        if (y == 0) continue;
        if (gcd(x, y) != 1) throw std::logic_error("find_theta_data: non-primitive minimal solution");
        return ThetaData{x, y, Int(z), ell, D};
    }
    throw std::domain_error("find_theta_data: no solution with z0 <= bound");
}

QuadElem qmul(const QuadElem& x, const QuadElem& y, const Int& D) {
    return {x.a * y.a + Rational(D) * x.b * y.b, x.a * y.b + x.b * y.a};
}

QuadElem qadd(const QuadElem& x, const QuadElem& y) { return {x.a + y.a, x.b + y.b}; }
QuadElem qsub(const QuadElem& x, const QuadElem& y) { return {x.a - y.a, x.b - y.b}; }
QuadElem qconj(const QuadElem& x) { return {x.a, -x.b}; }

Rational qnorm(const QuadElem& x, const Int& D) { return x.a * x.a - Rational(D) * x.b * x.b; }

QuadElem qinv(const QuadElem& x, const Int& D) {
    Rational n = qnorm(x, D);
    if (n == 0) throw std::domain_error("qinv: zero element");
    return {x.a / n, -x.b / n};
}

}  // namespace pellcrit
