#include "pellcrit/pellsolver.hpp"

#include "pellcrit/localanalysis.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace pellcrit {

std::string to_string(Status s) {
    switch (s) {
        case Status::Solvable: return "solvable";
        case Status::Unsolvable: return "unsolvable";
        case Status::Undetermined: return "undetermined";
    }
    return "?";
}

std::string to_string(Reason r) {
    switch (r) {
        case Reason::None: return "none";
        case Reason::LocalObstruction: return "local-obstruction";
        case Reason::OrbitSearchExhausted: return "orbit-search-exhausted";
        case Reason::ClassesExhausted: return "classes-exhausted";
        case Reason::Criterion: return "criterion";
        case Reason::ArtinCondition: return "artin-condition";
    }
    return "?";
}

namespace {

void check_D(const Int& D) {
    if (D <= 0 || is_square(D)) throw std::invalid_argument("D must be a positive non-square");
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// floor((P + sqrt D) / Q) for Q != 0, with s = floor(sqrt D).
Int partial_quotient(const Int& P, const Int& Q, const Int& s) {
    if (Q > 0) return floor_div(P + s, Q);
    return -floor_div(P + s, -Q) - 1;
}

// Smallest |y| among candidates of norm n; x recomputed positive.
std::optional<std::pair<Int, Int>> best_witness(const Int& D, const Int& n, const std::vector<Int>& ys) {
    std::optional<Int> best;
    for (const Int& y0 : ys) {
        Int y = abs(y0);
        if (best && y >= *best) continue;
        Int t = D * y * y + n;
        if (!is_square(t)) throw std::logic_error("solve: candidate does not have norm n");
        best = y;
    }
    if (!best) return std::nullopt;
    return std::pair<Int, Int>{isqrt(D * *best * *best + n), *best};
}

// y-coordinates of gamma * u and gamma * u^{-1} (up to sign) for gamma = x + y sqrt D.
void neighbours(const Int& x, const Int& y, const PellFundamental& u, std::vector<Int>& out) {
    out.push_back(x * u.y1 + y * u.x1);
    out.push_back(x * u.y1 - y * u.x1);
}

}  // namespace

std::pair<CFExpansion, PellFundamental> cf_fundamental(const Int& D) {
    check_D(D);
    CFExpansion cf;
    Int s = isqrt(D);
    cf.a0 = s;
    Int P = 0, Q = 1, a = s;
    Int p_prev = 1, p = s, q_prev = 0, q = 1;  // convergents p_k/q_k
    cf.pq_states.emplace_back(P, Q);
    for (;;) {
        P = a * Q - P;
        Q = (D - P * P) / Q;
        a = (s + P) / Q;
        cf.pq_states.emplace_back(P, Q);
        if (Q == 1) break;
        cf.period.push_back(a);
        Int np = a * p + p_prev, nq = a * q + q_prev;
        p_prev = p;
        p = np;
        q_prev = q;
        q = nq;
    }
    cf.period.push_back(a);  // a_L = 2 a0
    if (a != 2 * s) throw std::logic_error("cf_fundamental: period does not close with 2*a0");
    PellFundamental f{p, q, cf.period.size() % 2 == 0 ? 1 : -1};
    if (p * p - D * q * q != f.unit_norm) throw std::logic_error("cf_fundamental: convergent is not a unit");
    return {std::move(cf), std::move(f)};
}

const PellFundamental& fundamental_unit(const Int& D) {
    static std::mutex mu;
    static std::map<Int, PellFundamental> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(D);
        if (it != cache.end()) return it->second;
    }
    PellFundamental f = cf_fundamental(D).second;
    std::lock_guard lock(mu);
    return cache.emplace(D, std::move(f)).first->second;
}

unsigned bound_multiplier() {
    static const unsigned mult = [] {
        const char* env = std::getenv("PELLCRIT_BOUND_MULT");
        if (!env) return 1u;
        long v = std::strtol(env, nullptr, 10);
        return v >= 1 ? static_cast<unsigned>(v) : 1u;
    }();
    return mult;
}

Int orbit_search_bound(const Int& D, const Int& n, const PellFundamental& unit) {
    // D y^2 < |n| (x1 + y1 sqrt D)  <=>  D y^2 - |n| x1 < |n| y1 sqrt D
    Int an = abs(n);
    auto inside = [&](const Int& y) {
        Int lhs = D * y * y - an * unit.x1;
        if (lhs < 0) return true;
        return lhs * lhs < an * an * unit.y1 * unit.y1 * D;
    };
    // y1 sqrt D < x1 + 1, so the bound is below sqrt(|n| (2 x1 + 1) / D).
    Int y = isqrt(an * (2 * unit.x1 + 1) / D) + 1;
    while (y > 0 && !inside(y)) --y;
    return y;
}

Verdict solve_by_search(const Int& D, const Int& n, const Int& bound) {
    check_D(D);
    const PellFundamental& u = fundamental_unit(D);
    Verdict v;
    v.provenance = "oracle";
    std::vector<Int> minus_candidates;
    Int dy2 = 0, step = D, t, t2;  // D y^2 and D (2y + 1)
    const Int twoD = 2 * D;
    for (Int y = 0; y <= bound; ++y) {
        mpz_add(t.get_mpz_t(), dy2.get_mpz_t(), n.get_mpz_t());
        if (sgn(t) >= 0 && mpz_perfect_square_p(t.get_mpz_t())) {
            v.status = Status::Solvable;
            v.witness = std::pair<Int, Int>{isqrt(t), y};
            return v;
        }
        if (u.unit_norm == -1) {
            mpz_sub(t2.get_mpz_t(), dy2.get_mpz_t(), n.get_mpz_t());
            if (sgn(t2) >= 0 && mpz_perfect_square_p(t2.get_mpz_t())) neighbours(isqrt(t2), y, u, minus_candidates);
        }
        dy2 += step;
        step += twoD;
    }
    if (auto w = best_witness(D, n, minus_candidates)) {
        v.status = Status::Solvable;
        v.witness = w;
        return v;
    }
    v.status = Status::Unsolvable;
    v.reason = Reason::OrbitSearchExhausted;
    return v;
}

Verdict solve_by_classes(const Int& D, const Int& n) {
    check_D(D);
    const PellFundamental& u = fundamental_unit(D);
    const Int s = isqrt(D);
    std::vector<Int> ys;
    // f runs over f^2 | n
    std::vector<Int> fs{1};
    for (const auto& pp : factor(n).factors) {
        std::vector<Int> next;
        for (const Int& f : fs) {
            Int pk = 1;
            for (unsigned k = 0; 2 * k <= pp.exponent; ++k) {
                next.push_back(f * pk);
                pk *= pp.prime;
            }
        }
        fs = std::move(next);
    }
    for (const Int& f : fs) {
        const Int m = n / (f * f);
        const Int am = abs(m);
        if (m == 1) ys.push_back(0);
        for (Int z : sqrt_mod_all(D, am)) {
            if (2 * z > am) z -= am;
            // PQa from (z + sqrt D)/|m|
            Int P = z, Q = am;
            Int G_prev2 = -z, G_prev = am, B_prev2 = 1, B_prev = 0;
            std::set<std::pair<Int, Int>> seen;
            for (long i = 0;; ++i) {
                if (i >= 1 && (Q == 1 || Q == -1)) {
                    const Int& r = G_prev;
                    const Int& t = B_prev;
                    Int N = r * r - D * t * t;
                    if (N == m) {
                        ys.push_back(f * t);
                    } else if (N == -m && u.unit_norm == -1) {
                        neighbours(f * r, f * t, u, ys);
                    }
                    break;
                }
                if (!seen.insert({P, Q}).second) break;
                Int a = partial_quotient(P, Q, s);
                Int G = a * G_prev + G_prev2, B = a * B_prev + B_prev2;
                G_prev2 = G_prev;
                G_prev = G;
                B_prev2 = B_prev;
                B_prev = B;
                P = a * Q - P;
                Q = (D - P * P) / Q;
            }
        }
    }
    Verdict v;
    v.provenance = "oracle";
    if (auto w = best_witness(D, n, ys)) {
        v.status = Status::Solvable;
        v.witness = w;
        return v;
    }
    v.status = Status::Unsolvable;
    v.reason = Reason::ClassesExhausted;
    return v;
}

Verdict solve(const Int& D, const Int& n) {
    check_D(D);
    if (n == 0) throw std::invalid_argument("solve: n must be nonzero");
    const PellFundamental& u = fundamental_unit(D);
    Int bound = orbit_search_bound(D, n, u) * bound_multiplier();
    Verdict v = bound <= kMaxSearchBound ? solve_by_search(D, n, bound) : solve_by_classes(D, n);
    // Label global failures that are already local ones.
    for (const Int& l : prime_divisors(2 * D * n)) {
        if (local_solvable(D, n, l)) continue;
        if (v.solvable()) throw std::logic_error("solve: witness found despite a local obstruction");
        v.reason = Reason::LocalObstruction;
        v.obstruction_prime = l;
        break;
    }
    return v;
}

}  // namespace pellcrit
