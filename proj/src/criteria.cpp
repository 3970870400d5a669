#include "pellcrit/criteria.hpp"

#include "pellcrit/pellsolver.hpp"
#include "pellcrit/quadring.hpp"
#include "pellcrit/symbols.hpp"

#include <stdexcept>

namespace pellcrit {

namespace {

Verdict criterion_verdict(const Int& D, const Int& n, const char* provenance) {
    Verdict v;
    v.status = Status::Solvable;
    v.reason = Reason::Criterion;
    v.provenance = provenance;
    Verdict o = solve(D, n);
    if (o.solvable()) v.witness = o.witness;
    return v;
}

Classification by_criterion(const Int& D, const Int& target, const char* provenance) {
    return {target, criterion_verdict(D, target, provenance)};
}

Classification by_oracle(const Int& D, const std::vector<Int>& targets) {
    for (const Int& t : targets) {
        Verdict v = solve(D, t);
        if (v.solvable()) return {t, v};
    }
    Verdict v;
    v.provenance = "oracle";
    return {std::nullopt, v};
}

bool all_primes_1_mod_8(const Factorization& f) {
    for (const auto& pp : f.factors)
        if (pp.exponent != 1 || mod(pp.prime, 8) != 1) return false;
    return true;
}

}  // namespace

Classification classify_pq(const Int& p, const Int& q) {
    if (p == q || !is_prime(p) || !is_prime(q) || p == 2 || q == 2)
        throw std::invalid_argument("classify_pq: need distinct odd primes");
    const Int D = p * q;
    if (mod(p, 4) == 3 || mod(q, 4) == 3) return by_oracle(D, {p, q, -1});
    if (jacobi(p, q) == -1) return by_criterion(D, -1, "quadratic-nonresidue");
    const int pq4 = quartic_residue(p, q), qp4 = quartic_residue(q, p);
    if (pq4 == -1 && qp4 == -1) return by_criterion(D, -1, "quartic-both-negative");
    if (pq4 * qp4 == -1) {
        Int first = qp4 == 1 ? p : q;   // (q/p)_4 = 1 => p
        Int second = pq4 == 1 ? q : p;  // roles exchanged
        if (first != second) throw std::logic_error("classify_pq: orderings disagree");
        return by_criterion(D, first, "scholz-brown");
    }
    return by_oracle(D, {-1, p, q});
}

Classification classify_2p(const Int& p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("classify_2p: need an odd prime");
    const Int D = 2 * p;
    switch (mod(p, 8).get_ui()) {
        case 3: return by_criterion(D, -2, "classical");
        case 7: return by_criterion(D, 2, "classical");
        case 5: return by_criterion(D, -1, "classical");
        default: break;
    }
    const int two4 = quartic_residue(2, p);
    if (mod(p, 16) == 9) return by_criterion(D, two4 == -1 ? -1 : -2, "pall");
    if (two4 == -1) return by_criterion(D, 2, "pall");
    return by_oracle(D, {-1, 2, -2});
}

N221Data n221_data(const Int& n) {
    if (n == 0) throw std::invalid_argument("n221_data: n must be nonzero");
    N221Data data;
    Factorization f = factor(n);
    data.s0 = f.sign < 0 ? 1 : 0;
    for (const auto& pp : f.factors) {
        if (pp.prime == 2) data.s1 = pp.exponent;
        else if (pp.prime == 13) data.s2 = pp.exponent;
        else if (pp.prime == 17) data.s3 = pp.exponent;
        else data.P.push_back(pp);
    }
    for (const auto& pp : data.P) {
        const Int& p = pp.prime;
        int j13 = jacobi(13, p), j17 = jacobi(17, p);
        if (j13 == -1 && j17 == -1) data.P1.push_back(p);
        if (j13 * j17 == -1) data.P2.push_back(p);
        else data.n1 *= pow(p, pp.exponent);
        if (j13 == 1 && j17 == 1) {
            // x^2 = 119 +- 8 sqrt 221 mod p
            Int s = *sqrt_mod(221, p);
            for (const Int& t : {mod(119 + 8 * s, p), mod(119 - 8 * s, p)}) {
                if (t == 0 || jacobi(t, p) == 1) {
                    data.P3.push_back(p);
                    break;
                }
            }
        }
    }
    return data;
}

Verdict decide_221(const Int& n, Reading221 reading) {
    N221Data data = n221_data(n);
    auto in = [](const std::vector<Int>& set, const Int& p) {
        for (const Int& x : set)
            if (x == p) return true;
        return false;
    };
    bool cond1 = data.s1 % 2 == 0 && jacobi(data.n1, 17) == 1;
    for (const auto& pp : data.P)
        if (pp.exponent % 2 != 0 && jacobi(221, pp.prime) != 1) cond1 = false;
    bool cond2 = !data.P1.empty();
    if (cond1 && !cond2) {
        int lhs = 1;
        for (const auto& pp : data.P) {
            bool odd = pp.exponent % 2 != 0;
            bool p3 = in(data.P3, pp.prime) && !(reading.p3_outside_p2 && in(data.P2, pp.prime));
            if (reading.p3_complement) p3 = !p3 && !in(data.P2, pp.prime);
            if (odd && p3) lhs = -lhs;
            if (odd && !in(data.P2, pp.prime)) lhs *= jacobi(pp.prime - 1, pp.prime);
        }
        unsigned e = data.s0 + data.s2 + (reading.include_s3 ? data.s3 : 0);
        int rhs = (e % 2 ? -1 : 1) * quartic_residue(data.n1, 17);
        cond2 = lhs == rhs;
    }
    if (cond1 && cond2) return criterion_verdict(221, n, "example-221");
    Verdict v;
    v.status = Status::Unsolvable;
    v.reason = Reason::Criterion;
    v.provenance = "example-221";
    return v;
}

std::optional<Verdict> prop_checks(const Int& d, const Int& n) {
    if (d <= 0) return std::nullopt;
    Verdict v;
    v.status = Status::Unsolvable;
    v.reason = Reason::Criterion;
    if (n == 2) {
        if (mod(d, 16) != 9) return std::nullopt;
        v.provenance = "d9mod16-obstruction";
        return v;
    }
    if (n != -1 && n != -2) return std::nullopt;
    Factorization f = factor(d);
    if (!all_primes_1_mod_8(f)) return std::nullopt;
    if (n == -1 && has_pm3_two_squares(2 * d)) {
        v.provenance = "pm3-two-squares";
        return v;
    }
    if (n == -2 && quartic_2_of_d(f) == -1) {
        v.provenance = "quartic-2";
        return v;
    }
    return std::nullopt;
}

}  // namespace pellcrit
