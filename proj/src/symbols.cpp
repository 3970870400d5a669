#include "pellcrit/symbols.hpp"

#include "pellcrit/quadring.hpp"

#include <algorithm>
#include <stdexcept>

namespace pellcrit {

Place Place::prime(Int p) {
    if (!is_prime(p)) throw std::invalid_argument("Place::prime: not a prime");
    Place v;
    v.real_ = false;
    v.p_ = std::move(p);
    return v;
}

const Int& Place::prime() const {
    if (real_) throw std::logic_error("Place::prime on the real place");
    return p_;
}

int jacobi(const Int& a, const Int& m) {
    if (m <= 0 || mpz_even_p(m.get_mpz_t())) throw std::invalid_argument("jacobi: modulus must be odd and positive");
    Int r = mod(a, m);
    return mpz_jacobi(r.get_mpz_t(), m.get_mpz_t());
}

int quartic_residue(const Int& a, const Int& p) {
    if (mod(p, 4) != 1 || !is_prime(p)) throw std::invalid_argument("quartic_residue: p must be a prime = 1 mod 4");
    if (jacobi(a, p) != 1) throw std::domain_error("quartic_residue: a is not a nonzero square mod p");
    Int e = powmod(a, (p - 1) / 4, p);
    if (e == 1) return 1;
    if (e == p - 1) return -1;
    throw std::logic_error("quartic_residue: Euler criterion produced a non-sign");
}

int quartic_2_of_d(const Factorization& d) {
    if (d.sign < 0) throw std::invalid_argument("quartic_2_of_d: d must be positive");
    int acc = 1;
    for (const auto& pp : d.factors) {
        if (mod(pp.prime, 8) != 1) throw std::invalid_argument("quartic_2_of_d: prime factor not 1 mod 8");
        if (pp.exponent % 2) acc *= quartic_residue(2, pp.prime);
    }
    return acc;
}

int burde_product(const Int& p, const Int& q) {
    if (p == q) throw std::invalid_argument("burde_product: primes must be distinct");
    if (mod(p, 4) != 1 || mod(q, 4) != 1 || !is_prime(p) || !is_prime(q))
        throw std::invalid_argument("burde_product: p, q must be primes = 1 mod 4");
    if (jacobi(q, p) != 1) throw std::domain_error("burde_product: requires (q/p) = 1");
    auto [a, b] = two_squares_prime(p);
    auto [c, d] = two_squares_prime(q);
    int sign = mod((p - 1) / 4, 2) == 0 ? 1 : -1;
    return sign * jacobi(a * d - b * c, p);
}

namespace {

// Unit part of a rational at l, as an integer congruent to it modulo any
// power of l we care about for symbol purposes (num * den has the same
// Legendre symbol and, at l = 2, the same class mod 8).
Int unit_residue(const Rational& q, const Int& l) {
    Int num = q.get_num(), den = q.get_den();
    while (mpz_divisible_p(num.get_mpz_t(), l.get_mpz_t())) num /= l;
    while (mpz_divisible_p(den.get_mpz_t(), l.get_mpz_t())) den /= l;
    return num * den;
}

}  // namespace

int hilbert_q(const Rational& a, const Rational& b, const Place& v) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert_q: arguments must be nonzero");
    if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;
    const Int& l = v.prime();
    long alpha = valuation(a, l), beta = valuation(b, l);
    Int u = unit_residue(a, l), w = unit_residue(b, l);
    if (l == 2) {
        long u8 = mod(u, 8).get_si(), w8 = mod(w, 8).get_si();
        long eps_u = ((u8 - 1) / 2) & 1, eps_w = ((w8 - 1) / 2) & 1;
        long om_u = ((u8 * u8 - 1) / 8) & 1, om_w = ((w8 * w8 - 1) / 8) & 1;
        long e = eps_u * eps_w + (alpha & 1) * om_w + (beta & 1) * om_u;
        return (e & 1) ? -1 : 1;
    }
    int s = 1;
    if ((alpha & 1) && (beta & 1) && mod(l, 4) == 3) s = -s;
    if (beta & 1) s *= jacobi(u, l);
    if (alpha & 1) s *= jacobi(w, l);
    return s;
}

std::vector<Place> relevant_places(const Rational& a, const Rational& b) {
    Int prod = 2 * Int(a.get_num()) * a.get_den() * b.get_num() * b.get_den();
    std::vector<Place> out;
    for (const Int& p : prime_divisors(prod)) out.push_back(Place::prime(p));
    out.push_back(Place::real());
    return out;
}

}  // namespace pellcrit
