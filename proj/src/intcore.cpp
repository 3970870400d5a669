#include "pellcrit/intcore.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace pellcrit {

Int Factorization::value() const {
    Int v = sign;
    for (const auto& pp : factors) v *= pow(pp.prime, pp.exponent);
    return v;
}

unsigned Factorization::exponent_of(const Int& p) const {
    for (const auto& pp : factors)
        if (pp.prime == p) return pp.exponent;
    return 0;
}

Int mod(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int powmod(const Int& base, const Int& exp, const Int& m) {
    Int r;
    Int b = mod(base, m);
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

unsigned valuation(const Int& n, const Int& l) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    Int m = n;
    unsigned v = 0;
    if (l == 2) return static_cast<unsigned>(mpz_scan1(m.get_mpz_t(), 0));
    while (mpz_divisible_p(m.get_mpz_t(), l.get_mpz_t())) {
        m /= l;
        ++v;
    }
    return v;
}

long valuation(const Rational& q, const Int& l) {
    if (q == 0) throw std::invalid_argument("valuation of zero");
    return static_cast<long>(valuation(Int(q.get_num()), l)) -
           static_cast<long>(valuation(Int(q.get_den()), l));
}

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int invmod(const Int& a, const Int& m) {
    Int r;
    Int am = mod(a, m);
    if (mpz_invert(r.get_mpz_t(), am.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("invmod: not invertible");
    return r;
}

Int pow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

namespace {

constexpr std::array<unsigned, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin(const Int& n, unsigned witness) {
    Int d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }
    Int x = powmod(Int(witness), d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

Int pollard_brent(const Int& n, unsigned long seed) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    Int c = seed;
    Int y = 2, x, q = 1, g = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                y = (y * y + c) % n;
                Int diff = x - y;
                q = q * abs(diff) % n;
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = (ys * ys + c) % n;
            Int diff = x - ys;
            g = gcd(abs(diff), n);
        } while (g == 1);
    }
    return g;
}

void factor_into(const Int& n, std::vector<Int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    if (is_square(n)) {
        Int r = isqrt(n);
        factor_into(r, out);
        factor_into(r, out);
        return;
    }
    for (unsigned long seed = 1;; ++seed) {
        Int d = pollard_brent(n, seed);
        if (d != n && d != 1) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
    }
}

// Roots of z^2 = a modulo p^e.
std::vector<Int> sqrt_mod_prime_power(const Int& a, const Int& p, unsigned e) {
    std::vector<Int> roots;
    Int pk = p;
    if (p == 2) {
        for (int z = 0; z < 2; ++z)
            if (mod(Int(z * z) - a, 2) == 0) roots.emplace_back(z);
    } else if (mod(a, p) == 0) {
        roots.emplace_back(0);
    } else if (auto r = sqrt_mod(a, p)) {
        roots.push_back(*r);
        if (*r != 0) roots.push_back(p - *r);
    }
    const bool hensel = p != 2 && mod(a, p) != 0;
    for (unsigned k = 1; k < e && !roots.empty(); ++k) {
        Int next_pk = pk * p;
        std::vector<Int> lifted;
        for (const Int& r : roots) {
            if (hensel) {
                Int t = mod(-((r * r - a) / pk) * invmod(2 * r, p), p);
                lifted.push_back(r + t * pk);
                continue;
            }
            for (Int t = 0; t < p; ++t) {
                Int c = r + t * pk;
                if (mod(c * c - a, next_pk) == 0) lifted.push_back(c);
            }
        }
        roots = std::move(lifted);
        pk = next_pk;
    }
    return roots;
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (unsigned p : kWitnesses) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        for (unsigned w : kWitnesses)
            if (!miller_rabin(n, w)) return false;
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Factorization factor(const Int& n) {
    if (n == 0) throw std::invalid_argument("factor: zero has no factorization");
    Factorization f;
    f.sign = n < 0 ? -1 : 1;
    Int m = abs(n);
    std::vector<Int> primes;
    for (unsigned long p = 2; p < 10000 && Int(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            primes.emplace_back(p);
            m /= p;
        }
    }
    factor_into(m, primes);
    std::sort(primes.begin(), primes.end());
    for (const Int& p : primes) {
        if (!f.factors.empty() && f.factors.back().prime == p)
            ++f.factors.back().exponent;
        else
            f.factors.push_back({p, 1});
    }
    return f;
}

std::optional<Int> sqrt_mod(const Int& a, const Int& p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("sqrt_mod: modulus must be an odd prime");
    Int n = mod(a, p);
    if (n == 0) return Int(0);
    if (mpz_legendre(n.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
    // Tonelli-Shanks
    Int q = p - 1;
    unsigned s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    Int c = powmod(z, q, p);
    Int r = powmod(n, (q + 1) / 2, p);
    Int t = powmod(n, q, p);
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        Int tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (unsigned j = 0; j + 1 < m - i; ++j) b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    if (2 * r > p) r = p - r;
    return r;
}

std::vector<Int> sqrt_mod_all(const Int& a, const Int& m) {
    if (m < 1) throw std::invalid_argument("sqrt_mod_all: modulus must be positive");
    std::vector<Int> acc{Int(0)};
    Int modulus = 1;
    if (m == 1) return acc;
    for (const auto& pp : factor(m).factors) {
        Int pe = pow(pp.prime, pp.exponent);
        auto local = sqrt_mod_prime_power(a, pp.prime, pp.exponent);
        if (local.empty()) return {};
        std::vector<Int> next;
        next.reserve(acc.size() * local.size());
        Int inv = invmod(modulus, pe);
        for (const Int& x : acc)
            for (const Int& y : local)
                next.push_back(x + modulus * mod((y - x) * inv, pe));
        modulus *= pe;
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    return acc;
}

Int squarefree_part(const Int& n) {
    Int core = n < 0 ? -1 : 1;
    for (const auto& pp : factor(n).factors)
        if (pp.exponent % 2) core *= pp.prime;
    return core;
}

std::vector<Int> prime_divisors(const Int& n) {
    std::vector<Int> out;
    for (const auto& pp : factor(n).factors) out.push_back(pp.prime);
    return out;
}

}  // namespace pellcrit
