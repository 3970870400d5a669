#include "pellcrit/localanalysis.hpp"

#include "pellcrit/symbols.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace pellcrit {

namespace {

constexpr long kInfinity = std::numeric_limits<long>::max() / 4;

long val_or_inf(const Int& x, const Int& l) { return x == 0 ? kInfinity : static_cast<long>(valuation(x, l)); }

// Unit part of a nonzero integer at l.
Int unit_part(const Int& x, const Int& l) {
    Int u = x;
    while (mpz_divisible_p(u.get_mpz_t(), l.get_mpz_t())) u /= l;
    return u;
}

bool unit_is_square(const Int& u, const Int& l) {
    if (l == 2) return mod(u, 8) == 1;
    return jacobi(u, l) == 1;
}

}  // namespace

Int sqrt_padic(const Int& a, const Int& l, unsigned precision) {
    if (a == 0) throw std::invalid_argument("sqrt_padic: zero");
    unsigned v = valuation(a, l);
    if (v % 2) throw std::domain_error("sqrt_padic: odd valuation");
    Int u = unit_part(a, l);
    if (!unit_is_square(u, l)) throw std::domain_error("sqrt_padic: not a square");
    unsigned P = std::max(precision, 4u);
    Int lp = pow(l, P);
    Int r;
    if (l == 2) {
        r = 1;
        for (unsigned k = 3; k < P + 1; ++k) {
            Int pk1 = pow(Int(2), k + 1);
            if (mod(r * r - u, pk1) != 0) r += pow(Int(2), k - 1);
        }
        r = mod(r, lp);
    } else {
        r = *sqrt_mod(u, l);
        for (unsigned prec = 1; prec < P; prec *= 2) r = mod(r - (r * r - u) * invmod(2 * r, lp), lp);
    }
    return pow(l, v / 2) * r;
}

bool is_square_ql(const Rational& q, const Int& l) {
    if (q == 0) throw std::invalid_argument("is_square_ql: zero");
    if (valuation(q, l) % 2 != 0) return false;
    Int u = unit_part(Int(q.get_num()), l) * unit_part(Int(q.get_den()), l);
    return unit_is_square(u, l);
}

std::optional<Int> padic_quadratic_search(const Int& A, const Int& B, const Int& C, const Int& l,
                                          const Int& start, unsigned k, const Int& target) {
    const long margin = l == 2 ? 3 : 1;
    const long vA = val_or_inf(A, l);
    const long vc = target == 0 ? 0 : static_cast<long>(valuation(target, l));
    std::function<std::optional<Int>(const Int&, unsigned)> visit = [&](const Int& t0, unsigned depth) -> std::optional<Int> {
        Int g0 = (A * t0 + B) * t0 + C;
        Int d = 2 * A * t0 + B;
        long vd = val_or_inf(d, l);
        long kk = static_cast<long>(depth);
        long W = std::min(vd == kInfinity ? kInfinity : vd + kk, vA == kInfinity ? kInfinity : vA + 2 * kk);
        long V = val_or_inf(g0, l);
        if (target == 0) {
            if (g0 == 0) return t0;
            if (W >= V + margin) return is_square_ql(Rational(g0), l) ? std::optional<Int>(t0) : std::nullopt;
            // Hensel: a simple root lies in this residue class.
            if (vd != kInfinity && V > 2 * vd) return t0;
        } else {
            if (V != kInfinity && W >= V + margin) {
                if (V == vc && is_square_ql(Rational(g0, target), l)) return t0;
                return std::nullopt;
            }
            if (V > vc && W > vc) return std::nullopt;
        }
        Int step = pow(l, depth);
        for (Int i = 0; i < l; ++i)
            if (auto hit = visit(t0 + i * step, depth + 1)) return hit;
        return std::nullopt;
    };
    return visit(start, k);
}

bool local_solvable(const Int& D, const Int& n, const Int& l) {
    if (n == 0) throw std::invalid_argument("local_solvable: n must be nonzero");
    if (l != 2 && mod(D * n, l) != 0) return true;
    return padic_quadratic_search(D, 0, n, l, 0, 0, 0).has_value();
}

std::optional<LocalPoint> local_point(const Int& D, const Int& n, const Int& l, unsigned precision) {
    auto y = padic_quadratic_search(D, 0, n, l, 0, 0, 0);
    if (!y) return std::nullopt;
    LocalPoint pt;
    pt.l = l;
    pt.precision = std::max<unsigned>(precision, valuation(Int(4 * D * n), l) + 5);
    Int lp = pow(l, pt.precision);
    Int g = D * *y * *y + n;
    if (g != 0 && is_square_ql(Rational(g), l)) {
        pt.y = *y;
        pt.x = mod(sqrt_padic(g, l, pt.precision), lp);
        pt.liftable = true;
    } else {
        // y^2 = -n/D has a root in Z_l; take x = 0.
        Int vD = valuation(D, l);
        Int S = sqrt_padic(-n * D, l, pt.precision + vD.get_ui() + 2);
        Int lv = pow(l, vD.get_ui());
        if (!mpz_divisible_p(S.get_mpz_t(), lv.get_mpz_t())) throw std::logic_error("local_point: root not integral");
        pt.y = mod((S / lv) * invmod(D / lv, lp), lp);
        pt.x = 0;
    }
    if (mod(pt.x * pt.x - D * pt.y * pt.y - n, lp) != 0) throw std::logic_error("local_point: congruence fails");
    return pt;
}

SquareClass2 square_class_2(const Rational& u) {
    if (u == 0) throw std::invalid_argument("square_class_2: zero");
    SquareClass2 sc;
    sc.odd_valuation = valuation(u, Int(2)) % 2 != 0;
    Int w = unit_part(Int(u.get_num()), 2) * unit_part(Int(u.get_den()), 2);
    static constexpr int kUnitRep[8] = {0, 1, 0, -5, 0, 5, 0, -1};
    int rep = kUnitRep[mod(w, 8).get_si()];
    sc.representative = sc.odd_valuation ? 2 * rep : rep;
    return sc;
}

// ---------------------------------------------------------------------------
// Places of E

std::vector<PlaceOfE> places_over(const Int& D, const Int& l) {
    if (!is_prime(l)) throw std::invalid_argument("places_over: l must be prime");
    PlaceOfE v;
    v.l = l;
    v.type = splitting_type(D, l);
    if (v.type != SplittingType::Split) return {v};
    v.precision = 48;
    v.root = mod(sqrt_padic(D, l, v.precision), pow(l, v.precision));
    PlaceOfE w = v;
    w.root = mod(-v.root, pow(l, v.precision));
    return {v, w};
}

namespace {

Int residue(const Rational& q, const Int& l) {
    return mod(Int(q.get_num()) * invmod(Int(q.get_den()), l), l);
}

// sqrt D at v to l-adic precision P, on the same branch as v.root.
Int split_root(const PlaceOfE& v, const Int& D, unsigned P) {
    Int lp = pow(v.l, P);
    Int r = mod(sqrt_padic(D, v.l, P), lp);
    Int lv = pow(v.l, std::min(P, v.precision));
    if (mod(r - v.root, lv) != 0) r = mod(-r, lp);
    return r;
}

}  // namespace

namespace {

// Image of x in Q_l at a split place, accurate enough that its square class
// is that of the true image.
Rational split_image(const QuadElem& x, const PlaceOfE& v, const Int& D) {
    if (x.b == 0) return x.a;
    const long margin = v.l == 2 ? 3 : 1;
    for (unsigned P = std::max(v.precision, 16u);; P *= 2) {
        if (P > 1u << 14) throw std::logic_error("split_image: precision exhausted");
        Int s = split_root(v, D, P);
        Rational img = x.a + x.b * Rational(s);
        long err = static_cast<long>(P) + valuation(x.b, v.l);
        if (img != 0 && valuation(img, v.l) + margin <= err) return img;
    }
}

// l^e for any integer e.
Rational lpow(const Int& l, long e) {
    Rational r(pow(l, static_cast<unsigned long>(std::labs(e))));
    return e >= 0 ? r : 1 / r;
}

// Valuation and unit character at an odd nonsplit place.
struct TameData {
    long val;
    int chi;
};

TameData tame(const QuadElem& x, const PlaceOfE& v, const Int& D) {
    const Int& l = v.l;
    Rational N = qnorm(x, D);
    if (N == 0) throw std::invalid_argument("hilbert_ev: zero argument");
    TameData t{};
    if (v.type == SplittingType::Inert) {
        // u is a square in F_{l^2} iff its norm is a square in F_l.
        t.val = valuation(N, l) / 2;
        t.chi = jacobi(residue(N / lpow(l, 2 * t.val), l), l);
        return t;
    }
    // Ramified: pi = sqrt k with D = f^2 k.
    Int k = squarefree_part(D);
    Int f = isqrt(D / k);
    QuadElem pi{0, Rational(1, f)};
    t.val = valuation(N, l);
    QuadElem u = x;
    QuadElem step = t.val >= 0 ? qinv(pi, D) : pi;
    for (long i = 0; i < std::labs(t.val); ++i) u = qmul(u, step, D);
    t.chi = jacobi(residue(u.a, l), l);
    return t;
}

int tame_symbol(const TameData& a, const TameData& b, const PlaceOfE& v) {
    int chi_m1 = v.type == SplittingType::Inert ? 1 : jacobi(v.l - 1, v.l);
    int s = 1;
    if ((a.val * b.val) % 2 != 0) s *= chi_m1;
    if (b.val % 2 != 0) s *= a.chi;
    if (a.val % 2 != 0) s *= b.chi;
    return s;
}

}  // namespace
namespace {

// Q_2(sqrt k) for a squarefree k that is not 1 mod 8; elements in the basis
// 1, sqrt k.
class Dyadic {
public:
    explicit Dyadic(const Int& D) : k_(squarefree_part(D)), f_(isqrt(D / k_)) {
        inert_ = mod(k_, 8) == 5;
        e_ = inert_ ? 1 : 2;
        QuadElem omega = inert_ ? QuadElem{Rational(1, 2), Rational(1, 2)} : QuadElem{0, 1};
        if (inert_) pi_ = {2, 0};
        else if (mod(k_, 2) == 0) pi_ = {0, 1};
        else pi_ = {1, 1};
        digits_ = {{0, 0}, {1, 0}};
        if (inert_) {
            digits_.push_back(omega);
            digits_.push_back(qadd(omega, {1, 0}));
        }
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b) {
                QuadElem w = qadd({a, 0}, qmul({b, 0}, omega, k_));
                if (!w.is_zero() && val(w) == 0) squares_.push_back(qmul(w, w, k_));
            }
    }

    QuadElem from_e(const QuadElem& x) const { return {x.a, x.b * Rational(f_)}; }

    long val(const QuadElem& x) const {
        long n = valuation(qnorm(x, k_), Int(2));
        return inert_ ? n / 2 : n;
    }

    QuadElem pi_pow(long e) const {
        QuadElem base = e >= 0 ? pi_ : qinv(pi_, k_);
        QuadElem r{1, 0};
        for (long i = 0; i < std::labs(e); ++i) r = qmul(r, base, k_);
        return r;
    }

    bool is_square(const QuadElem& x) const {
        long v = val(x);
        if (v % 2 != 0) return false;
        QuadElem u = qmul(x, pi_pow(-v), k_);
        for (const QuadElem& w2 : squares_) {
            QuadElem diff = qsub(u, w2);
            if (diff.is_zero() || val(diff) >= 2 * e_ + 1) return true;
        }
        return false;
    }

    // Some t in t0 + pi^depth O_K with alpha t^2 + beta a square (or zero).
    bool search(const QuadElem& alpha, const QuadElem& beta, const QuadElem& t0, long depth) const {
        QuadElem g0 = qadd(qmul(alpha, qmul(t0, t0, k_), k_), beta);
        if (g0.is_zero()) return true;
        QuadElem d = qmul({2, 0}, qmul(alpha, t0, k_), k_);
        long V = val(g0);
        long W = val(alpha) + 2 * depth;
        if (!d.is_zero()) {
            long vd = val(d);
            W = std::min(W, vd + depth);
            if (V > 2 * vd) return true;
        }
        if (W >= V + 2 * e_ + 1) return is_square(g0);
        if (depth > 4096) throw std::logic_error("hilbert_ev: precision exhausted");
        QuadElem step = pi_pow(depth);
        for (const QuadElem& dig : digits_)
            if (search(alpha, beta, qadd(t0, qmul(dig, step, k_)), depth + 1)) return true;
        return false;
    }

    int symbol(const QuadElem& alpha, const QuadElem& beta) const {
        if (is_square(alpha) || is_square(beta)) return 1;
        QuadElem r = qmul(qsub({0, 0}, beta), qinv(alpha, k_), k_);
        if (is_square(r)) return 1;
        if (search(alpha, beta, {0, 0}, 0)) return 1;
        if (search(beta, alpha, {0, 0}, 1)) return 1;
        return -1;
    }

private:
    Int k_, f_;
    bool inert_ = false;
    long e_ = 2;
    QuadElem pi_;
    std::vector<QuadElem> digits_;
    std::vector<QuadElem> squares_;
};

void check_nonzero(const QuadElem& x) {
    if (x.is_zero()) throw std::invalid_argument("hilbert_ev: zero argument");
}

}  // namespace

int hilbert_ev(const QuadElem& alpha, const QuadElem& beta, const PlaceOfE& v, const Int& D) {
    check_nonzero(alpha);
    check_nonzero(beta);
    if (v.type == SplittingType::Split)
        return hilbert_q(split_image(alpha, v, D), split_image(beta, v, D), Place::prime(v.l));
    if (v.l != 2) return tame_symbol(tame(alpha, v, D), tame(beta, v, D), v);
    Dyadic K(D);
    return K.symbol(K.from_e(alpha), K.from_e(beta));
}

bool is_square_ev(const QuadElem& u, const PlaceOfE& v, const Int& D) {
    check_nonzero(u);
    if (v.type == SplittingType::Split) return is_square_ql(split_image(u, v, D), v.l);
    if (v.l != 2) {
        TameData t = tame(u, v, D);
        return t.val % 2 == 0 && t.chi == 1;
    }
    Dyadic K(D);
    return K.is_square(K.from_e(u));
}

// ---------------------------------------------------------------------------
// The Theta-extension

namespace {

// D = 2d, d a squarefree product of primes = 1 mod 8.
void require_two_d(const Int& D) {
    bool ok = D > 2 && mod(D, 2) == 0;
    if (ok)
        for (const auto& pp : factor(D / 2).factors)
            if (pp.exponent != 1 || mod(pp.prime, 8) != 1) ok = false;
    if (!ok) throw std::invalid_argument("theta_character: D is not 2d with d a product of primes = 1 mod 8");
}

}  // namespace

CharacterTable theta_character(const Int& D, const ThetaData& theta) {
    require_two_d(D);
    const PlaceOfE v = places_over(D, 2).front();
    const QuadElem th = theta_element(theta);
    auto chi = [&](int c) {
        auto pt = local_point(D, c, 2, 40);
        if (!pt) throw std::logic_error("theta_character: no local point of norm " + std::to_string(c));
        return hilbert_ev({Rational(pt->x), Rational(pt->y)}, th, v, D);
    };
    CharacterTable t;
    t.chi_1 = chi(1);
    t.chi_neg1 = chi(-1);
    t.chi_2 = chi(2);
    t.chi_neg2 = chi(-2);
    return t;
}

CharacterTable theta_character_closed_form(const Int& D) {
    require_two_d(D);
    Int d = D / 2;
    CharacterTable t;
    t.chi_2 = mod(d, 16) == 1 ? 1 : -1;
    t.chi_neg2 = quartic_2_of_d(factor(d));
    t.chi_neg1 = t.chi_2 * t.chi_neg2;
    return t;
}

bool splits_in_theta(const Int& D, const ThetaData& theta, const PlaceOfE& v) {
    if (mod(2 * theta.ell, v.l) == 0) throw std::invalid_argument("splits_in_theta: place over 2 * ell");
    const QuadElem th = theta_element(theta);
    long val;
    int chi;
    if (v.type == SplittingType::Split) {
        Rational img = split_image(th, v, D);
        val = valuation(img, v.l);
        chi = jacobi(residue(img / lpow(v.l, val), v.l), v.l);
    } else {
        TameData t = tame(th, v, D);
        val = t.val;
        chi = t.chi;
    }
    if (val % 2 != 0) throw std::invalid_argument("splits_in_theta: place ramifies in Theta");
    return chi == 1;
}

}  // namespace pellcrit
