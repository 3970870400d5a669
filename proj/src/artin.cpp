#include "pellcrit/artin.hpp"

#include "pellcrit/pellsolver.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace pellcrit {

namespace {

// v_l(x), or cap when x = 0.
long val_or_cap(const Int& x, const Int& l, long cap) { return x == 0 ? cap : static_cast<long>(valuation(x, l)); }

// All g > 0 with g^2 | n.
std::vector<Int> square_divisors(const Int& n) {
    std::vector<Int> out{1};
    for (const auto& pp : factor(n).factors) {
        std::vector<Int> next;
        for (const Int& g : out) {
            Int pk = 1;
            for (unsigned k = 0; 2 * k <= pp.exponent; ++k, pk *= pp.prime) next.push_back(g * pk);
        }
        out = std::move(next);
    }
    return out;
}

std::optional<Int> class_root(const Int& D, const AdelicChoice& c, const Int& l, unsigned variant) {
    unsigned k = valuation(c.m, l);
    Int lk = pow(l, k);
    if (variant > 0) {
        Int start = c.z + Int(variant) * lk;
        if (auto r = padic_quadratic_search(1, 0, -D, l, start, k + 1, c.m)) return r;
    }
    return padic_quadratic_search(1, 0, -D, l, mod(c.z, lk), k, c.m);
}

bool realizable(const Int& D, const AdelicChoice& c) {
    for (const Int& l : prime_divisors(2 * D * c.m)) {
        if (mod(c.m, l) == 0) {
            if (!class_root(D, c, l, 0)) return false;
        } else if (!local_solvable(D, c.m, l)) {
            return false;
        }
    }
    return true;
}

}  // namespace

ClassImages class_images_of_norm(const Int& D, const Int& n) {
    if (n == 0) throw std::invalid_argument("class_images_of_norm: n must be nonzero");
    ClassImages out;
    for (const Int& l : prime_divisors(2 * D * n)) {
        if (!local_solvable(D, n, l)) {
            out.local_failure = true;
            out.failing_prime = l;
            return out;
        }
    }
    unsigned split = 0;
    for (const Int& l : prime_divisors(n))
        if (splitting_type(D, l) == SplittingType::Split) ++split;
    if (split > kMaxSplitPrimes) throw std::domain_error("class_images_of_norm: too many split primes");
    for (const Int& g : square_divisors(n)) {
        const Int m = n / (g * g);
        const Int am = abs(m);
        std::vector<Int> zs = am == 1 ? std::vector<Int>{0} : sqrt_mod_all(D, am);
        for (const Int& z : zs) {
            AdelicChoice c{g, m, z, Form{am, 2 * z, (z * z - D) / am}, false};
            if (gcd(gcd(c.form.a, c.form.b), c.form.c) != 1) continue;
            if (!realizable(D, c)) continue;
            c.principal = is_wide_principal(c.form);
            out.choices.push_back(std::move(c));
        }
    }
    return out;
}

long choice_order(const AdelicChoice& c, const PlaceOfE& v, const Int& D) {
    (void)D;
    long vg = valuation(c.g, v.l);
    long k = valuation(c.m, v.l);
    switch (v.type) {
        case SplittingType::Split:
            if (k == 0) return vg;
            return vg + std::min<long>(k, val_or_cap(c.z + v.root, v.l, v.precision));
        case SplittingType::Inert:
            return vg + k / 2;
        case SplittingType::Ramified:
            return 2 * vg + k;
    }
    return 0;
}

QuadElem local_class_element(const Int& D, const AdelicChoice& c, const Int& l, unsigned variant) {
    unsigned P = 40 + valuation(Int(4 * D * c.m * c.g), l);
    if (mod(c.m, l) == 0) {
        auto r = class_root(D, c, l, variant);
        if (!r) throw std::domain_error("local_class_element: choice has no point at l");
        // g S / (r^2 - D) * (r + sqrt D) with S^2 = m (r^2 - D)
        const Int w = *r * *r - D;
        Int S = sqrt_padic(w * c.m, l, P + valuation(w, l));
        Rational f(c.g * S, w);
        f.canonicalize();
        return {f * Rational(*r), f};
    }
    std::optional<LocalPoint> pt;
    if (variant > 0) {
        if (auto y = padic_quadratic_search(D, 0, c.m, l, Int(variant), 1, 0)) {
            Int t = D * *y * *y + c.m;
            if (t != 0 && is_square_ql(Rational(t), l)) pt = LocalPoint{l, P, sqrt_padic(t, l, P), *y, true};
        }
    }
    if (!pt) pt = local_point(D, c.m, l, P);
    if (!pt) throw std::domain_error("local_class_element: choice has no point at l");
    return {Rational(c.g * pt->x), Rational(c.g * pt->y)};
}

int psi_theta(const Int& D, const ThetaData& theta, const AdelicChoice& c, const Int& n, unsigned variant) {
    if (c.g * c.g * c.m != n) throw std::invalid_argument("psi_theta: choice does not have norm n");
    const QuadElem th = theta_element(theta);
    int prod = 1;
    for (const Int& l : prime_divisors(2 * theta.ell)) {
        QuadElem xi = local_class_element(D, c, l, variant);
        for (const PlaceOfE& v : places_over(D, l)) prod *= hilbert_ev(xi, th, v, D);
    }
    for (const Int& l : prime_divisors(n)) {
        if (mod(2 * theta.ell, l) == 0) continue;
        for (const PlaceOfE& v : places_over(D, l))
            if (choice_order(c, v, D) % 2 != 0 && !splits_in_theta(D, theta, v)) prod = -prod;
    }
    return prod;
}

const std::vector<ThetaData>& theta_candidates(const Int& D) {
    static std::mutex mu;
    static std::map<Int, std::unique_ptr<std::vector<ThetaData>>> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(D);
        if (it != cache.end()) return *it->second;
    }
    QuadOrderInfo info = classify_order(D);
    auto out = std::make_unique<std::vector<ThetaData>>();
    std::vector<Int> ells;
    if (info.family == QuadOrderInfo::Family::TwoD) ells = {2};
    if (info.family == QuadOrderInfo::Family::PQ) ells = {info.q, info.p};
    for (const Int& ell : ells) {
        try {
            out->push_back(find_theta_data(D, ell));
        } catch (const std::domain_error&) {
        }
    }
    std::lock_guard lock(mu);
    return *cache.emplace(D, std::move(out)).first->second;
}

Verdict joint_artin_decide(const Int& D, const Int& n) {
    if (n == 0) throw std::invalid_argument("joint_artin_decide: n must be nonzero");
    QuadOrderInfo info = classify_order(D);
    if (info.family == QuadOrderInfo::Family::Other) {
        Verdict v = solve(D, n);
        v.provenance = "oracle-fallback";
        return v;
    }
    const auto& thetas = theta_candidates(D);
    if (thetas.empty()) throw std::logic_error("joint_artin_decide: no Theta data for D");
    Verdict v;
    v.provenance = "artin";
    ClassImages images = class_images_of_norm(D, n);
    if (images.local_failure) {
        v.status = Status::Unsolvable;
        v.reason = Reason::LocalObstruction;
        v.obstruction_prime = images.failing_prime;
        return v;
    }
    bool found = false;
    for (const AdelicChoice& c : images.choices) {
        if (!c.principal) continue;
        int psi = psi_theta(D, thetas.front(), c, n);
        for (std::size_t i = 1; i < thetas.size(); ++i)
            if (psi_theta(D, thetas[i], c, n) != psi)
                throw std::logic_error("joint_artin_decide: Theta choices disagree");
        if (psi == 1) {
            found = true;
            break;
        }
    }
    if (!found) {
        v.status = Status::Unsolvable;
        v.reason = Reason::ArtinCondition;
        return v;
    }
    v.status = Status::Solvable;
    v.reason = Reason::Criterion;
    Verdict oracle = solve(D, n);
    if (oracle.solvable()) v.witness = oracle.witness;
    return v;
}

}  // namespace pellcrit
