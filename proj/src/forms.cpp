#include "pellcrit/forms.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace pellcrit {

namespace {

void check_form(const Form& f) {
    Int disc = f.discriminant();
    if (disc <= 0 || is_square(disc)) throw std::invalid_argument("form must be indefinite with non-square discriminant");
}

Form negate(const Form& f) { return {-f.a, f.b, -f.c}; }

// A form in the class of f with a > 0.
Form positive_rep(const Form& f) {
    for (const Form& g : cycle(reduce(f)))
        if (g.a > 0) return g;
    throw std::logic_error("positive_rep: cycle has no form with a > 0");
}

std::array<Int, 3> key(const Form& f) { return {f.a, f.b, f.c}; }

}  // namespace

bool is_reduced(const Form& f) {
    Int s = isqrt(f.discriminant());
    Int aa = abs(f.a);
    return f.b > 0 && f.b <= s && 2 * aa + f.b >= s + 1 && 2 * aa - f.b <= s;
}

Form rho(const Form& f) {
    check_form(f);
    Int disc = f.discriminant();
    Int s = isqrt(disc);
    Int ac = abs(f.c);
    Int r;
    if (ac > s) {
        r = mod(-f.b, 2 * ac);
        if (r > ac) r -= 2 * ac;
    } else {
        r = s - mod(s + f.b, 2 * ac);
    }
    return {f.c, r, (r * r - disc) / (4 * f.c)};
}

Form reduce(const Form& f) {
    check_form(f);
    Form g = f;
    for (long i = 0; !is_reduced(g); ++i) {
        if (i > 100000) throw std::logic_error("reduce: no reduced form reached");
        g = rho(g);
    }
    return g;
}

std::vector<Form> cycle(const Form& reduced) {
    if (!is_reduced(reduced)) throw std::invalid_argument("cycle: form is not reduced");
    std::vector<Form> out{reduced};
    for (Form g = rho(reduced); !(g == reduced); g = rho(g)) out.push_back(g);
    return out;
}

bool properly_equivalent(const Form& f, const Form& g) {
    if (f.discriminant() != g.discriminant()) return false;
    Form rg = reduce(g);
    for (const Form& h : cycle(reduce(f)))
        if (h == rg) return true;
    return false;
}

bool wide_equivalent(const Form& f, const Form& g) {
    return properly_equivalent(f, g) || properly_equivalent(f, negate(g));
}

bool is_wide_principal(const Form& f) {
    for (const Form& h : cycle(reduce(f)))
        if (h.a == 1 || h.a == -1) return true;
    return false;
}

Form compose(const Form& f, const Form& g) {
    if (f.discriminant() != g.discriminant()) throw std::invalid_argument("compose: discriminants differ");
    Form f1 = positive_rep(f), f2 = positive_rep(g);
    if (f1.a > f2.a) std::swap(f1, f2);
    const Int disc = f1.discriminant();
    Int s = (f1.b + f2.b) / 2;
    Int n = f2.b - s;
    Int y1, d;
    if (mod(f2.a, f1.a) == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        Int v;
        mpz_gcdext(d.get_mpz_t(), y1.get_mpz_t(), v.get_mpz_t(), f2.a.get_mpz_t(), f1.a.get_mpz_t());
    }
    Int x2, y2, d1;
    if (mod(s, d) == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        Int v;
        mpz_gcdext(d1.get_mpz_t(), x2.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
        y2 = -v;
    }
    Int v1 = f1.a / d1, v2 = f2.a / d1;
    Int r = mod(y1 * y2 * n - x2 * f2.c, v1);
    Int b3 = f2.b + 2 * v2 * r;
    Int a3 = v1 * v2;
    Int num = b3 * b3 - disc;
    if (mod(num, 4 * a3) != 0) throw std::logic_error("compose: non-integral result");
    return reduce({a3, b3, num / (4 * a3)});
}

std::size_t ClassGroup::index_of(const Form& f) const {
    auto it = lookup.find(key(reduce(f)));
    if (it == lookup.end()) throw std::invalid_argument("index_of: form not in this group");
    return it->second;
}

std::size_t ClassGroup::multiply(std::size_t i, std::size_t j) const {
    return index_of(compose(reps.at(i), reps.at(j)));
}

namespace {

std::unique_ptr<ClassGroup> build_class_group(const Int& D) {
    auto G = std::make_unique<ClassGroup>();
    G->D = D;
    const Int disc = 4 * D;
    const Int s = isqrt(disc);
    std::vector<Form> reduced;
    for (Int b = 2; b <= s; b += 2) {
        Int ac = (b * b - disc) / 4;  // negative
        Int lo = (s + 1 - b + 1) / 2, hi = (s + b) / 2;
        if (lo < 1) lo = 1;
        for (Int a = lo; a <= hi; ++a) {
            if (mod(ac, a) != 0) continue;
            Int c = ac / a;
            if (gcd(gcd(a, b), c) != 1) continue;
            reduced.push_back({a, b, c});
            reduced.push_back({-a, b, -c});
        }
    }
    // Narrow classes are rho-cycles; the wide class also absorbs the negated cycle.
    std::map<std::array<Int, 3>, std::size_t> narrow;
    std::vector<Form> narrow_reps;
    for (const Form& f : reduced) {
        if (narrow.count(key(f))) continue;
        for (const Form& g : cycle(f)) narrow[key(g)] = narrow_reps.size();
        narrow_reps.push_back(f);
    }
    G->narrow_order = narrow_reps.size();
    std::vector<std::size_t> wide_of(narrow_reps.size(), SIZE_MAX);
    const Form principal = reduce({1, 0, -D});
    auto assign = [&](std::size_t i) {
        if (wide_of[i] != SIZE_MAX) return;
        std::size_t j = narrow.at(key(reduce(negate(narrow_reps[i]))));
        std::size_t idx = G->reps.size();
        wide_of[i] = idx;
        wide_of[j] = idx;
        G->reps.push_back(narrow_reps[i]);
    };
    assign(narrow.at(key(principal)));
    for (std::size_t i = 0; i < narrow_reps.size(); ++i) assign(i);
    for (const auto& [k, i] : narrow) G->lookup[k] = wide_of[i];
    return G;
}

}  // namespace

const ClassGroup& class_group(const Int& disc) {
    if (disc <= 0 || mod(disc, 4) != 0 || is_square(disc))
        throw std::invalid_argument("class_group: discriminant must be 4D with D a positive non-square");
    static std::mutex mu;
    static std::map<Int, std::unique_ptr<ClassGroup>> cache;
    const Int D = disc / 4;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(D);
        if (it != cache.end()) return *it->second;
    }
    auto G = build_class_group(D);
    std::lock_guard lock(mu);
    return *cache.emplace(D, std::move(G)).first->second;
}

}  // namespace pellcrit
