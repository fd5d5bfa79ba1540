#include "rankp/differential.hpp"

#include <numeric>

namespace rankp {

Differential dlog(const RationalFunction& u) {
    if (u.is_zero()) fail(err::zero_function, "dlog of the zero function");
    return Differential{u.derivative() / u};
}

Differential dlog_germ(const LaurentSeries& u, int want_known) {
    return Differential{u.dlog(want_known)};
}

Differential dform(const RationalFunction& a) { return Differential{a.derivative()}; }

Differential dform_germ(const LaurentSeries& a) { return Differential{a.derivative()}; }

namespace {

// C on a window: keep exponents congruent to -1 mod p, take p-th roots.
LaurentSeries cartier_series(const LaurentSeries& g) {
    const Field& k = g.field();
    int p = static_cast<int>(k->p());
    auto fdiv = [](long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    int nk = g.exact() ? LaurentSeries::kExact
                       : static_cast<int>(fdiv(long(g.known()) + 1, p) - 1);
    LaurentSeries out = LaurentSeries::zero(k, nk);
    std::map<int, FFElem> terms;
    for (const auto& [e, v] : g.terms()) {
        long num = long(e) - (p - 1);
        if (num % p != 0) continue;
        terms[static_cast<int>(num / p)] = v.pth_root();
    }
    return LaurentSeries::from_terms(k, terms, nk);
}

LaurentSeries poly_cartier(const Poly& h) {
    // C(sum c_i t^i dt) for a polynomial: pick out i = pj + p - 1.
    const Field& k = h.field();
    int p = static_cast<int>(k->p());
    std::map<int, FFElem> terms;
    for (int i = 0; i <= h.degree(); ++i) {
        if ((i + 1) % p != 0) continue;
        FFElem c = h.coeff(i);
        if (c.is_zero()) continue;
        terms[(i + 1) / p - 1] = c.pth_root();
    }
    return LaurentSeries::from_terms(k, terms, LaurentSeries::kExact);
}

Poly series_to_poly(const LaurentSeries& s) {
    auto [num, shift] = laurent_poly_parts(s);
    if (shift != 0) fail(err::bad_parameters, "expected a polynomial part only");
    return num;
}

} // namespace

Differential cartier(const Differential& w) {
    if (!w.is_rational()) return Differential{cartier_series(w.germ())};
    const RationalFunction& g = w.rat();
    const Field& k = g.field();
    if (g.is_zero()) return Differential{RationalFunction(k)};
    unsigned p = k->p();
    Poly h = g.num() * g.den().pow(p - 1);
    LaurentSeries ch = poly_cartier(h);
    Poly chp = series_to_poly(ch);
    return Differential{RationalFunction(std::move(chp), Poly(k, {k->one()})) /
                        RationalFunction::from_poly(g.den())};
}

int order_at(const Differential& w, const P1Point& x) {
    if (w.is_rational()) {
        const RationalFunction& g = w.rat();
        if (g.is_zero()) fail(err::zero_function, "order of the zero differential");
        int base = g.order_at(x);
        return x.at_infinity ? base - 2 : base;
    }
    if (x.at_infinity || !x.value.is_zero())
        fail(err::bad_parameters, "germ differential is only addressable at its center");
    auto m = w.germ().ord();
    if (!m) fail(err::window_too_small, "differential vanishes to window depth; order unknown");
    return *m;
}

FFElem residue(const Differential& w, const P1Point& x) {
    if (!w.is_rational()) {
        if (x.at_infinity || !x.value.is_zero())
            fail(err::bad_parameters, "germ differential is only addressable at its center");
        return w.germ().coeff(-1);
    }
    const RationalFunction& g = w.rat();
    const Field& k = g.field();
    if (g.is_zero()) return k->zero();
    if (!x.at_infinity) {
        if (g.order_at(x) >= 0) return k->zero();
        return g.local_expand(x, -1).coeff(-1);
    }
    // omega = g dt = -s^{-2} g(1/s) ds at infinity
    if (g.order_at(x) - 2 >= 0) return k->zero();
    return -g.local_expand(x, 1).coeff(1);
}

long order_sum_over_p1(const Differential& w) {
    if (!w.is_rational()) fail(err::bad_parameters, "order sum needs a rational differential");
    const RationalFunction& g = w.rat();
    if (g.is_zero()) fail(err::zero_function, "order sum of the zero differential");
    const Field& k = g.field();
    Poly support = g.num() * g.den();
    long sum = order_at(w, P1Point::infinity(k));
    if (support.degree() == 0) return sum;
    auto factors = factor(support);
    long ext = 1;
    for (const auto& [q, mult] : factors) {
        (void)mult;
        ext = std::lcm(ext, long(q.degree()));
        if (ext > 8) fail(err::bad_parameters, "splitting field too large for a desk-scale scan");
    }
    Field big = FiniteField::make(k->p(), static_cast<uint32_t>(k->f() * ext));
    FieldEmbedding emb(k, big);
    RationalFunction gbig = g.map(emb);
    Differential wbig{gbig};
    for (const auto& [q, mult] : factors) {
        (void)mult;
        for (const FFElem& r : q.map(emb).roots())
            sum += order_at(wbig, P1Point::finite(r));
    }
    return sum;
}

} // namespace rankp
