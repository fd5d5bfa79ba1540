#include "rankp/degeneration.hpp"

#include <algorithm>
#include <string>

#include "rankp/errors.hpp"

namespace rankp {

namespace {

LaurentSeries one_series(const Field& k) {
    return LaurentSeries::from_terms(k, {{0, k->one()}});
}

int window_of(const AnnulusElement& a) {
    return a.hi() >= AnnulusElement::kExactT ? LaurentSeries::kExact : a.hi();
}

// Residue of an element that may vanish mod pi (a trivial datum): positive
// content certifies the zero series on the same window.
LaurentSeries reduce_or_zero(const AnnulusElement& a) {
    const Field& k = a.tower()->residue_field();
    try {
        if (a.content() > 0) return LaurentSeries::zero(k, window_of(a));
    } catch (const error& e) {
        if (e.kind() == err::zero_function) return LaurentSeries::zero(k, window_of(a));
        throw;
    }
    return a.reduce_mod_pi();
}

// Inverse of a reduced root on a bounded window.  Exact monomials invert
// exactly; otherwise the window is clamped to what the input certifies.
LaurentSeries window_inverse(const LaurentSeries& r, int window) {
    if (r.exact() && r.terms().size() == 1) {
        const auto& [e, c] = *r.terms().begin();
        return LaurentSeries::monomial(r.field(), -e, c.inv());
    }
    long want = window;
    if (!r.exact()) {
        auto mo = r.ord();
        if (!mo) fail(err::not_a_unit, "inverting a root that is zero on its window");
        want = std::min(want, long(r.known()) - 2L * *mo);
    }
    return r.inverse(int(want));
}

} // namespace

NormalForm normalize_kummer_unit(const AnnulusElement& u0, int window) {
    const Tower& tw = u0.tower();
    const Field& k = tw->residue_field();
    const long p = tw->p(), vl = tw->v_lambda();

    AnnulusElement u = u0.cap_prec(tw->N());
    long strips = 0;
    {
        long s;
        try {
            s = u.content();
        } catch (const error& e) {
            if (e.kind() == err::zero_function)
                fail(err::not_a_unit, "the zero element is not a Kummer unit");
            throw;
        }
        if (s > 0) {
            if (s % p)
                fail(err::ramified_input_content,
                     "pi-content " + std::to_string(s) + " is prime to p; base change by c=" +
                         std::to_string(p) + " needed",
                     p);
            u = u.div_pow_pi(int(s));
            strips = s / p;
        }
    }

    int absorptions = 0;
    const long max_rounds = p * vl + 4;
    for (long round = 0; round <= max_rounds; ++round) {
        LaurentSeries ubar = u.reduce_mod_pi();
        if (!(ubar - one_series(k)).is_zero_on_window()) {
            auto root = pth_power_test(ubar);
            if (!root) return NormalForm{TorsorKind::mu_p, false, 0, ubar, strips, absorptions};
            u = u * AnnulusElement::lift_series(tw, window_inverse(*root, window)).pow(unsigned(p));
            ++absorptions;
            continue;
        }
        AnnulusElement w = u - AnnulusElement::one(tw);
        // Surviving stored coefficients are nonzero or starved below working
        // precision; an empty store certifies triviality at full depth.
        if (w.terms().empty())
            return NormalForm{TorsorKind::mu_p, true, vl, one_series(k), strips, absorptions};
        if (w.is_zero_to_prec())
            fail(err::precision_exhausted,
                 "unit is 1 to less than working precision; class undecidable");
        long s = w.content();
        if (s >= p * vl) {
            LaurentSeries abar = reduce_or_zero(w.div_pow_pi(int(p * vl)));
            return NormalForm{TorsorKind::etale_zp, false, vl, abar, strips, absorptions};
        }
        if (s % p == 0) {
            long n = s / p;
            LaurentSeries abar = w.div_pow_pi(int(s)).reduce_mod_pi();
            auto root = abar.pth_root();
            if (!root) return NormalForm{TorsorKind::alpha_p, false, n, abar, strips, absorptions};
            // a-bar = r-bar^p: fold (1 + pi^n r)^p away and climb.
            AnnulusElement g = AnnulusElement::one(tw) +
                               AnnulusElement::lift_series(tw, *root).mul_pow_pi(int(n));
            int want = g.hi() >= AnnulusElement::kExactT ? window : g.hi();
            u = u * g.inv(want).pow(unsigned(p));
            ++absorptions;
            continue;
        }
        fail(err::extension_required,
             "1-unit content " + std::to_string(s) + " is prime to p; base change by c=" +
                 std::to_string(p) + " needed",
             p);
    }
    fail(err::precision_exhausted,
         "no decision after " + std::to_string(max_rounds + 1) +
             " normalization rounds; class is indistinguishable from trivial");
}

SpecializationReport specialize(const AnnulusElement& u, int window) {
    const Tower& tw = u.tower();
    const Field& k = tw->residue_field();
    const long vl = tw->v_lambda();
    NormalForm nf = normalize_kummer_unit(u, window);

    CharPTorsor fibre{nf.kind, nf.datum};
    TorsorLocalData ld = conductor_residue(fibre, P1Point::finite(k->zero()));
    if (nf.trivial || ld.trivial_locally) {
        // Canonical report for the neutral class, whichever route found it:
        // the split torsor sits at the top level with different degree 0.
        long delta0 = tw->v_p() - vl * (long(tw->p()) - 1);
        CharPTorsor neutral{TorsorKind::mu_p, one_series(k)};
        return SpecializationReport{TorsorKind::mu_p, true, delta0, vl,         0, 0,
                                    false,            0,    vl,     1, std::move(neutral)};
    }
    long h = 0;
    if (nf.kind == TorsorKind::mu_p && ld.conductor == 0) h = long(ld.residue.prime_value());
    long delta = tw->v_p() - nf.n * (long(tw->p()) - 1);
    return SpecializationReport{nf.kind,    false,  delta, nf.n, ld.conductor, h,
                                ld.has_ord, ld.ord, nf.n,  1,    std::move(fibre)};
}

SpecializationReport specialize_auto(const AnnulusElement& u0, uint32_t max_c, int window) {
    AnnulusElement u = u0;
    uint32_t total = 1;
    for (;;) {
        try {
            SpecializationReport r = specialize(u, window);
            r.extension_c = total;
            return r;
        } catch (const error& e) {
            if (e.kind() != err::extension_required && e.kind() != err::ramified_input_content)
                throw;
            uint32_t c = uint32_t(std::max<long>(2, e.payload()));
            if (total > max_c / c)
                fail(err::extension_required,
                     "classification needs a base change beyond the degree cap " +
                         std::to_string(max_c),
                     long(total) * c);
            u = u.map(ramified_base_change(u.tower(), c));
            total *= c;
        }
    }
}

bool special_fibre_class_equal(const CharPTorsor& a, const CharPTorsor& b) {
    if (a.kind != b.kind) return false;
    if (a.is_rational() || b.is_rational())
        fail(err::bad_parameters, "fibre class comparison expects germ data");
    switch (a.kind) {
        case TorsorKind::etale_zp: return as_class_equal(a.germ(), b.germ());
        case TorsorKind::mu_p: return mup_class_equal(a.germ(), b.germ());
        case TorsorKind::alpha_p: return alphap_class_equal(a.germ(), b.germ());
    }
    return false;
}

bool sp_homomorphism_check(const AnnulusElement& u, const AnnulusElement& v, int window) {
    auto mup_like = [](const SpecializationReport& r) {
        return r.kind == TorsorKind::mu_p && (r.n == 0 || r.trivial_class);
    };
    SpecializationReport ru = specialize(u, window);
    SpecializationReport rv = specialize(v, window);
    if (!mup_like(ru) || !mup_like(rv))
        fail(err::bad_parameters, "homomorphism check needs two units with mu_p reduction");
    SpecializationReport rp = specialize(u * v, window);
    LaurentSeries prod = ru.special_fibre.germ() * rv.special_fibre.germ();
    if (mup_like(rp) && !rp.trivial_class)
        return mup_class_equal(rp.special_fibre.germ(), prod);
    // The product class fell deeper (or died): it must be trivial as a mu_p
    // class, i.e. the product of the reductions is a p-th power.
    return prod.pth_root().has_value();
}

bool galois_equivariance_check(unsigned j, const AnnulusElement& u, int window) {
    SpecializationReport r0 = specialize(u, window);
    SpecializationReport r1 = specialize(u.frobenius(j), window);
    if (r1.kind != r0.kind || r1.trivial_class != r0.trivial_class || r1.delta != r0.delta ||
        r1.n != r0.n || r1.m != r0.m || r1.h != r0.h || r1.level != r0.level)
        return false;
    return special_fibre_class_equal(r1.special_fibre, frobenius_act(j, r0.special_fibre));
}

long different_degree_oracle(const AnnulusElement& u, int window) {
    const Tower& tw = u.tower();
    NormalForm nf = normalize_kummer_unit(u, window);
    TowerElement d = tw->from_int(tw->p()) * tw->pi_pow(int(nf.n));
    return d.valuation() - long(tw->p()) * nf.n;
}

long filtration_level(const AnnulusElement& u, int window) {
    return specialize(u, window).level;
}

std::vector<std::vector<size_t>> filtration_buckets(const Tower& tw,
                                                    const std::vector<AnnulusElement>& us,
                                                    int window) {
    const long vl = tw->v_lambda();
    std::vector<std::vector<size_t>> buckets(size_t(vl) + 1);
    for (size_t i = 0; i < us.size(); ++i) {
        if (!us[i].tower()->same_tower(*tw))
            fail(err::bad_parameters, "filtration inputs must share one tower");
        long lvl = filtration_level(us[i], window);
        for (long n = 0; n <= std::min(lvl, vl); ++n) buckets[size_t(n)].push_back(i);
    }
    return buckets;
}

} // namespace rankp
