#include "rankp/lifting.hpp"

#include <string>

#include "rankp/errors.hpp"

namespace rankp {

AnnulusElement lift_etale(const Tower& tw, const LaurentSeries& abar) {
    int pvl = int(tw->p() * tw->v_lambda());
    return AnnulusElement::one(tw) + AnnulusElement::lift_series(tw, abar).mul_pow_pi(pvl);
}

AnnulusElement lift_mu_p(const Tower& tw, const LaurentSeries& ubar) {
    if (ubar.is_zero_on_window())
        fail(err::not_a_unit, "lifting the zero series as a Kummer unit");
    return AnnulusElement::lift_series(tw, ubar);
}

AnnulusElement lift_alpha_p(const Tower& tw, const LaurentSeries& abar, long n) {
    if (n <= 0) fail(err::bad_n, "level must be positive", n);
    if (n >= tw->v_lambda())
        fail(err::needs_ramified_extension,
             "no level strictly below v(lambda) = " + std::to_string(tw->v_lambda()) +
                 " is available on this tower",
             2);
    if (abar.pth_root().has_value())
        fail(err::trivial_datum, "datum is a p-th power; the class dies");
    return AnnulusElement::one(tw) +
           AnnulusElement::lift_series(tw, abar).mul_pow_pi(int(tw->p() * n));
}

AnnulusElement perturb_lift(const AnnulusElement& u, long n, const AnnulusElement& uprime) {
    const Tower& tw = u.tower();
    if (n <= 0 || n > tw->v_lambda())
        fail(err::bad_n, "perturbation level outside (0, v(lambda)]", n);
    return u * (AnnulusElement::one(tw) + uprime.mul_pow_pi(int(tw->p() * n)));
}

AdmissibilityReport admissibility_report(const Tower& tw, const CharPTorsor& f, int window) {
    const Field& k = f.field();
    LaurentSeries datum =
        f.is_rational()
            ? (f.rat().is_zero() ? LaurentSeries::zero(k)
                                 : f.rat().local_expand(P1Point::finite(k->zero()), window))
            : f.germ();

    Tower used = tw;
    uint32_t ext = 1;
    if (f.kind == TorsorKind::alpha_p && tw->v_lambda() <= 1) {
        used = ramified_base_change(tw, 2).to; // smallest tower with a level below v(lambda)
        ext = 2;
    }

    AnnulusElement lift = [&] {
        switch (f.kind) {
            case TorsorKind::etale_zp: return lift_etale(used, datum);
            case TorsorKind::mu_p: return lift_mu_p(used, datum);
            case TorsorKind::alpha_p: return lift_alpha_p(used, datum, 1);
        }
        fail(err::bad_parameters, "unknown torsor kind");
    }();
    SpecializationReport rt = specialize(lift, window);
    return AdmissibilityReport{std::move(lift), std::move(used), ext, std::move(rt)};
}

} // namespace rankp
