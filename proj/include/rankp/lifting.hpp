#pragma once

#include "rankp/degeneration.hpp"

namespace rankp {

// u = 1 + lambda^p a for the coefficientwise lift a of an Artin-Schreier
// datum; specializes to the etale torsor z^p - z = a-bar.
AnnulusElement lift_etale(const Tower& tw, const LaurentSeries& abar);

// Coefficientwise lift of a unit of k((T)); not_a_unit on the zero window.
AnnulusElement lift_mu_p(const Tower& tw, const LaurentSeries& ubar);

// u = 1 + pi^{pn} a at a strictly intermediate level 0 < n < v(lambda).
// Errors: bad_n (n <= 0), needs_ramified_extension (no admissible level on
// this tower; payload = suggested extra ramification), trivial_datum (a-bar
// is a p-th power, so the class dies).
AnnulusElement lift_alpha_p(const Tower& tw, const LaurentSeries& abar, long n);

// u * (1 + pi^{pn} u'): a different lift of the same special fibre.  The
// ratio sits at level >= n, so the specialization report is unchanged;
// whether the Kummer class moves depends on the reduction of u'.
AnnulusElement perturb_lift(const AnnulusElement& u, long n, const AnnulusElement& uprime);

// Witness that a char-p torsor, inspected through its boundary germ, lifts:
// the lift, the tower it lives on, and its round trip through specialize.
struct AdmissibilityReport {
    AnnulusElement lift;
    Tower tower_used;
    uint32_t extension_c; // ramified degree added over the input tower (1 = none)
    SpecializationReport round_trip;
};

// Dispatches on the kind; alpha_p data over a tower with v(lambda) = 1 get
// the minimal ramified extension automatically.  Rational chart data are
// expanded at the boundary point t = 0 first.
AdmissibilityReport admissibility_report(const Tower& tw, const CharPTorsor& f, int window = 64);

} // namespace rankp
