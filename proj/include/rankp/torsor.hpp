#pragma once

#include "rankp/differential.hpp"

namespace rankp {

// The three isomorphism classes of rank-p group schemes over a perfect field
// of characteristic p, named by their Galois/flat nature.
enum class TorsorKind { etale_zp, mu_p, alpha_p };

const char* kind_name(TorsorKind k);

// Torsor datum on a chart of P^1 (rational function in the coordinate t) or
// on a formal germ k((t)) at a single point (Laurent window).
//   etale_zp: additive Artin-Schreier datum a, equation  z^p - z = a
//   mu_p:     multiplicative Kummer datum u != 0,        z^p     = u
//   alpha_p:  additive datum a,                          z^p     = a
struct CharPTorsor {
    TorsorKind kind;
    std::variant<RationalFunction, LaurentSeries> datum;

    bool is_rational() const { return std::holds_alternative<RationalFunction>(datum); }
    const RationalFunction& rat() const { return std::get<RationalFunction>(datum); }
    const LaurentSeries& germ() const { return std::get<LaurentSeries>(datum); }
    Field field() const { return is_rational() ? rat().field() : germ().field(); }
};

// Conductor / residue data of a torsor at one point.
//   etale_zp: conductor = Hasse conductor of the reduced datum (>= 0), residue 0.
//   mu_p / alpha_p: conductor = -(ord_x(omega) + 1) for omega = dlog u resp.
//   da; residue = res_x(omega) when the conductor is 0 (mu_p), else 0.
// A datum whose class dies locally reports conductor 0 with the flag set.
struct TorsorLocalData {
    int conductor = 0;
    FFElem residue;            // lies in the prime field when meaningful
    bool trivial_locally = false;
    bool has_ord = false;      // ord_omega / reduced-datum order below is meaningful
    int ord = 0;               // ord_x(omega), or the order of the reduced AS datum
};

// Artin-Schreier reduction: subtract p-th-power-minus-itself terms until all
// negative exponents are prime to p.  The witness b satisfies
// reduced = a - (b^p - b).  Needs the window to reach exponent -1.
struct ASReduction {
    LaurentSeries reduced;
    LaurentSeries witness;
};
ASReduction artin_schreier_reduce(const LaurentSeries& a);

// Kummer-side p-th power test on a window (exponent divisibility +
// coefficient roots); nullopt means certified not a p-th power, with the
// offending exponent reported.
std::optional<LaurentSeries> pth_power_test(const LaurentSeries& s, int* bad_exp = nullptr);

// Additive Artin-Schreier class triviality over k((t)): negative reduced
// part empty and constant term in the image of x -> x^p - x on k.  Positive
// exponents never obstruct (geometric series witness).
bool as_class_trivial(const LaurentSeries& a);
bool as_class_equal(const LaurentSeries& a, const LaurentSeries& b);
// mu_p classes agree iff the ratio is a p-th power on the common window.
bool mup_class_equal(const LaurentSeries& u, const LaurentSeries& v);
// alpha_p classes agree iff the difference is a p-th power (of a series).
bool alphap_class_equal(const LaurentSeries& a, const LaurentSeries& b);

// Conductor and residue of f at x.  Rational data admit any point of P^1
// over the datum's field; germ data only their center.
TorsorLocalData conductor_residue(const CharPTorsor& f, const P1Point& x);

// The differential attached to a mu_p / alpha_p datum (dlog u resp. da).
Differential torsor_differential(const CharPTorsor& f, int want_known = 24);

// Verifies the Cartier fixed-point law: C(omega) = omega for mu_p data,
// C(omega) = 0 for alpha_p data.  Exact for rational data.
bool cartier_class_check(const CharPTorsor& f, int want_known = 24);

// Coefficientwise arithmetic Frobenius power on the datum.
CharPTorsor frobenius_act(unsigned j, const CharPTorsor& f);

} // namespace rankp
