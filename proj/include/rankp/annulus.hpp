#pragma once

#include <map>

#include "rankp/laurent.hpp"
#include "rankp/tower.hpp"

namespace rankp {

// Element of the integral annulus ring A = R<T, T^{-1}>: a Laurent expression
// in the coordinate T with coefficients in the two-level tower R.  Stored
// terms are exact choices (each carrying its own pi-adic precision); an
// absent exponent <= hi() is an exact zero, and nothing is claimed above
// hi().  Elements built from finitely many terms are exact (hi() == kExactT).
//
// The ring is integral: there is no global pi-shift, and inverting an
// element with positive pi-content is a not_a_unit error rather than a move
// into the fraction field.
class AnnulusElement {
  public:
    static constexpr int kExactT = 1 << 28;

    static AnnulusElement zero(const Tower& tw);
    static AnnulusElement one(const Tower& tw);
    static AnnulusElement t_power(const Tower& tw, int k); // T^k
    static AnnulusElement from_tower(const Tower& tw, const TowerElement& a, int exp = 0);
    // Coefficientwise lift of a residue Laurent window; each lifted
    // coefficient carries the tower's working precision N.
    static AnnulusElement lift_series(const Tower& tw, const LaurentSeries& s);

    const Tower& tower() const { return tw_; }
    int hi() const { return hi_; }
    bool exact_window() const { return hi_ >= kExactT; }
    // Least stored exponent (window arithmetic lower edge); 0 when empty.
    int lo_stored() const;
    const std::map<int, TowerElement>& terms() const { return c_; }
    // Absent slots inside the window are exact zeros; above it, window_too_small.
    TowerElement coeff(int e) const;

    AnnulusElement operator+(const AnnulusElement& o) const;
    AnnulusElement operator-(const AnnulusElement& o) const;
    AnnulusElement operator-() const;
    AnnulusElement operator*(const AnnulusElement& o) const;
    AnnulusElement operator*(const TowerElement& s) const;
    AnnulusElement pow(unsigned n) const;

    AnnulusElement mul_pow_pi(int k) const;
    // Exact coefficientwise division; bad_parameters if some coefficient has
    // valuation < k, precision_exhausted if digits run out.
    AnnulusElement div_pow_pi(int k) const;

    // Forget coefficients above new_hi.
    AnnulusElement truncate_hi(int new_hi) const;

    // Cap every coefficient's precision claim at new_prec.  Coefficients
    // that vanish to the working precision become absent slots.
    AnnulusElement cap_prec(long new_prec) const;

    // min over coefficients of their pi-adic valuation.  Certified exact:
    // precision_exhausted when a coefficient that is zero to its carried
    // precision could undercut the visible minimum (or all are such),
    // zero_function on the exact zero element.
    long content() const;

    // Image in k((T)) by reducing each coefficient; requires content() == 0
    // (positive_pi_content otherwise).  Window carries over.
    LaurentSeries reduce_mod_pi() const;

    // Inverse of a unit of A to the requested T-window.  A single-term
    // element inverts exactly on an unbounded window; otherwise a finite
    // window is required (the geometric tail correction is summed until it
    // vanishes at working precision, so coefficients are stated mod pi^N).
    AnnulusElement inv(int want_hi = kExactT) const;

    // Unramified Frobenius power on coefficients; fixes T.
    AnnulusElement frobenius(unsigned j) const;
    // Coefficientwise base change along a tower map; fixes T.
    AnnulusElement map(const TowerMap& m) const;

    bool is_zero_to_prec() const; // every coefficient vanishes to its precision
    bool is_one_to_prec() const;
    bool congruent_to(const AnnulusElement& o) const;

    std::string str() const;

  private:
    AnnulusElement(Tower tw, int hi) : tw_(std::move(tw)), hi_(hi) {}

    void put(int e, const TowerElement& v); // drops exact zeros at full precision

    Tower tw_;
    std::map<int, TowerElement> c_;
    int hi_ = kExactT;
};

// x -> ((pi^n x + 1)^p - 1)/pi^{pn} on the annulus, coefficient-exactly.
AnnulusElement phi_n(const AnnulusElement& x, long n);

} // namespace rankp
