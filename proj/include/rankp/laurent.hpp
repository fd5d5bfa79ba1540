#pragma once

#include <map>
#include <optional>

#include "rankp/fp.hpp"
#include "rankp/poly.hpp"

namespace rankp {

// Laurent series window over F_{p^f}.  Stored coefficients are the nonzero
// ones with exponent <= known(); every absent exponent <= known() is an
// exact zero, and nothing is claimed beyond known().  A series produced from
// finitely many terms with no truncation has known() == kExact and is exact.
//
// Window questions whose answer would need coefficients beyond known() raise
// window_too_small instead of guessing.
class LaurentSeries {
  public:
    static constexpr int kExact = 1 << 28;

    LaurentSeries(Field k, int known) : k_(std::move(k)), known_(known) {}
    // Exact series from explicit terms.
    static LaurentSeries from_terms(Field k, const std::map<int, FFElem>& terms,
                                    int known = kExact);
    static LaurentSeries zero(Field k, int known = kExact) { return LaurentSeries(std::move(k), known); }
    static LaurentSeries monomial(Field k, int e, const FFElem& c);
    static LaurentSeries from_poly(const Poly& a);

    const Field& field() const { return k_; }
    const std::map<int, FFElem>& terms() const { return c_; }
    int known() const { return known_; }
    bool exact() const { return known_ >= kExact; }

    // Leading exponent; nullopt when the series is zero on its window.
    std::optional<int> ord() const;
    // Effective lower edge used by window arithmetic: ord() for a nonzero
    // series, known()+1 for one that is zero as far as can be seen.
    int lo_bound() const;

    bool is_zero_on_window() const { return c_.empty(); }
    FFElem coeff(int e) const; // window_too_small beyond known()

    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator-() const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator*(const FFElem& s) const;

    // Multiplication by t^k.
    LaurentSeries shift_exp(int k) const;
    // Forget coefficients beyond new_known (no-op if already narrower).
    LaurentSeries truncate(int new_known) const;

    LaurentSeries derivative() const;
    // Inverse as a series with known() >= want_known; needs a nonzero
    // leading term inside the window.
    LaurentSeries inverse(int want_known) const;
    // u'/u computed on the best window both factors support (exact input
    // still yields a truncated series; pass want_known for more).
    LaurentSeries dlog(int want_known) const;

    // x -> x^p termwise with exponents scaled: the series raised to the p-th
    // power (char p freshman's dream, exact).
    LaurentSeries pth_power() const;
    // If every visible exponent is divisible by p, returns the p-th root;
    // otherwise nullopt (the offending exponent goes to *bad_exp).
    std::optional<LaurentSeries> pth_root(int* bad_exp = nullptr) const;

    LaurentSeries map(const FieldEmbedding& e) const;
    // Coefficientwise x -> x^{p^j} (arithmetic Frobenius power).
    LaurentSeries frobenius(unsigned j) const;

    // Equality of every coefficient on the overlap of the two windows.
    bool agrees_with(const LaurentSeries& o) const;
    // Strict equality: same window, same coefficients.
    bool operator==(const LaurentSeries& o) const;

    std::string str(const std::string& var = "t") const;

  private:
    Field k_;
    std::map<int, FFElem> c_;
    int known_;

    void put(int e, const FFElem& v); // drops zeros and out-of-window terms
    FFElem coeff_raw(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? k_->zero() : it->second;
    }
    static int clamp_known(long v) {
        return v >= kExact ? kExact : (v <= -kExact ? -kExact : static_cast<int>(v));
    }
};

// Exact Laurent polynomial -> rational function pair (num, den = t^k); fails
// on truncated input.
std::pair<Poly, int> laurent_poly_parts(const LaurentSeries& s);

} // namespace rankp
