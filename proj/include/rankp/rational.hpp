#pragma once

#include "rankp/laurent.hpp"
#include "rankp/poly.hpp"

namespace rankp {

// Point of P^1 over F_{p^f} (or an extension of the base handed in by the
// caller): a field value, or the point at infinity.
struct P1Point {
    bool at_infinity = false;
    FFElem value; // defined when !at_infinity

    static P1Point infinity(const Field& k) {
        P1Point x;
        x.at_infinity = true;
        x.value = k->zero();
        return x;
    }
    static P1Point finite(FFElem a) {
        P1Point x;
        x.value = std::move(a);
        return x;
    }

    const Field& field() const { return value.field(); }
    P1Point frobenius(unsigned j) const;
    bool operator==(const P1Point& o) const {
        return at_infinity == o.at_infinity && (at_infinity || value == o.value);
    }
    std::string str() const { return at_infinity ? "inf" : value.str(); }
};

// Element of F_{p^f}(t) in lowest terms with monic denominator; the zero
// function is 0/1.  Canonical form makes equality a coefficient comparison.
class RationalFunction {
  public:
    explicit RationalFunction(Field k);           // zero
    RationalFunction(Poly num, Poly den);         // reduces to canonical form
    static RationalFunction from_poly(Poly a);
    static RationalFunction constant(const FFElem& c);
    static RationalFunction t(const Field& k);    // the coordinate
    static RationalFunction t_power(const Field& k, int e); // t^e, e may be negative

    const Field& field() const { return k_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator-() const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction inv() const;
    RationalFunction pow(int n) const;
    RationalFunction derivative() const;

    // Exact order of vanishing at x (negative at poles); zero_function on 0.
    int order_at(const P1Point& x) const;
    // Laurent expansion in the local parameter at x (t - a, or 1/t at
    // infinity), certified through exponent want_known.
    LaurentSeries local_expand(const P1Point& x, int want_known) const;

    // True iff the function is a p-th power in F_{p^f}(t); the criterion is
    // vanishing derivative, which over a perfect field is exact.
    bool is_pth_power(RationalFunction* root = nullptr) const;

    RationalFunction map(const FieldEmbedding& e) const;
    RationalFunction frobenius(unsigned j) const;

    bool operator==(const RationalFunction& o) const;
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    std::string str(const std::string& var = "t") const;

  private:
    Field k_;
    Poly num_, den_;
    void reduce();
};

} // namespace rankp
