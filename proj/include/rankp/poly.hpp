#pragma once

#include <utility>
#include <vector>

#include "rankp/fp.hpp"

namespace rankp {

// Dense univariate polynomial over F_{p^f}.  Little-endian coefficients,
// always trimmed: the zero polynomial has an empty coefficient vector and
// degree() == -1.
class Poly {
  public:
    explicit Poly(Field k) : k_(std::move(k)) {}
    Poly(Field k, std::vector<FFElem> coeffs);

    static Poly monomial(const Field& k, int deg, const FFElem& coef);
    static Poly from_ints(const Field& k, const std::vector<long long>& coeffs);

    const Field& field() const { return k_; }
    const std::vector<FFElem>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    FFElem leading() const;
    FFElem coeff(int i) const; // 0 outside the support

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const FFElem& s) const;
    Poly pow(unsigned n) const;

    // Quotient and remainder; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    Poly derivative() const;
    FFElem eval(const FFElem& x) const;
    // Substitute t -> t + a (Taylor shift); exact.
    Poly shift(const FFElem& a) const;
    // Coefficient reversal: t^deg * p(1/t).  Used for expansions at infinity.
    Poly reverse() const;
    Poly make_monic() const;

    // Multiplicity of the root a (0 when p(a) != 0).
    int root_multiplicity(const FFElem& a) const;
    // All roots in the coefficient field, found by scanning (desk scale).
    std::vector<FFElem> roots() const;

    // True iff the polynomial is q(t)^p for some q; fills *root when asked.
    bool is_pth_power(Poly* root = nullptr) const;

    // Coefficientwise application of a field embedding.
    Poly map(const FieldEmbedding& e) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string str(const std::string& var = "t") const;

  private:
    Field k_;
    std::vector<FFElem> c_;
    void trim();
};

Poly gcd(Poly a, Poly b); // monic gcd; gcd(0,0) = 0

// All monic irreducible polynomials of the given degree, by coefficient scan.
std::vector<Poly> monic_irreducibles(const Field& k, int degree);

// Distinct monic irreducible factors with multiplicities, found by root
// scans and trial division over enumerated irreducibles.  Desk scale only.
std::vector<std::pair<Poly, int>> factor(const Poly& a);

} // namespace rankp
