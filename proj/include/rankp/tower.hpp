#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rankp/fp.hpp"
#include "rankp/poly.hpp"

namespace rankp {

class LocalFieldTower;
struct TowerMap;
using Tower = std::shared_ptr<const LocalFieldTower>;

// Element of the two-level tower R = W[pi]/(E(pi)): a polynomial
// sum c_i pi^i of degree < e with coefficients in the unramified level
// W = (Z/p^M)[y]/(m~), carried to a tracked pi-adic precision.  All
// arithmetic is exact modulo pi^prec; answers that would need deeper digits
// raise precision_exhausted instead of guessing.
class TowerElement {
  public:
    // sentinel for "zero to the carried precision": no valuation claim
    static constexpr long kInfVal = std::numeric_limits<long>::max() / 4;

    const Tower& tower() const { return tw_; }
    long prec() const { return prec_; }

    // v(x) in pi-units, from the min over monomials of e*v_p(coeff) + i.
    // Exact whenever it is < prec(); returns kInfVal (x is zero as far as the
    // carried digits reach) otherwise.
    long valuation() const;
    bool is_zero_to_prec() const { return valuation() >= kInfVal; }

    TowerElement operator+(const TowerElement& o) const;
    TowerElement operator-(const TowerElement& o) const;
    TowerElement operator-() const;
    TowerElement operator*(const TowerElement& o) const;
    TowerElement pow(unsigned n) const;

    // Multiplication / exact division by powers of pi.  Division demands the
    // element be divisible (valuation >= k) and costs k precision digits.
    TowerElement mul_pow_pi(int k) const;
    TowerElement div_pow_pi(int k) const;

    // Inverse of a unit (valuation 0), by Newton iteration from the residue
    // inverse; not_a_unit otherwise.
    TowerElement inv() const;

    // Unramified Frobenius power: acts on W-coefficients, fixes pi (and
    // hence lambda).
    TowerElement frobenius(unsigned j) const;

    // Image in the residue field k = F_{p^f}; needs prec >= 1.
    FFElem reduce_mod_pi() const;

    // Agreement to the smaller of the two carried precisions.
    bool congruent_to(const TowerElement& o) const;

    // Same value, precision claim lowered to at most new_prec.
    TowerElement cap_prec(long new_prec) const;

    std::string str() const;

  private:
    TowerElement(Tower tw, std::vector<std::vector<uint64_t>> c, long prec)
        : tw_(std::move(tw)), c_(std::move(c)), prec_(prec) {}

    Tower tw_;
    std::vector<std::vector<uint64_t>> c_; // [pi-exponent][y-exponent], mod p^M
    long prec_;

    friend class LocalFieldTower;
    friend struct TowerMap;
};

// Complete DVR R of mixed characteristic containing zeta_p, as a two-level
// tower: W unramified of degree f over Z_p (coefficients mod p^M in 64-bit
// words), then the totally ramified extension by the Eisenstein polynomial
// E_c(X) = E(X^c) where E(X) = ((1+X)^p - 1)/X is the minimal polynomial of
// lambda = zeta_p - 1.  So e = c(p-1), v(pi) = 1, v(p) = e, v(lambda) = c,
// and lambda = pi^c exactly under the base-change convention.
class LocalFieldTower : public std::enable_shared_from_this<LocalFieldTower> {
  public:
    static Tower make_base(uint32_t p, uint32_t f, long N) { return make(p, f, N, 1); }
    static Tower make(uint32_t p, uint32_t f, long N, uint32_t c);

    uint32_t p() const { return p_; }
    uint32_t f() const { return f_; }
    uint32_t c() const { return c_; }
    uint32_t e() const { return e_; }   // ramification index = c(p-1)
    long N() const { return N_; }       // fresh elements carry this precision
    long v_p() const { return e_; }     // v(p)
    long v_lambda() const { return c_; }

    const Field& residue_field() const { return k_; }
    // Eisenstein coefficients a_0..a_{e-1} of E_c (little-endian, leading 1
    // implicit), as plain integers.
    const std::vector<uint64_t>& eisenstein() const { return eis_; }

    TowerElement zero() const;
    TowerElement one() const;
    TowerElement from_int(long long n) const;
    TowerElement pi() const { return pi_pow(1); }
    TowerElement pi_pow(int k) const; // k >= 0
    TowerElement lambda() const { return pi_pow(static_cast<int>(c_)); }
    // Coefficientwise lift of a residue element (digits in [0, p)).
    TowerElement from_residue(const FFElem& a) const;

    bool same_tower(const LocalFieldTower& o) const;

  private:
    LocalFieldTower() = default;

    uint32_t p_ = 0, f_ = 0, c_ = 0, e_ = 0;
    long N_ = 0;
    long M_ = 0;        // p-adic digits carried at the W level
    uint64_t pm_ = 0;   // p^M
    long prec_cap_ = 0; // e*(M-1): deepest pi-precision the storage supports
    Field k_;
    std::vector<uint64_t> wmod_;           // m~: monic integer lift of k's modulus
    std::vector<uint64_t> eis_;            // a_0..a_{e-1} mod p^M
    std::vector<uint64_t> sigma_y_;        // W-image of y under Frobenius
    std::vector<std::vector<uint64_t>> p_over_pi_; // coords of p/pi

    // ---- W = (Z/p^M)[y]/(m~) arithmetic on raw coefficient vectors ----
    std::vector<uint64_t> wzero() const { return std::vector<uint64_t>(f_, 0); }
    std::vector<uint64_t> wscalar(uint64_t v) const;
    uint64_t addm(uint64_t a, uint64_t b) const;
    uint64_t subm(uint64_t a, uint64_t b) const;
    uint64_t mulm(uint64_t a, uint64_t b) const;
    std::vector<uint64_t> wadd(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) const;
    std::vector<uint64_t> wsub(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) const;
    std::vector<uint64_t> wneg(const std::vector<uint64_t>& a) const;
    std::vector<uint64_t> wmul(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) const;
    std::vector<uint64_t> wscale(const std::vector<uint64_t>& a, uint64_t s) const;
    bool wis_zero(const std::vector<uint64_t>& a) const;
    long wvalp(const std::vector<uint64_t>& a) const; // min p-adic val; M_ if zero
    std::vector<uint64_t> wdivp(const std::vector<uint64_t>& a) const;
    std::vector<uint64_t> wsigma(const std::vector<uint64_t>& a) const;
    std::vector<uint64_t> weval(const std::vector<uint64_t>& poly_y,
                                const std::vector<uint64_t>& at) const;
    std::vector<uint64_t> winv(const std::vector<uint64_t>& a) const; // p-unit only
    FFElem wreduce(const std::vector<uint64_t>& a) const;
    std::vector<uint64_t> wlift(const FFElem& a) const;

    TowerElement raw(std::vector<std::vector<uint64_t>> c, long prec) const;
    long low_val(const TowerElement& x) const; // min(valuation, prec)

    friend class TowerElement;
    friend struct TowerMap;
    friend TowerMap ramified_base_change(const Tower&, uint32_t);
    friend TowerMap unramified_base_change(const Tower&, uint32_t);
};

// Ring embedding between towers: a ramified step pi |-> pi'^{c_factor}
// (valuations scale by c_factor) and/or an unramified step on the
// W-coefficients determined by a consistent pair (residue embedding, lifted
// generator root).
struct TowerMap {
    Tower from, to;
    uint32_t c_factor = 1;
    std::optional<FieldEmbedding> res_embed;   // set for an unramified step
    std::vector<uint64_t> gen_image;           // W'-coordinates of old y

    TowerElement operator()(const TowerElement& x) const;
};

TowerMap ramified_base_change(const Tower& from, uint32_t c_extra);
TowerMap unramified_base_change(const Tower& from, uint32_t f_new);

// x -> ((pi^n x + 1)^p - 1)/pi^{pn}, the isogeny defining the level-n group
// scheme; exact.  0 < n <= v(lambda), else bad_n.
TowerElement phi_n(const TowerElement& x, long n);

// Reduction of phi_n mod pi as a polynomial over the residue field: comes
// out x^p for n < v(lambda) and x^p - x at the threshold n = v(lambda); the
// coefficients are computed from the tower, not assumed.
Poly special_fibre_of_phi(const Tower& tw, long n);

} // namespace rankp
