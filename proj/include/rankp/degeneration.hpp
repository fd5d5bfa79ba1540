#pragma once

#include <cstdint>
#include <vector>

#include "rankp/annulus.hpp"
#include "rankp/torsor.hpp"

namespace rankp {

// Outcome of the Kummer-unit normalization loop over the annulus.  After
// stripping pi^{p*alpha} and absorbing p-th-power factors (both moves keep
// the class of the torsor T^p = u), the unit lands in exactly one shape:
//   mu_p:     reduction u-bar nonzero and certified not a p-th power (n = 0)
//   alpha_p:  u ~ 1 + pi^{pn} a with 0 < n < v(lambda), a-bar not a p-th power
//   etale_zp: u ~ 1 + lambda^p a (n = v(lambda)); datum = Artin-Schreier class
// or the unit is a p-th power to working precision (trivial flag; the datum
// is then the neutral 1).
struct NormalForm {
    TorsorKind kind;
    bool trivial;
    long n;              // group-scheme level: 0, v(lambda), or strictly between
    LaurentSeries datum; // u-bar / a-bar / AS datum over the residue field
    long pi_strips;      // alpha, from the pi^{p*alpha} removed up front
    int absorptions;     // p-th-power factors folded in by the loop
};

// Iterative normalization.  `window` bounds the T-window used whenever a
// reduced root has to be inverted (non-monomial roots make the inverse an
// infinite series).  Errors: ramified_input_content / extension_required
// carry the minimal base-change degree as payload; precision_exhausted means
// no decision was possible at working precision (the class is
// indistinguishable from trivial but not certified).
NormalForm normalize_kummer_unit(const AnnulusElement& u, int window = 64);

// Classification record for the special fibre of the torsor T^p = u.
struct SpecializationReport {
    TorsorKind kind;
    bool trivial_class;
    long delta;           // different degree v(p) - n(p-1), in pi-units
    long n;               // group-scheme level
    int m;                // conductor of the fibre datum at the boundary t = 0
    long h;               // dlog residue there (mu_p fibres with m = 0), else 0
    bool has_ord;
    int ord;              // ord of the fibre differential / reduced AS datum
    long level;           // filtration level (= n; trivial classes sit at v(lambda))
    uint32_t extension_c; // cumulative ramified base change applied (1 = none)
    CharPTorsor special_fibre;
};

SpecializationReport specialize(const AnnulusElement& u, int window = 64);

// Like specialize, but when classification demands a ramified base change it
// applies the proposed minimal one and retries, up to total degree max_c.
SpecializationReport specialize_auto(const AnnulusElement& u, uint32_t max_c = 64,
                                     int window = 64);

// Class equality of two special fibres of the same kind (germ data).
bool special_fibre_class_equal(const CharPTorsor& a, const CharPTorsor& b);

// Specialization restricted to mu_p reductions is a group homomorphism: the
// fibre class of u*v must equal the product of the fibre classes (and be
// trivial exactly when that product is a p-th power).  Inputs must both
// reduce mu_p-style (level 0 or trivial).
bool sp_homomorphism_check(const AnnulusElement& u, const AnnulusElement& v,
                           int window = 64);

// Unramified Frobenius powers commute with specialization: the scalar report
// data agree and the fibre of u^sigma is the sigma-transform of the fibre.
bool galois_equivariance_check(unsigned j, const AnnulusElement& u, int window = 64);

// delta recomputed from the derivative of the normalized equation in the
// substituted variable: v(p * pi^n) - pn by tower arithmetic.  Must agree
// with the report's delta on every classifiable input.
long different_degree_oracle(const AnnulusElement& u, int window = 64);

// The report's filtration level (trivial classes: v(lambda)).
long filtration_level(const AnnulusElement& u, int window = 64);

// bucket[n] = indices of the units with level >= n, for n = 0..v(lambda);
// nested decreasingly by construction.
std::vector<std::vector<size_t>> filtration_buckets(const Tower& tw,
                                                    const std::vector<AnnulusElement>& us,
                                                    int window = 64);

} // namespace rankp
