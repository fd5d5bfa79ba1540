#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rankp/errors.hpp"

namespace rankp {

class FiniteField;
using Field = std::shared_ptr<const FiniteField>;

// Element of F_{p^f}, stored as a polynomial of degree < f in the field's
// generator, coefficients in [0, p).  Elements carry their field; mixing
// fields is a bad_parameters error, not UB.
class FFElem {
  public:
    FFElem() = default;
    FFElem(Field k, std::vector<uint32_t> coeffs);

    const Field& field() const { return k_; }
    const std::vector<uint32_t>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    // True when the element lies in the prime field F_p.
    bool in_prime_field() const;
    // Value in [0, p) for prime-field elements; bad_parameters otherwise.
    uint32_t prime_value() const;

    FFElem operator+(const FFElem& o) const;
    FFElem operator-(const FFElem& o) const;
    FFElem operator-() const;
    FFElem operator*(const FFElem& o) const;
    FFElem operator/(const FFElem& o) const;
    FFElem inv() const;
    FFElem pow(long long n) const;

    // x -> x^p, the arithmetic Frobenius.
    FFElem frobenius() const;
    // Unique y with y^p = x (the field is perfect): y = x^{p^{f-1}}.
    FFElem pth_root() const;

    bool operator==(const FFElem& o) const;
    bool operator!=(const FFElem& o) const { return !(*this == o); }

    std::string str() const;

  private:
    Field k_;
    std::vector<uint32_t> c_;
};

class FiniteField : public std::enable_shared_from_this<FiniteField> {
  public:
    // F_{p^f} with the lexicographically least monic irreducible modulus,
    // so the same (p, f) always names the same field.
    static Field make(uint32_t p, uint32_t f);
    // Explicit monic modulus (length f+1, little-endian).  Irreducibility is
    // checked by trial division; reducible input is a bad_parameters error.
    static Field make(uint32_t p, const std::vector<uint32_t>& modulus);

    uint32_t p() const { return p_; }
    uint32_t f() const { return f_; }
    const std::vector<uint32_t>& modulus() const { return mod_; }
    // p^f as uint64; bad_parameters if it does not fit (desk scale only).
    uint64_t order() const { return order_; }
    // Name of the generator in printed output: "a<f>" (empty for f = 1).
    const std::string& gen_name() const { return gen_name_; }

    FFElem zero() const;
    FFElem one() const;
    FFElem from_int(long long n) const;
    FFElem gen() const; // residue class of x; bad_parameters when f = 1
    FFElem from_coeffs(std::vector<uint32_t> c) const; // degree < f after reduction mod p
    // idx-th element in base-p digit order; idx < order().  Gives a cheap
    // deterministic enumeration for brute-force scans.
    FFElem element_at(uint64_t idx) const;

    bool same_field(const FiniteField& o) const;

  private:
    FiniteField(uint32_t p, uint32_t f, std::vector<uint32_t> mod);

    uint32_t p_ = 0, f_ = 0;
    std::vector<uint32_t> mod_;
    uint64_t order_ = 0;
    std::string gen_name_;

    friend class FFElem;
};

// Field homomorphism F_{p^f} -> F_{p^{f'}} with f | f', determined by the
// image of the generator (a root of the small modulus in the big field).
class FieldEmbedding {
  public:
    // Finds the lexicographically first root by scanning the big field.
    FieldEmbedding(Field from, Field to);
    // Prescribed generator image (checked to be a root of from->modulus()).
    FieldEmbedding(Field from, Field to, FFElem gen_image);

    const Field& from() const { return from_; }
    const Field& to() const { return to_; }
    const FFElem& gen_image() const { return im_; }

    FFElem operator()(const FFElem& x) const;

  private:
    Field from_, to_;
    FFElem im_;
};

void require_same_field(const FFElem& a, const FFElem& b, const char* where);

} // namespace rankp
