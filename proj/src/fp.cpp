#include "rankp/fp.hpp"

#include <algorithm>
#include <sstream>

namespace rankp {

// ---- bootstrap polynomial arithmetic over Z/p on raw coefficient vectors ---
// Used before FFElem exists (modulus search / verification).  Little-endian,
// no trailing zero invariant enforced by trim().

namespace {

using pvec = std::vector<uint32_t>;

void trim(pvec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const pvec& a) { return static_cast<int>(a.size()) - 1; }

pvec pmul(const pvec& a, const pvec& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    pvec c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<uint32_t>((c[i + j] + uint64_t(a[i]) * b[j]) % p);
    trim(c);
    return c;
}

// Remainder of a by monic b.
pvec pmod(pvec a, const pvec& b, uint32_t p) {
    trim(a);
    int db = deg(b);
    while (deg(a) >= db) {
        uint32_t lead = a.back();
        int shift = deg(a) - db;
        for (int i = 0; i <= db; ++i) {
            uint64_t sub = uint64_t(lead) * b[i] % p;
            uint32_t& tgt = a[i + shift];
            tgt = static_cast<uint32_t>((tgt + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

// Monic polynomial of degree d whose non-leading coefficients are the base-p
// digits of idx.
pvec monic_at(uint64_t idx, int d, uint32_t p) {
    pvec m(d + 1, 0);
    for (int i = 0; i < d; ++i) {
        m[i] = static_cast<uint32_t>(idx % p);
        idx /= p;
    }
    m[d] = 1;
    return m;
}

uint64_t ipow(uint64_t b, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Trial division by every monic polynomial of degree 1..f/2.  Desk scale: the
// moduli we build have p^(f/2) tiny, and the check is done once per field.
bool irreducible(const pvec& m, uint32_t p) {
    int f = deg(m);
    if (f < 1) return false;
    for (int d = 1; 2 * d <= f; ++d) {
        uint64_t count = ipow(p, d);
        for (uint64_t idx = 0; idx < count; ++idx) {
            pvec q = monic_at(idx, d, p);
            if (pmod(m, q, p).empty()) return false;
        }
    }
    return true;
}

bool is_prime(uint32_t p) {
    if (p < 2) return false;
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace

// ----------------------------------------------------------------- field ---

FiniteField::FiniteField(uint32_t p, uint32_t f, pvec mod)
    : p_(p), f_(f), mod_(std::move(mod)) {
    order_ = 1;
    for (uint32_t i = 0; i < f; ++i) {
        if (order_ > UINT64_MAX / p) fail(err::bad_parameters, "field order overflows 64 bits");
        order_ *= p;
    }
    if (f_ > 1) gen_name_ = "a" + std::to_string(f_);
}

Field FiniteField::make(uint32_t p, uint32_t f) {
    if (!is_prime(p)) fail(err::bad_parameters, "characteristic must be prime");
    if (f == 0) fail(err::bad_parameters, "extension degree must be positive");
    if (f == 1) return make(p, pvec{0, 1}); // modulus x: elements are constants
    uint64_t count = ipow(p, f);
    for (uint64_t idx = 0; idx < count; ++idx) {
        pvec m = monic_at(idx, static_cast<int>(f), p);
        if (irreducible(m, p)) return Field(new FiniteField(p, f, std::move(m)));
    }
    fail(err::bad_parameters, "no irreducible modulus found"); // unreachable
}

Field FiniteField::make(uint32_t p, const pvec& modulus) {
    if (!is_prime(p)) fail(err::bad_parameters, "characteristic must be prime");
    pvec m = modulus;
    for (auto& c : m) c %= p;
    trim(m);
    if (deg(m) < 1 || m.back() != 1)
        fail(err::bad_parameters, "modulus must be monic of positive degree");
    if (deg(m) > 1 && !irreducible(m, p))
        fail(err::bad_parameters, "modulus is reducible");
    uint32_t f = static_cast<uint32_t>(deg(m));
    return Field(new FiniteField(p, f, std::move(m)));
}

bool FiniteField::same_field(const FiniteField& o) const {
    return p_ == o.p_ && f_ == o.f_ && mod_ == o.mod_;
}

FFElem FiniteField::zero() const { return FFElem(shared_from_this(), pvec(f_, 0)); }

FFElem FiniteField::one() const { return from_int(1); }

FFElem FiniteField::from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    pvec c(f_, 0);
    c[0] = static_cast<uint32_t>(r);
    return FFElem(shared_from_this(), std::move(c));
}

FFElem FiniteField::gen() const {
    if (f_ < 2) fail(err::bad_parameters, "prime field has no extension generator");
    pvec c(f_, 0);
    c[1] = 1;
    return FFElem(shared_from_this(), std::move(c));
}

FFElem FiniteField::from_coeffs(pvec c) const {
    for (auto& x : c) x %= p_;
    // reduce mod modulus if the caller handed in something long
    if (c.size() > f_) {
        c = pmod(std::move(c), mod_, p_);
    }
    c.resize(f_, 0);
    return FFElem(shared_from_this(), std::move(c));
}

FFElem FiniteField::element_at(uint64_t idx) const {
    if (idx >= order_) fail(err::bad_parameters, "element index out of range");
    pvec c(f_, 0);
    for (uint32_t i = 0; i < f_; ++i) {
        c[i] = static_cast<uint32_t>(idx % p_);
        idx /= p_;
    }
    return FFElem(shared_from_this(), std::move(c));
}

// --------------------------------------------------------------- elements ---

void require_same_field(const FFElem& a, const FFElem& b, const char* where) {
    if (!a.field() || !b.field() || !a.field()->same_field(*b.field()))
        fail(err::bad_parameters, std::string("mixed fields in ") + where);
}

FFElem::FFElem(Field k, pvec coeffs) : k_(std::move(k)), c_(std::move(coeffs)) {
    if (c_.size() != k_->f()) fail(err::bad_parameters, "coefficient vector has wrong length");
}

bool FFElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](uint32_t x) { return x == 0; });
}

bool FFElem::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool FFElem::in_prime_field() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

uint32_t FFElem::prime_value() const {
    if (!in_prime_field()) fail(err::bad_parameters, "element not in the prime field");
    return c_[0];
}

FFElem FFElem::operator+(const FFElem& o) const {
    require_same_field(*this, o, "+");
    pvec c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = (c_[i] + o.c_[i]) % k_->p();
    return FFElem(k_, std::move(c));
}

FFElem FFElem::operator-(const FFElem& o) const {
    require_same_field(*this, o, "-");
    pvec c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = (c_[i] + k_->p() - o.c_[i]) % k_->p();
    return FFElem(k_, std::move(c));
}

FFElem FFElem::operator-() const {
    pvec c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = (k_->p() - c_[i]) % k_->p();
    return FFElem(k_, std::move(c));
}

FFElem FFElem::operator*(const FFElem& o) const {
    require_same_field(*this, o, "*");
    pvec prod = pmul(c_, o.c_, k_->p());
    prod = pmod(std::move(prod), k_->modulus(), k_->p());
    prod.resize(k_->f(), 0);
    return FFElem(k_, std::move(prod));
}

FFElem FFElem::operator/(const FFElem& o) const { return *this * o.inv(); }

// Extended Euclid against the modulus.  For f = 1 this is just a modular
// inverse of the constant.
FFElem FFElem::inv() const {
    if (is_zero()) fail(err::zero_function, "inverse of zero");
    uint32_t p = k_->p();
    pvec r0 = k_->modulus(), r1 = c_;
    trim(r1);
    pvec s0 = {}, s1 = {1}; // s tracks the cofactor of *this
    while (!r1.empty()) {
        // r0 = q*r1 + r2 with r1 not necessarily monic: scale by lead inverse
        uint32_t lead = r1.back();
        uint64_t li = 1, e = p - 2, b = lead;
        while (e) { // lead^(p-2) mod p
            if (e & 1) li = li * b % p;
            b = b * b % p;
            e >>= 1;
        }
        pvec r2 = r0, q(std::max<size_t>(r0.size(), 1), 0);
        while (deg(r2) >= deg(r1)) {
            int shift = deg(r2) - deg(r1);
            uint32_t coef = static_cast<uint32_t>(uint64_t(r2.back()) * li % p);
            q[shift] = coef;
            for (int i = 0; i <= deg(r1); ++i) {
                uint64_t sub = uint64_t(coef) * r1[i] % p;
                r2[i + shift] = static_cast<uint32_t>((r2[i + shift] + p - sub) % p);
            }
            trim(r2);
        }
        trim(q);
        // (r0, r1) <- (r1, r2); (s0, s1) <- (s1, s0 - q*s1)
        pvec qs = pmul(q, s1, p);
        pvec s2 = s0;
        s2.resize(std::max(s2.size(), qs.size()), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = (s2[i] + p - qs[i]) % p;
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd (a nonzero constant since modulus is irreducible and c_ != 0)
    if (deg(r0) != 0) fail(err::bad_parameters, "gcd with modulus not constant");
    uint32_t g = r0[0];
    uint64_t gi = 1, e = p - 2, b = g;
    while (e) {
        if (e & 1) gi = gi * b % p;
        b = b * b % p;
        e >>= 1;
    }
    for (auto& x : s0) x = static_cast<uint32_t>(uint64_t(x) * gi % p);
    s0 = pmod(std::move(s0), k_->modulus(), p);
    s0.resize(k_->f(), 0);
    return FFElem(k_, std::move(s0));
}

FFElem FFElem::pow(long long n) const {
    if (n < 0) return inv().pow(-n);
    FFElem acc = k_->one(), base = *this;
    unsigned long long e = static_cast<unsigned long long>(n);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

FFElem FFElem::frobenius() const { return pow(k_->p()); }

FFElem FFElem::pth_root() const {
    FFElem r = *this;
    for (uint32_t i = 1; i < k_->f(); ++i) r = r.frobenius();
    return r;
}

bool FFElem::operator==(const FFElem& o) const {
    if (!k_ || !o.k_) return !k_ && !o.k_;
    return k_->same_field(*o.k_) && c_ == o.c_;
}

std::string FFElem::str() const {
    std::ostringstream out;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) out << "+";
        first = false;
        if (i == 0) {
            out << c_[i];
        } else {
            if (c_[i] != 1) out << c_[i] << "*";
            out << k_->gen_name();
            if (i > 1) out << "^" << i;
        }
    }
    if (first) out << "0";
    return out.str();
}

// ------------------------------------------------------------- embeddings ---

namespace {

FFElem eval_at(const std::vector<uint32_t>& poly, const FFElem& x) {
    FFElem acc = x.field()->zero();
    for (size_t i = poly.size(); i-- > 0;) {
        acc = acc * x + x.field()->from_int(poly[i]);
    }
    return acc;
}

} // namespace

FieldEmbedding::FieldEmbedding(Field from, Field to) : from_(std::move(from)), to_(std::move(to)) {
    if (from_->p() != to_->p() || to_->f() % from_->f() != 0)
        fail(err::bad_parameters, "no embedding: need same p and f | f'");
    if (from_->f() == 1) {
        im_ = to_->zero(); // unused; prime field maps by from_int
        return;
    }
    for (uint64_t idx = 0; idx < to_->order(); ++idx) {
        FFElem cand = to_->element_at(idx);
        if (eval_at(from_->modulus(), cand).is_zero()) {
            im_ = cand;
            return;
        }
    }
    fail(err::bad_parameters, "modulus has no root in the target field");
}

FieldEmbedding::FieldEmbedding(Field from, Field to, FFElem gen_image)
    : from_(std::move(from)), to_(std::move(to)), im_(std::move(gen_image)) {
    if (from_->p() != to_->p() || to_->f() % from_->f() != 0)
        fail(err::bad_parameters, "no embedding: need same p and f | f'");
    if (from_->f() > 1 && !eval_at(from_->modulus(), im_).is_zero())
        fail(err::bad_parameters, "prescribed generator image is not a root of the modulus");
}

FFElem FieldEmbedding::operator()(const FFElem& x) const {
    if (!x.field()->same_field(*from_)) fail(err::bad_parameters, "embedding applied to foreign element");
    if (from_->f() == 1) return to_->from_int(x.coeffs()[0]);
    FFElem acc = to_->zero();
    for (size_t i = x.coeffs().size(); i-- > 0;) {
        acc = acc * im_ + to_->from_int(x.coeffs()[i]);
    }
    return acc;
}

} // namespace rankp
