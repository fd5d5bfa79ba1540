#include "rankp/poly.hpp"

#include <sstream>

namespace rankp {

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly::Poly(Field k, std::vector<FFElem> coeffs) : k_(std::move(k)), c_(std::move(coeffs)) {
    for (const auto& x : c_)
        if (!x.field()->same_field(*k_)) fail(err::bad_parameters, "polynomial coefficient from foreign field");
    trim();
}

Poly Poly::monomial(const Field& k, int deg, const FFElem& coef) {
    if (deg < 0) fail(err::bad_parameters, "monomial degree must be >= 0");
    std::vector<FFElem> c(deg + 1, k->zero());
    c[deg] = coef;
    return Poly(k, std::move(c));
}

Poly Poly::from_ints(const Field& k, const std::vector<long long>& coeffs) {
    std::vector<FFElem> c;
    c.reserve(coeffs.size());
    for (long long v : coeffs) c.push_back(k->from_int(v));
    return Poly(k, std::move(c));
}

FFElem Poly::leading() const {
    if (c_.empty()) fail(err::bad_parameters, "leading coefficient of zero polynomial");
    return c_.back();
}

FFElem Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return k_->zero();
    return c_[i];
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<FFElem> c(std::max(c_.size(), o.c_.size()), k_->zero());
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < c_.size()) c[i] = c[i] + c_[i];
        if (i < o.c_.size()) c[i] = c[i] + o.c_[i];
    }
    return Poly(k_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<FFElem> c = c_;
    for (auto& x : c) x = -x;
    return Poly(k_, std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly(k_);
    std::vector<FFElem> c(c_.size() + o.c_.size() - 1, k_->zero());
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            c[i + j] = c[i + j] + c_[i] * o.c_[j];
    return Poly(k_, std::move(c));
}

Poly Poly::operator*(const FFElem& s) const {
    std::vector<FFElem> c = c_;
    for (auto& x : c) x = x * s;
    return Poly(k_, std::move(c));
}

Poly Poly::pow(unsigned n) const {
    Poly acc(k_, {k_->one()});
    Poly base = *this;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) fail(err::zero_function, "polynomial division by zero");
    Poly r = *this;
    Poly q(k_);
    q.c_.assign(std::max<size_t>(c_.size(), 1), k_->zero());
    FFElem li = d.leading().inv();
    while (r.degree() >= d.degree()) {
        int shift = r.degree() - d.degree();
        FFElem coef = r.leading() * li;
        q.c_[shift] = coef;
        for (int i = 0; i <= d.degree(); ++i)
            r.c_[i + shift] = r.c_[i + shift] - coef * d.c_[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

Poly Poly::derivative() const {
    if (c_.size() < 2) return Poly(k_);
    std::vector<FFElem> c(c_.size() - 1, k_->zero());
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * k_->from_int(static_cast<long long>(i));
    return Poly(k_, std::move(c));
}

FFElem Poly::eval(const FFElem& x) const {
    FFElem acc = k_->zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

// Horner-style repeated division by (t - a): the remainders are the shifted
// coefficients.
Poly Poly::shift(const FFElem& a) const {
    if (a.is_zero() || c_.empty()) return *this;
    // Repeated synthetic division by (t - a): remainders are the shifted
    // coefficients, the quotient feeds the next round.
    std::vector<FFElem> work = c_;
    std::vector<FFElem> out;
    out.reserve(c_.size());
    while (!work.empty()) {
        FFElem rem = k_->zero();
        for (size_t i = work.size(); i-- > 0;) {
            FFElem tmp = work[i] + rem * a;
            work[i] = rem;
            rem = tmp;
        }
        out.push_back(rem);
        work.pop_back(); // top slot is always zero; the rest is the quotient
    }
    return Poly(k_, std::move(out));
}

Poly Poly::reverse() const {
    std::vector<FFElem> c(c_.rbegin(), c_.rend());
    return Poly(k_, std::move(c));
}

Poly Poly::make_monic() const {
    if (is_zero()) return *this;
    return *this * leading().inv();
}

int Poly::root_multiplicity(const FFElem& a) const {
    if (is_zero()) fail(err::zero_function, "root multiplicity in the zero polynomial");
    Poly lin(k_, {-a, k_->one()});
    int m = 0;
    Poly r = *this;
    while (true) {
        auto [q, rem] = r.divmod(lin);
        if (!rem.is_zero()) break;
        ++m;
        r = q;
        if (r.is_zero()) break;
    }
    return m;
}

std::vector<FFElem> Poly::roots() const {
    std::vector<FFElem> out;
    if (is_zero()) fail(err::zero_function, "roots of the zero polynomial");
    for (uint64_t i = 0; i < k_->order(); ++i) {
        FFElem x = k_->element_at(i);
        if (eval(x).is_zero()) out.push_back(x);
    }
    return out;
}

bool Poly::is_pth_power(Poly* root) const {
    uint32_t p = k_->p();
    if (is_zero()) {
        if (root) *root = Poly(k_);
        return true;
    }
    if (static_cast<uint32_t>(degree()) % p != 0 && degree() != 0) return false;
    std::vector<FFElem> rc(degree() / p + 1, k_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (i % p != 0) return false;
        rc[i / p] = c_[i].pth_root();
    }
    if (root) *root = Poly(k_, std::move(rc));
    return true;
}

Poly Poly::map(const FieldEmbedding& e) const {
    std::vector<FFElem> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(e(x));
    return Poly(e.to(), std::move(c));
}

bool Poly::operator==(const Poly& o) const {
    if (!k_->same_field(*o.k_)) return false;
    return c_ == o.c_;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        bool unit_coef = c_[i].is_one() && i > 0;
        if (!unit_coef) {
            bool simple = c_[i].in_prime_field();
            if (!simple) out << "(";
            out << c_[i].str();
            if (!simple) out << ")";
            if (i > 0) out << "*";
        }
        if (i > 0) {
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.make_monic();
}

std::vector<Poly> monic_irreducibles(const Field& k, int degree) {
    if (degree < 1) fail(err::bad_parameters, "irreducible enumeration needs degree >= 1");
    std::vector<Poly> out;
    uint64_t count = 1;
    for (int i = 0; i < degree; ++i) {
        if (count > (uint64_t(1) << 40)) fail(err::bad_parameters, "irreducible enumeration too large");
        count *= k->order();
    }
    for (uint64_t idx = 0; idx < count; ++idx) {
        uint64_t rest = idx;
        std::vector<FFElem> c;
        c.reserve(degree + 1);
        for (int i = 0; i < degree; ++i) {
            c.push_back(k->element_at(rest % k->order()));
            rest /= k->order();
        }
        c.push_back(k->one());
        Poly cand(k, std::move(c));
        bool red = false;
        for (int d = 1; 2 * d <= degree && !red; ++d)
            for (const Poly& q : monic_irreducibles(k, d)) {
                if ((cand % q).is_zero()) {
                    red = true;
                    break;
                }
            }
        if (!red) out.push_back(std::move(cand));
    }
    return out;
}

std::vector<std::pair<Poly, int>> factor(const Poly& a) {
    if (a.is_zero()) fail(err::zero_function, "factoring the zero polynomial");
    std::vector<std::pair<Poly, int>> out;
    Poly rest = a.make_monic();
    const Field& k = a.field();
    // linear factors first (cheap root scan), then higher degrees
    for (int d = 1; rest.degree() > 0; ++d) {
        if (d > rest.degree()) fail(err::bad_parameters, "factor search ran past the degree");
        std::vector<Poly> cands;
        if (d == 1) {
            for (const FFElem& r : rest.roots()) cands.push_back(Poly(k, {-r, k->one()}));
        } else {
            cands = monic_irreducibles(k, d);
        }
        for (const Poly& q : cands) {
            int mult = 0;
            while ((rest % q).is_zero()) {
                rest = rest / q;
                ++mult;
            }
            if (mult > 0) out.push_back({q, mult});
            if (rest.degree() < d) break;
        }
    }
    return out;
}

} // namespace rankp
