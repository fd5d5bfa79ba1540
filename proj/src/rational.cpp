#include "rankp/rational.hpp"

namespace rankp {

P1Point P1Point::frobenius(unsigned j) const {
    if (at_infinity) return *this;
    FFElem v = value;
    for (unsigned i = 0; i < j % value.field()->f(); ++i) v = v.frobenius();
    return finite(v);
}

RationalFunction::RationalFunction(Field k)
    : k_(k), num_(Poly(k)), den_(Poly(k, {k->one()})) {}

RationalFunction::RationalFunction(Poly num, Poly den)
    : k_(num.field()), num_(std::move(num)), den_(std::move(den)) {
    if (!num_.field()->same_field(*den_.field()))
        fail(err::bad_parameters, "numerator and denominator over different fields");
    if (den_.is_zero()) fail(err::zero_function, "zero denominator");
    reduce();
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = Poly(k_, {k_->one()});
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    FFElem lead = den_.leading();
    if (!lead.is_one()) {
        FFElem li = lead.inv();
        num_ = num_ * li;
        den_ = den_ * li;
    }
}

RationalFunction RationalFunction::from_poly(Poly a) {
    Field k = a.field();
    return RationalFunction(std::move(a), Poly(k, {k->one()}));
}

RationalFunction RationalFunction::constant(const FFElem& c) {
    return from_poly(Poly(c.field(), {c}));
}

RationalFunction RationalFunction::t(const Field& k) {
    return from_poly(Poly(k, {k->zero(), k->one()}));
}

RationalFunction RationalFunction::t_power(const Field& k, int e) {
    Poly one(k, {k->one()});
    if (e >= 0) return RationalFunction(Poly::monomial(k, e, k->one()), one);
    return RationalFunction(one, Poly::monomial(k, -e, k->one()));
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    return *this * o.inv();
}

RationalFunction RationalFunction::inv() const {
    if (is_zero()) fail(err::zero_function, "inverse of the zero function");
    return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(int n) const {
    if (n < 0) return inv().pow(-n);
    RationalFunction acc = constant(k_->one());
    RationalFunction base = *this;
    unsigned e = static_cast<unsigned>(n);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

int RationalFunction::order_at(const P1Point& x) const {
    if (is_zero()) fail(err::zero_function, "order of the zero function");
    if (x.at_infinity) return den_.degree() - num_.degree();
    if (!x.field()->same_field(*k_))
        fail(err::bad_parameters, "point over a different field; extend the function first");
    // num and den are coprime, so only one of the multiplicities is nonzero.
    return num_.root_multiplicity(x.value) - den_.root_multiplicity(x.value);
}

LaurentSeries RationalFunction::local_expand(const P1Point& x, int want_known) const {
    if (is_zero()) return LaurentSeries::zero(k_);
    Poly n(k_), d(k_);
    if (x.at_infinity) {
        n = num_.reverse();
        d = den_.reverse();
    } else {
        if (!x.field()->same_field(*k_))
            fail(err::bad_parameters, "point over a different field; extend the function first");
        n = num_.shift(x.value);
        d = den_.shift(x.value);
    }
    // strip powers of the local parameter
    int vn = 0, vd = 0;
    while (n.coeff(vn).is_zero()) ++vn;
    while (d.coeff(vd).is_zero()) ++vd;
    std::vector<FFElem> nc, dc;
    for (int i = vn; i <= n.degree(); ++i) nc.push_back(n.coeff(i));
    for (int i = vd; i <= d.degree(); ++i) dc.push_back(d.coeff(i));
    int shift = x.at_infinity ? (den_.degree() - num_.degree() + vn - vd) : (vn - vd);
    LaurentSeries ns = LaurentSeries::from_poly(Poly(k_, std::move(nc)));
    LaurentSeries ds = LaurentSeries::from_poly(Poly(k_, std::move(dc)));
    long inv_known = long(want_known) - shift;
    if (inv_known < 0) inv_known = 0;
    LaurentSeries res = ns * ds.inverse(static_cast<int>(inv_known));
    return res.shift_exp(shift).truncate(want_known);
}

bool RationalFunction::is_pth_power(RationalFunction* root) const {
    if (is_zero()) {
        if (root) *root = RationalFunction(k_);
        return true;
    }
    if (!num_.derivative().is_zero() || !den_.derivative().is_zero()) return false;
    if (root) {
        Poly rn(k_), rd(k_);
        if (!num_.is_pth_power(&rn) || !den_.is_pth_power(&rd))
            fail(err::bad_parameters, "derivative vanished but coefficients resist p-th roots");
        *root = RationalFunction(std::move(rn), std::move(rd));
    }
    return true;
}

RationalFunction RationalFunction::map(const FieldEmbedding& e) const {
    return RationalFunction(num_.map(e), den_.map(e));
}

RationalFunction RationalFunction::frobenius(unsigned j) const {
    unsigned r = j % k_->f();
    Poly n = num_, d = den_;
    for (unsigned i = 0; i < r; ++i) {
        std::vector<FFElem> nc, dc;
        for (const auto& c : n.coeffs()) nc.push_back(c.frobenius());
        for (const auto& c : d.coeffs()) dc.push_back(c.frobenius());
        n = Poly(k_, std::move(nc));
        d = Poly(k_, std::move(dc));
    }
    return RationalFunction(std::move(n), std::move(d));
}

bool RationalFunction::operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

std::string RationalFunction::str(const std::string& var) const {
    if (den_.degree() == 0) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

} // namespace rankp
