#include "rankp/annulus.hpp"

#include <sstream>

namespace rankp {

namespace {

int sat_add(int a, int b) {
    if (a >= AnnulusElement::kExactT) return AnnulusElement::kExactT; // exact stays exact
    long s = static_cast<long>(a) + b;
    if (s >= AnnulusElement::kExactT) return AnnulusElement::kExactT;
    if (s <= -AnnulusElement::kExactT) return -AnnulusElement::kExactT;
    return static_cast<int>(s);
}

void require_same(const AnnulusElement& a, const AnnulusElement& b, const char* where) {
    if (!a.tower()->same_tower(*b.tower()))
        fail(err::bad_parameters, std::string("mixing annulus elements over different towers in ") + where);
}

} // namespace

// ------------------------------------------------------------- construction

AnnulusElement AnnulusElement::zero(const Tower& tw) { return AnnulusElement(tw, kExactT); }

AnnulusElement AnnulusElement::one(const Tower& tw) { return from_tower(tw, tw->one(), 0); }

AnnulusElement AnnulusElement::t_power(const Tower& tw, int k) {
    return from_tower(tw, tw->one(), k);
}

AnnulusElement AnnulusElement::from_tower(const Tower& tw, const TowerElement& a, int exp) {
    if (!tw->same_tower(*a.tower()))
        fail(err::bad_parameters, "coefficient from a different tower");
    AnnulusElement r(tw, kExactT);
    r.put(exp, a);
    return r;
}

AnnulusElement AnnulusElement::lift_series(const Tower& tw, const LaurentSeries& s) {
    if (!tw->residue_field()->same_field(*s.field()))
        fail(err::bad_parameters, "lifting a series over the wrong residue field");
    AnnulusElement r(tw, s.exact() ? kExactT : s.known());
    for (const auto& [e, c] : s.terms()) r.put(e, tw->from_residue(c));
    return r;
}

void AnnulusElement::put(int e, const TowerElement& v) {
    if (e > hi_) return; // outside the window: nothing may be claimed there
    // At working precision, "zero to at least N digits" is identified with
    // the absent (exact zero) slot; shallower zeros carry information.
    if (v.is_zero_to_prec() && v.prec() >= tw_->N()) {
        c_.erase(e);
        return;
    }
    c_.insert_or_assign(e, v);
}

int AnnulusElement::lo_stored() const { return c_.empty() ? 0 : c_.begin()->first; }

TowerElement AnnulusElement::coeff(int e) const {
    if (e > hi_) fail(err::window_too_small, "coefficient beyond the carried T-window", e);
    auto it = c_.find(e);
    return it == c_.end() ? tw_->zero() : it->second;
}

// -------------------------------------------------------------- arithmetic

AnnulusElement AnnulusElement::operator+(const AnnulusElement& o) const {
    require_same(*this, o, "+");
    AnnulusElement r(tw_, std::min(hi_, o.hi_));
    for (const auto& [e, v] : c_) {
        if (e > r.hi_) continue;
        auto it = o.c_.find(e);
        r.put(e, it == o.c_.end() ? v : v + it->second);
    }
    for (const auto& [e, v] : o.c_) {
        if (e > r.hi_ || c_.count(e)) continue;
        r.put(e, v);
    }
    return r;
}

AnnulusElement AnnulusElement::operator-() const {
    AnnulusElement r(tw_, hi_);
    for (const auto& [e, v] : c_) r.put(e, -v);
    return r;
}

AnnulusElement AnnulusElement::operator-(const AnnulusElement& o) const {
    return *this + (-o);
}

AnnulusElement AnnulusElement::operator*(const AnnulusElement& o) const {
    require_same(*this, o, "*");
    int hi = std::min(sat_add(hi_, o.lo_stored()), sat_add(o.hi_, lo_stored()));
    AnnulusElement r(tw_, hi);
    std::map<int, TowerElement> acc;
    for (const auto& [i, a] : c_) {
        for (const auto& [j, b] : o.c_) {
            int e = i + j;
            if (e > hi) continue;
            TowerElement p = a * b;
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(e, std::move(p));
            else
                it->second = it->second + p;
        }
    }
    for (auto& [e, v] : acc) r.put(e, v);
    return r;
}

AnnulusElement AnnulusElement::operator*(const TowerElement& s) const {
    AnnulusElement r(tw_, hi_);
    for (const auto& [e, v] : c_) r.put(e, v * s);
    return r;
}

AnnulusElement AnnulusElement::pow(unsigned n) const {
    AnnulusElement acc = one(tw_);
    AnnulusElement base = *this;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

AnnulusElement AnnulusElement::mul_pow_pi(int k) const {
    if (k < 0) return div_pow_pi(-k);
    if (k == 0) return *this;
    AnnulusElement r(tw_, hi_);
    for (const auto& [e, v] : c_) r.put(e, v.mul_pow_pi(k));
    return r;
}

AnnulusElement AnnulusElement::div_pow_pi(int k) const {
    if (k < 0) return mul_pow_pi(-k);
    if (k == 0) return *this;
    AnnulusElement r(tw_, hi_);
    for (const auto& [e, v] : c_) r.put(e, v.div_pow_pi(k));
    return r;
}

AnnulusElement AnnulusElement::truncate_hi(int new_hi) const {
    if (new_hi >= hi_) return *this;
    AnnulusElement r(tw_, new_hi);
    for (const auto& [e, v] : c_) r.put(e, v);
    return r;
}

AnnulusElement AnnulusElement::cap_prec(long new_prec) const {
    AnnulusElement r(tw_, hi_);
    for (const auto& [e, v] : c_) r.put(e, v.cap_prec(new_prec));
    return r;
}

// ------------------------------------------------------ content and residue

long AnnulusElement::content() const {
    if (c_.empty()) fail(err::zero_function, "content of the zero element");
    long best = TowerElement::kInfVal;
    long starved_floor = TowerElement::kInfVal;
    for (const auto& [e, v] : c_) {
        long w = v.valuation();
        if (w >= TowerElement::kInfVal)
            starved_floor = std::min(starved_floor, v.prec());
        else
            best = std::min(best, w);
    }
    if (best >= TowerElement::kInfVal)
        fail(err::precision_exhausted, "content of an element that vanishes to its precision");
    if (starved_floor < best)
        fail(err::precision_exhausted, "content not certifiable: a coefficient is zero only to fewer digits than the visible minimum");
    return best;
}

LaurentSeries AnnulusElement::reduce_mod_pi() const {
    const Field& k = tw_->residue_field();
    int known = exact_window() ? LaurentSeries::kExact : hi_;
    if (c_.empty()) return LaurentSeries::zero(k, known);
    long s = content();
    if (s > 0)
        fail(err::positive_pi_content, "residue of an element with positive pi-content", s);
    std::map<int, FFElem> terms;
    for (const auto& [e, v] : c_) {
        FFElem r = v.reduce_mod_pi();
        if (!r.is_zero()) terms.emplace(e, r);
    }
    return LaurentSeries::from_terms(k, terms, known);
}

AnnulusElement AnnulusElement::inv(int want_hi) const {
    if (c_.empty()) fail(err::not_a_unit, "inverse of the zero element");
    long s = content(); // certifies; precision_exhausted bubbles up
    if (s > 0)
        fail(err::not_a_unit, "inverse of an element with positive pi-content (the ring is integral)", s);

    // single exact term: invert the coefficient, flip the exponent
    if (c_.size() == 1 && exact_window()) {
        const auto& [e, a] = *c_.begin();
        return from_tower(tw_, a.inv(), -e);
    }

    LaurentSeries ubar = reduce_mod_pi();
    LaurentSeries vbar(tw_->residue_field(), 0);
    if (ubar.terms().size() == 1) {
        const auto& [e, cc] = *ubar.terms().begin();
        vbar = LaurentSeries::monomial(tw_->residue_field(), -e, cc.inv());
    } else {
        if (want_hi >= kExactT)
            fail(err::bad_parameters, "inverse of a multi-term element needs a finite T-window");
        vbar = ubar.inverse(want_hi);
    }

    // u^{-1} = v0 * (1 + w + w^2 + ...) with w = 1 - u v0 of content >= 1,
    // summed until the tail is negligible at working precision (content >= N,
    // reached after at most N rounds since the content grows every round).
    AnnulusElement v0 = lift_series(tw_, vbar);
    AnnulusElement w = (one(tw_) - *this * v0).cap_prec(tw_->N());
    AnnulusElement sum = one(tw_);
    AnnulusElement term = w;
    long guard = tw_->N() + 2;
    while (!term.is_zero_to_prec()) {
        if (--guard < 0)
            fail(err::precision_exhausted, "inverse correction did not converge at working precision");
        sum = sum + term;
        term = (term * w).cap_prec(tw_->N());
    }
    AnnulusElement r = (v0 * sum).cap_prec(tw_->N());
    if (want_hi < kExactT && r.hi_ < want_hi)
        fail(err::window_too_small, "inverse window narrower than requested", r.hi_);
    return r;
}

// --------------------------------------------------------------- functorial

AnnulusElement AnnulusElement::frobenius(unsigned j) const {
    AnnulusElement r(tw_, hi_);
    for (const auto& [e, v] : c_) r.put(e, v.frobenius(j));
    return r;
}

AnnulusElement AnnulusElement::map(const TowerMap& m) const {
    if (!tw_->same_tower(*m.from))
        fail(err::bad_parameters, "tower map does not start at this element's tower");
    AnnulusElement r(m.to, hi_);
    for (const auto& [e, v] : c_) r.put(e, m(v));
    return r;
}

bool AnnulusElement::is_zero_to_prec() const {
    for (const auto& [e, v] : c_)
        if (!v.is_zero_to_prec()) return false;
    return true;
}

bool AnnulusElement::is_one_to_prec() const { return (*this - one(tw_)).is_zero_to_prec(); }

bool AnnulusElement::congruent_to(const AnnulusElement& o) const {
    return (*this - o).is_zero_to_prec();
}

std::string AnnulusElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : c_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.str() << ")";
        if (e != 0) {
            os << "*T";
            if (e != 1) os << "^" << e;
        }
    }
    if (first) os << "0";
    if (!exact_window()) os << " + O(T^" << (hi_ + 1) << ")";
    return os.str();
}

AnnulusElement phi_n(const AnnulusElement& x, long n) {
    const auto& tw = *x.tower();
    if (n <= 0 || n > tw.v_lambda())
        fail(err::bad_n, "phi_n level must satisfy 0 < n <= v(lambda)", n);
    AnnulusElement one = AnnulusElement::one(x.tower());
    AnnulusElement t = (x.mul_pow_pi(static_cast<int>(n)) + one).pow(tw.p()) - one;
    return t.div_pow_pi(static_cast<int>(n * tw.p()));
}

} // namespace rankp
