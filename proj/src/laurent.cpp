#include "rankp/laurent.hpp"

#include <sstream>

namespace rankp {

void LaurentSeries::put(int e, const FFElem& v) {
    if (e > known_) return;
    if (v.is_zero()) {
        c_.erase(e);
        return;
    }
    c_[e] = v;
}

LaurentSeries LaurentSeries::from_terms(Field k, const std::map<int, FFElem>& terms, int known) {
    LaurentSeries s(std::move(k), known);
    for (const auto& [e, v] : terms) {
        if (!v.field()->same_field(*s.k_)) fail(err::bad_parameters, "series coefficient from foreign field");
        s.put(e, v);
    }
    return s;
}

LaurentSeries LaurentSeries::monomial(Field k, int e, const FFElem& c) {
    LaurentSeries s(std::move(k), kExact);
    s.put(e, c);
    return s;
}

LaurentSeries LaurentSeries::from_poly(const Poly& a) {
    LaurentSeries s(a.field(), kExact);
    for (int i = 0; i <= a.degree(); ++i) s.put(i, a.coeff(i));
    return s;
}

std::optional<int> LaurentSeries::ord() const {
    if (c_.empty()) return std::nullopt;
    return c_.begin()->first;
}

int LaurentSeries::lo_bound() const {
    if (!c_.empty()) return c_.begin()->first;
    return known_ >= kExact ? kExact : known_ + 1;
}

FFElem LaurentSeries::coeff(int e) const {
    if (e > known_)
        fail(err::window_too_small, "coefficient at exponent " + std::to_string(e) +
                                        " beyond known precision " + std::to_string(known_));
    auto it = c_.find(e);
    return it == c_.end() ? k_->zero() : it->second;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    if (!k_->same_field(*o.k_)) fail(err::bad_parameters, "series over different fields");
    LaurentSeries s(k_, std::min(known_, o.known_));
    for (const auto& [e, v] : c_) s.put(e, v);
    for (const auto& [e, v] : o.c_) s.put(e, s.coeff_raw(e) + v);
    return s;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries s(k_, known_);
    for (const auto& [e, v] : c_) s.put(e, -v);
    return s;
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    if (!k_->same_field(*o.k_)) fail(err::bad_parameters, "series over different fields");
    long ka = known_, kb = o.known_;
    long la = lo_bound(), lb = o.lo_bound();
    LaurentSeries s(k_, clamp_known(std::min(ka + lb, kb + la)));
    for (const auto& [ea, va] : c_)
        for (const auto& [eb, vb] : o.c_) {
            long e = long(ea) + eb;
            if (e > s.known_) continue;
            int ei = static_cast<int>(e);
            s.put(ei, s.coeff_raw(ei) + va * vb);
        }
    return s;
}

LaurentSeries LaurentSeries::operator*(const FFElem& v) const {
    LaurentSeries s(k_, known_);
    for (const auto& [e, c] : c_) s.put(e, c * v);
    return s;
}

LaurentSeries LaurentSeries::shift_exp(int k) const {
    LaurentSeries s(k_, clamp_known(long(known_) + k));
    for (const auto& [e, v] : c_) s.put(e + k, v);
    return s;
}

LaurentSeries LaurentSeries::truncate(int new_known) const {
    if (new_known >= known_) return *this;
    LaurentSeries s(k_, new_known);
    for (const auto& [e, v] : c_) s.put(e, v);
    return s;
}

LaurentSeries LaurentSeries::derivative() const {
    LaurentSeries s(k_, clamp_known(long(known_) - 1));
    for (const auto& [e, v] : c_) s.put(e - 1, v * k_->from_int(e));
    return s;
}

LaurentSeries LaurentSeries::inverse(int want_known) const {
    auto mo = ord();
    if (!mo) fail(err::not_a_unit, "inverting a series that is zero on its window");
    int m = *mo;
    // The inverse of a series known to K with leading exponent m is certified
    // only up to exponent K - 2m.
    if (!exact()) {
        long avail = long(known_) - 2L * m;
        if (avail < want_known)
            fail(err::window_too_small, "inverse wants exponent " + std::to_string(want_known) +
                                            " but input window supports only " + std::to_string(avail));
    }
    FFElem ci = c_.begin()->second.inv();
    // Termwise solve of u * x = 1: equation n pairs the new unknown x_{n-m}
    // with u_m and already-known x_j against deeper u_i.
    std::map<int, FFElem> x;
    for (int j = -m; j <= want_known; ++j) {
        int n = j + m;
        FFElem acc = k_->zero();
        for (const auto& [i, u] : c_) {
            if (i <= m) continue;
            int xj = n - i; // < j since i > m
            auto it = x.find(xj);
            if (it != x.end()) acc = acc + u * it->second;
        }
        FFElem val = (((n == 0) ? k_->one() : k_->zero()) - acc) * ci;
        if (!val.is_zero()) x[j] = val;
    }
    LaurentSeries out(k_, want_known);
    for (const auto& [e, v] : x) out.put(e, v);
    return out;
}

LaurentSeries LaurentSeries::dlog(int want_known) const {
    auto m = ord();
    if (!m) fail(err::zero_function, "dlog of a series that is zero on its window");
    // Exact input: meet the requested window.  Truncated input: deliver the
    // best window the data supports and let the result's known() say so.
    LaurentSeries du = derivative();
    LaurentSeries ui = inverse(exact() ? clamp_known(long(want_known) - long(*m) + 1)
                                       : clamp_known(long(known_) - 2 * long(*m)));
    LaurentSeries res = du * ui;
    if (res.exact() || !exact()) return res;
    return res.truncate(want_known);
}

LaurentSeries LaurentSeries::pth_power() const {
    uint32_t p = k_->p();
    long nk = exact() ? long(kExact) : long(p) * (long(known_) + 1) - 1;
    LaurentSeries s(k_, clamp_known(nk));
    for (const auto& [e, v] : c_) s.put(e * static_cast<int>(p), v.pow(p));
    return s;
}

std::optional<LaurentSeries> LaurentSeries::pth_root(int* bad_exp) const {
    int p = static_cast<int>(k_->p());
    for (const auto& [e, v] : c_) {
        (void)v;
        if (((e % p) + p) % p != 0) {
            if (bad_exp) *bad_exp = e;
            return std::nullopt;
        }
    }
    auto fdiv = [](int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    LaurentSeries s(k_, exact() ? kExact : fdiv(known_, p));
    for (const auto& [e, v] : c_) s.put(e / p, v.pth_root());
    return s;
}

LaurentSeries LaurentSeries::map(const FieldEmbedding& e) const {
    LaurentSeries s(e.to(), known_);
    for (const auto& [exp, v] : c_) s.put(exp, e(v));
    return s;
}

LaurentSeries LaurentSeries::frobenius(unsigned j) const {
    LaurentSeries s(k_, known_);
    for (const auto& [e, v] : c_) {
        FFElem w = v;
        for (unsigned i = 0; i < j % k_->f(); ++i) w = w.frobenius();
        s.put(e, w);
    }
    return s;
}

bool LaurentSeries::agrees_with(const LaurentSeries& o) const {
    if (!k_->same_field(*o.k_)) return false;
    int upto = std::min(known_, o.known_);
    for (const auto& [e, v] : c_)
        if (e <= upto && !(o.coeff(e) == v)) return false;
    for (const auto& [e, v] : o.c_)
        if (e <= upto && !(coeff(e) == v)) return false;
    return true;
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
    return k_->same_field(*o.k_) && known_ == o.known_ && c_ == o.c_;
}

std::string LaurentSeries::str(const std::string& var) const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, v] : c_) {
        if (!first) out << " + ";
        first = false;
        bool unit_coef = v.is_one() && e != 0;
        if (!unit_coef) {
            bool simple = v.in_prime_field();
            if (!simple) out << "(";
            out << v.str();
            if (!simple) out << ")";
            if (e != 0) out << "*";
        }
        if (e != 0) {
            out << var;
            if (e != 1) out << "^" << e;
        }
    }
    if (first) out << "0";
    if (!exact()) out << " + O(" << var << "^" << (known_ + 1) << ")";
    return out.str();
}

std::pair<Poly, int> laurent_poly_parts(const LaurentSeries& s) {
    if (!s.exact()) fail(err::bad_parameters, "truncated series is not a Laurent polynomial");
    int shift = 0;
    if (auto m = s.ord(); m && *m < 0) shift = -*m;
    std::vector<FFElem> c;
    for (const auto& [e, v] : s.terms()) {
        int idx = e + shift;
        if (static_cast<int>(c.size()) <= idx) c.resize(idx + 1, s.field()->zero());
        c[idx] = v;
    }
    return {Poly(s.field(), std::move(c)), shift};
}

} // namespace rankp
