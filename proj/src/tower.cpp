#include "rankp/tower.hpp"

#include <algorithm>
#include <sstream>

namespace rankp {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

bool prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// binom(p, k) exactly; fits 64 bits for the p we accept (p <= 61).
u64 binom_u64(uint32_t p, uint32_t k) {
    u128 acc = 1;
    for (uint32_t i = 1; i <= k; ++i) {
        acc = acc * (p - k + i);
        acc /= i; // exact: product of i consecutive integers is divisible by i!
    }
    return static_cast<u64>(acc);
}

} // namespace

// ---------------------------------------------------------------- W level

u64 LocalFieldTower::addm(u64 a, u64 b) const {
    u64 s = a + b; // no overflow: both < 2^62
    return s >= pm_ ? s - pm_ : s;
}

u64 LocalFieldTower::subm(u64 a, u64 b) const { return a >= b ? a - b : a + pm_ - b; }

u64 LocalFieldTower::mulm(u64 a, u64 b) const {
    return static_cast<u64>((u128)a * b % pm_);
}

std::vector<u64> LocalFieldTower::wscalar(u64 v) const {
    std::vector<u64> r(f_, 0);
    r[0] = v % pm_;
    return r;
}

std::vector<u64> LocalFieldTower::wadd(const std::vector<u64>& a, const std::vector<u64>& b) const {
    std::vector<u64> r(f_);
    for (uint32_t i = 0; i < f_; ++i) r[i] = addm(a[i], b[i]);
    return r;
}

std::vector<u64> LocalFieldTower::wsub(const std::vector<u64>& a, const std::vector<u64>& b) const {
    std::vector<u64> r(f_);
    for (uint32_t i = 0; i < f_; ++i) r[i] = subm(a[i], b[i]);
    return r;
}

std::vector<u64> LocalFieldTower::wneg(const std::vector<u64>& a) const {
    std::vector<u64> r(f_);
    for (uint32_t i = 0; i < f_; ++i) r[i] = subm(0, a[i]);
    return r;
}

std::vector<u64> LocalFieldTower::wscale(const std::vector<u64>& a, u64 s) const {
    std::vector<u64> r(f_);
    for (uint32_t i = 0; i < f_; ++i) r[i] = mulm(a[i], s);
    return r;
}

std::vector<u64> LocalFieldTower::wmul(const std::vector<u64>& a, const std::vector<u64>& b) const {
    if (f_ == 1) return {mulm(a[0], b[0])};
    std::vector<u64> prod(2 * f_ - 1, 0);
    for (uint32_t i = 0; i < f_; ++i) {
        if (a[i] == 0) continue;
        for (uint32_t j = 0; j < f_; ++j)
            prod[i + j] = addm(prod[i + j], mulm(a[i], b[j]));
    }
    // fold y^k for k >= f via the monic modulus: y^f = -(low part)
    for (int k = 2 * static_cast<int>(f_) - 2; k >= static_cast<int>(f_); --k) {
        u64 v = prod[k];
        if (v == 0) continue;
        prod[k] = 0;
        for (uint32_t i = 0; i < f_; ++i)
            prod[k - f_ + i] = subm(prod[k - f_ + i], mulm(v, wmod_[i]));
    }
    prod.resize(f_);
    return prod;
}

bool LocalFieldTower::wis_zero(const std::vector<u64>& a) const {
    for (u64 v : a)
        if (v != 0) return false;
    return true;
}

long LocalFieldTower::wvalp(const std::vector<u64>& a) const {
    long best = M_;
    for (u64 v : a) {
        if (v == 0) continue;
        long w = 0;
        while (v % p_ == 0) { v /= p_; ++w; }
        best = std::min(best, w);
        if (best == 0) break;
    }
    return best;
}

std::vector<u64> LocalFieldTower::wdivp(const std::vector<u64>& a) const {
    std::vector<u64> r(f_);
    for (uint32_t i = 0; i < f_; ++i) {
        if (a[i] % p_ != 0) fail(err::bad_parameters, "internal: W element not divisible by p");
        r[i] = a[i] / p_;
    }
    return r;
}

std::vector<u64> LocalFieldTower::weval(const std::vector<u64>& poly_y,
                                        const std::vector<u64>& at) const {
    // poly_y: scalar coefficients (little-endian) of a polynomial in y,
    // evaluated at a full W element by Horner.
    std::vector<u64> acc = wzero();
    for (size_t j = poly_y.size(); j-- > 0;) {
        acc = wmul(acc, at);
        acc[0] = addm(acc[0], poly_y[j] % pm_);
    }
    return acc;
}

std::vector<u64> LocalFieldTower::wsigma(const std::vector<u64>& a) const {
    if (f_ == 1) return a;
    return weval(a, sigma_y_);
}

FFElem LocalFieldTower::wreduce(const std::vector<u64>& a) const {
    std::vector<uint32_t> c(f_);
    for (uint32_t i = 0; i < f_; ++i) c[i] = static_cast<uint32_t>(a[i] % p_);
    return k_->from_coeffs(std::move(c));
}

std::vector<u64> LocalFieldTower::wlift(const FFElem& a) const {
    std::vector<u64> r = wzero();
    const auto& c = a.coeffs();
    for (size_t i = 0; i < c.size(); ++i) r[i] = c[i];
    return r;
}

std::vector<u64> LocalFieldTower::winv(const std::vector<u64>& a) const {
    FFElem a0 = wreduce(a);
    if (a0.is_zero()) fail(err::not_a_unit, "W inverse of a non-unit");
    std::vector<u64> z = wlift(a0.inv());
    std::vector<u64> two = wscalar(2);
    for (long k = 1; k < M_; k <<= 1)
        z = wmul(z, wsub(two, wmul(a, z)));
    return z;
}

// ------------------------------------------------------------ construction

Tower LocalFieldTower::make(uint32_t p, uint32_t f, long N, uint32_t c) {
    if (!prime_u32(p)) fail(err::bad_parameters, "p must be prime");
    if (p > 61) fail(err::bad_parameters, "p too large for this implementation (p <= 61)");
    if (f == 0 || f > 12) fail(err::bad_parameters, "need 1 <= f <= 12");
    if (c == 0) fail(err::bad_parameters, "ramification multiplier c must be >= 1");
    if (N < 1) fail(err::bad_parameters, "precision N must be >= 1");
    if (N > 4096) fail(err::bad_parameters, "precision N too large");

    auto tw = std::shared_ptr<LocalFieldTower>(new LocalFieldTower());
    tw->p_ = p;
    tw->f_ = f;
    tw->c_ = c;
    tw->e_ = c * (p - 1);

    // Working precision: enough pi-digits that every division by pi taken
    // during normalisation (at most p*c of them per round) and the Eisenstein
    // folds stay exact down to the user's N.
    long nwork = N + std::max<long>(tw->e_, static_cast<long>(p) * c) + 8;
    tw->M_ = nwork / tw->e_ + (nwork % tw->e_ ? 1 : 0) + 1;
    if (tw->M_ < 2) tw->M_ = 2;

    u64 pm = 1;
    for (long i = 0; i < tw->M_; ++i) {
        if (pm > (UINT64_C(1) << 62) / p)
            fail(err::bad_parameters, "requested precision does not fit 64-bit storage");
        pm *= p;
    }
    tw->pm_ = pm;
    tw->prec_cap_ = tw->e_ * (tw->M_ - 1);
    tw->N_ = N;

    tw->k_ = FiniteField::make(p, f);
    const auto& mod = tw->k_->modulus(); // monic, length f+1
    tw->wmod_.assign(f, 0);
    for (uint32_t i = 0; i < f; ++i) tw->wmod_[i] = mod[i];

    // E_c(X) = E(X^c), E(X) = ((1+X)^p - 1)/X: coefficient of X^j in E is
    // binom(p, j+1).  Eisenstein at p by construction; checked anyway.
    tw->eis_.assign(tw->e_, 0);
    for (uint32_t j = 0; j + 1 < p; ++j)
        tw->eis_[static_cast<size_t>(c) * j] = binom_u64(p, j + 1) % pm;
    if (tw->eis_[0] != p) fail(err::bad_parameters, "internal: constant term of E_c is not p");
    for (uint32_t i = 1; i < tw->e_; ++i)
        if (tw->eis_[i] % p != 0)
            fail(err::bad_parameters, "internal: E_c is not Eisenstein at p");

    // Frobenius on W: y |-> eta, the Hensel lift of ybar^p along m~.
    if (f > 1) {
        std::vector<u64> mcoef(f + 1);
        for (uint32_t i = 0; i <= f; ++i) mcoef[i] = mod[i];
        std::vector<u64> dcoef(f);
        for (uint32_t i = 1; i <= f; ++i) dcoef[i - 1] = tw->mulm(i % pm, mod[i] % pm);
        std::vector<u64> eta = tw->wlift(tw->k_->gen().frobenius());
        for (int it = 0; it < 64; ++it) {
            std::vector<u64> val = tw->weval(mcoef, eta);
            if (tw->wis_zero(val)) break;
            std::vector<u64> der = tw->weval(dcoef, eta);
            eta = tw->wsub(eta, tw->wmul(val, tw->winv(der)));
        }
        if (!tw->wis_zero(tw->weval(mcoef, eta)))
            fail(err::bad_parameters, "internal: Frobenius lift did not converge");
        tw->sigma_y_ = std::move(eta);
    } else {
        tw->sigma_y_ = tw->wzero();
    }

    // p/pi = -(pi^{e-1} + sum_{i>=1} a_i pi^{i-1}), read off E_c (a_0 = p).
    tw->p_over_pi_.assign(tw->e_, tw->wzero());
    for (uint32_t i = 1; i < tw->e_; ++i)
        tw->p_over_pi_[i - 1] = tw->wscalar(tw->subm(0, tw->eis_[i]));
    tw->p_over_pi_[tw->e_ - 1] =
        tw->wadd(tw->p_over_pi_[tw->e_ - 1], tw->wscalar(pm - 1));

    return tw;
}

TowerElement LocalFieldTower::raw(std::vector<std::vector<u64>> c, long prec) const {
    return TowerElement(shared_from_this(), std::move(c), std::min(prec, prec_cap_));
}

TowerElement LocalFieldTower::zero() const {
    return raw(std::vector<std::vector<u64>>(e_, wzero()), prec_cap_);
}

TowerElement LocalFieldTower::one() const { return from_int(1); }

TowerElement LocalFieldTower::from_int(long long n) const {
    long long r = n % static_cast<long long>(pm_);
    if (r < 0) r += static_cast<long long>(pm_);
    auto c = std::vector<std::vector<u64>>(e_, wzero());
    c[0] = wscalar(static_cast<u64>(r));
    return raw(std::move(c), prec_cap_);
}

TowerElement LocalFieldTower::pi_pow(int k) const {
    if (k < 0) fail(err::bad_parameters, "pi_pow wants k >= 0");
    TowerElement acc = one();
    if (k == 0) return acc;
    // pi itself: X reduced mod E_c (degenerate when e = 1: pi = -a_0 = -p)
    auto c = std::vector<std::vector<u64>>(e_, wzero());
    if (e_ == 1)
        c[0] = wscalar(pm_ - p_);
    else
        c[1] = wscalar(1);
    TowerElement pi1 = raw(std::move(c), prec_cap_);
    for (int i = 0; i < k; ++i) acc = acc * pi1;
    return acc;
}

TowerElement LocalFieldTower::from_residue(const FFElem& a) const {
    if (!k_->same_field(*a.field())) fail(err::bad_parameters, "residue lift from a different field");
    auto c = std::vector<std::vector<u64>>(e_, wzero());
    c[0] = wlift(a);
    return raw(std::move(c), N_);
}

bool LocalFieldTower::same_tower(const LocalFieldTower& o) const {
    return p_ == o.p_ && f_ == o.f_ && c_ == o.c_ && M_ == o.M_ && N_ == o.N_;
}

long LocalFieldTower::low_val(const TowerElement& x) const {
    long v = x.valuation();
    return std::min(v, x.prec_);
}

// ------------------------------------------------------------ TowerElement

namespace {
const LocalFieldTower& same_tower_of(const TowerElement& a, const TowerElement& b,
                                     const char* where) {
    if (!a.tower()->same_tower(*b.tower()))
        fail(err::bad_parameters, std::string("mixing elements of different towers in ") + where);
    return *a.tower();
}
} // namespace

long TowerElement::valuation() const {
    const auto& tw = *tw_;
    long best = kInfVal;
    for (uint32_t i = 0; i < tw.e_; ++i) {
        if (tw.wis_zero(c_[i])) continue;
        long v = tw.e_ * tw.wvalp(c_[i]) + i;
        best = std::min(best, v);
    }
    // monomial valuations are distinct mod e, so the minimum is exact --
    // provided it is within the carried precision.
    if (best >= prec_) return kInfVal;
    return best;
}

TowerElement TowerElement::operator+(const TowerElement& o) const {
    const auto& tw = same_tower_of(*this, o, "+");
    auto c = c_;
    for (uint32_t i = 0; i < tw.e_; ++i) c[i] = tw.wadd(c[i], o.c_[i]);
    return TowerElement(tw_, std::move(c), std::min(prec_, o.prec_));
}

TowerElement TowerElement::operator-(const TowerElement& o) const {
    const auto& tw = same_tower_of(*this, o, "-");
    auto c = c_;
    for (uint32_t i = 0; i < tw.e_; ++i) c[i] = tw.wsub(c[i], o.c_[i]);
    return TowerElement(tw_, std::move(c), std::min(prec_, o.prec_));
}

TowerElement TowerElement::operator-() const {
    const auto& tw = *tw_;
    auto c = c_;
    for (uint32_t i = 0; i < tw.e_; ++i) c[i] = tw.wneg(c[i]);
    return TowerElement(tw_, std::move(c), prec_);
}

TowerElement TowerElement::operator*(const TowerElement& o) const {
    const auto& tw = same_tower_of(*this, o, "*");
    const uint32_t e = tw.e_;
    std::vector<std::vector<u64>> prod(2 * e - 1, tw.wzero());
    for (uint32_t i = 0; i < e; ++i) {
        if (tw.wis_zero(c_[i])) continue;
        for (uint32_t j = 0; j < e; ++j) {
            if (tw.wis_zero(o.c_[j])) continue;
            prod[i + j] = tw.wadd(prod[i + j], tw.wmul(c_[i], o.c_[j]));
        }
    }
    // fold pi^k, k >= e: pi^e = -(a_0 + a_1 pi + ... + a_{e-1} pi^{e-1})
    for (int k = 2 * static_cast<int>(e) - 2; k >= static_cast<int>(e); --k) {
        if (tw.wis_zero(prod[k])) continue;
        auto v = prod[k];
        prod[k] = tw.wzero();
        for (uint32_t i = 0; i < e; ++i)
            prod[k - e + i] = tw.wsub(prod[k - e + i], tw.wscale(v, tw.eis_[i]));
    }
    prod.resize(e);
    long va = tw.low_val(*this), vb = tw.low_val(o);
    long pl = std::min(prec_ + vb, o.prec_ + va);
    pl = std::min(pl, tw.prec_cap_);
    return TowerElement(tw_, std::move(prod), pl);
}

TowerElement TowerElement::pow(unsigned n) const {
    TowerElement acc = tw_->one();
    TowerElement base = *this;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

TowerElement TowerElement::mul_pow_pi(int k) const {
    if (k < 0) return div_pow_pi(-k);
    if (k == 0) return *this;
    return *this * tw_->pi_pow(k);
}

TowerElement TowerElement::div_pow_pi(int k) const {
    if (k < 0) return mul_pow_pi(-k);
    const auto& tw = *tw_;
    TowerElement x = *this;
    for (int s = 0; s < k; ++s) {
        if (x.prec_ < 1)
            fail(err::precision_exhausted, "division by pi past the carried precision");
        if (tw.wvalp(x.c_[0]) < 1)
            fail(err::bad_parameters, "division by pi of an element with valuation 0");
        std::vector<std::vector<u64>> c(tw.e_, tw.wzero());
        for (uint32_t i = 1; i < tw.e_; ++i) c[i - 1] = x.c_[i];
        if (!tw.wis_zero(x.c_[0])) {
            auto q = tw.wdivp(x.c_[0]); // (c_0/p), times the exact p/pi
            for (uint32_t i = 0; i < tw.e_; ++i)
                c[i] = tw.wadd(c[i], tw.wmul(q, tw.p_over_pi_[i]));
        }
        x = TowerElement(tw_, std::move(c), x.prec_ - 1);
    }
    return x;
}

TowerElement TowerElement::inv() const {
    const auto& tw = *tw_;
    if (prec_ < 1) fail(err::precision_exhausted, "inverse past the carried precision");
    if (valuation() != 0) fail(err::not_a_unit, "inverse of a non-unit tower element");
    TowerElement z = tw.from_residue(reduce_mod_pi().inv());
    z = TowerElement(tw_, std::move(z.c_), prec_);
    TowerElement two = tw.from_int(2);
    for (long k = 1; k < prec_; k <<= 1)
        z = z * (two - *this * z);
    return TowerElement(tw_, std::move(z.c_), prec_);
}

TowerElement TowerElement::frobenius(unsigned j) const {
    const auto& tw = *tw_;
    j %= tw.f_;
    if (j == 0) return *this;
    auto c = c_;
    for (unsigned s = 0; s < j; ++s)
        for (uint32_t i = 0; i < tw.e_; ++i) c[i] = tw.wsigma(c[i]);
    return TowerElement(tw_, std::move(c), prec_);
}

FFElem TowerElement::reduce_mod_pi() const {
    if (prec_ < 1) fail(err::precision_exhausted, "residue of an element with no carried digits");
    return tw_->wreduce(c_[0]);
}

bool TowerElement::congruent_to(const TowerElement& o) const {
    return (*this - o).is_zero_to_prec();
}

TowerElement TowerElement::cap_prec(long new_prec) const {
    if (new_prec < 0) fail(err::bad_parameters, "precision cap must be >= 0");
    if (new_prec >= prec_) return *this;
    return TowerElement(tw_, c_, new_prec);
}

std::string TowerElement::str() const {
    const auto& tw = *tw_;
    std::ostringstream os;
    bool first = true;
    for (uint32_t i = 0; i < tw.e_; ++i) {
        if (tw.wis_zero(c_[i])) continue;
        if (!first) os << " + ";
        first = false;
        // W coefficient as a polynomial in the residue generator's name
        std::ostringstream ws;
        bool wf = true, many = false;
        for (uint32_t j = 0; j < tw.f_; ++j) {
            if (c_[i][j] == 0) continue;
            if (!wf) { ws << " + "; many = true; }
            wf = false;
            if (j == 0) ws << c_[i][j];
            else {
                if (c_[i][j] != 1) ws << c_[i][j] << "*";
                ws << tw.k_->gen_name();
                if (j > 1) ws << "^" << j;
            }
        }
        std::string w = ws.str();
        if (i == 0) os << w;
        else {
            if (many) os << "(" << w << ")*";
            else if (w != "1") os << w << "*";
            os << "pi";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    os << " + O(pi^" << prec_ << ")";
    return os.str();
}

// ---------------------------------------------------------------- TowerMap

TowerElement TowerMap::operator()(const TowerElement& x) const {
    if (!x.tower()->same_tower(*from))
        fail(err::bad_parameters, "tower map applied to an element of a different tower");
    const auto& src = *from;
    const auto& dst = *to;
    std::vector<std::vector<u64>> c(dst.e_, dst.wzero());
    for (uint32_t i = 0; i < src.e_; ++i) {
        std::vector<u64> w;
        if (res_embed) {
            // unramified step: evaluate the y-polynomial at the lifted root
            w = dst.weval(x.c_[i], gen_image);
        } else {
            w = dst.wzero();
            for (uint32_t j = 0; j < src.f_; ++j) w[j] = x.c_[i][j] % dst.pm_;
        }
        c[static_cast<size_t>(i) * c_factor] = std::move(w);
    }
    long pl = std::min<long>(x.prec() * c_factor, dst.prec_cap_);
    return TowerElement(to, std::move(c), pl);
}

TowerMap ramified_base_change(const Tower& from, uint32_t c_extra) {
    if (c_extra == 0) fail(err::bad_parameters, "ramified base change wants c_extra >= 1");
    Tower to = LocalFieldTower::make(from->p(), from->f(),
                                     from->N() * static_cast<long>(c_extra),
                                     from->c() * c_extra);
    return TowerMap{from, to, c_extra, std::nullopt, {}};
}

TowerMap unramified_base_change(const Tower& from, uint32_t f_new) {
    if (f_new == 0 || f_new % from->f() != 0)
        fail(err::bad_parameters, "unramified base change needs f | f_new");
    Tower to = LocalFieldTower::make(from->p(), f_new, from->N(), from->c());
    FieldEmbedding emb(from->residue_field(), to->residue_field());
    const auto& dst = *to;
    // Hensel-lift the embedded residue generator to a W'-root of the old m~,
    // so reduction mod p intertwines the map with the residue embedding.
    std::vector<u64> eta;
    if (from->f() == 1) {
        eta = dst.wzero(); // old modulus is y itself; its root is 0
    } else {
        const auto& mod = from->residue_field()->modulus();
        std::vector<u64> mcoef(mod.begin(), mod.end());
        std::vector<u64> dcoef(from->f());
        for (uint32_t i = 1; i < mcoef.size(); ++i)
            dcoef[i - 1] = dst.mulm(i % dst.pm_, mcoef[i] % dst.pm_);
        eta = dst.wlift(emb.gen_image());
        for (int it = 0; it < 64; ++it) {
            auto val = dst.weval(mcoef, eta);
            if (dst.wis_zero(val)) break;
            eta = dst.wsub(eta, dst.wmul(val, dst.winv(dst.weval(dcoef, eta))));
        }
        if (!dst.wis_zero(dst.weval(mcoef, eta)))
            fail(err::bad_parameters, "internal: unramified lift did not converge");
    }
    return TowerMap{from, to, 1, std::move(emb), std::move(eta)};
}

// -------------------------------------------------------------- the isogeny

TowerElement phi_n(const TowerElement& x, long n) {
    const auto& tw = *x.tower();
    if (n <= 0 || n > tw.v_lambda())
        fail(err::bad_n, "phi_n level must satisfy 0 < n <= v(lambda)", n);
    TowerElement one = tw.one();
    TowerElement t = (x.mul_pow_pi(static_cast<int>(n)) + one).pow(tw.p()) - one;
    return t.div_pow_pi(static_cast<int>(n * tw.p()));
}

Poly special_fibre_of_phi(const Tower& tw, long n) {
    if (n <= 0 || n > tw->v_lambda())
        fail(err::bad_n, "phi_n level must satisfy 0 < n <= v(lambda)", n);
    const Field& k = tw->residue_field();
    uint32_t p = tw->p();
    std::vector<FFElem> coeffs(p + 1, k->zero());
    for (uint32_t j = 1; j <= p; ++j) {
        // binom(p, j) * pi^{n(j - p)}
        TowerElement term = tw->from_int(static_cast<long long>(binom_u64(p, j)));
        term = term.div_pow_pi(static_cast<int>(n * (p - j)));
        coeffs[j] = term.reduce_mod_pi();
    }
    return Poly(k, std::move(coeffs));
}

} // namespace rankp
