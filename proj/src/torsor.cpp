#include "rankp/torsor.hpp"

#include <set>

namespace rankp {

const char* kind_name(TorsorKind k) {
    switch (k) {
        case TorsorKind::etale_zp: return "etale";
        case TorsorKind::mu_p: return "mu_p";
        case TorsorKind::alpha_p: return "alpha_p";
    }
    return "?";
}

ASReduction artin_schreier_reduce(const LaurentSeries& a) {
    if (!a.exact() && a.known() < -1)
        fail(err::window_too_small, "Artin-Schreier reduction needs the window to reach exponent -1");
    const Field& k = a.field();
    int p = static_cast<int>(k->p());
    LaurentSeries cur = a;
    LaurentSeries witness = LaurentSeries::zero(k);
    while (true) {
        auto m = cur.ord();
        if (!m || *m >= 0) break;
        int e = *m;
        if (e % p != 0) {
            // leading exponent already prime to p; look for deeper p-divisible ones
            bool found = false;
            for (const auto& [ee, vv] : cur.terms()) {
                (void)vv;
                if (ee < 0 && ee % p == 0) {
                    e = ee;
                    found = true;
                    break;
                }
            }
            if (!found) break;
        }
        FFElem c = cur.coeff(e);
        LaurentSeries b = LaurentSeries::monomial(k, e / p, c.pth_root());
        // subtract b^p - b; kills the t^e term, adds one at e/p
        cur = cur - (b.pth_power() - b);
        witness = witness + b;
    }
    return {cur, witness};
}

std::optional<LaurentSeries> pth_power_test(const LaurentSeries& s, int* bad_exp) {
    return s.pth_root(bad_exp);
}

namespace {

// image of x -> x^p - x on F_{p^f}, materialized once per call (desk scale)
std::set<std::vector<uint32_t>> wp_image(const Field& k) {
    std::set<std::vector<uint32_t>> img;
    for (uint64_t i = 0; i < k->order(); ++i) {
        FFElem x = k->element_at(i);
        img.insert((x.pow(k->p()) - x).coeffs());
    }
    return img;
}

} // namespace

bool as_class_trivial(const LaurentSeries& a) {
    ASReduction red = artin_schreier_reduce(a);
    auto m = red.reduced.ord();
    if (m && *m < 0) return false;
    FFElem c0 = red.reduced.coeff(0); // window check: need the constant
    return wp_image(a.field()).count(c0.coeffs()) > 0;
}

bool as_class_equal(const LaurentSeries& a, const LaurentSeries& b) {
    return as_class_trivial(a - b);
}

bool mup_class_equal(const LaurentSeries& u, const LaurentSeries& v) {
    auto mv = v.ord();
    if (!mv || !u.ord()) fail(err::not_a_unit, "mu_p class of a series vanishing on its window");
    int want = std::min(u.exact() ? LaurentSeries::kExact : u.known(),
                        v.exact() ? LaurentSeries::kExact : v.known());
    if (want >= LaurentSeries::kExact) want = std::max(24, std::abs(*mv) * 2 + 4);
    LaurentSeries ratio = u * v.inverse(want - std::min(0, u.lo_bound()));
    return pth_power_test(ratio).has_value();
}

bool alphap_class_equal(const LaurentSeries& a, const LaurentSeries& b) {
    return pth_power_test(a - b).has_value();
}

namespace {

TorsorLocalData etale_local(const LaurentSeries& germ) {
    TorsorLocalData out;
    out.residue = germ.field()->zero();
    ASReduction red = artin_schreier_reduce(germ);
    auto m = red.reduced.ord();
    if (m && *m < 0) {
        out.conductor = -*m;
        out.has_ord = true;
        out.ord = *m;
        return out;
    }
    out.conductor = 0;
    if (m) {
        out.has_ord = true;
        out.ord = *m;
    }
    out.trivial_locally = as_class_trivial(germ);
    return out;
}

TorsorLocalData from_differential(const CharPTorsor& f, const Differential& w, const P1Point& x) {
    TorsorLocalData out;
    const Field k = f.field();
    out.residue = k->zero();
    int ord = order_at(w, x);
    out.has_ord = true;
    out.ord = ord;
    out.conductor = -(ord + 1);
    if (f.kind == TorsorKind::mu_p && out.conductor == 0) {
        out.residue = residue(w, x);
        if (!out.residue.in_prime_field())
            fail(err::bad_parameters, "dlog residue escaped the prime field");
    }
    return out;
}

} // namespace

TorsorLocalData conductor_residue(const CharPTorsor& f, const P1Point& x) {
    const Field k = f.field();
    if (!f.is_rational()) {
        if (x.at_infinity || !x.value.is_zero())
            fail(err::bad_parameters, "germ torsor is only addressable at its center");
    } else if (!x.at_infinity && !x.field()->same_field(*k)) {
        fail(err::bad_parameters, "point over a different field; extend the torsor first");
    }

    switch (f.kind) {
        case TorsorKind::etale_zp: {
            if (!f.is_rational()) return etale_local(f.germ());
            if (f.rat().is_zero()) {
                TorsorLocalData out;
                out.residue = k->zero();
                out.trivial_locally = true;
                return out;
            }
            int ord = f.rat().order_at(x);
            LaurentSeries germ = f.rat().local_expand(x, std::max(0, -ord));
            return etale_local(germ.truncate(std::max(0, -ord)));
        }
        case TorsorKind::mu_p: {
            TorsorLocalData out;
            out.residue = k->zero();
            if (f.is_rational()) {
                if (f.rat().is_zero()) fail(err::zero_function, "mu_p datum must be a unit");
                if (f.rat().is_pth_power()) {
                    out.trivial_locally = true;
                    return out;
                }
                return from_differential(f, dlog(f.rat()), x);
            }
            if (pth_power_test(f.germ()).has_value()) {
                out.trivial_locally = true;
                return out;
            }
            return from_differential(f, torsor_differential(f), x);
        }
        case TorsorKind::alpha_p: {
            TorsorLocalData out;
            out.residue = k->zero();
            if (f.is_rational()) {
                if (f.rat().is_pth_power()) {
                    out.trivial_locally = true;
                    return out;
                }
                return from_differential(f, dform(f.rat()), x);
            }
            if (pth_power_test(f.germ()).has_value()) {
                out.trivial_locally = true;
                return out;
            }
            return from_differential(f, torsor_differential(f), x);
        }
    }
    fail(err::bad_parameters, "unknown torsor kind");
}

Differential torsor_differential(const CharPTorsor& f, int want_known) {
    switch (f.kind) {
        case TorsorKind::mu_p:
            if (f.is_rational()) return dlog(f.rat());
            return dlog_germ(f.germ(), f.germ().exact() ? want_known : f.germ().known());
        case TorsorKind::alpha_p:
            if (f.is_rational()) return dform(f.rat());
            return dform_germ(f.germ());
        case TorsorKind::etale_zp:
            fail(err::bad_parameters, "etale data carry no Kummer differential");
    }
    fail(err::bad_parameters, "unknown torsor kind");
}

bool cartier_class_check(const CharPTorsor& f, int want_known) {
    if (f.kind == TorsorKind::etale_zp)
        fail(err::bad_parameters, "cartier check applies to mu_p and alpha_p data");
    Differential w = torsor_differential(f, want_known);
    Differential cw = cartier(w);
    if (w.is_rational()) {
        if (f.kind == TorsorKind::mu_p) return cw.rat() == w.rat();
        return cw.rat().is_zero();
    }
    if (f.kind == TorsorKind::mu_p) return cw.germ().agrees_with(w.germ());
    return cw.germ().is_zero_on_window();
}

CharPTorsor frobenius_act(unsigned j, const CharPTorsor& f) {
    if (f.is_rational()) return {f.kind, f.rat().frobenius(j)};
    return {f.kind, f.germ().frobenius(j)};
}

} // namespace rankp
