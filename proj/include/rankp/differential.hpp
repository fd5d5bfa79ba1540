#pragma once

#include <variant>

#include "rankp/rational.hpp"

namespace rankp {

// Differential form omega = g dt on (an open of) P^1 in the global
// coordinate t, or on a formal germ at a single point in its local
// parameter.  The variant tracks which chart the base lives on.
struct Differential {
    std::variant<RationalFunction, LaurentSeries> base;

    bool is_rational() const { return std::holds_alternative<RationalFunction>(base); }
    const RationalFunction& rat() const { return std::get<RationalFunction>(base); }
    const LaurentSeries& germ() const { return std::get<LaurentSeries>(base); }
    Field field() const {
        return is_rational() ? rat().field() : germ().field();
    }
};

// omega = du/u; zero_function when u = 0.  The germ overload computes on the
// window u supports (or want_known for exact input).
Differential dlog(const RationalFunction& u);
Differential dlog_germ(const LaurentSeries& u, int want_known);

// omega = da.
Differential dform(const RationalFunction& a);
Differential dform_germ(const LaurentSeries& a);

// Cartier operator: sum a_i t^i dt  ->  sum a_{pj+p-1}^{1/p} t^j dt.
// Exact on rational differentials (write g = H / B^p with H = num*den^{p-1},
// then C(g dt) = C(H dt)/B); windowed on germs.
Differential cartier(const Differential& w);

// Exact order of omega at x (the dt twist costs 2 at infinity); for germs
// only the center (x = 0 in the local parameter) is addressable.
int order_at(const Differential& w, const P1Point& x);

// res_x(omega); exact for rational differentials, windowed for germs.
FFElem residue(const Differential& w, const P1Point& x);

// Sum of ord_x(omega) over every zero and pole of omega on P^1, located by
// factoring and passing to a splitting extension.  For a nonzero rational
// differential this is -2; exposed so tests can cross-check expansion code
// against factorization.
long order_sum_over_p1(const Differential& w);

} // namespace rankp
