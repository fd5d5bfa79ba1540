#include "rankp/run.hpp"

#include <json.hpp>
#include <map>
#include <random>
#include <sstream>

#include "rankp/degeneration.hpp"
#include "rankp/lifting.hpp"
#include "rankp/mixed.hpp"

namespace rankp::cli {
namespace {

using json = nlohmann::ordered_json;

TorsorKind kind_from_word(const std::string& w) {
    if (w == "etale") return TorsorKind::etale_zp;
    if (w == "alpha") return TorsorKind::alpha_p;
    return TorsorKind::mu_p;
}

std::string strip_prefix(const error& e) {
    std::string what = e.what();
    std::string prefix = std::string(err_name(e.kind())) + ": ";
    if (what.rfind(prefix, 0) == 0) return what.substr(prefix.size());
    return what;
}

struct Context {
    const Document& doc;
    RunOptions opt;
    Field k;
    Tower tw; // null in charp mode
    int whi = 64;
    std::mt19937_64 rng;
    std::map<std::string, const Binding*> bindings;
    std::map<std::string, RationalFunction> charp_cache;
    std::map<std::string, AnnulusElement> annulus_cache;

    Context(const Document& d, const RunOptions& o) : doc(d), opt(o), rng(o.seed) {
        const Header& h = d.header;
        long N = h.has_N ? h.N : o.prec;
        whi = h.has_window ? h.window_hi : o.window_hi;
        if (h.mode == "mixed") {
            tw = LocalFieldTower::make(h.p, h.f, N, h.c);
            k = tw->residue_field();
        } else {
            k = FiniteField::make(h.p, h.f);
        }
        for (const Binding& b : d.bindings) bindings[b.name] = &b;
    }

    // ---- expression evaluation ----

    RationalFunction eval_charp(const ExprPtr& e) {
        switch (e->op) {
            case Expr::Op::integer:
                return RationalFunction::constant(k->from_int(e->value));
            case Expr::Op::sym_t:
                return RationalFunction::t(k);
            case Expr::Op::sym_gen:
                return RationalFunction::constant(k->gen());
            case Expr::Op::name: {
                auto it = charp_cache.find(e->name);
                if (it != charp_cache.end()) return it->second;
                RationalFunction v = eval_charp(bindings.at(e->name)->expr);
                charp_cache.emplace(e->name, v);
                return v;
            }
            case Expr::Op::add:
                return eval_charp(e->lhs) + eval_charp(e->rhs);
            case Expr::Op::sub:
                return eval_charp(e->lhs) - eval_charp(e->rhs);
            case Expr::Op::neg:
                return -eval_charp(e->lhs);
            case Expr::Op::mul:
                return eval_charp(e->lhs) * eval_charp(e->rhs);
            case Expr::Op::div:
                return eval_charp(e->lhs) / eval_charp(e->rhs);
            case Expr::Op::pow:
                return eval_charp(e->lhs).pow(static_cast<int>(e->value));
            default:
                fail(err::bad_parameters, "annulus symbol in a char-p expression");
        }
    }

    AnnulusElement eval_annulus(const ExprPtr& e) {
        switch (e->op) {
            case Expr::Op::integer:
                return AnnulusElement::from_tower(tw, tw->from_int(e->value));
            case Expr::Op::sym_T:
                return AnnulusElement::t_power(tw, 1);
            case Expr::Op::sym_lambda:
                return AnnulusElement::from_tower(tw, tw->lambda());
            case Expr::Op::sym_pi:
                return AnnulusElement::from_tower(tw, tw->pi());
            case Expr::Op::sym_gen:
                return AnnulusElement::from_tower(tw, tw->from_residue(k->gen()));
            case Expr::Op::name: {
                auto it = annulus_cache.find(e->name);
                if (it != annulus_cache.end()) return it->second;
                AnnulusElement v = eval_annulus(bindings.at(e->name)->expr);
                annulus_cache.emplace(e->name, v);
                return v;
            }
            case Expr::Op::add:
                return eval_annulus(e->lhs) + eval_annulus(e->rhs);
            case Expr::Op::sub:
                return eval_annulus(e->lhs) - eval_annulus(e->rhs);
            case Expr::Op::neg:
                return -eval_annulus(e->lhs);
            case Expr::Op::mul:
                return eval_annulus(e->lhs) * eval_annulus(e->rhs);
            case Expr::Op::div:
                return eval_annulus(e->lhs) * eval_annulus(e->rhs).inv(whi);
            case Expr::Op::pow: {
                long n = e->value;
                AnnulusElement b = eval_annulus(e->lhs);
                if (n >= 0) return b.pow(static_cast<unsigned>(n));
                return b.inv(whi).pow(static_cast<unsigned>(-n));
            }
            default:
                fail(err::bad_parameters, "char-p symbol in an annulus expression");
        }
    }

    RationalFunction eval_charp_name(const std::string& name) {
        auto it = charp_cache.find(name);
        if (it != charp_cache.end()) return it->second;
        RationalFunction v = eval_charp(bindings.at(name)->expr);
        charp_cache.emplace(name, v);
        return v;
    }

    FFElem eval_scalar(const ExprPtr& e) {
        RationalFunction v = eval_charp(e);
        if (!v.is_constant()) fail(err::bad_parameters, "a point must be a scalar");
        if (v.is_zero()) return k->zero();
        return v.num().coeff(0) / v.den().coeff(0);
    }

    P1Point eval_point(const PointArg& pt) {
        if (pt.at_infinity) return P1Point::infinity(k);
        return P1Point::finite(eval_scalar(pt.expr));
    }

    LaurentSeries random_series(bool unit) {
        std::map<int, FFElem> terms;
        int lo = -6 + static_cast<int>(rng() % 5);
        int nterms = 3 + static_cast<int>(rng() % 5);
        for (int i = 0; i < nterms; ++i) {
            int e = lo + static_cast<int>(rng() % 14);
            terms[e] = k->element_at(rng() % k->order());
        }
        if (unit) terms[lo] = k->element_at(1 + rng() % (k->order() - 1));
        // prune zeros so `unit` really pins the leading exponent
        for (auto it = terms.begin(); it != terms.end();)
            it = it->second.is_zero() ? terms.erase(it) : std::next(it);
        if (unit && !terms.count(lo)) terms[lo] = k->one();
        return LaurentSeries::from_terms(k, terms);
    }
};

// ---- per-directive execution ----

struct Outcome {
    json report;
    std::string human;
    bool is_verdict = false;
    bool verdict_ok = true;
};

json classify_json(const SpecializationReport& rep) {
    json j;
    j["kind"] = kind_name(rep.kind);
    j["delta"] = rep.delta;
    j["n"] = rep.n;
    j["m"] = rep.m;
    j["h"] = rep.h;
    j["level"] = rep.level;
    return j;
}

std::string classify_human(const SpecializationReport& rep, uint32_t ext) {
    std::ostringstream out;
    out << "kind=" << kind_name(rep.kind) << " delta=" << rep.delta << " n=" << rep.n
        << " m=" << rep.m << " h=" << rep.h << " level=" << rep.level
        << " trivial=" << (rep.trivial_class ? "yes" : "no") << " ext=" << ext;
    return out.str();
}

Outcome do_classify(Context& cx, const Directive& d) {
    AnnulusElement u = cx.eval_annulus(d.args[0]);
    uint32_t ext = 1;
    SpecializationReport rep = [&] {
        switch (cx.opt.extend) {
            case RunOptions::Extend::automatic: {
                SpecializationReport r = specialize_auto(u, 64, cx.whi);
                ext = r.extension_c;
                return r;
            }
            case RunOptions::Extend::manual: {
                ext = cx.opt.extend_c;
                AnnulusElement v = u.map(ramified_base_change(cx.tw, ext));
                return specialize(v, cx.whi);
            }
            default:
                return specialize(u, cx.whi);
        }
    }();
    Outcome o;
    o.report = classify_json(rep);
    o.human = classify_human(rep, ext);
    return o;
}

Outcome do_conductor(Context& cx, const Directive& d, bool want_residue) {
    CharPTorsor f{kind_from_word(d.kind), cx.eval_charp(d.args[0])};
    TorsorLocalData ld = conductor_residue(f, cx.eval_point(d.at));
    Outcome o;
    if (want_residue) {
        o.report["h"] = ld.residue.str();
        o.human = "h=" + ld.residue.str();
    } else {
        o.report["m"] = ld.conductor;
        o.report["trivial"] = ld.trivial_locally;
        std::ostringstream out;
        out << "m=" << ld.conductor << " trivial=" << (ld.trivial_locally ? "yes" : "no");
        o.human = out.str();
    }
    return o;
}

Outcome do_cartier(Context& cx, const Directive& d) {
    Outcome o;
    o.is_verdict = true;
    long checked = 0;
    bool ok = true;
    if (d.random_count > 0) {
        for (long i = 0; i < d.random_count && ok; ++i) {
            LaurentSeries u = cx.random_series(true);
            LaurentSeries a = cx.random_series(false);
            LaurentSeries g = cx.random_series(true);
            Differential dl = dlog_germ(u, cx.whi);
            ok = ok && cartier(dl).germ().agrees_with(dl.germ());
            ok = ok && cartier(dform_germ(a)).germ().is_zero_on_window();
            Differential w1{dl.germ()}, w2{dform_germ(a).germ()};
            LaurentSeries lhs = cartier(Differential{w1.germ() + w2.germ()}).germ();
            ok = ok && lhs.agrees_with(cartier(w1).germ() + cartier(w2).germ());
            LaurentSeries proj = cartier(Differential{g.pth_power() * w1.germ()}).germ();
            ok = ok && proj.agrees_with(g * cartier(w1).germ());
            ++checked;
        }
    } else {
        CharPTorsor f{kind_from_word(d.kind), cx.eval_charp(d.args[0])};
        ok = cartier_class_check(f, cx.whi);
        checked = 1;
    }
    o.verdict_ok = ok;
    o.report["pass"] = ok;
    o.report["checked"] = checked;
    o.human = std::string(ok ? "pass" : "FAIL") + " (" + std::to_string(checked) +
              " datum" + (checked == 1 ? "" : "s") + " checked)";
    return o;
}

Outcome do_as_reduce(Context& cx, const Directive& d) {
    RationalFunction a = cx.eval_charp(d.args[0]);
    P1Point x = d.has_at ? cx.eval_point(d.at) : P1Point::finite(cx.k->zero());
    LaurentSeries germ =
        a.is_zero() ? LaurentSeries::zero(cx.k) : a.local_expand(x, cx.whi);
    ASReduction red = artin_schreier_reduce(germ);
    CharPTorsor et{TorsorKind::etale_zp, red.reduced};
    TorsorLocalData ld = conductor_residue(et, P1Point::finite(cx.k->zero()));
    Outcome o;
    o.report["reduced"] = red.reduced.str("t");
    o.report["m"] = ld.conductor;
    o.report["trivial"] = ld.trivial_locally;
    std::ostringstream out;
    out << "m=" << ld.conductor << " trivial=" << (ld.trivial_locally ? "yes" : "no")
        << " reduced = " << red.reduced.str("t");
    o.human = out.str();
    return o;
}

Outcome do_kummerian(Context& cx, const Directive& d) {
    std::vector<std::string> comps;
    auto comp_index = [&](const std::string& name) -> size_t {
        for (size_t i = 0; i < comps.size(); ++i)
            if (comps[i] == name) return i;
        comps.push_back(name);
        return comps.size() - 1;
    };
    SemiStableConfig cfg;
    cfg.k = cx.k;
    std::vector<NodeDesignation> desig;
    for (const auto& cl : d.nodes) {
        SemiStableConfig::Node node;
        node.comp_a = comp_index(cl.a.comp);
        node.pt_a = cx.eval_point(cl.a.pt);
        node.comp_b = comp_index(cl.b.comp);
        node.pt_b = cx.eval_point(cl.b.pt);
        cfg.nodes.push_back(std::move(node));
        desig.emplace_back(kind_from_word(cl.a.kind), kind_from_word(cl.b.kind));
    }
    cfg.components = comps.size();
    cfg.marked.resize(comps.size());
    std::vector<MixedTorsor> assignment;
    for (size_t i = 0; i < comps.size(); ++i) {
        MixedTorsor mt;
        mt.k = cx.k;
        assignment.push_back(std::move(mt));
    }
    for (const auto& cl : d.nodes) {
        for (const Directive::NodeSide* s : {&cl.a, &cl.b}) {
            MixedTorsor& mt = assignment[comp_index(s->comp)];
            RationalFunction v = cx.eval_charp_name(s->comp);
            if (s->kind == "etale")
                mt.etale = v;
            else if (s->kind == "alpha")
                mt.alpha = v;
            else
                mt.mu = v;
        }
    }
    cfg.validate();
    KummerianReport rep = kummerian_check(cfg, assignment, &desig);
    Outcome o;
    o.is_verdict = true;
    o.verdict_ok = rep.ok;
    o.report["ok"] = rep.ok;
    json nodes = json::array();
    std::string failing;
    for (const NodeVerdict& v : rep.nodes) {
        json n;
        n["node"] = v.node_index;
        n["m_a"] = v.side_a.conductor;
        n["m_b"] = v.side_b.conductor;
        n["h_a"] = v.side_a.residue.str();
        n["h_b"] = v.side_b.residue.str();
        n["ok"] = v.ok();
        nodes.push_back(std::move(n));
        if (!v.ok()) failing += (failing.empty() ? "" : " ") + std::to_string(v.node_index);
    }
    o.report["nodes"] = std::move(nodes);
    std::ostringstream out;
    out << (rep.ok ? "ok" : "FAIL") << " (" << rep.nodes.size() << " node"
        << (rep.nodes.size() == 1 ? "" : "s") << ")";
    if (!failing.empty()) out << " failing: " << failing;
    o.human = out.str();
    return o;
}

Outcome do_lift(Context& cx, const Directive& d) {
    CharPTorsor f{kind_from_word(d.kind), cx.eval_charp(d.args[0])};
    AdmissibilityReport rep = admissibility_report(cx.tw, f, cx.whi);
    Outcome o;
    o.report = classify_json(rep.round_trip);
    o.report["ext"] = rep.extension_c;
    o.report["lift"] = rep.lift.str();
    o.human = classify_human(rep.round_trip, rep.extension_c) + " lift = " + rep.lift.str();
    return o;
}

Outcome do_filtration(Context& cx, const Directive& d) {
    std::vector<AnnulusElement> us;
    Tower tw = cx.tw;
    for (const ExprPtr& a : d.args) us.push_back(cx.eval_annulus(a));
    if (cx.opt.extend == RunOptions::Extend::manual) {
        TowerMap up = ramified_base_change(tw, cx.opt.extend_c);
        tw = up.to;
        for (AnnulusElement& u : us) u = u.map(up);
    }
    std::vector<long> levels;
    for (const AnnulusElement& u : us) levels.push_back(filtration_level(u, cx.whi));
    auto buckets = filtration_buckets(tw, us, cx.whi);
    Outcome o;
    o.report["levels"] = levels;
    json bk = json::array();
    for (const auto& b : buckets) bk.push_back(b);
    o.report["buckets"] = std::move(bk);
    std::ostringstream out;
    out << "levels =";
    for (long lv : levels) out << " " << lv;
    o.human = out.str();
    return o;
}

Outcome do_galois(Context& cx, const Directive& d) {
    AnnulusElement u = cx.eval_annulus(d.args[0]);
    bool ok = galois_equivariance_check(static_cast<unsigned>(d.sigma), u, cx.whi);
    Outcome o;
    o.is_verdict = true;
    o.verdict_ok = ok;
    o.report["pass"] = ok;
    o.report["sigma"] = d.sigma;
    o.human = std::string(ok ? "pass" : "FAIL") + " (sigma=" + std::to_string(d.sigma) + ")";
    return o;
}

Outcome execute(Context& cx, const Directive& d) {
    switch (d.cmd) {
        case Directive::Cmd::classify: return do_classify(cx, d);
        case Directive::Cmd::conductor: return do_conductor(cx, d, false);
        case Directive::Cmd::residue: return do_conductor(cx, d, true);
        case Directive::Cmd::cartier_check: return do_cartier(cx, d);
        case Directive::Cmd::as_reduce: return do_as_reduce(cx, d);
        case Directive::Cmd::kummerian: return do_kummerian(cx, d);
        case Directive::Cmd::lift: return do_lift(cx, d);
        case Directive::Cmd::filtration: return do_filtration(cx, d);
        case Directive::Cmd::galois_check: return do_galois(cx, d);
    }
    fail(err::bad_parameters, "unreachable directive kind");
}

} // namespace

RunResult run_document(const Document& doc, const RunOptions& opt) {
    Context cx(doc, opt);
    RunResult res;
    for (const Directive& d : doc.directives) {
        bool is_verdict = d.cmd == Directive::Cmd::cartier_check ||
                          d.cmd == Directive::Cmd::kummerian ||
                          d.cmd == Directive::Cmd::galois_check;
        try {
            Outcome o = execute(cx, d);
            if (o.is_verdict && !o.verdict_ok) res.exit_code = 1;
            res.lines.push_back(opt.json ? o.report.dump()
                                         : std::string(cmd_name(d.cmd)) + ": " + o.human);
        } catch (const error& e) {
            if (is_verdict) res.exit_code = 1;
            if (opt.json) {
                json j;
                j["error"] = err_name(e.kind());
                j["payload"] = e.payload();
                j["message"] = strip_prefix(e);
                res.lines.push_back(j.dump());
            } else {
                std::ostringstream out;
                out << cmd_name(d.cmd) << ": error " << err_name(e.kind());
                if (e.payload() != 0) out << "(" << e.payload() << ")";
                out << ": " << strip_prefix(e);
                res.lines.push_back(out.str());
            }
        }
    }
    return res;
}

} // namespace rankp::cli
