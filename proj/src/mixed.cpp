#include "rankp/mixed.hpp"

namespace rankp {

bool MixedTorsor::has(TorsorKind kind) const {
    switch (kind) {
        case TorsorKind::etale_zp: return etale.has_value();
        case TorsorKind::mu_p: return mu.has_value();
        case TorsorKind::alpha_p: return alpha.has_value();
    }
    return false;
}

CharPTorsor MixedTorsor::part(TorsorKind kind) const {
    if (!has(kind))
        fail(err::missing_torsor_at_node, std::string("no ") + kind_name(kind) + " component present");
    switch (kind) {
        case TorsorKind::etale_zp: return {kind, *etale};
        case TorsorKind::mu_p: return {kind, *mu};
        default: return {kind, *alpha};
    }
}

std::vector<TorsorKind> MixedTorsor::present() const {
    std::vector<TorsorKind> out;
    for (TorsorKind kind : {TorsorKind::etale_zp, TorsorKind::mu_p, TorsorKind::alpha_p})
        if (has(kind)) out.push_back(kind);
    return out;
}

MixedTorsor mixed_add(const MixedTorsor& a, const MixedTorsor& b) {
    if (!a.k->same_field(*b.k))
        fail(err::scheme_mismatch, "mixed torsors over different residue fields");
    MixedTorsor out;
    out.k = a.k;
    if (a.etale || b.etale) {
        RationalFunction s(a.k);
        if (a.etale) s = s + *a.etale;
        if (b.etale) s = s + *b.etale;
        out.etale = s;
    }
    if (a.mu || b.mu) {
        RationalFunction s = RationalFunction::constant(a.k->one());
        if (a.mu) s = s * *a.mu;
        if (b.mu) s = s * *b.mu;
        if (s.is_zero()) fail(err::not_a_unit, "Kummer component degenerated to zero");
        out.mu = s;
    }
    if (a.alpha || b.alpha) {
        RationalFunction s(a.k);
        if (a.alpha) s = s + *a.alpha;
        if (b.alpha) s = s + *b.alpha;
        out.alpha = s;
    }
    return out;
}

MixedTorsor frobenius_act(unsigned j, const MixedTorsor& m) {
    MixedTorsor out;
    out.k = m.k;
    if (m.etale) out.etale = m.etale->frobenius(j);
    if (m.mu) out.mu = m.mu->frobenius(j);
    if (m.alpha) out.alpha = m.alpha->frobenius(j);
    return out;
}

void SemiStableConfig::validate() const {
    if (marked.size() > components) fail(err::bad_parameters, "marks on nonexistent components");
    auto on_comp = [&](size_t c, const P1Point& pt, const char* what) {
        if (c >= components) fail(err::bad_parameters, std::string(what) + ": component index out of range");
        if (!pt.at_infinity && !pt.field()->same_field(*k))
            fail(err::bad_parameters, std::string(what) + ": point over a foreign field");
    };
    for (const Node& n : nodes) {
        on_comp(n.comp_a, n.pt_a, "node");
        on_comp(n.comp_b, n.pt_b, "node");
        if (n.comp_a == n.comp_b) fail(err::bad_parameters, "node joins a component to itself");
    }
    // node points pairwise distinct per component, and disjoint from marks
    for (size_t c = 0; c < components; ++c) {
        std::vector<P1Point> pts;
        for (const Node& n : nodes) {
            if (n.comp_a == c) pts.push_back(n.pt_a);
            if (n.comp_b == c) pts.push_back(n.pt_b);
        }
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                if (pts[i] == pts[j]) fail(err::bad_parameters, "coincident node points on one component");
        if (c < marked.size())
            for (const P1Point& m : marked[c]) {
                for (const P1Point& q : pts)
                    if (m == q) fail(err::bad_parameters, "marked point sits on a node");
            }
    }
}

namespace {

TorsorKind pick_side(const MixedTorsor& mt, const std::optional<TorsorKind>& designated) {
    if (designated) {
        if (!mt.has(*designated))
            fail(err::missing_torsor_at_node,
                 std::string("designated ") + kind_name(*designated) + " component absent");
        return *designated;
    }
    auto present = mt.present();
    if (present.empty()) fail(err::missing_torsor_at_node, "no torsor component on this side");
    if (present.size() > 1)
        fail(err::missing_torsor_at_node, "several components present; designate one");
    return present[0];
}

} // namespace

KummerianReport kummerian_check(const SemiStableConfig& cfg,
                                const std::vector<MixedTorsor>& assignment,
                                const std::vector<NodeDesignation>* designations) {
    cfg.validate();
    if (assignment.size() != cfg.components)
        fail(err::scheme_mismatch, "assignment size does not match component count");
    if (designations && designations->size() != cfg.nodes.size())
        fail(err::bad_parameters, "designation list does not match node count");
    for (const MixedTorsor& mt : assignment)
        if (!mt.k->same_field(*cfg.k)) fail(err::scheme_mismatch, "torsor over a foreign field");

    KummerianReport rep;
    uint32_t p = cfg.k->p();
    for (size_t i = 0; i < cfg.nodes.size(); ++i) {
        const auto& nd = cfg.nodes[i];
        NodeDesignation des = designations ? (*designations)[i] : NodeDesignation{};
        NodeVerdict v;
        v.node_index = i;
        v.kind_a = pick_side(assignment[nd.comp_a], des.first);
        v.kind_b = pick_side(assignment[nd.comp_b], des.second);
        v.side_a = conductor_residue(assignment[nd.comp_a].part(v.kind_a), nd.pt_a);
        v.side_b = conductor_residue(assignment[nd.comp_b].part(v.kind_b), nd.pt_b);
        v.conductors_cancel = (v.side_a.conductor + v.side_b.conductor == 0);
        v.residues_cancel = ((v.side_a.residue.prime_value() + v.side_b.residue.prime_value()) % p == 0);
        rep.nodes.push_back(v);
        rep.ok = rep.ok && rep.nodes.back().ok();
    }
    return rep;
}

} // namespace rankp
