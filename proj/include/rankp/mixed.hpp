#pragma once

#include <optional>
#include <vector>

#include "rankp/torsor.hpp"

namespace rankp {

// Element of the direct sum of the three rank-p cohomology groups on one
// chart: an additive etale datum, a multiplicative Kummer datum, and an
// additive alpha_p datum, each optional (absent = neutral class).
struct MixedTorsor {
    Field k;
    std::optional<RationalFunction> etale;
    std::optional<RationalFunction> mu;
    std::optional<RationalFunction> alpha;

    bool has(TorsorKind kind) const;
    CharPTorsor part(TorsorKind kind) const; // missing_torsor_at_node if absent
    std::vector<TorsorKind> present() const;
};

// Componentwise group law: additive data add, Kummer data multiply.
MixedTorsor mixed_add(const MixedTorsor& a, const MixedTorsor& b);
MixedTorsor frobenius_act(unsigned j, const MixedTorsor& m);

// Configuration of smooth P^1 components glued at ordinary double points.
// Every component carries the coordinate t of its own chart; a node is a
// pair (component, point).  Marked points are smooth points kept disjoint
// from the nodes.
struct SemiStableConfig {
    struct Node {
        size_t comp_a;
        P1Point pt_a;
        size_t comp_b;
        P1Point pt_b;
    };

    Field k;
    size_t components = 0;
    std::vector<Node> nodes;
    std::vector<std::vector<P1Point>> marked; // indexed by component

    // bad_parameters on: out-of-range indices, a node joining a component to
    // itself, coincident node points on one component, marks on nodes.
    void validate() const;
};

// Per-node outcome of the compatibility test: conductors must cancel and so
// must the residues.
struct NodeVerdict {
    size_t node_index;
    TorsorKind kind_a, kind_b;
    TorsorLocalData side_a, side_b;
    bool conductors_cancel = false;
    bool residues_cancel = false;
    bool ok() const { return conductors_cancel && residues_cancel; }
};

struct KummerianReport {
    bool ok = true;
    std::vector<NodeVerdict> nodes;
};

// Checks the node conditions for an assignment of one mixed torsor per
// component.  Each node side uses the designated kind when given, else the
// unique kind present there (ambiguity or absence raises
// missing_torsor_at_node).
using NodeDesignation = std::pair<std::optional<TorsorKind>, std::optional<TorsorKind>>;
KummerianReport kummerian_check(const SemiStableConfig& cfg,
                                const std::vector<MixedTorsor>& assignment,
                                const std::vector<NodeDesignation>* designations = nullptr);

} // namespace rankp
