#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "msx/operad.hpp"

namespace msx {

// Recipe (T; S_1, ..., S_n) for assembling a morphosyntactic tree from a workspace.
class AssemblyOp {
public:
    AssemblyOp(const SyntacticObject& t, std::vector<Insertion> args);
    explicit AssemblyOp(MorphoSynTree ms);

    const MorphoSynTree& ms() const { return ms_; }
    const Tree& skeleton() const { return ms_.skeleton(); }
    const std::vector<Insertion>& args() const { return ms_.insertions(); }
    int arity() const { return ms_.num_syn_leaves(); }
    // Canonical after contracting no-op unary vertices in the arguments.
    const std::string& key() const { return key_; }
    std::string str() const;
    bool operator==(const AssemblyOp& o) const { return key_ == o.key_; }
    // Non-unit arguments as a workspace.
    Forest arg_forest() const;

private:
    MorphoSynTree ms_;
    std::string key_;
};

using OpSum = LinearSum<AssemblyOp>;

// Terms of Δ^ρ(ws) whose left channel is the argument forest, assembled and joined
// to the right channel.
WorkspaceSum assemble_MT(const AssemblyOp& op, const Forest& ws, const GammaSM& gamma);

// Every extraction with one tree per leaf of t, in every admissible leaf assignment.
WorkspaceSum assemble_KT(const SyntacticObject& t, const Forest& ws, const GammaSM& gamma);

// Skeleton vertices whose two children are leaves that both carry morphology.
std::vector<VertexId> cherries(const MorphoSynTree& ms);

// Rendered subtree of ms below skeleton vertex v.
Tree rendered_at(const MorphoSynTree& ms, const VertexId& v);

MorphoSynTree fusion_at(const MorphoSynTree& ms, const VertexId& v, const GammaSM& gamma);
// Sum over admissible cherries; cherries failing the match are skipped.
WorkspaceSum fusion_all(const MorphoSynTree& ms, const GammaSM& gamma);
// Componentwise product over a workspace of morphosyntactic trees.
WorkspaceSum fusion_all(const Forest& ws, const GammaSM& gamma);
// Fuses every copy of the given rendered cherry found among the workspace components.
WorkspaceSum fuse_matching(const Forest& ws, const Tree& cherry, const GammaSM& gamma);

// Restricts S to the target bundle: root relabelled, bundles intersected, subtrees
// with nothing left removed, then no-op unary vertices contracted.
ExtMorphObject fission_split(const ExtMorphObject& s, const Bundle& target);

struct FissionSpec {
    int leaf = 0;
    Bundle shared;          // A, copied to both parts
    Bundle part1, part2;    // partition of B_v minus A
    std::string partner;    // atom at the new sibling leaf
};

void check_partition(const Bundle& bv, const FissionSpec& spec);

// Leaf `leaf` becomes a cherry (α_leaf α) carrying the two split trees; both
// admissible assignments of the parts to the two atoms are summed.
WorkspaceSum fission(const MorphoSynTree& ms, const FissionSpec& spec, const GammaSM& gamma);

MorphoSynTree obliterate(const MorphoSynTree& ms, int leaf);

struct ImpoverishOptions {
    // When set, this feature is grafted next to the surviving morphology.
    std::optional<Feature> unmarked;
};

// Removes the subbundle `removed` from the insertion at `leaf`.
MorphoSynTree impoverish_subset(const MorphoSynTree& ms, int leaf, const Bundle& removed,
                                const GammaSM& gamma, const ImpoverishOptions& opt = {});

// Fission (part1 removed, part2 kept), fusion at the new cherry, then the quotient
// removing the part1 tree; the fused vertex stays as a unary vertex.
MorphoSynTree impoverish_trace(const MorphoSynTree& ms, const FissionSpec& spec,
                               const GammaSM& gamma, const ImpoverishOptions& opt = {});

// M^morph: extracts s1 ⊔ s2 and merges them under the union of their root bundles.
WorkspaceSum morph_merge(const Forest& ws, const Tree& s1, const Tree& s2);

// Replaces the component s by its two split trees; nullopt if s is not a component.
std::optional<Forest> cut_split(const Forest& ws, const Tree& s, const Bundle& shared,
                                const Bundle& part1, const Bundle& part2);

// Fission on the argument at `leaf` (removed / kept), extraction of the kept part
// into the workspace, then assembly.
WorkspaceSum oblit_pipeline(const Forest& ws, const AssemblyOp& op, int leaf,
                            const Bundle& removed, const Bundle& kept, const GammaSM& gamma);

// Fission and fusion on the argument, extraction of the removed part, then assembly
// with the quotient.
WorkspaceSum impov_pipeline(const Forest& ws, const AssemblyOp& op, const FissionSpec& spec,
                            const GammaSM& gamma);

struct Fuse {
    VertexId site;
};
struct Fission {
    FissionSpec spec;
};
struct Impoverish {
    int leaf = 0;
    Bundle removed;
};
using Generator = std::variant<Fuse, Fission, Impoverish>;

std::string generator_str(const Generator& g);

OpSum apply_generator(const Generator& g, const AssemblyOp& op, const GammaSM& gamma);
// Applies the generators left to right; errors carry the failing step.
OpSum semigroup_apply(const std::vector<Generator>& gens, const AssemblyOp& op,
                      const GammaSM& gamma);

struct DiagramResult {
    bool commutes = false;
    bool vacuous = false;   // both paths gave the zero sum
    WorkspaceSum path_a;
    WorkspaceSum path_b;
};

// Assemble then fuse at cherry v, against merge S_1, S_2 in morphology then assemble
// with the fused recipe.
DiagramResult verify_fusion_diagram(const AssemblyOp& op, const VertexId& v, const Forest& ws,
                                    const GammaSM& gamma);

// Assemble then fission, against cutting S into its split trees then assembling with
// the fissioned recipe. The argument at spec.leaf must be a component of ws.
DiagramResult verify_fission_diagram(const AssemblyOp& op, const FissionSpec& spec,
                                     const Forest& ws, const GammaSM& gamma);

} // namespace msx
