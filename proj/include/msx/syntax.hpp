#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "msx/coproduct.hpp"

namespace msx {

// Full binary tree with atom (or trace) leaves and no internal labels.
class SyntacticObject {
public:
    explicit SyntacticObject(Tree t);
    static SyntacticObject parse(std::string_view text);
    static bool valid(const Tree& t, std::string* why = nullptr);

    const Tree& tree() const { return t_; }
    const std::string& key() const { return t_.enc(); }
    int num_leaves() const { return t_.num_leaves(); }
    bool operator==(const SyntacticObject& o) const { return t_ == o.t_; }

private:
    Tree t_;
};

using AtomInventory = std::set<std::string>;
void check_inventory(const Tree& t, const AtomInventory& so0);

Tree magma_merge(const Tree& a, const Tree& b);

// Syntactic coproduct: extracted forest on the left, contracting quotient on the right.
TensorSum coproduct_syn(const Forest& ws,
                        CopyCancellation cancel = CopyCancellation::CanonicalEquality);

// Terms whose left channel is s1 ⊔ s2 are merged and joined to the remainder.
// Without s2 the second argument is the magma unit and s1 is placed in the workspace.
WorkspaceSum merge_pair(const Forest& ws, const Tree& s1, const std::optional<Tree>& s2,
                        CopyCancellation cancel = CopyCancellation::CanonicalEquality);

// Sum of merge_pair over all ordered pairs: two-component left channels, weighted 2
// when the components differ and 1 when they coincide.
WorkspaceSum merge_all(const Forest& ws,
                       CopyCancellation cancel = CopyCancellation::CanonicalEquality);

// Internal Merge as the composite: first place T_v in the workspace, then merge it
// with the remaining T/T_v.
WorkspaceSum internal_merge_composite(const Forest& ws, const Tree& s,
                                      CopyCancellation cancel = CopyCancellation::CanonicalEquality);

// Internal Merge in one step at component `comp`, vertex v.
Forest internal_merge(const Forest& ws, size_t comp, const VertexId& v,
                      CopyCancellation cancel = CopyCancellation::CanonicalEquality);

enum class MergeKind { EM, IM, SM_a, SM_b, SM_c };
std::string merge_kind_str(MergeKind k);

struct Location {
    size_t comp = 0;
    VertexId vertex;
};

struct MergeWitness {
    Location s1;
    Location s2;
    bool s2_is_quotient = false;  // S' = T/S for S at s1 (Internal Merge)
};

// Successor produced by a witness, or nullopt if the witness is not admissible.
std::optional<Forest> merge_by_witness(const Forest& before, const MergeWitness& w,
                                       CopyCancellation cancel = CopyCancellation::CanonicalEquality);

MergeKind classify_merge(const Forest& before, const Forest& term, const MergeWitness& w,
                         CopyCancellation cancel = CopyCancellation::CanonicalEquality);

enum class HeadDir { Left, Right };
using HeadFunction = std::map<VertexId, HeadDir>;

// Leaf reached from v by following projecting children.
VertexId head_leaf(const Tree& t, const HeadFunction& h, const VertexId& v);
std::map<VertexId, std::string> label_by_head(const SyntacticObject& s, const HeadFunction& h);

// Head marks stored in the tree itself survive canonical reordering.
Tree apply_heads(const Tree& t, const HeadFunction& h);
HeadFunction heads_of(const Tree& t);
bool has_full_heads(const Tree& t);
std::string head_label(const Tree& t);   // atom reached through head marks

} // namespace msx
