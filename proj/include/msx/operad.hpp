#pragma once

#include <map>
#include <utility>
#include <vector>

#include "msx/ms_tree.hpp"

namespace msx {

// Abstract binary tree with n numbered input leaves (holes 1..n).
class OperadElement {
public:
    // Unnumbered holes are numbered by canonical leaf enumeration.
    explicit OperadElement(Tree t);
    static OperadElement parse(std::string_view text);
    static OperadElement unit();
    // Binary tree of the given shape (atoms ignored), holes numbered canonically.
    static OperadElement shape_of(const Tree& t);

    const Tree& tree() const { return t_; }
    const std::string& key() const { return t_.enc(); }
    int arity() const { return t_.num_leaves(); }
    bool operator==(const OperadElement& o) const { return t_ == o.t_; }

private:
    Tree t_;
};

// Tree with some numbered holes and some atom leaves.
class MixedTree {
public:
    explicit MixedTree(Tree t);
    MixedTree(const OperadElement& op) : t_(op.tree()) {}

    const Tree& tree() const { return t_; }
    int arity() const;
    int num_atoms() const;
    bool saturated() const { return arity() == 0; }
    SyntacticObject to_syntactic() const;

private:
    Tree t_;
};

OperadElement operad_insert(const OperadElement& x, int i, const OperadElement& y);
OperadElement operad_compose(const OperadElement& x, const std::vector<OperadElement>& parts);

SyntacticObject act_SO(const OperadElement& t, const std::vector<SyntacticObject>& args);
MorphoSynTree act_MS(const OperadElement& t, const std::vector<MorphoSynTree>& args);

// Fills hole i with s and renumbers the remaining holes.
MixedTree insert_SO_at_leaf(const MixedTree& t, int i, const SyntacticObject& s);

// Inserts args[k] at the k-th leaf (canonical enumeration) of t, after checking the
// bundle/atom match at each leaf. Units leave the leaf bare.
MorphoSynTree gamma_SO_MO(const SyntacticObject& t, const std::vector<Insertion>& args,
                          const GammaSM& gamma);
// Same, with an explicit leaf assignment; leaves missing from the map get the unit.
MorphoSynTree gamma_SO_MO(const SyntacticObject& t, const std::map<VertexId, Insertion>& args,
                          const GammaSM& gamma);

// Grafts y (with head function hy) at leaf `leaf` of x when the head label of y equals
// the atom at that leaf.
std::pair<SyntacticObject, HeadFunction> colored_insert_domh(const SyntacticObject& x,
                                                             const HeadFunction& hx, int leaf,
                                                             const SyntacticObject& y,
                                                             const HeadFunction& hy);

// Compose-then-insert against insert-then-act. morph_args[i] is aligned with the
// leaves of syn_parts[i].
bool verify_correspondence(const OperadElement& t_op, const std::vector<SyntacticObject>& syn_parts,
                           const std::vector<std::vector<Insertion>>& morph_args,
                           const GammaSM& gamma);

SyntacticObject forget_morphology(const MorphoSynTree& ms);

// Generic square for a graded map phi between two algebras over the operad:
// phi(act_a(t, xs)) == act_b(t, phi(xs)).
template <class A, class ActA, class ActB, class Phi>
bool check_morphism_square(const OperadElement& t, const std::vector<A>& xs, ActA act_a,
                           ActB act_b, Phi phi)
{
    using B = decltype(phi(xs.front()));
    std::vector<B> ys;
    for (const auto& x : xs)
        ys.push_back(phi(x));
    return phi(act_a(t, xs)) == act_b(t, ys);
}

bool check_forget_square(const OperadElement& t, const std::vector<MorphoSynTree>& xs);

} // namespace msx
