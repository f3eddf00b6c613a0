#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msx/morph.hpp"
#include "msx/syntax.hpp"

namespace msx {

// Allowed (bundle, atom) pairs at the syntax/morphology boundary.
class GammaSM {
public:
    GammaSM() = default;
    GammaSM(std::set<std::pair<Bundle, std::string>> pairs, bool surjective = false);
    // Accepts every pair; used for unconstrained generation.
    static GammaSM permissive();

    bool admits(const Bundle& b, const std::string& atom) const;
    void add(const Bundle& b, const std::string& atom) { pairs_.emplace(b, atom); }
    const std::set<std::pair<Bundle, std::string>>& pairs() const { return pairs_; }
    bool surjective() const { return surjective_; }
    bool is_permissive() const { return any_; }
    // Atoms paired with exactly this bundle.
    std::vector<std::string> atoms_for(const Bundle& b) const;
    // Throws ValidationError if surjectivity is required and some atom is not covered.
    void check_surjective(const AtomInventory& so0) const;

private:
    std::set<std::pair<Bundle, std::string>> pairs_;
    bool surjective_ = false;
    bool any_ = false;
};

// Morphology inserted at a syntactic leaf; nullopt is the unit (no morphology).
using Insertion = std::optional<ExtMorphObject>;

// Marks the root of a morphological tree with the atom it is inserted at.
Tree attach_boundary(const Tree& s, const std::string& atom);
// Inverse of attach_boundary.
Tree detach_boundary(const Tree& s);
bool is_boundary_root(const Tree& t);

// Syntactic skeleton with morphological trees inserted at (some of) its leaves.
class MorphoSynTree {
public:
    // insertions are aligned with skeleton.leaves()
    MorphoSynTree(Tree skeleton, std::vector<Insertion> insertions);
    static MorphoSynTree from_tree(const Tree& rendered);
    static MorphoSynTree parse(std::string_view text);

    const Tree& tree() const { return rendered_; }
    const std::string& key() const { return rendered_.enc(); }
    const Tree& skeleton() const { return skeleton_; }
    const std::vector<Insertion>& insertions() const { return ins_; }
    const Insertion& insertion(int leaf) const { return ins_.at(leaf); }
    std::string atom(int leaf) const;
    int num_syn_leaves() const { return static_cast<int>(ins_.size()); }
    int num_leaves() const { return rendered_.num_leaves(); }
    bool has_heads() const { return has_full_heads(skeleton_); }
    bool operator==(const MorphoSynTree& o) const { return rendered_ == o.rendered_; }

    // Throws MatchError if some insertion is not admitted at its leaf.
    void check_gamma(const GammaSM& g) const;

private:
    Tree skeleton_;
    std::vector<Insertion> ins_;
    Tree rendered_;
};

// Inserts at every leaf of the skeleton the morphology chosen by `assign`; the atom
// used at the boundary and for the match check is `atom_of(leaf)`.
Tree render_insertions(const Tree& skeleton,
                       const std::function<Insertion(const Tree& leaf, int k)>& assign,
                       const std::function<std::string(const Tree& leaf)>& atom_of,
                       const GammaSM* gamma);

} // namespace msx
