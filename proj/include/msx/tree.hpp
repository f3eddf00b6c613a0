#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "msx/errors.hpp"

namespace msx {

enum class Valuation { Plus, Minus, Unvalued };

struct Feature {
    std::string cat;
    Valuation val = Valuation::Unvalued;

    auto operator<=>(const Feature&) const = default;
    bool operator==(const Feature&) const = default;

    std::string str() const;
    // "num+" -> plus, "num-" -> minus, bare name -> unvalued
    static Feature parse(std::string_view tok);
};

using Bundle = std::set<Feature>;

std::string bundle_str(const Bundle& b);
Bundle bundle_union(const Bundle& a, const Bundle& b);
Bundle bundle_intersect(const Bundle& a, const Bundle& b);
Bundle bundle_minus(const Bundle& a, const Bundle& b);
bool bundle_subset(const Bundle& a, const Bundle& b);
Bundle parse_bundle(std::string_view text);

// Label of an internal vertex: a feature bundle, plus a syntactic atom when the
// vertex sits on the syntax/morphology boundary.
struct InternalLabel {
    Bundle bundle;
    std::string atom;

    bool operator==(const InternalLabel&) const = default;
    bool boundary() const { return !atom.empty(); }
    std::string str() const;
};

enum class LeafKind { Atom, Feature, Boundary, Hole, Trace, Stub };

struct LeafLabel {
    LeafKind kind = LeafKind::Atom;
    std::string name;   // atom name, boundary atom, or trace origin encoding
    Feature feature;
    Bundle bundle;      // boundary leaves
    int hole = 0;       // 1-based input index, 0 when unassigned
};

enum class NodeKind { Leaf, Unary, Binary };

using VertexId = std::vector<int>;
std::string vertex_str(const VertexId& v);

class Tree;

struct Node {
    NodeKind kind = NodeKind::Leaf;
    LeafLabel leaf;
    std::optional<InternalLabel> label;   // internal vertices and stubs
    std::vector<Tree> kids;
    int head = -1;                        // projecting child of a binary vertex
    std::string enc;
    std::string henc;                     // encoding including head marks
    int nleaves = 0;
    int nverts = 0;
    int depth = 0;
};

class Tree {
public:
    Tree();  // the leaf "_" placeholder; prefer the named constructors

    static Tree atom(std::string name);
    static Tree feature(Feature f);
    static Tree hole(int index = 0);
    static Tree trace(const Tree& origin);
    static Tree stub(std::optional<InternalLabel> label = std::nullopt);
    static Tree boundary(Bundle b, std::string atom);
    static Tree leaf(LeafLabel l, std::optional<InternalLabel> label = std::nullopt);
    static Tree unary(Tree child, std::optional<InternalLabel> label = std::nullopt);
    // head: 0 if a projects, 1 if b projects, -1 if unspecified
    static Tree binary(Tree a, Tree b, std::optional<InternalLabel> label = std::nullopt,
                       int head = -1);
    static Tree from_kids(std::vector<Tree> kids, std::optional<InternalLabel> label,
                          int head = -1);

    NodeKind kind() const { return n_->kind; }
    bool is_leaf() const { return n_->kind == NodeKind::Leaf; }
    bool is_unary() const { return n_->kind == NodeKind::Unary; }
    bool is_binary() const { return n_->kind == NodeKind::Binary; }
    const LeafLabel& leaf_label() const { return n_->leaf; }
    LeafKind leaf_kind() const { return n_->leaf.kind; }
    const std::optional<InternalLabel>& label() const { return n_->label; }
    const std::vector<Tree>& kids() const { return n_->kids; }
    const Tree& kid(int i) const { return n_->kids.at(i); }
    int head() const { return n_->head; }

    const std::string& enc() const { return n_->enc; }
    const std::string& henc() const { return n_->henc; }
    const std::string& str() const { return n_->enc; }
    int num_leaves() const { return n_->nleaves; }
    int num_vertices() const { return n_->nverts; }
    int depth() const { return n_->depth; }

    bool operator==(const Tree& o) const { return n_ == o.n_ || enc() == o.enc(); }
    bool operator!=(const Tree& o) const { return !(*this == o); }
    bool operator<(const Tree& o) const { return enc() < o.enc(); }

    const Tree& at(const VertexId& v) const;
    Tree replace(const VertexId& v, const Tree& sub) const;
    Tree with_label(std::optional<InternalLabel> l) const;
    Tree with_head(int h) const;
    Tree without_heads() const;

    std::vector<VertexId> vertices() const;   // preorder, canonical child order
    std::vector<VertexId> leaves() const;     // canonical leaf enumeration
    bool has_unary() const;

    // root bundle: the label bundle, or the singleton of a feature leaf
    Bundle root_bundle() const;

private:
    explicit Tree(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static Tree make(Node n);
    std::shared_ptr<const Node> n_;
};

// Multiset of trees, kept sorted by canonical encoding. Empty forest is the unit.
class Forest {
public:
    Forest() = default;
    explicit Forest(std::vector<Tree> comps);
    Forest(std::initializer_list<Tree> comps) : Forest(std::vector<Tree>(comps)) {}

    const std::vector<Tree>& comps() const { return comps_; }
    size_t size() const { return comps_.size(); }
    bool empty() const { return comps_.empty(); }
    int num_leaves() const;
    const std::string& key() const { return key_; }
    bool operator==(const Forest& o) const { return key_ == o.key_; }
    bool operator<(const Forest& o) const { return key_ < o.key_; }

    Forest operator+(const Forest& o) const;   // disjoint union
    Forest with(const Tree& t) const;
    Forest without(size_t i) const;

private:
    std::vector<Tree> comps_;
    std::string key_ = "1";
};

enum class LeafMode {
    Syntax,  // bare names are atoms
    Morph,   // bare names are features
    Auto,    // features below a labeled vertex, atoms elsewhere
};

Tree parse_tree(std::string_view text, LeafMode mode = LeafMode::Auto);
Forest parse_forest(std::string_view text, LeafMode mode = LeafMode::Auto);

} // namespace msx
