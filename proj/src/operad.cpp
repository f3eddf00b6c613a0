#include "msx/operad.hpp"

#include <algorithm>

namespace msx {

namespace {

void check_shape(const Tree& t, bool atoms_allowed)
{
    if (t.is_unary())
        throw ValidationError("operad elements have no unary vertices: " + t.enc());
    if (t.label())
        throw ValidationError("operad elements carry no labels: " + t.enc());
    if (t.is_leaf()) {
        auto k = t.leaf_kind();
        if (k == LeafKind::Hole)
            return;
        if (atoms_allowed && (k == LeafKind::Atom || k == LeafKind::Trace))
            return;
        throw ValidationError("leaf " + t.enc() + " is not an input");
    }
    for (const auto& c : t.kids())
        check_shape(c, atoms_allowed);
}

// Numbers unnumbered holes canonically; checks that numbered holes are 1..n.
Tree number_holes(const Tree& t)
{
    std::vector<int> idx;
    for (const auto& v : t.leaves()) {
        const Tree& l = t.at(v);
        if (l.leaf_kind() == LeafKind::Hole)
            idx.push_back(l.leaf_label().hole);
    }
    bool all_zero = std::all_of(idx.begin(), idx.end(), [](int i) { return i == 0; });
    if (all_zero) {
        int next = 0;
        return map_leaves(t, [&](const Tree& l, int) {
            return l.leaf_kind() == LeafKind::Hole ? Tree::hole(++next) : l;
        });
    }
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<int>(i) + 1)
            throw ValidationError("holes must be numbered 1.." + std::to_string(sorted.size()));
    return t;
}

int count_holes(const Tree& t)
{
    int n = 0;
    for (const auto& v : t.leaves())
        n += t.at(v).leaf_kind() == LeafKind::Hole;
    return n;
}

Tree fill_holes(const Tree& t, const std::function<Tree(int)>& f)
{
    return map_leaves(t, [&](const Tree& l, int) {
        return l.leaf_kind() == LeafKind::Hole ? f(l.leaf_label().hole) : l;
    });
}

Tree shift_holes(const Tree& t, int by)
{
    return fill_holes(t, [&](int j) { return Tree::hole(j + by); });
}

const char kTag = '\x1f';

std::string tagged(const std::string& name, size_t i, int k)
{
    return name + kTag + std::to_string(i) + "." + std::to_string(k);
}

std::pair<size_t, int> tag_of(const std::string& name)
{
    auto p = name.find(kTag);
    auto dot = name.find('.', p);
    return {std::stoul(name.substr(p + 1, dot - p - 1)), std::stoi(name.substr(dot + 1))};
}

std::string untagged(const std::string& name)
{
    return name.substr(0, name.find(kTag));
}

} // namespace

OperadElement::OperadElement(Tree t)
{
    check_shape(t, false);
    t_ = number_holes(t);
}

OperadElement OperadElement::parse(std::string_view text)
{
    return OperadElement(parse_tree(text, LeafMode::Syntax));
}

OperadElement OperadElement::unit()
{
    return OperadElement(Tree::hole(1));
}

OperadElement OperadElement::shape_of(const Tree& t)
{
    return OperadElement(contract_unary(map_leaves(t, [](const Tree&, int) { return Tree::hole(0); })));
}

MixedTree::MixedTree(Tree t)
{
    check_shape(t, true);
    t_ = number_holes(t);
}

int MixedTree::arity() const
{
    return count_holes(t_);
}

int MixedTree::num_atoms() const
{
    return t_.num_leaves() - arity();
}

SyntacticObject MixedTree::to_syntactic() const
{
    if (!saturated())
        throw ArityMismatchError(std::to_string(arity()) + " inputs are still open");
    return SyntacticObject(t_);
}

OperadElement operad_insert(const OperadElement& x, int i, const OperadElement& y)
{
    const int n = x.arity();
    const int m = y.arity();
    if (i < 1 || i > n)
        throw IndexError("input " + std::to_string(i) + " out of range 1.." + std::to_string(n));
    return OperadElement(fill_holes(x.tree(), [&](int j) {
        if (j < i)
            return Tree::hole(j);
        if (j > i)
            return Tree::hole(j + m - 1);
        return shift_holes(y.tree(), i - 1);
    }));
}

OperadElement operad_compose(const OperadElement& x, const std::vector<OperadElement>& parts)
{
    if (static_cast<int>(parts.size()) != x.arity())
        throw ArityMismatchError("operation of arity " + std::to_string(x.arity()) + " given " +
                                 std::to_string(parts.size()) + " inputs");
    std::vector<int> offset(parts.size() + 1, 0);
    for (size_t j = 0; j < parts.size(); ++j)
        offset[j + 1] = offset[j] + parts[j].arity();
    return OperadElement(fill_holes(x.tree(), [&](int j) {
        return shift_holes(parts[j - 1].tree(), offset[j - 1]);
    }));
}

SyntacticObject act_SO(const OperadElement& t, const std::vector<SyntacticObject>& args)
{
    if (static_cast<int>(args.size()) != t.arity())
        throw ArityMismatchError("operation of arity " + std::to_string(t.arity()) + " given " +
                                 std::to_string(args.size()) + " arguments");
    return SyntacticObject(fill_holes(t.tree(), [&](int j) { return args[j - 1].tree(); }));
}

MorphoSynTree act_MS(const OperadElement& t, const std::vector<MorphoSynTree>& args)
{
    if (static_cast<int>(args.size()) != t.arity())
        throw ArityMismatchError("operation of arity " + std::to_string(t.arity()) + " given " +
                                 std::to_string(args.size()) + " arguments");
    return MorphoSynTree::from_tree(
        fill_holes(t.tree(), [&](int j) { return args[j - 1].tree(); }));
}

MixedTree insert_SO_at_leaf(const MixedTree& t, int i, const SyntacticObject& s)
{
    const int n = t.arity();
    if (i < 1 || i > n)
        throw IndexError("input " + std::to_string(i) + " out of range 1.." + std::to_string(n));
    return MixedTree(fill_holes(t.tree(), [&](int j) {
        if (j == i)
            return s.tree();
        return Tree::hole(j > i ? j - 1 : j);
    }));
}

MorphoSynTree gamma_SO_MO(const SyntacticObject& t, const std::vector<Insertion>& args,
                          const GammaSM& gamma)
{
    if (static_cast<int>(args.size()) != t.num_leaves())
        throw ArityMismatchError("tree with " + std::to_string(t.num_leaves()) + " leaves given " +
                                 std::to_string(args.size()) + " morphological arguments");
    for (size_t k = 0; k < args.size(); ++k) {
        if (!args[k])
            continue;
        const Tree& leaf = t.tree().at(t.tree().leaves()[k]);
        if (leaf.leaf_kind() != LeafKind::Atom)
            throw MatchError("leaf " + std::to_string(k) + " is a trace");
        if (!gamma.admits(args[k]->root_bundle(), leaf.leaf_label().name))
            throw MatchError("leaf " + std::to_string(k) + ": (" +
                             bundle_str(args[k]->root_bundle()) + ", " + leaf.leaf_label().name +
                             ") is not an admitted pair");
    }
    return MorphoSynTree(t.tree(), args);
}

MorphoSynTree gamma_SO_MO(const SyntacticObject& t, const std::map<VertexId, Insertion>& args,
                          const GammaSM& gamma)
{
    auto leaves = t.tree().leaves();
    std::vector<Insertion> v(leaves.size());
    for (const auto& [id, ins] : args) {
        auto it = std::find(leaves.begin(), leaves.end(), id);
        if (it == leaves.end())
            throw IndexError("vertex " + vertex_str(id) + " is not a leaf");
        v[it - leaves.begin()] = ins;
    }
    return gamma_SO_MO(t, v, gamma);
}

std::pair<SyntacticObject, HeadFunction> colored_insert_domh(const SyntacticObject& x,
                                                             const HeadFunction& hx, int leaf,
                                                             const SyntacticObject& y,
                                                             const HeadFunction& hy)
{
    auto lx = label_by_head(x, hx);
    auto ly = label_by_head(y, hy);
    auto leaves = x.tree().leaves();
    if (leaf < 0 || leaf >= static_cast<int>(leaves.size()))
        throw IndexError("leaf " + std::to_string(leaf) + " out of range");
    const VertexId& target = leaves[leaf];
    const std::string& want = lx.at(target);
    const std::string& got = ly.at({});
    if (want != got)
        throw ColorMismatchError("cannot insert a tree headed by '" + got + "' at leaf '" + want +
                                 "'");
    Tree ty = apply_heads(y.tree(), hy);

    std::function<Tree(const Tree&, VertexId&)> rebuild = [&](const Tree& t, VertexId& p) {
        if (p == target)
            return ty;
        if (t.is_leaf())
            return t;
        std::vector<Tree> kids;
        for (size_t i = 0; i < t.kids().size(); ++i) {
            p.push_back(static_cast<int>(i));
            kids.push_back(rebuild(t.kids()[i], p));
            p.pop_back();
        }
        int head = -1;
        if (auto it = hx.find(p); it != hx.end())
            head = it->second == HeadDir::Left ? 0 : 1;
        return Tree::from_kids(std::move(kids), t.label(), head);
    };
    VertexId p;
    Tree r = rebuild(x.tree(), p);
    return {SyntacticObject(r), heads_of(r)};
}

bool verify_correspondence(const OperadElement& t_op, const std::vector<SyntacticObject>& syn_parts,
                           const std::vector<std::vector<Insertion>>& morph_args,
                           const GammaSM& gamma)
{
    if (static_cast<int>(syn_parts.size()) != t_op.arity() || morph_args.size() != syn_parts.size())
        throw ArityMismatchError("argument count does not match the operation");

    // Insert-then-act.
    std::vector<MorphoSynTree> ms;
    for (size_t i = 0; i < syn_parts.size(); ++i)
        ms.push_back(gamma_SO_MO(syn_parts[i], morph_args[i], gamma));
    MorphoSynTree rhs = act_MS(t_op, ms);

    // Compose-then-insert: leaves are tagged with their origin so that the arguments
    // can be matched after canonical reordering.
    std::vector<Tree> tagged_parts;
    for (size_t i = 0; i < syn_parts.size(); ++i) {
        tagged_parts.push_back(map_leaves(syn_parts[i].tree(), [&](const Tree& l, int k) {
            return l.leaf_kind() == LeafKind::Atom ? Tree::atom(tagged(l.leaf_label().name, i, k))
                                                   : l;
        }));
    }
    Tree composite = fill_holes(t_op.tree(), [&](int j) { return tagged_parts[j - 1]; });
    Tree rendered = render_insertions(
        composite,
        [&](const Tree& l, int) {
            auto [i, k] = tag_of(l.leaf_label().name);
            return morph_args[i].at(k);
        },
        [](const Tree& l) { return untagged(l.leaf_label().name); }, &gamma);
    MorphoSynTree lhs = MorphoSynTree::from_tree(rendered);
    return lhs == rhs;
}

SyntacticObject forget_morphology(const MorphoSynTree& ms)
{
    return SyntacticObject(ms.skeleton());
}

bool check_forget_square(const OperadElement& t, const std::vector<MorphoSynTree>& xs)
{
    return check_morphism_square(
        t, xs, [](const OperadElement& o, const std::vector<MorphoSynTree>& a) { return act_MS(o, a); },
        [](const OperadElement& o, const std::vector<SyntacticObject>& a) { return act_SO(o, a); },
        [](const MorphoSynTree& m) { return forget_morphology(m); });
}

} // namespace msx
