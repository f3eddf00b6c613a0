#include "msx/ms_tree.hpp"

namespace msx {

GammaSM::GammaSM(std::set<std::pair<Bundle, std::string>> pairs, bool surjective)
    : pairs_(std::move(pairs)), surjective_(surjective)
{
}

GammaSM GammaSM::permissive()
{
    GammaSM g;
    g.any_ = true;
    return g;
}

bool GammaSM::admits(const Bundle& b, const std::string& atom) const
{
    return any_ || pairs_.count({b, atom}) > 0;
}

std::vector<std::string> GammaSM::atoms_for(const Bundle& b) const
{
    std::vector<std::string> out;
    for (const auto& [pb, a] : pairs_)
        if (pb == b)
            out.push_back(a);
    return out;
}

void GammaSM::check_surjective(const AtomInventory& so0) const
{
    if (!surjective_ || any_)
        return;
    std::set<std::string> covered;
    for (const auto& p : pairs_)
        covered.insert(p.second);
    for (const auto& a : so0)
        if (!covered.count(a))
            throw ValidationError("feature correspondence does not cover atom '" + a + "'");
}

Tree attach_boundary(const Tree& s, const std::string& atom)
{
    if (s.is_leaf()) {
        if (s.leaf_kind() == LeafKind::Feature)
            return Tree::boundary({s.leaf_label().feature}, atom);
        if (s.leaf_kind() == LeafKind::Stub && s.label())
            return Tree::stub(InternalLabel{s.label()->bundle, atom});
        throw ValidationError("cannot insert " + s.enc() + " at a syntactic leaf");
    }
    if (!s.label())
        throw ValidationError("inserted tree has an unlabelled root: " + s.enc());
    return s.with_label(InternalLabel{s.label()->bundle, atom});
}

Tree detach_boundary(const Tree& s)
{
    if (s.is_leaf() && s.leaf_kind() == LeafKind::Boundary) {
        const Bundle& b = s.leaf_label().bundle;
        if (b.size() != 1)
            throw ValidationError("boundary leaf must carry a single feature: " + s.enc());
        return Tree::feature(*b.begin());
    }
    if (!s.label() || !s.label()->boundary())
        throw ValidationError("not a boundary vertex: " + s.enc());
    if (s.is_leaf())
        return Tree::stub(InternalLabel{s.label()->bundle, ""});
    return s.with_label(InternalLabel{s.label()->bundle, ""});
}

bool is_boundary_root(const Tree& t)
{
    if (t.is_leaf() && t.leaf_kind() == LeafKind::Boundary)
        return true;
    return t.label() && t.label()->boundary();
}

Tree render_insertions(const Tree& skeleton,
                       const std::function<Insertion(const Tree& leaf, int k)>& assign,
                       const std::function<std::string(const Tree& leaf)>& atom_of,
                       const GammaSM* gamma)
{
    return map_leaves(skeleton, [&](const Tree& leaf, int k) {
        if (leaf.leaf_kind() != LeafKind::Atom)
            return leaf;
        std::string atom = atom_of(leaf);
        Insertion ins = assign(leaf, k);
        if (!ins)
            return Tree::atom(atom);
        if (gamma && !gamma->admits(ins->root_bundle(), atom))
            throw MatchError("leaf " + std::to_string(k) + ": (" + bundle_str(ins->root_bundle()) +
                             ", " + atom + ") is not an admitted pair");
        return attach_boundary(ins->tree(), atom);
    });
}

MorphoSynTree::MorphoSynTree(Tree skeleton, std::vector<Insertion> insertions)
    : skeleton_(std::move(skeleton)), ins_(std::move(insertions))
{
    std::string why;
    if (!SyntacticObject::valid(skeleton_, &why))
        throw ValidationError("skeleton: " + why);
    if (static_cast<int>(ins_.size()) != skeleton_.num_leaves())
        throw ArityMismatchError("skeleton has " + std::to_string(skeleton_.num_leaves()) +
                                 " leaves but " + std::to_string(ins_.size()) +
                                 " insertions were given");
    for (size_t k = 0; k < ins_.size(); ++k)
        if (ins_[k] && skeleton_.at(skeleton_.leaves()[k]).leaf_kind() != LeafKind::Atom)
            throw ValidationError("morphology inserted at a trace");
    rendered_ = render_insertions(
        skeleton_, [&](const Tree&, int k) { return ins_[k]; },
        [](const Tree& l) { return l.leaf_label().name; }, nullptr);
}

namespace {

std::pair<Tree, std::vector<Insertion>> decompose(const Tree& t)
{
    if (is_boundary_root(t))
        return {Tree::atom(t.is_leaf() && !t.label() ? t.leaf_label().name : t.label()->atom),
                {ExtMorphObject(detach_boundary(t))}};
    if (t.is_leaf()) {
        if (t.leaf_kind() != LeafKind::Atom && t.leaf_kind() != LeafKind::Trace)
            throw ValidationError("leaf " + t.enc() + " is outside any inserted morphology");
        return {t, {std::nullopt}};
    }
    if (!t.is_binary() || t.label())
        throw ValidationError("vertex " + t.enc() + " is neither syntactic nor a boundary");
    auto a = decompose(t.kid(0));
    auto b = decompose(t.kid(1));
    Tree sk = Tree::binary(a.first, b.first, std::nullopt, t.head());
    std::vector<Insertion> ins;
    if (sk.kid(0).henc() == a.first.henc()) {
        ins = a.second;
        ins.insert(ins.end(), b.second.begin(), b.second.end());
    } else {
        ins = b.second;
        ins.insert(ins.end(), a.second.begin(), a.second.end());
    }
    return {sk, ins};
}

} // namespace

MorphoSynTree MorphoSynTree::from_tree(const Tree& rendered)
{
    auto [sk, ins] = decompose(rendered);
    return MorphoSynTree(sk, ins);
}

MorphoSynTree MorphoSynTree::parse(std::string_view text)
{
    return from_tree(parse_tree(text, LeafMode::Auto));
}

std::string MorphoSynTree::atom(int leaf) const
{
    return skeleton_.at(skeleton_.leaves().at(leaf)).leaf_label().name;
}

void MorphoSynTree::check_gamma(const GammaSM& g) const
{
    for (size_t k = 0; k < ins_.size(); ++k) {
        if (!ins_[k])
            continue;
        std::string a = atom(static_cast<int>(k));
        if (!g.admits(ins_[k]->root_bundle(), a))
            throw MatchError("leaf " + std::to_string(k) + ": (" +
                             bundle_str(ins_[k]->root_bundle()) + ", " + a +
                             ") is not an admitted pair");
    }
}

} // namespace msx
