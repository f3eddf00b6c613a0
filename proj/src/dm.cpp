#include "msx/dm.hpp"

#include <algorithm>

namespace msx {

namespace {

const CoproductOptions kRho{QuotientMode::Rho, CopyCancellation::Off};

int leaf_index(const Tree& skeleton, const VertexId& v)
{
    auto leaves = skeleton.leaves();
    auto it = std::find(leaves.begin(), leaves.end(), v);
    if (it == leaves.end())
        throw IndexError("vertex " + vertex_str(v) + " is not a leaf of the skeleton");
    return static_cast<int>(it - leaves.begin());
}

const ExtMorphObject& inserted(const MorphoSynTree& ms, int leaf)
{
    if (leaf < 0 || leaf >= ms.num_syn_leaves())
        throw IndexError("leaf " + std::to_string(leaf) + " out of range");
    const Insertion& ins = ms.insertion(leaf);
    if (!ins)
        throw NoInsertionError("leaf " + std::to_string(leaf) + " (" + ms.atom(leaf) +
                               ") carries no morphology");
    return *ins;
}

// Renders ms with the skeleton subtree at `target` replaced by `repl`.
Tree render_replacing(const MorphoSynTree& ms, const VertexId& target, const Tree& repl)
{
    int k = 0;
    VertexId path;
    std::function<Tree(const Tree&)> rec = [&](const Tree& t) -> Tree {
        if (path == target) {
            k += t.num_leaves();
            return repl;
        }
        if (t.is_leaf()) {
            const Insertion& ins = ms.insertion(k++);
            if (ins)
                return attach_boundary(ins->tree(), t.leaf_label().name);
            return t;
        }
        std::vector<Tree> kids;
        for (size_t i = 0; i < t.kids().size(); ++i) {
            path.push_back(static_cast<int>(i));
            kids.push_back(rec(t.kids()[i]));
            path.pop_back();
        }
        return Tree::from_kids(std::move(kids), t.label(), t.head());
    };
    return rec(ms.skeleton());
}

MorphoSynTree with_insertion(const MorphoSynTree& ms, int leaf, Insertion ins)
{
    auto v = ms.insertions();
    v.at(leaf) = std::move(ins);
    return MorphoSynTree(ms.skeleton(), std::move(v));
}

ExtMorphObject with_unmarked(const ExtMorphObject& s, const ImpoverishOptions& opt)
{
    if (!opt.unmarked)
        return s;
    Bundle b = s.root_bundle();
    if (b.count(*opt.unmarked))
        return s;
    b.insert(*opt.unmarked);
    return ExtMorphObject(Tree::binary(s.tree(), Tree::feature(*opt.unmarked), InternalLabel{b, ""}));
}

void require_admitted(const GammaSM& g, const Bundle& b, const std::string& atom)
{
    if (!g.admits(b, atom))
        throw GammaError("(" + bundle_str(b) + ", " + atom + ") is not an admitted pair");
}

// The cherry (α_leaf α) carrying x at α_leaf and y at α; α_leaf projects.
Tree fission_cherry(const ExtMorphObject& x, const std::string& a_leaf, const ExtMorphObject& y,
                    const std::string& a_new)
{
    return Tree::binary(attach_boundary(x.tree(), a_leaf), attach_boundary(y.tree(), a_new),
                        std::nullopt, 0);
}

struct SplitPair {
    ExtMorphObject first;
    ExtMorphObject second;
};

SplitPair split_for(const ExtMorphObject& s, const FissionSpec& spec)
{
    check_partition(s.root_bundle(), spec);
    return {fission_split(s, bundle_union(spec.part1, spec.shared)),
            fission_split(s, bundle_union(spec.part2, spec.shared))};
}

// Fissioned trees for each admissible assignment of the two parts.
std::vector<MorphoSynTree> fissioned(const MorphoSynTree& ms, const FissionSpec& spec,
                                     const GammaSM& gamma)
{
    const ExtMorphObject& s = inserted(ms, spec.leaf);
    auto parts = split_for(s, spec);
    const std::string a_leaf = ms.atom(spec.leaf);
    const VertexId site = ms.skeleton().leaves()[spec.leaf];
    std::vector<MorphoSynTree> out;
    const std::pair<const ExtMorphObject*, const ExtMorphObject*> assignments[] = {
        {&parts.first, &parts.second}, {&parts.second, &parts.first}};
    for (const auto& [x, y] : assignments) {
        if (!gamma.admits(x->root_bundle(), a_leaf) || !gamma.admits(y->root_bundle(), spec.partner))
            continue;
        out.push_back(MorphoSynTree::from_tree(
            render_replacing(ms, site, fission_cherry(*x, a_leaf, *y, spec.partner))));
    }
    if (out.empty())
        throw GammaError("no assignment of " + bundle_str(parts.first.root_bundle()) + " and " +
                         bundle_str(parts.second.root_bundle()) + " to (" + a_leaf + ", " +
                         spec.partner + ") is admitted");
    return out;
}

size_t component_index(const Forest& f, const Tree& t)
{
    for (size_t i = 0; i < f.size(); ++i)
        if (f.comps()[i] == t)
            return i;
    return f.size();
}

// ⊔ ∘ Δ^ρ restricted to the extraction of child j of component c.
std::optional<Forest> extract_child(const Forest& ws, size_t c, int j)
{
    std::optional<Forest> out;
    for_each_extraction(ws, kRho, [&](const Extraction& e) {
        if (out)
            return;
        for (size_t i = 0; i < e.sets.size(); ++i) {
            if (i == c ? e.sets[i] != VertexSet{VertexId{j}} : !e.sets[i].empty())
                return;
        }
        out = e.left + e.right;
    });
    return out;
}

int child_index(const Tree& parent, const Tree& child)
{
    for (size_t i = 0; i < parent.kids().size(); ++i)
        if (parent.kids()[i] == child)
            return static_cast<int>(i);
    return -1;
}

} // namespace

AssemblyOp::AssemblyOp(const SyntacticObject& t, std::vector<Insertion> args)
    : AssemblyOp(MorphoSynTree(t.tree(), std::move(args)))
{
}

AssemblyOp::AssemblyOp(MorphoSynTree ms) : ms_(std::move(ms))
{
    std::vector<Insertion> simple;
    for (const auto& a : ms_.insertions())
        simple.push_back(a ? Insertion(simplify_unary(*a)) : std::nullopt);
    key_ = MorphoSynTree(ms_.skeleton(), simple).tree().enc();
}

std::string AssemblyOp::str() const
{
    std::string s = "M^" + ms_.skeleton().enc() + "[";
    for (size_t i = 0; i < args().size(); ++i) {
        if (i)
            s += ", ";
        s += args()[i] ? args()[i]->tree().enc() : "1";
    }
    return s + "]";
}

Forest AssemblyOp::arg_forest() const
{
    std::vector<Tree> v;
    for (const auto& a : args())
        if (a)
            v.push_back(a->tree());
    return Forest(std::move(v));
}

WorkspaceSum assemble_MT(const AssemblyOp& op, const Forest& ws, const GammaSM& gamma)
{
    op.ms().check_gamma(gamma);
    const Forest target = op.arg_forest();
    const Forest built{op.ms().tree()};
    WorkspaceSum out;
    for_each_extraction(ws, kRho, [&](const Extraction& e) {
        if (e.left == target)
            out.add(WorkspaceTerm{built + e.right});
    });
    return out;
}

WorkspaceSum assemble_KT(const SyntacticObject& t, const Forest& ws, const GammaSM& gamma)
{
    const size_t n = static_cast<size_t>(t.num_leaves());
    auto leaves = t.tree().leaves();
    std::vector<std::string> atoms;
    for (const auto& v : leaves)
        atoms.push_back(t.tree().at(v).leaf_label().name);
    WorkspaceSum out;
    for_each_extraction(ws, kRho, [&](const Extraction& e) {
        if (e.left.size() != n)
            return;
        std::vector<Tree> perm = e.left.comps();   // sorted by encoding
        do {
            bool ok = true;
            std::vector<Insertion> args;
            for (size_t k = 0; k < n && ok; ++k) {
                if (!t.tree().at(leaves[k]).is_leaf() ||
                    t.tree().at(leaves[k]).leaf_kind() != LeafKind::Atom ||
                    !gamma.admits(perm[k].root_bundle(), atoms[k]))
                    ok = false;
                else
                    args.emplace_back(ExtMorphObject(perm[k]));
            }
            if (ok)
                out.add(WorkspaceTerm{Forest{MorphoSynTree(t.tree(), args).tree()} + e.right});
        } while (std::next_permutation(perm.begin(), perm.end()));
    });
    return out;
}

std::vector<VertexId> cherries(const MorphoSynTree& ms)
{
    std::vector<VertexId> out;
    const Tree& sk = ms.skeleton();
    auto leaves = sk.leaves();
    for (const auto& v : sk.vertices()) {
        const Tree& n = sk.at(v);
        if (!n.is_binary() || !n.kid(0).is_leaf() || !n.kid(1).is_leaf())
            continue;
        VertexId l0 = v, l1 = v;
        l0.push_back(0);
        l1.push_back(1);
        int k0 = static_cast<int>(std::find(leaves.begin(), leaves.end(), l0) - leaves.begin());
        int k1 = static_cast<int>(std::find(leaves.begin(), leaves.end(), l1) - leaves.begin());
        if (ms.insertion(k0) && ms.insertion(k1))
            out.push_back(v);
    }
    return out;
}

Tree rendered_at(const MorphoSynTree& ms, const VertexId& v)
{
    const Tree& sk = ms.skeleton();
    const Tree& sub = sk.at(v);
    auto leaves = sk.leaves();
    int k0 = 0;
    while (!is_ancestor_or_self(v, leaves[k0]))
        ++k0;
    std::vector<Insertion> ins(ms.insertions().begin() + k0,
                               ms.insertions().begin() + k0 + sub.num_leaves());
    return MorphoSynTree(sub, ins).tree();
}

MorphoSynTree fusion_at(const MorphoSynTree& ms, const VertexId& v, const GammaSM& gamma)
{
    auto cs = cherries(ms);
    if (std::find(cs.begin(), cs.end(), v) == cs.end())
        throw NotACherryError("vertex " + vertex_str(v) +
                              " is not a cherry with morphology at both leaves");
    const Tree& node = ms.skeleton().at(v);
    if (node.head() < 0)
        throw NoHeadError("no head choice at vertex " + vertex_str(v));
    VertexId l0 = v;
    l0.push_back(0);
    int k0 = leaf_index(ms.skeleton(), l0);
    const ExtMorphObject& s1 = *ms.insertion(k0);
    const ExtMorphObject& s2 = *ms.insertion(k0 + 1);
    const std::string av = node.kid(node.head()).leaf_label().name;
    Bundle b = bundle_union(s1.root_bundle(), s2.root_bundle());
    require_admitted(gamma, b, av);
    ExtMorphObject s12(Tree::binary(s1.tree(), s2.tree(), InternalLabel{b, ""}));
    return MorphoSynTree::from_tree(render_replacing(ms, v, attach_boundary(s12.tree(), av)));
}

WorkspaceSum fusion_all(const MorphoSynTree& ms, const GammaSM& gamma)
{
    WorkspaceSum out;
    for (const auto& v : cherries(ms)) {
        try {
            out.add(WorkspaceTerm{Forest{fusion_at(ms, v, gamma).tree()}});
        } catch (const GammaError&) {
        }
    }
    return out;
}

WorkspaceSum fusion_all(const Forest& ws, const GammaSM& gamma)
{
    WorkspaceSum acc = single(Forest{});
    for (const auto& c : ws.comps()) {
        WorkspaceSum f = fusion_all(MorphoSynTree::from_tree(c), gamma);
        WorkspaceSum next;
        for (const auto& [ka, a] : acc)
            for (const auto& [kb, b] : f)
                next.add(WorkspaceTerm{a.second.forest + b.second.forest}, a.first * b.first);
        acc = std::move(next);
    }
    return acc;
}

WorkspaceSum fuse_matching(const Forest& ws, const Tree& cherry, const GammaSM& gamma)
{
    WorkspaceSum out;
    for (size_t i = 0; i < ws.size(); ++i) {
        std::optional<MorphoSynTree> ms;
        try {
            ms = MorphoSynTree::from_tree(ws.comps()[i]);
        } catch (const ValidationError&) {
            continue;   // a morphological component
        }
        for (const auto& v : cherries(*ms)) {
            if (rendered_at(*ms, v) != cherry)
                continue;
            try {
                out.add(WorkspaceTerm{ws.without(i).with(fusion_at(*ms, v, gamma).tree())});
            } catch (const GammaError&) {
            }
        }
    }
    return out;
}

ExtMorphObject fission_split(const ExtMorphObject& s, const Bundle& target)
{
    const Bundle bv = s.root_bundle();
    if (bundle_intersect(target, bv).empty())
        throw EmptySplitError(bundle_str(target) + " shares nothing with " + bundle_str(bv));
    if (!bundle_subset(target, bv))
        throw NotSubsetError(bundle_str(target) + " is not contained in " + bundle_str(bv));

    std::function<Tree(const Tree&, bool)> relabel = [&](const Tree& t, bool root) -> Tree {
        std::optional<InternalLabel> l;
        if (t.label())
            l = InternalLabel{root ? target : bundle_intersect(t.label()->bundle, target), ""};
        if (t.is_leaf())
            return t.leaf_kind() == LeafKind::Stub ? Tree::stub(l) : t;
        std::vector<Tree> kids;
        for (const auto& k : t.kids())
            kids.push_back(relabel(k, false));
        return Tree::from_kids(std::move(kids), l, t.head());
    };
    Tree r = relabel(s.tree(), true);

    VertexSet empty;
    std::function<void(const Tree&, VertexId&)> collect = [&](const Tree& t, VertexId& p) {
        bool nothing = t.is_leaf() && t.leaf_kind() == LeafKind::Feature
                           ? !target.count(t.leaf_label().feature)
                           : t.label() && t.label()->bundle.empty();
        if (nothing) {
            empty.push_back(p);
            return;
        }
        for (size_t i = 0; i < t.kids().size(); ++i) {
            p.push_back(static_cast<int>(i));
            collect(t.kids()[i], p);
            p.pop_back();
        }
    };
    VertexId p;
    collect(r, p);
    std::sort(empty.begin(), empty.end());
    Tree q = empty.empty() ? r : *quotient(r, empty, QuotientMode::Rho);
    return ExtMorphObject(simplify_unary(q));
}

void check_partition(const Bundle& bv, const FissionSpec& spec)
{
    if (!bundle_subset(spec.shared, bv))
        throw PartitionError("shared features " + bundle_str(spec.shared) + " not in " +
                             bundle_str(bv));
    if (!bundle_intersect(spec.part1, spec.part2).empty())
        throw PartitionError(bundle_str(spec.part1) + " and " + bundle_str(spec.part2) +
                             " overlap");
    if (!bundle_intersect(spec.part1, spec.shared).empty() ||
        !bundle_intersect(spec.part2, spec.shared).empty())
        throw PartitionError("parts must not contain shared features");
    if (bundle_union(spec.part1, spec.part2) != bundle_minus(bv, spec.shared))
        throw PartitionError(bundle_str(spec.part1) + " and " + bundle_str(spec.part2) +
                             " do not cover " + bundle_str(bundle_minus(bv, spec.shared)));
}

WorkspaceSum fission(const MorphoSynTree& ms, const FissionSpec& spec, const GammaSM& gamma)
{
    WorkspaceSum out;
    for (const auto& r : fissioned(ms, spec, gamma))
        out.add(WorkspaceTerm{Forest{r.tree()}});
    return out;
}

MorphoSynTree obliterate(const MorphoSynTree& ms, int leaf)
{
    (void)inserted(ms, leaf);
    return with_insertion(ms, leaf, std::nullopt);
}

MorphoSynTree impoverish_subset(const MorphoSynTree& ms, int leaf, const Bundle& removed,
                                const GammaSM& gamma, const ImpoverishOptions& opt)
{
    const ExtMorphObject& s = inserted(ms, leaf);
    const Bundle bv = s.root_bundle();
    if (removed.empty() || !bundle_subset(removed, bv) || removed == bv)
        throw NotSubsetError(bundle_str(removed) + " is not a proper nonempty part of " +
                             bundle_str(bv));
    ExtMorphObject kept = with_unmarked(fission_split(s, bundle_minus(bv, removed)), opt);
    require_admitted(gamma, kept.root_bundle(), ms.atom(leaf));
    return with_insertion(ms, leaf, kept);
}

MorphoSynTree impoverish_trace(const MorphoSynTree& ms, const FissionSpec& spec,
                               const GammaSM& gamma, const ImpoverishOptions& opt)
{
    const ExtMorphObject& s = inserted(ms, spec.leaf);
    auto parts = split_for(s, spec);
    const std::string a_leaf = ms.atom(spec.leaf);

    MorphoSynTree split = fissioned(ms, spec, gamma).front();
    const std::string c1 = fission_cherry(parts.first, a_leaf, parts.second, spec.partner).enc();
    const std::string c2 = fission_cherry(parts.second, a_leaf, parts.first, spec.partner).enc();
    std::optional<VertexId> site;
    for (const auto& v : cherries(split)) {
        const std::string e = rendered_at(split, v).enc();
        if (e == c1 || e == c2)
            site = v;
    }
    MorphoSynTree fused = fusion_at(split, *site, gamma);

    const Tree s12 = Tree::binary(parts.first.tree(), parts.second.tree(),
                                  InternalLabel{bundle_union(parts.first.root_bundle(),
                                                             parts.second.root_bundle()),
                                                ""});
    int at = -1;
    for (int k = 0; k < fused.num_syn_leaves(); ++k)
        if (fused.insertion(k) && fused.insertion(k)->tree() == s12)
            at = k;
    int j = child_index(s12, parts.first.tree());
    ExtMorphObject rest(*quotient(s12, {VertexId{j}}, QuotientMode::Rho));
    rest = with_unmarked(rest, opt);
    require_admitted(gamma, rest.root_bundle(), fused.atom(at));
    return with_insertion(fused, at, rest);
}

WorkspaceSum morph_merge(const Forest& ws, const Tree& s1, const Tree& s2)
{
    const Forest target{s1, s2};
    const Tree merged =
        Tree::binary(s1, s2, InternalLabel{bundle_union(s1.root_bundle(), s2.root_bundle()), ""});
    WorkspaceSum out;
    for_each_extraction(ws, kRho, [&](const Extraction& e) {
        if (e.left == target)
            out.add(WorkspaceTerm{Forest{merged} + e.right});
    });
    return out;
}

std::optional<Forest> cut_split(const Forest& ws, const Tree& s, const Bundle& shared,
                                const Bundle& part1, const Bundle& part2)
{
    size_t i = component_index(ws, s);
    if (i == ws.size())
        return std::nullopt;
    ExtMorphObject so(s);
    return ws.without(i)
        .with(fission_split(so, bundle_union(part1, shared)).tree())
        .with(fission_split(so, bundle_union(part2, shared)).tree());
}

WorkspaceSum oblit_pipeline(const Forest& ws, const AssemblyOp& op, int leaf,
                            const Bundle& removed, const Bundle& kept, const GammaSM& gamma)
{
    const ExtMorphObject& s = inserted(op.ms(), leaf);
    FissionSpec spec{leaf, {}, removed, kept, ""};
    auto parts = split_for(s, spec);

    size_t c = component_index(ws, s.tree());
    if (c == ws.size())
        throw ValidationError("the argument at leaf " + std::to_string(leaf) +
                              " is not a workspace component");
    // Fission inside the workspace: the two parts under a common (syntactic) vertex.
    Tree cherry = Tree::binary(parts.first.tree(), parts.second.tree());
    Forest f1 = ws.without(c).with(cherry);

    auto f2 = extract_child(f1, component_index(f1, cherry), child_index(cherry, parts.second.tree()));
    auto args = op.args();
    args[leaf] = parts.second;
    return assemble_MT(AssemblyOp(MorphoSynTree(op.skeleton(), args)), *f2, gamma);
}

WorkspaceSum impov_pipeline(const Forest& ws, const AssemblyOp& op, const FissionSpec& spec,
                            const GammaSM& gamma)
{
    const ExtMorphObject& s = inserted(op.ms(), spec.leaf);
    auto parts = split_for(s, spec);
    const std::string a_leaf = op.ms().atom(spec.leaf);
    bool assignable = (gamma.admits(parts.first.root_bundle(), a_leaf) &&
                       gamma.admits(parts.second.root_bundle(), spec.partner)) ||
                      (gamma.admits(parts.second.root_bundle(), a_leaf) &&
                       gamma.admits(parts.first.root_bundle(), spec.partner));
    if (!assignable)
        throw GammaError("the fission parts admit no assignment to (" + a_leaf + ", " +
                         spec.partner + ")");

    size_t c = component_index(ws, s.tree());
    if (c == ws.size())
        throw ValidationError("the argument at leaf " + std::to_string(spec.leaf) +
                              " is not a workspace component");
    Bundle bv = bundle_union(parts.first.root_bundle(), parts.second.root_bundle());
    require_admitted(gamma, bv, a_leaf);
    // Fission followed by fusion at the new vertex.
    Tree fused = Tree::binary(parts.first.tree(), parts.second.tree(), InternalLabel{bv, ""});
    Forest f1 = ws.without(c).with(fused);

    int j = child_index(fused, parts.first.tree());
    auto f2 = extract_child(f1, component_index(f1, fused), j);
    Tree rest = *quotient(fused, {VertexId{j}}, QuotientMode::Rho);
    auto args = op.args();
    args[spec.leaf] = ExtMorphObject(rest);
    return assemble_MT(AssemblyOp(MorphoSynTree(op.skeleton(), args)), *f2, gamma);
}

std::string generator_str(const Generator& g)
{
    if (auto f = std::get_if<Fuse>(&g))
        return "fuse " + vertex_str(f->site);
    if (auto f = std::get_if<Fission>(&g))
        return "fission leaf " + std::to_string(f->spec.leaf) + " A=" + bundle_str(f->spec.shared) +
               " B1=" + bundle_str(f->spec.part1) + " B2=" + bundle_str(f->spec.part2) +
               " partner " + f->spec.partner;
    const auto& i = std::get<Impoverish>(g);
    return "impoverish leaf " + std::to_string(i.leaf) + " removing " + bundle_str(i.removed);
}

OpSum apply_generator(const Generator& g, const AssemblyOp& op, const GammaSM& gamma)
{
    OpSum out;
    if (auto f = std::get_if<Fuse>(&g)) {
        out.add(AssemblyOp(fusion_at(op.ms(), f->site, gamma)));
    } else if (auto f = std::get_if<Fission>(&g)) {
        for (const auto& r : fissioned(op.ms(), f->spec, gamma))
            out.add(AssemblyOp(r));
    } else {
        const auto& imp = std::get<Impoverish>(g);
        const ExtMorphObject& s = inserted(op.ms(), imp.leaf);
        Bundle kept = bundle_minus(s.root_bundle(), imp.removed);
        std::optional<Tree> below;
        for (const auto& k : s.tree().kids())
            if (k.root_bundle() == kept)
                below = k;
        if (!below)
            throw NotAlignedError("no subtree directly below the root carries " + bundle_str(kept));
        require_admitted(gamma, kept, op.ms().atom(imp.leaf));
        out.add(AssemblyOp(with_insertion(op.ms(), imp.leaf, ExtMorphObject(*below))));
    }
    return out;
}

OpSum semigroup_apply(const std::vector<Generator>& gens, const AssemblyOp& op,
                      const GammaSM& gamma)
{
    OpSum cur;
    cur.add(op);
    for (size_t i = 0; i < gens.size(); ++i) {
        OpSum next;
        try {
            for (const auto& [k, cv] : cur)
                next.add(apply_generator(gens[i], cv.second, gamma), cv.first);
        } catch (const Error& e) {
            throw GeneratorError(i, e);
        }
        cur = std::move(next);
    }
    return cur;
}

DiagramResult verify_fusion_diagram(const AssemblyOp& op, const VertexId& v, const Forest& ws,
                                    const GammaSM& gamma)
{
    auto cs = cherries(op.ms());
    if (std::find(cs.begin(), cs.end(), v) == cs.end())
        throw NotACherryError("vertex " + vertex_str(v) + " is not a cherry of the recipe");
    DiagramResult r;
    const Tree cherry = rendered_at(op.ms(), v);
    for (const auto& [k, cv] : assemble_MT(op, ws, gamma))
        r.path_a.add(fuse_matching(cv.second.forest, cherry, gamma), cv.first);

    VertexId l0 = v;
    l0.push_back(0);
    int k0 = leaf_index(op.skeleton(), l0);
    const Tree& s1 = op.args()[k0]->tree();
    const Tree& s2 = op.args()[k0 + 1]->tree();
    std::optional<AssemblyOp> fused;
    try {
        fused.emplace(fusion_at(op.ms(), v, gamma));
    } catch (const GammaError&) {
    }
    if (fused) {
        for (const auto& [k, cv] : morph_merge(ws, s1, s2))
            r.path_b.add(assemble_MT(*fused, cv.second.forest, gamma), cv.first);
    }
    r.vacuous = r.path_a.empty() && r.path_b.empty();
    r.commutes = r.path_a == r.path_b;
    return r;
}

DiagramResult verify_fission_diagram(const AssemblyOp& op, const FissionSpec& spec,
                                     const Forest& ws, const GammaSM& gamma)
{
    const ExtMorphObject& s = inserted(op.ms(), spec.leaf);
    auto cut = cut_split(ws, s.tree(), spec.shared, spec.part1, spec.part2);
    if (!cut)
        throw ValidationError("the argument at leaf " + std::to_string(spec.leaf) +
                              " is not a workspace component");
    DiagramResult r;
    std::vector<MorphoSynTree> recipes;
    try {
        recipes = fissioned(op.ms(), spec, gamma);
    } catch (const GammaError&) {
    }

    const Tree built = op.ms().tree();
    for (const auto& [k, cv] : assemble_MT(op, ws, gamma)) {
        const Forest& f = cv.second.forest;
        size_t i = component_index(f, built);
        for (const auto& m : recipes)
            r.path_a.add(WorkspaceTerm{f.without(i).with(m.tree())}, cv.first);
    }
    for (const auto& m : recipes)
        r.path_b.add(assemble_MT(AssemblyOp(m), *cut, gamma));
    r.vacuous = r.path_a.empty() && r.path_b.empty();
    r.commutes = r.path_a == r.path_b;
    return r;
}

} // namespace msx
