#include "msx/syntax.hpp"

#include <algorithm>

namespace msx {

SyntacticObject::SyntacticObject(Tree t) : t_(std::move(t))
{
    std::string why;
    if (!valid(t_, &why))
        throw ValidationError("not a syntactic object: " + why);
}

SyntacticObject SyntacticObject::parse(std::string_view text)
{
    return SyntacticObject(parse_tree(text, LeafMode::Syntax));
}

bool SyntacticObject::valid(const Tree& t, std::string* why)
{
    auto fail = [&](const std::string& m) {
        if (why)
            *why = m;
        return false;
    };
    if (t.is_unary())
        return fail("unary vertex in " + t.enc());
    if (t.label())
        return fail("labelled vertex " + t.label()->str());
    if (t.is_leaf()) {
        auto k = t.leaf_kind();
        if (k != LeafKind::Atom && k != LeafKind::Trace)
            return fail("leaf " + t.enc() + " is not an atom");
        return true;
    }
    for (const auto& k : t.kids())
        if (!valid(k, why))
            return false;
    return true;
}

void check_inventory(const Tree& t, const AtomInventory& so0)
{
    for (const auto& v : t.leaves()) {
        const Tree& l = t.at(v);
        if (l.leaf_kind() == LeafKind::Atom && !so0.count(l.leaf_label().name))
            throw InventoryError("atom '" + l.leaf_label().name + "' is not in the inventory");
    }
}

Tree magma_merge(const Tree& a, const Tree& b)
{
    return Tree::binary(a, b);
}

namespace {

CoproductOptions syn_opts(CopyCancellation c)
{
    return CoproductOptions{QuotientMode::D, c};
}

} // namespace

TensorSum coproduct_syn(const Forest& ws, CopyCancellation cancel)
{
    return coproduct(ws, syn_opts(cancel));
}

WorkspaceSum merge_pair(const Forest& ws, const Tree& s1, const std::optional<Tree>& s2,
                        CopyCancellation cancel)
{
    const Forest want = s2 ? Forest{s1, *s2} : Forest{s1};
    WorkspaceSum out;
    for_each_extraction(ws, syn_opts(cancel), [&](const Extraction& e) {
        if (e.left != want)
            return;
        if (s2)
            out.add(WorkspaceTerm{Forest{graft(e.left)} + e.right});
        else
            out.add(WorkspaceTerm{e.left + e.right});
    });
    return out;
}

WorkspaceSum merge_all(const Forest& ws, CopyCancellation cancel)
{
    WorkspaceSum out;
    for_each_extraction(ws, syn_opts(cancel), [&](const Extraction& e) {
        if (e.left.size() != 2)
            return;
        Coef w = e.left.comps()[0] == e.left.comps()[1] ? Coef(1) : Coef(2);
        out.add(WorkspaceTerm{Forest{graft(e.left)} + e.right}, w);
    });
    return out;
}

WorkspaceSum internal_merge_composite(const Forest& ws, const Tree& s, CopyCancellation cancel)
{
    WorkspaceSum out;
    const auto opt = syn_opts(cancel);
    for_each_extraction(ws, opt, [&](const Extraction& e) {
        if (e.left != Forest{s})
            return;
        for (size_t i = 0; i < e.sets.size(); ++i) {
            if (e.sets[i].empty())
                continue;
            auto rest = coproduct_quotient(ws.comps()[i], e.sets[i], opt);
            if (!rest)
                return;   // S was a whole component
            out.add(merge_pair(e.left + e.right, s, *rest, cancel));
        }
    });
    return out;
}

Forest internal_merge(const Forest& ws, size_t comp, const VertexId& v, CopyCancellation cancel)
{
    MergeWitness w{{comp, v}, {comp, {}}, true};
    auto r = merge_by_witness(ws, w, cancel);
    if (!r)
        throw NotASuccessorError("no internal merge at component " + std::to_string(comp) +
                                 ", vertex " + vertex_str(v));
    return *r;
}

std::string merge_kind_str(MergeKind k)
{
    switch (k) {
    case MergeKind::EM: return "EM";
    case MergeKind::IM: return "IM";
    case MergeKind::SM_a: return "SM_a";
    case MergeKind::SM_b: return "SM_b";
    case MergeKind::SM_c: return "SM_c";
    }
    return "?";
}

namespace {

bool located(const Forest& f, const Location& l)
{
    if (l.comp >= f.size())
        return false;
    try {
        (void)f.comps()[l.comp].at(l.vertex);
    } catch (const Error&) {
        return false;
    } catch (const std::out_of_range&) {
        return false;
    }
    return true;
}

} // namespace

std::optional<Forest> merge_by_witness(const Forest& before, const MergeWitness& w,
                                       CopyCancellation cancel)
{
    const auto opt = syn_opts(cancel);
    if (!located(before, w.s1))
        return std::nullopt;
    const auto& comps = before.comps();

    if (w.s2_is_quotient) {
        if (w.s1.vertex.empty())
            return std::nullopt;
        const Tree& t = comps[w.s1.comp];
        Tree s = t.at(w.s1.vertex);
        auto rest = coproduct_quotient(t, {w.s1.vertex}, opt);
        return before.without(w.s1.comp).with(graft(Forest{s, *rest}));
    }

    if (!located(before, w.s2))
        return std::nullopt;
    std::vector<Tree> out;
    std::vector<Tree> merged;
    for (size_t i = 0; i < comps.size(); ++i) {
        VertexSet set;
        if (w.s1.comp == i)
            set.push_back(w.s1.vertex);
        if (w.s2.comp == i)
            set.push_back(w.s2.vertex);
        if (set.empty()) {
            out.push_back(comps[i]);
            continue;
        }
        std::sort(set.begin(), set.end());
        if (set.size() == 2 && (is_ancestor_or_self(set[0], set[1]) || set[0] == set[1]))
            return std::nullopt;
        if (empties_a_vertex(comps[i], set))
            return std::nullopt;
        for (const auto& v : set)
            merged.push_back(comps[i].at(v));
        if (auto q = coproduct_quotient(comps[i], set, opt))
            out.push_back(*q);
    }
    out.push_back(graft(Forest(merged)));
    return Forest(std::move(out));
}

MergeKind classify_merge(const Forest& before, const Forest& term, const MergeWitness& w,
                         CopyCancellation cancel)
{
    auto r = merge_by_witness(before, w, cancel);
    if (!r)
        throw NotASuccessorError("witness is not an admissible pair in " + before.key());
    if (*r != term)
        throw NotASuccessorError(term.key() + " is not produced from " + before.key() +
                                 " by this witness (got " + r->key() + ")");
    if (w.s2_is_quotient)
        return MergeKind::IM;
    bool r1 = w.s1.vertex.empty();
    bool r2 = w.s2.vertex.empty();
    if (r1 && r2)
        return MergeKind::EM;
    if (r1 || r2)
        return MergeKind::SM_a;
    return w.s1.comp == w.s2.comp ? MergeKind::SM_b : MergeKind::SM_c;
}

VertexId head_leaf(const Tree& t, const HeadFunction& h, const VertexId& v)
{
    VertexId cur = v;
    const Tree* node = &t.at(v);
    while (!node->is_leaf()) {
        int next = 0;
        if (node->is_binary()) {
            auto it = h.find(cur);
            if (it == h.end())
                throw PartialHeadError("no head choice at vertex " + vertex_str(cur));
            next = it->second == HeadDir::Left ? 0 : 1;
        }
        cur.push_back(next);
        node = &node->kid(next);
    }
    return cur;
}

std::map<VertexId, std::string> label_by_head(const SyntacticObject& s, const HeadFunction& h)
{
    const Tree& t = s.tree();
    for (const auto& v : t.vertices())
        if (t.at(v).is_binary() && !h.count(v))
            throw PartialHeadError("head function is not defined at vertex " + vertex_str(v));
    std::map<VertexId, std::string> out;
    for (const auto& v : t.vertices())
        out[v] = t.at(head_leaf(t, h, v)).leaf_label().name;
    return out;
}

namespace {

Tree apply_rec(const Tree& t, VertexId& path, const HeadFunction& h)
{
    if (t.is_leaf())
        return t;
    std::vector<Tree> kids;
    for (size_t i = 0; i < t.kids().size(); ++i) {
        path.push_back(static_cast<int>(i));
        kids.push_back(apply_rec(t.kids()[i], path, h));
        path.pop_back();
    }
    int head = -1;
    if (t.is_binary()) {
        auto it = h.find(path);
        if (it != h.end())
            head = it->second == HeadDir::Left ? 0 : 1;
    }
    return Tree::from_kids(std::move(kids), t.label(), head);
}

} // namespace

Tree apply_heads(const Tree& t, const HeadFunction& h)
{
    VertexId path;
    return apply_rec(t, path, h);
}

HeadFunction heads_of(const Tree& t)
{
    HeadFunction h;
    for (const auto& v : t.vertices()) {
        const Tree& n = t.at(v);
        if (n.is_binary() && n.head() >= 0)
            h[v] = n.head() == 0 ? HeadDir::Left : HeadDir::Right;
    }
    return h;
}

bool has_full_heads(const Tree& t)
{
    for (const auto& v : t.vertices()) {
        const Tree& n = t.at(v);
        if (n.is_binary() && n.head() < 0)
            return false;
    }
    return true;
}

std::string head_label(const Tree& t)
{
    const Tree* node = &t;
    while (!node->is_leaf()) {
        if (node->is_binary()) {
            if (node->head() < 0)
                throw NoHeadError("no head mark at " + node->enc());
            node = &node->kid(node->head());
        } else {
            node = &node->kid(0);
        }
    }
    return node->leaf_label().name;
}

} // namespace msx
