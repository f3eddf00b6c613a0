#include "msx/tree_ops.hpp"

#include <algorithm>

namespace msx {

std::vector<std::pair<VertexId, Tree>> accessible_terms(const Tree& t)
{
    std::vector<std::pair<VertexId, Tree>> out;
    for (auto& v : t.vertices())
        out.emplace_back(v, t.at(v));
    return out;
}

namespace {

std::vector<VertexSet> nonoverlap_rec(const Tree& t)
{
    std::vector<VertexSet> acc{{}};
    for (size_t i = 0; i < t.kids().size(); ++i) {
        std::vector<VertexSet> sub = nonoverlap_rec(t.kids()[i]);
        std::vector<VertexSet> next;
        next.reserve(acc.size() * sub.size());
        for (const auto& a : acc) {
            for (const auto& s : sub) {
                VertexSet u = a;
                for (const auto& v : s) {
                    VertexId p{static_cast<int>(i)};
                    p.insert(p.end(), v.begin(), v.end());
                    u.push_back(std::move(p));
                }
                next.push_back(std::move(u));
            }
        }
        acc = std::move(next);
    }
    acc.push_back(VertexSet{VertexId{}});
    return acc;
}

} // namespace

std::vector<VertexSet> nonoverlapping_vertex_sets(const Tree& t)
{
    std::vector<VertexSet> all = nonoverlap_rec(t);
    for (auto& s : all)
        std::sort(s.begin(), s.end());
    std::sort(all.begin(), all.end(), [](const VertexSet& a, const VertexSet& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    return all;
}

bool is_ancestor_or_self(const VertexId& a, const VertexId& b)
{
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

void check_vertex_set(const Tree& t, const VertexSet& set)
{
    for (const auto& v : set)
        (void)t.at(v);
    for (size_t i = 0; i < set.size(); ++i) {
        if (set[i].empty() && set.size() > 1)
            throw RootMixError("the root cannot be extracted together with other vertices");
        for (size_t j = 0; j < set.size(); ++j) {
            if (i != j && is_ancestor_or_self(set[i], set[j]))
                throw OverlapError("vertices " + vertex_str(set[i]) + " and " +
                                   vertex_str(set[j]) + " overlap");
        }
    }
}

namespace {

bool contains(const VertexSet& s, const VertexId& v)
{
    return std::find(s.begin(), s.end(), v) != s.end();
}

bool any_below(const VertexSet& s, const VertexId& v)
{
    for (const auto& w : s)
        if (is_ancestor_or_self(v, w))
            return true;
    return false;
}

// Rebuilds t with extracted subtrees removed (Rho) or replaced by traces (C).
std::optional<Tree> cut_rec(const Tree& t, VertexId& path, const VertexSet& ext,
                            const VertexSet& traced, QuotientMode mode)
{
    if (contains(traced, path))
        return Tree::trace(t);
    if (contains(ext, path)) {
        if (mode == QuotientMode::C)
            return Tree::trace(t);
        return std::nullopt;
    }
    if (t.is_leaf() || (!any_below(ext, path) && !any_below(traced, path)))
        return t;
    std::vector<Tree> kids;
    int head = -1;
    for (size_t i = 0; i < t.kids().size(); ++i) {
        path.push_back(static_cast<int>(i));
        auto k = cut_rec(t.kids()[i], path, ext, traced, mode);
        path.pop_back();
        if (k) {
            if (t.head() == static_cast<int>(i))
                head = static_cast<int>(kids.size());
            kids.push_back(std::move(*k));
        }
    }
    if (kids.size() < 2)
        head = -1;
    return Tree::from_kids(std::move(kids), t.label(), head);
}

} // namespace

Tree contract_unary(const Tree& t)
{
    if (t.is_leaf())
        return t;
    if (t.is_unary())
        return contract_unary(t.kid(0));
    return Tree::binary(contract_unary(t.kid(0)), contract_unary(t.kid(1)), t.label(), t.head());
}

std::optional<Tree> quotient_with_traces(const Tree& t, const VertexSet& extracted,
                                         const VertexSet& traced, QuotientMode mode)
{
    check_vertex_set(t, extracted);
    if (extracted.size() == 1 && extracted[0].empty())
        return std::nullopt;
    VertexId path;
    auto r = cut_rec(t, path, extracted, traced, mode);
    if (r && mode == QuotientMode::D)
        return contract_unary(*r);
    return r;
}

std::optional<Tree> quotient(const Tree& t, const VertexSet& extracted, QuotientMode mode)
{
    return quotient_with_traces(t, extracted, {}, mode);
}

Tree graft(const Forest& f)
{
    if (f.empty())
        throw EmptyForestError("cannot graft the empty forest");
    if (f.size() > 2)
        throw ArityError("cannot graft " + std::to_string(f.size()) + " components to one root");
    return Tree::from_kids(f.comps(), std::nullopt);
}

Forest root_cut(const Tree& t)
{
    if (t.is_leaf())
        throw LeafCutError("cannot cut below a leaf: " + t.enc());
    return Forest(t.kids());
}

Forest extracted_forest(const Tree& t, const VertexSet& set)
{
    std::vector<Tree> v;
    for (const auto& p : set)
        v.push_back(t.at(p));
    return Forest(std::move(v));
}

namespace {

Tree map_rec(const Tree& t, const std::function<Tree(const Tree&, int)>& f, int& k)
{
    if (t.is_leaf())
        return f(t, k++);
    std::vector<Tree> kids;
    for (const auto& c : t.kids())
        kids.push_back(map_rec(c, f, k));
    return Tree::from_kids(std::move(kids), t.label(), t.head());
}

} // namespace

Tree map_leaves(const Tree& t, const std::function<Tree(const Tree&, int)>& f)
{
    int k = 0;
    return map_rec(t, f, k);
}

} // namespace msx
