#pragma once

// Brute-force reference implementations used by the tests. They work from the tree
// structure directly and share only the canonical Tree/Forest types with the library.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "msx/generate.hpp"
#include "msx/syntax.hpp"

namespace oracle {

using msx::Coef;
using msx::Forest;
using msx::Tree;
using msx::VertexId;

using Sum = std::map<std::string, Coef>;

inline void add(Sum& s, const std::string& key, Coef c)
{
    Coef& x = s[key];
    x += c;
    if (x.numerator() == 0)
        s.erase(key);
}

template <class T>
Sum to_sum(const msx::LinearSum<T>& s)
{
    Sum out;
    for (const auto& [k, cv] : s)
        add(out, k, cv.first);
    return out;
}

inline void collect(const Tree& t, VertexId& path, std::vector<VertexId>& out)
{
    out.push_back(path);
    for (size_t i = 0; i < t.kids().size(); ++i) {
        path.push_back(static_cast<int>(i));
        collect(t.kids()[i], path, out);
        path.pop_back();
    }
}

inline std::vector<VertexId> vertices(const Tree& t)
{
    std::vector<VertexId> out;
    VertexId p;
    collect(t, p, out);
    return out;
}

inline bool prefix(const VertexId& a, const VertexId& b)
{
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

inline bool comparable(const VertexId& a, const VertexId& b)
{
    return prefix(a, b) || prefix(b, a);
}

inline const Tree& at(const Tree& t, const VertexId& v)
{
    const Tree* n = &t;
    for (int i : v)
        n = &n->kids()[static_cast<size_t>(i)];
    return *n;
}

// Every antichain of vertices, by subset enumeration.
inline std::set<std::vector<VertexId>> antichains(const Tree& t)
{
    auto vs = vertices(t);
    std::set<std::vector<VertexId>> out;
    const size_t n = vs.size();
    for (unsigned long m = 0; m < (1ul << n); ++m) {
        std::vector<VertexId> s;
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) {
            if (!(m >> i & 1))
                continue;
            for (const auto& w : s)
                if (comparable(w, vs[i]))
                    ok = false;
            s.push_back(vs[i]);
        }
        if (ok) {
            std::sort(s.begin(), s.end());
            out.insert(s);
        }
    }
    return out;
}

// Some vertex loses all its children.
inline bool empties(const Tree& t, const std::vector<VertexId>& s)
{
    for (const auto& v : vertices(t)) {
        const Tree& n = at(t, v);
        if (n.is_leaf())
            continue;
        size_t hit = 0;
        for (size_t i = 0; i < n.kids().size(); ++i) {
            VertexId c = v;
            c.push_back(static_cast<int>(i));
            if (std::find(s.begin(), s.end(), c) != s.end())
                ++hit;
        }
        if (hit == n.kids().size())
            return true;
    }
    return false;
}

// Vertices outside the extraction holding a deeper copy of an extracted subtree;
// only the topmost such vertices.
inline std::vector<VertexId> deeper_copies(const Tree& t, const std::vector<VertexId>& s)
{
    std::vector<VertexId> out;
    if (s.empty() || (s.size() == 1 && s[0].empty()))
        return out;
    for (const auto& w : vertices(t)) {
        bool free = true, copy = false;
        for (const auto& u : s) {
            if (comparable(u, w))
                free = false;
            else if (w.size() > u.size() && at(t, w).enc() == at(t, u).enc())
                copy = true;
        }
        if (!free || !copy)
            continue;
        bool covered = false;
        for (const auto& x : out)
            if (prefix(x, w))
                covered = true;
        if (!covered)
            out.push_back(w);
    }
    return out;
}

inline std::optional<Tree> cut(const Tree& t, VertexId& path, const std::vector<VertexId>& ext,
                               const std::vector<VertexId>& traced, bool contract)
{
    if (std::find(traced.begin(), traced.end(), path) != traced.end())
        return Tree::trace(t);
    if (std::find(ext.begin(), ext.end(), path) != ext.end())
        return std::nullopt;
    if (t.is_leaf())
        return t;
    std::vector<Tree> kept;
    for (size_t i = 0; i < t.kids().size(); ++i) {
        path.push_back(static_cast<int>(i));
        if (auto k = cut(t.kids()[i], path, ext, traced, contract))
            kept.push_back(*k);
        path.pop_back();
    }
    if (kept.empty())
        return Tree::stub(t.label());
    if (kept.size() == 1)
        return contract ? kept[0] : Tree::unary(kept[0], t.label());
    return Tree::binary(kept[0], kept[1], t.label());
}

// contract: the syntactic quotient (unary vertices removed); otherwise the
// label-keeping one.
inline std::optional<Tree> quotient(const Tree& t, const std::vector<VertexId>& ext, bool contract,
                                    bool cancel_copies = false)
{
    if (ext.size() == 1 && ext[0].empty())
        return std::nullopt;
    VertexId p;
    std::vector<VertexId> traced;
    if (cancel_copies)
        traced = deeper_copies(t, ext);
    auto r = cut(t, p, ext, traced, contract);
    if (r && contract)
        r = msx::contract_unary(*r);
    return r;
}

struct Piece {
    std::vector<Tree> left;
    std::optional<Tree> right;
    std::vector<VertexId> set;
};

inline std::vector<Piece> pieces(const Tree& t, bool contract, bool cancel_copies)
{
    std::vector<Piece> out;
    for (const auto& s : antichains(t)) {
        if (contract && empties(t, s))
            continue;
        Piece p;
        for (const auto& v : s)
            p.left.push_back(at(t, v));
        p.right = quotient(t, s, contract, cancel_copies);
        p.set = s;
        out.push_back(std::move(p));
    }
    return out;
}

// Coproduct of a forest as the product of the per-component sums.
inline Sum coproduct(const Forest& f, bool contract, bool cancel_copies = false)
{
    std::vector<std::vector<Piece>> per;
    for (const auto& c : f.comps())
        per.push_back(pieces(c, contract, cancel_copies));
    Sum out;
    std::vector<size_t> idx(per.size(), 0);
    for (;;) {
        std::vector<Tree> l, r;
        for (size_t i = 0; i < per.size(); ++i) {
            const Piece& p = per[i][idx[i]];
            l.insert(l.end(), p.left.begin(), p.left.end());
            if (p.right)
                r.push_back(*p.right);
        }
        add(out, msx::Tensor(Forest(l), Forest(r)).key(), Coef(1));
        size_t k = 0;
        while (k < per.size() && ++idx[k] == per[k].size())
            idx[k++] = 0;
        if (k == per.size())
            break;
    }
    return out;
}

struct Loc {
    size_t comp;
    VertexId v;
};

struct MergeTerm {
    Loc a, b;
    Forest result;
    Coef weight;
    msx::MergeKind kind;
};

// Successors of Merge on a syntactic workspace: every unordered pair of accessible
// terms at non-nested locations, with both children of one vertex never taken
// together. The merged pair is grafted and each touched component is replaced by its
// quotient.
inline std::vector<MergeTerm> merge_terms(const Forest& ws)
{
    std::vector<Loc> locs;
    for (size_t c = 0; c < ws.size(); ++c)
        for (const auto& v : vertices(ws.comps()[c]))
            locs.push_back({c, v});
    std::vector<MergeTerm> out;
    for (size_t i = 0; i < locs.size(); ++i) {
        for (size_t j = i + 1; j < locs.size(); ++j) {
            const Loc& a = locs[i];
            const Loc& b = locs[j];
            if (a.comp == b.comp) {
                if (comparable(a.v, b.v))
                    continue;
                if (a.v.size() == b.v.size() &&
                    std::equal(a.v.begin(), a.v.end() - 1, b.v.begin()))
                    continue;
            }
            std::vector<Tree> rest;
            for (size_t c = 0; c < ws.size(); ++c) {
                std::vector<VertexId> s;
                if (a.comp == c)
                    s.push_back(a.v);
                if (b.comp == c)
                    s.push_back(b.v);
                if (s.empty()) {
                    rest.push_back(ws.comps()[c]);
                    continue;
                }
                std::sort(s.begin(), s.end());
                if (auto q = quotient(ws.comps()[c], s, true, true))
                    rest.push_back(*q);
            }
            const Tree& ta = at(ws.comps()[a.comp], a.v);
            const Tree& tb = at(ws.comps()[b.comp], b.v);
            rest.push_back(Tree::binary(ta, tb));
            msx::MergeKind kind;
            if (a.v.empty() && b.v.empty())
                kind = msx::MergeKind::EM;
            else if (a.v.empty() || b.v.empty())
                kind = msx::MergeKind::SM_a;
            else if (a.comp == b.comp)
                kind = msx::MergeKind::SM_b;
            else
                kind = msx::MergeKind::SM_c;
            out.push_back({a, b, Forest(rest), ta == tb ? Coef(1) : Coef(2), kind});
        }
    }
    return out;
}

inline Sum merge_sum(const Forest& ws)
{
    Sum s;
    for (const auto& m : merge_terms(ws))
        add(s, m.result.key(), m.weight);
    return s;
}

// Syntactic workspaces with 1..max_comps components of 1..max_leaves leaves each.
inline std::vector<Forest> small_workspaces(int max_comps, int max_leaves,
                                            const std::vector<std::string>& atoms)
{
    std::vector<Tree> pool;
    for (int k = 1; k <= max_leaves; ++k)
        for (const auto& t : msx::syntactic_trees(k, atoms))
            pool.push_back(t);
    std::vector<Forest> out;
    std::vector<Tree> cur;
    auto rec = [&](auto&& self, size_t from) -> void {
        if (!cur.empty())
            out.emplace_back(cur);
        if (static_cast<int>(cur.size()) == max_comps)
            return;
        for (size_t i = from; i < pool.size(); ++i) {
            cur.push_back(pool[i]);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

struct MergeCheck {
    long workspaces = 0;
    long successors = 0;
    long failures = 0;
    std::string first_failure;

    void fail(const std::string& what)
    {
        if (failures++ == 0)
            first_failure = what;
    }
};

// Compares merge_all against the oracle on every workspace and classifies every
// successor through its witness; internal merges are checked against the quotient.
inline MergeCheck check_merge_engine(int max_comps, int max_leaves)
{
    MergeCheck r;
    for (const auto& ws : small_workspaces(max_comps, max_leaves, {"a", "b"})) {
        ++r.workspaces;
        Sum expect = merge_sum(ws);
        Sum got = to_sum(msx::merge_all(ws));
        if (expect != got)
            r.fail("merge_all differs on " + ws.key());
        for (const auto& m : merge_terms(ws)) {
            ++r.successors;
            if (got.find(m.result.key()) == got.end()) {
                r.fail("missing successor " + m.result.key() + " of " + ws.key());
                continue;
            }
            msx::MergeWitness w{{m.a.comp, m.a.v}, {m.b.comp, m.b.v}, false};
            try {
                if (msx::classify_merge(ws, m.result, w) != m.kind)
                    r.fail("classification of " + m.result.key() + " from " + ws.key());
            } catch (const msx::Error& e) {
                r.fail(std::string("classification threw: ") + e.what());
            }
        }
        for (size_t c = 0; c < ws.size(); ++c) {
            const Tree& t = ws.comps()[c];
            for (const auto& v : vertices(t)) {
                if (v.empty())
                    continue;
                ++r.successors;
                auto q = quotient(t, {v}, true, true);
                Forest expect_im = ws.without(c).with(Tree::binary(at(t, v), *q));
                Forest im = msx::internal_merge(ws, c, v);
                if (im != expect_im) {
                    r.fail("internal merge at " + msx::vertex_str(v) + " of " + ws.key());
                    continue;
                }
                msx::MergeWitness w{{c, v}, {c, {}}, true};
                if (msx::classify_merge(ws, im, w) != msx::MergeKind::IM)
                    r.fail("IM classification on " + ws.key());
            }
        }
    }
    return r;
}

} // namespace oracle
