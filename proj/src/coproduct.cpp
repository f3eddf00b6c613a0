#include "msx/coproduct.hpp"

#include <algorithm>

namespace msx {

std::string coef_str(const Coef& c)
{
    if (c.denominator() == 1)
        return std::to_string(c.numerator());
    return std::to_string(c.numerator()) + "/" + std::to_string(c.denominator());
}

namespace {
const std::string kOtimes = " \xE2\x8A\x97 ";  // ⊗
}

Tensor::Tensor(std::vector<Forest> p) : parts(std::move(p))
{
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i)
            key_ += kOtimes;
        key_ += parts[i].key();
    }
}

TensorSum tensor_product(const TensorSum& a, const TensorSum& b)
{
    TensorSum r;
    for (const auto& [ka, ca] : a) {
        for (const auto& [kb, cb] : b) {
            const auto& pa = ca.second.parts;
            const auto& pb = cb.second.parts;
            std::vector<Forest> parts;
            for (size_t i = 0; i < pa.size(); ++i)
                parts.push_back(pa[i] + pb.at(i));
            r.add(Tensor(std::move(parts)), ca.first * cb.first);
        }
    }
    return r;
}

namespace {

VertexSet deeper_copies(const Tree& t, const VertexSet& set)
{
    VertexSet out;
    if (set.empty() || (set.size() == 1 && set[0].empty()))
        return out;
    for (const auto& w : t.vertices()) {
        bool clash = false;
        for (const auto& u : set)
            if (is_ancestor_or_self(u, w) || is_ancestor_or_self(w, u))
                clash = true;
        if (clash)
            continue;
        const Tree& tw = t.at(w);
        for (const auto& u : set) {
            if (w.size() > u.size() && tw == t.at(u)) {
                out.push_back(w);
                break;
            }
        }
    }
    // keep only maximal ones
    VertexSet maximal;
    for (const auto& w : out) {
        bool inner = false;
        for (const auto& x : out)
            if (x != w && is_ancestor_or_self(x, w))
                inner = true;
        if (!inner)
            maximal.push_back(w);
    }
    return maximal;
}

} // namespace

bool empties_a_vertex(const Tree& t, const VertexSet& set)
{
    if (set.size() < 2)
        return false;
    for (const auto& v : set) {
        if (v.empty())
            continue;
        VertexId parent(v.begin(), v.end() - 1);
        const Tree& p = t.at(parent);
        size_t hit = 0;
        for (const auto& w : set)
            if (w.size() == v.size() && std::equal(parent.begin(), parent.end(), w.begin()))
                ++hit;
        if (hit == p.kids().size())
            return true;
    }
    return false;
}

std::optional<Tree> coproduct_quotient(const Tree& t, const VertexSet& set,
                                       const CoproductOptions& opt)
{
    if (opt.cancel == CopyCancellation::Off)
        return quotient(t, set, opt.mode);
    return quotient_with_traces(t, set, deeper_copies(t, set), opt.mode);
}

void for_each_extraction(const Forest& f, const CoproductOptions& opt,
                         const std::function<void(const Extraction&)>& visit)
{
    const auto& comps = f.comps();
    std::vector<std::vector<VertexSet>> choices;
    std::vector<std::vector<std::pair<std::vector<Tree>, std::optional<Tree>>>> parts;
    for (const auto& c : comps) {
        auto sets = nonoverlapping_vertex_sets(c);
        std::vector<std::pair<std::vector<Tree>, std::optional<Tree>>> p;
        std::erase_if(sets, [&](const VertexSet& s) {
            return opt.mode == QuotientMode::D && empties_a_vertex(c, s);
        });
        for (const auto& s : sets) {
            std::vector<Tree> l;
            for (const auto& v : s)
                l.push_back(c.at(v));
            p.emplace_back(std::move(l), coproduct_quotient(c, s, opt));
        }
        choices.push_back(std::move(sets));
        parts.push_back(std::move(p));
    }

    std::vector<size_t> idx(comps.size(), 0);
    for (;;) {
        Extraction e;
        std::vector<Tree> left, right;
        for (size_t i = 0; i < comps.size(); ++i) {
            e.sets.push_back(choices[i][idx[i]]);
            const auto& pr = parts[i][idx[i]];
            left.insert(left.end(), pr.first.begin(), pr.first.end());
            if (pr.second)
                right.push_back(*pr.second);
        }
        e.left = Forest(std::move(left));
        e.right = Forest(std::move(right));
        visit(e);

        size_t k = 0;
        while (k < comps.size()) {
            if (++idx[k] < choices[k].size())
                break;
            idx[k] = 0;
            ++k;
        }
        if (k == comps.size())
            break;
    }
}

TensorSum coproduct(const Forest& f, const CoproductOptions& opt)
{
    TensorSum r;
    for_each_extraction(f, opt, [&](const Extraction& e) { r.add(Tensor(e.left, e.right)); });
    return r;
}

TensorSum coproduct(const Tree& t, const CoproductOptions& opt)
{
    return coproduct(Forest{t}, opt);
}

LinearSum<Tensor> apply_at(const LinearSum<Tensor>& s, size_t slot, const ForestCoproduct& d)
{
    LinearSum<Tensor> r;
    for (const auto& [k, cv] : s) {
        const auto& parts = cv.second.parts;
        TensorSum ds = d(parts.at(slot));
        for (const auto& [k2, cv2] : ds) {
            std::vector<Forest> np;
            for (size_t i = 0; i < parts.size(); ++i) {
                if (i == slot) {
                    np.push_back(cv2.second.parts[0]);
                    np.push_back(cv2.second.parts[1]);
                } else {
                    np.push_back(parts[i]);
                }
            }
            r.add(Tensor(std::move(np)), cv.first * cv2.first);
        }
    }
    return r;
}

HopfReport check_hopf(const Forest& f, const ForestCoproduct& d)
{
    HopfReport rep;
    TensorSum df = d(f);

    rep.coassociative = apply_at(df, 0, d) == apply_at(df, 1, d);

    WorkspaceSum left_unit, right_unit;
    for (const auto& [k, cv] : df) {
        if (cv.second.left().empty())
            left_unit.add(WorkspaceTerm{cv.second.right()}, cv.first);
        if (cv.second.right().empty())
            right_unit.add(WorkspaceTerm{cv.second.left()}, cv.first);
    }
    rep.counit_left = left_unit == single(f);
    rep.counit_right = right_unit == single(f);

    if (f.size() >= 2) {
        Forest first{f.comps()[0]};
        Forest rest = f.without(0);
        rep.multiplicative = tensor_product(d(first), d(rest)) == df;
    }
    return rep;
}

} // namespace msx
