#include "msx/generate.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace msx {

std::vector<Tree> binary_trees(int n, const std::vector<Tree>& leaves)
{
    std::vector<std::vector<Tree>> by(n + 1);
    if (n < 1)
        return {};
    by[1] = leaves;
    for (int k = 2; k <= n; ++k) {
        std::map<std::string, Tree> seen;
        for (int a = 1; a <= k / 2; ++a)
            for (const auto& x : by[a])
                for (const auto& y : by[k - a]) {
                    Tree t = Tree::binary(x, y);
                    seen.emplace(t.enc(), t);
                }
        for (auto& [e, t] : seen)
            by[k].push_back(t);
    }
    return by[n];
}

std::vector<Tree> syntactic_trees(int n, const std::vector<std::string>& atoms)
{
    std::vector<Tree> leaves;
    for (const auto& a : atoms)
        leaves.push_back(Tree::atom(a));
    return binary_trees(n, leaves);
}

std::vector<Tree> morph_trees(int n, const std::vector<Feature>& features)
{
    std::vector<Tree> leaves;
    for (const auto& f : features)
        leaves.push_back(Tree::feature(f));
    std::map<std::string, Tree> seen;
    for (const auto& t : binary_trees(n, leaves)) {
        Tree m = build_morph(t).tree();
        seen.emplace(m.enc(), m);
    }
    std::vector<Tree> out;
    for (auto& [e, t] : seen)
        out.push_back(t);
    return out;
}

std::vector<OperadElement> operad_elements(int n, bool all_numberings)
{
    std::vector<OperadElement> out;
    std::map<std::string, bool> seen;
    for (const auto& shape : binary_trees(n, {Tree::hole(0)})) {
        if (!all_numberings) {
            out.emplace_back(shape);
            continue;
        }
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 1);
        do {
            Tree t = map_leaves(shape, [&](const Tree&, int k) { return Tree::hole(perm[k]); });
            if (seen.emplace(t.enc(), true).second)
                out.emplace_back(t);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

std::vector<Forest> forests(int min_leaves, int max_leaves,
                            const std::function<std::vector<Tree>(int)>& trees_of)
{
    // Trees ordered by (size, encoding); multisets are built as non-decreasing sequences.
    std::vector<Tree> pool;
    for (int k = 1; k <= max_leaves; ++k)
        for (const auto& t : trees_of(k))
            pool.push_back(t);
    std::vector<Forest> out;
    std::vector<Tree> cur;
    std::function<void(size_t, int)> rec = [&](size_t from, int used) {
        if (used >= min_leaves && !cur.empty())
            out.emplace_back(cur);
        for (size_t i = from; i < pool.size(); ++i) {
            if (used + pool[i].num_leaves() > max_leaves)
                continue;
            cur.push_back(pool[i]);
            rec(i, used + pool[i].num_leaves());
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

int RandomTrees::uniform(int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

bool RandomTrees::chance(double p)
{
    return std::bernoulli_distribution(p)(rng_);
}

Tree RandomTrees::shape_over(std::vector<Tree> leaves)
{
    while (leaves.size() > 1) {
        size_t i = static_cast<size_t>(uniform(0, static_cast<int>(leaves.size()) - 2));
        Tree t = Tree::binary(leaves[i], leaves[i + 1]);
        leaves.erase(leaves.begin() + i, leaves.begin() + i + 2);
        leaves.insert(leaves.begin() + i, t);
    }
    return leaves.front();
}

Tree RandomTrees::syntactic(int n, const std::vector<std::string>& atoms)
{
    std::vector<Tree> leaves;
    for (int k = 0; k < n; ++k)
        leaves.push_back(Tree::atom(atoms[uniform(0, static_cast<int>(atoms.size()) - 1)]));
    return shape_over(leaves);
}

Tree RandomTrees::syntactic_distinct(int n, const std::string& prefix)
{
    std::vector<Tree> leaves;
    for (int k = 0; k < n; ++k)
        leaves.push_back(Tree::atom(prefix + std::to_string(k)));
    std::shuffle(leaves.begin(), leaves.end(), rng_);
    return shape_over(leaves);
}

ExtMorphObject RandomTrees::morph(const std::vector<Feature>& features)
{
    std::vector<Tree> leaves;
    for (const auto& f : features)
        leaves.push_back(Tree::feature(f));
    std::shuffle(leaves.begin(), leaves.end(), rng_);
    return build_morph(shape_over(leaves));
}

OperadElement RandomTrees::operad(int n)
{
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng_);
    std::vector<Tree> leaves;
    for (int k : perm)
        leaves.push_back(Tree::hole(k));
    return OperadElement(shape_over(leaves));
}

Tree RandomTrees::with_random_heads(const Tree& t)
{
    if (t.is_leaf())
        return t;
    std::vector<Tree> kids;
    for (const auto& k : t.kids())
        kids.push_back(with_random_heads(k));
    return Tree::from_kids(std::move(kids), t.label(), t.is_binary() ? uniform(0, 1) : -1);
}

std::vector<Feature> fresh_features(int& counter, int n)
{
    std::vector<Feature> out;
    for (int k = 0; k < n; ++k)
        out.push_back(Feature{"f" + std::to_string(counter++), Valuation::Unvalued});
    return out;
}

} // namespace msx
