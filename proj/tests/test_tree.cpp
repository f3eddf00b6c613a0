#include "doctest.h"

#include "oracles.hpp"

using namespace msx;

TEST_CASE("canonical form ignores child order")
{
    CHECK(parse_tree("(a (b c))") == parse_tree("((c b) a)"));
    CHECK(parse_tree("(a b)").enc() == parse_tree("(b a)").enc());
    CHECK(parse_tree("(a (a b))") != parse_tree("((a a) b)"));
}

TEST_CASE("text notation round-trips")
{
    for (const char* s : {"(a (b c))", "{α,β| α β}", "{α @ T}", "{α,β @ T| α β}", "•3", "<(a b)>",
                          "()", "{β|}", "(V {α,β,γ @ AGR| α {β,γ| β γ}})", "{α,β| {α| α}}",
                          "(num+ num-)"}) {
        Tree t = parse_tree(s);
        CHECK_MESSAGE(parse_tree(t.enc()).enc() == t.enc(), s);
    }
    Forest f = parse_forest("(a b) ⊔ c ⊔ (a b)");
    CHECK(f.size() == 3);
    CHECK(parse_forest(f.key()) == f);
    CHECK(parse_forest("1").empty());
    CHECK(Forest().key() == "1");
}

TEST_CASE("head marks survive canonical reordering")
{
    Tree t = parse_tree("(b^ a)");
    CHECK(t.head() >= 0);
    CHECK(t.kid(t.head()).leaf_label().name == "b");
    CHECK(parse_tree(t.henc()).henc() == t.henc());
    CHECK(t.enc() == parse_tree("(a b)").enc());
    CHECK(t.without_heads().head() == -1);
}

TEST_CASE("malformed text is rejected")
{
    CHECK_THROWS_AS(parse_tree("(a b"), SyntaxError);
    CHECK_THROWS_AS(parse_tree("a b)"), SyntaxError);
    CHECK_THROWS_AS(parse_tree("(^a b)"), SyntaxError);
    CHECK_THROWS_AS(parse_tree(""), SyntaxError);
}

TEST_CASE("features and bundles")
{
    CHECK(Feature::parse("num+").val == Valuation::Plus);
    CHECK(Feature::parse("num-").val == Valuation::Minus);
    CHECK(Feature::parse("num").val == Valuation::Unvalued);
    Bundle a = parse_bundle("α,β");
    Bundle b = parse_bundle("β,γ");
    CHECK(bundle_union(a, b).size() == 3);
    CHECK(bundle_intersect(a, b) == parse_bundle("β"));
    CHECK(bundle_minus(a, b) == parse_bundle("α"));
    CHECK(bundle_subset(parse_bundle("β"), a));
    CHECK_FALSE(bundle_subset(b, a));
}

TEST_CASE("vertex addressing")
{
    Tree t = parse_tree("(a (b c))");
    CHECK(t.num_vertices() == 5);
    CHECK(t.num_leaves() == 3);
    CHECK(t.vertices().size() == 5);
    CHECK(t.leaves().size() == 3);
    for (const auto& v : t.vertices())
        CHECK(t.at(v) == oracle::at(t, v));
    Tree r = t.replace(t.leaves()[0], parse_tree("d"));
    CHECK(r.num_leaves() == 3);
    CHECK(r != t);
}

TEST_CASE("non-overlapping vertex sets match subset enumeration")
{
    for (int n = 1; n <= 5; ++n)
        for (const auto& t : syntactic_trees(n, {"a", "b"})) {
            auto got = nonoverlapping_vertex_sets(t);
            std::set<VertexSet> g(got.begin(), got.end());
            CHECK(g.size() == got.size());
            CHECK(g == oracle::antichains(t));
        }
}

TEST_CASE("quotients match the reference surgery")
{
    std::vector<Tree> trees;
    for (int n = 1; n <= 5; ++n)
        for (const auto& t : syntactic_trees(n, {"a", "b"}))
            trees.push_back(t);
    for (int n = 1; n <= 4; ++n)
        for (const auto& t : morph_trees(n, {Feature::parse("α"), Feature::parse("β")}))
            trees.push_back(t);
    for (const auto& t : trees) {
        for (const auto& s : oracle::antichains(t)) {
            auto rho = quotient(t, s, QuotientMode::Rho);
            auto want_rho = oracle::quotient(t, s, false);
            CHECK(rho.has_value() == want_rho.has_value());
            if (rho && want_rho)
                CHECK_MESSAGE(rho->enc() == want_rho->enc(), t.enc());
            if (oracle::empties(t, s))
                continue;
            auto d = quotient(t, s, QuotientMode::D);
            auto want_d = oracle::quotient(t, s, true);
            CHECK(d.has_value() == want_d.has_value());
            if (d && want_d)
                CHECK_MESSAGE(d->enc() == want_d->enc(), t.enc());
        }
    }
}

TEST_CASE("the contracting quotient of a syntactic tree is full binary")
{
    for (const auto& t : syntactic_trees(5, {"a", "b"}))
        for (const auto& s : nonoverlapping_vertex_sets(t)) {
            if (empties_a_vertex(t, s))
                continue;
            auto q = quotient(t, s, QuotientMode::D);
            if (q)
                CHECK_FALSE(q->has_unary());
        }
}

TEST_CASE("invalid vertex sets")
{
    Tree t = parse_tree("(a (b c))");
    CHECK_THROWS_AS(check_vertex_set(t, {{}, {0}}), RootMixError);
    VertexId inner;
    for (const auto& v : t.vertices())
        if (!v.empty() && !t.at(v).is_leaf())
            inner = v;
    VertexId below = inner;
    below.push_back(0);
    CHECK_THROWS_AS(check_vertex_set(t, {inner, below}), OverlapError);
    CHECK_THROWS(check_vertex_set(t, {{5}}));
}

TEST_CASE("graft and root cut")
{
    Forest f = parse_forest("(a b) ⊔ c");
    CHECK(root_cut(graft(f)) == f);
    CHECK(graft(Forest{parse_tree("a")}).is_unary());
    CHECK_THROWS_AS(graft(Forest{}), EmptyForestError);
    CHECK_THROWS_AS(graft(parse_forest("a ⊔ b ⊔ c")), ArityError);
}

TEST_CASE("leaf mapping keeps the shape")
{
    Tree t = parse_tree("(a (b c))");
    Tree m = map_leaves(t, [](const Tree&, int k) { return Tree::hole(k + 1); });
    CHECK(m.num_leaves() == 3);
    CHECK(m.leaves().size() == 3);
    CHECK(contract_unary(Tree::unary(t)) == t);
}
