#include "doctest.h"

#include "oracles.hpp"

using namespace msx;

TEST_CASE("syntactic objects are full binary atom trees")
{
    CHECK_NOTHROW(SyntacticObject::parse("(a (b c))"));
    CHECK_THROWS_AS(SyntacticObject(Tree::unary(parse_tree("a"))), ValidationError);
    CHECK_THROWS_AS(SyntacticObject(parse_tree("{α,β| α β}")), ValidationError);
    CHECK_FALSE(SyntacticObject::valid(parse_tree("•1")));
    CHECK_THROWS_AS(check_inventory(parse_tree("(a z)"), {"a", "b"}), InventoryError);
    CHECK(magma_merge(parse_tree("a"), parse_tree("b")) == parse_tree("(b a)"));
}

TEST_CASE("merge engine agrees with the reference on small workspaces")
{
    auto r = oracle::check_merge_engine(3, 3);
    INFO(r.first_failure);
    CHECK(r.workspaces > 300);
    CHECK(r.failures == 0);
}

TEST_CASE("external merge of two atoms")
{
    Forest ws = parse_forest("a ⊔ b");
    auto s = merge_all(ws);
    CHECK(s.str() == "2·(a b)");
    auto p = merge_pair(ws, parse_tree("a"), parse_tree("b"));
    CHECK(p.coef(parse_forest("(a b)").key()) == Coef(1));
}

TEST_CASE("merge_pair with the unit places the term in the workspace")
{
    Forest ws = parse_forest("(a b)");
    auto p = merge_pair(ws, parse_tree("a"), std::nullopt);
    CHECK(p.coef(parse_forest("a ⊔ b").key()) == Coef(1));
}

TEST_CASE("internal merge leaves a copy-free quotient")
{
    Forest ws = parse_forest("(a (b c))");
    const Tree& t = ws.comps()[0];
    for (const auto& v : t.vertices()) {
        if (v.empty())
            continue;
        Forest im = internal_merge(ws, 0, v);
        CHECK(im.size() == 1);
        CHECK(im.num_leaves() == 3);
        auto comp = internal_merge_composite(ws, t.at(v));
        CHECK(comp.coef(im.key()) != Coef(0));
    }
    CHECK_THROWS_AS(internal_merge(ws, 0, {}), NotASuccessorError);
}

TEST_CASE("classification rejects foreign successors")
{
    Forest ws = parse_forest("a ⊔ b");
    MergeWitness w{{0, {}}, {1, {}}, false};
    CHECK(classify_merge(ws, parse_forest("(a b)"), w) == MergeKind::EM);
    CHECK_THROWS_AS(classify_merge(ws, parse_forest("(a a)"), w), NotASuccessorError);
    MergeWitness bad{{0, {}}, {7, {}}, false};
    CHECK_FALSE(merge_by_witness(ws, bad).has_value());
    CHECK(merge_kind_str(MergeKind::SM_c) == "SM_c");
}

TEST_CASE("head functions")
{
    SyntacticObject s = SyntacticObject::parse("(a (b c))");
    const Tree& t = s.tree();
    HeadFunction h;
    for (const auto& v : t.vertices())
        if (t.at(v).is_binary())
            h[v] = HeadDir::Left;
    auto labels = label_by_head(s, h);
    CHECK(labels.size() == t.vertices().size());
    CHECK(labels.at({}) == head_label(apply_heads(t, h)));
    Tree marked = apply_heads(t, h);
    CHECK(has_full_heads(marked));
    CHECK(heads_of(marked).size() == 2);
    CHECK_FALSE(head_label(marked).empty());
    CHECK_THROWS_AS(head_leaf(t, {}, {}), PartialHeadError);
}
