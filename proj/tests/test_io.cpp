#include "doctest.h"

#include <filesystem>

#include "goldens.hpp"
#include "msx/io.hpp"

using namespace msx;

namespace {
const std::string kData = MSX_DATA_DIR;
}

TEST_CASE("tree JSON round-trips for every node kind")
{
    for (const char* s : {"(a (b c))", "{α,β| α β}", "{α @ T}", "{α,β @ T| α β}", "•2", "<(a b)>",
                          "()", "{β|}", "(b^ a)", "{α,β| {α| α}}", "(num+ num-)", golden::kFiveLeaf}) {
        Tree t = parse_tree(s);
        json j = tree_to_json(t);
        CHECK_MESSAGE(tree_from_json(j).henc() == t.henc(), s);
        CHECK(tree_from_json(json::parse(j.dump())).enc() == t.enc());
    }
}

TEST_CASE("forest, sum and recipe JSON")
{
    Forest f = parse_forest("(a b) ⊔ c ⊔ c");
    CHECK(forest_from_json(forest_to_json(f)) == f);
    CHECK(forest_from_json(json::array({tree_to_json(parse_tree("a"))})) == parse_forest("a"));
    WorkspaceSum s = single(f, Coef(3, 2)) + single(parse_forest("a"), Coef(-1));
    CHECK(sum_from_json(sum_to_json(s)) == s);
    AssemblyOp op(MorphoSynTree::parse(golden::kFiveLeaf));
    CHECK(op_from_json(op_to_json(op)) == op);
    CHECK_THROWS_AS(tree_from_json(json{{"kind", "banana"}}), SyntaxError);
    CHECK_THROWS_AS(tree_from_json(json{{"kind", "vertex"}, {"children", json::array()}}), SyntaxError);
}

TEST_CASE("DOT output marks the boundary vertices")
{
    Tree t = parse_tree(golden::kFiveLeaf);
    CHECK(count_boundary_nodes(t) == 5);
    std::string dot = tree_to_dot(t);
    size_t n = 0;
    for (size_t p = dot.find("doubleoctagon"); p != std::string::npos; p = dot.find("doubleoctagon", p + 1))
        ++n;
    CHECK(n == 5);
    CHECK(dot.rfind("digraph", 0) == 0);
    WorkspaceSum s = single(parse_forest("(a b)"), Coef(2)) + single(parse_forest("c ⊔ d"));
    std::string sd = sum_to_dot(s);
    size_t clusters = 0;
    for (size_t p = sd.find("subgraph cluster"); p != std::string::npos; p = sd.find("subgraph cluster", p + 1))
        ++clusters;
    CHECK(clusters == 2);
    CHECK(forest_to_dot(parse_forest("a ⊔ b")).find("digraph") != std::string::npos);
}

TEST_CASE("project configuration")
{
    ProjectConfig c = load_config(kData + "/config.json");
    CHECK(c.so_inventory.count("AGR") == 1);
    CHECK(c.gamma.admits(parse_bundle("δ,ε"), "T"));
    CHECK_FALSE(c.gamma.admits(parse_bundle("δ"), "T"));
    CHECK(c.partners_for(parse_bundle("γ,φ")) == std::vector<std::string>{"T"});
    ProjectConfig back = config_from_json(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));
    CHECK_NOTHROW(check_tree_inventory(parse_tree("(V {α,β @ T| α β})"), c));
    CHECK_THROWS_AS(check_tree_inventory(parse_tree("(V {κ,β @ T| κ β})"), c), InventoryError);
    CHECK_THROWS_AS(check_tree_inventory(parse_tree("(Q V)"), c), InventoryError);
    CHECK(load_config(kData + "/permissive.json").gamma.is_permissive());

    json bad = config_to_json(c);
    bad["mo_inventory"]["α"] = json::array({"?"});
    CHECK_THROWS_AS(config_from_json(bad), SyntaxError);
    json orphan = config_to_json(c);
    orphan["fission_atom_candidates"] = json::array({"ZZ"});
    CHECK_THROWS_AS(check_config(config_from_json(orphan)), InventoryError);
    CHECK_THROWS_AS(load_config(kData + "/missing.json"), IOError);
}
