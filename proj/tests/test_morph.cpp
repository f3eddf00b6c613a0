#include "doctest.h"

#include "msx/morph.hpp"
#include "oracles.hpp"

using namespace msx;

TEST_CASE("built trees carry the union of their leaves")
{
    auto m = build_morph("((α β) γ)");
    CHECK(m.is_magma());
    CHECK(m.root_bundle() == parse_bundle("α,β,γ"));
    for (const auto& v : m.tree().vertices()) {
        const Tree& n = m.tree().at(v);
        CHECK(n.root_bundle() == leaf_features(n));
    }
    CHECK(validate_ext(m.tree()).ok());
}

TEST_CASE("extended objects allow extra features only above non-branching vertices")
{
    CHECK(validate_ext(parse_tree("{α,β,γ| {β,γ| γ}}", LeafMode::Morph)).ok());
    CHECK(validate_ext(parse_tree("{α,β| {α| α} β}", LeafMode::Morph)).ok());
    auto tight = validate_ext(parse_tree("{α,β,γ| α β}", LeafMode::Morph));
    CHECK(tight.count(Violation::Tightness) > 0);
    auto cover = validate_ext(parse_tree("{α| α β}", LeafMode::Morph));
    CHECK(cover.count(Violation::Covering) > 0);
    auto mono = validate_ext(parse_tree("{α,β| {α,γ| α}}", LeafMode::Morph));
    CHECK(mono.count(Violation::Monotone) > 0);
    CHECK_THROWS_AS(ExtMorphObject(parse_tree("(α β)", LeafMode::Morph)), ValidationError);
    CHECK_THROWS(ExtMorphObject::parse("{α| α β}"));
}

TEST_CASE("feature inventory")
{
    MorphInventory inv{{"num", {Valuation::Plus, Valuation::Minus}}};
    CHECK_NOTHROW(check_feature(Feature::parse("num+"), inv));
    CHECK_THROWS_AS(check_feature(Feature::parse("num"), inv), UnknownFeatureError);
    CHECK_THROWS_AS(check_feature(Feature::parse("pers+"), inv), UnknownFeatureError);
    CHECK_THROWS(build_morph("(num+ pers+)", &inv));
}

TEST_CASE("non-branching vertices that add nothing are contracted")
{
    auto t = parse_tree("{α,β| {α| α} β}", LeafMode::Morph);
    CHECK(simplify_unary(t) == parse_tree("{α,β| α β}", LeafMode::Morph));
    auto keep = parse_tree("{α,β,γ| {α,γ| α} β}", LeafMode::Morph);
    CHECK(simplify_unary(keep) == keep);
}

TEST_CASE("right comodule and bicomodule laws up to four leaves")
{
    std::vector<Feature> fs{Feature::parse("α"), Feature::parse("β")};
    for (const auto& f : forests(1, 4, [&](int n) { return morph_trees(n, fs); })) {
        auto r = comodule_report(f);
        CHECK_MESSAGE(r.ok(), f.key());
    }
}

TEST_CASE("rho quotients of magma elements are extended objects")
{
    std::vector<Feature> fs{Feature::parse("α"), Feature::parse("β"), Feature::parse("γ")};
    for (int n = 2; n <= 4; ++n)
        for (const auto& t : morph_trees(n, fs))
            for (const auto& s : nonoverlapping_vertex_sets(t)) {
                auto q = quotient(t, s, QuotientMode::Rho);
                if (q)
                    CHECK_MESSAGE(validate_ext(*q).ok(), q->enc());
            }
}
