#include "doctest.h"

#include "goldens.hpp"
#include "msx/verify.hpp"

using namespace msx;
using golden::bundle;

namespace {

MorphoSynTree with_insertion(const char* skeleton, const char* atom, const char* morph)
{
    Tree sk = parse_tree(skeleton, LeafMode::Syntax);
    std::vector<Insertion> ins;
    for (const auto& v : sk.leaves())
        ins.push_back(sk.at(v).leaf_label().name == atom ? Insertion(ExtMorphObject::parse(morph))
                                                         : std::nullopt);
    return MorphoSynTree(sk, ins);
}

} // namespace

TEST_CASE("worked examples")
{
    for (const auto& c : golden::run()) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.ok);
    }
}

TEST_CASE("morphosyntactic trees split into skeleton and insertions")
{
    auto ms = MorphoSynTree::parse(golden::kFiveLeaf);
    CHECK(ms.num_syn_leaves() == 5);
    CHECK(MorphoSynTree::from_tree(ms.tree()) == ms);
    CHECK(forget_morphology(ms) == SyntacticObject::parse("((α1 α2) (α3 (α4 α5)))"));
    for (int i = 0; i < 5; ++i)
        CHECK(ms.insertion(i).has_value());
    CHECK(detach_boundary(attach_boundary(ExtMorphObject::parse("{α,β| α β}").tree(), "T")) ==
          ExtMorphObject::parse("{α,β| α β}").tree());
}

TEST_CASE("assembly extracts the arguments from the workspace")
{
    auto ms = with_insertion("(T V)", "T", "{α,β| α β}");
    AssemblyOp op(ms);
    Forest ws{ExtMorphObject::parse("{α,β| α β}").tree(), ExtMorphObject::parse("{γ,δ| γ δ}").tree()};
    auto r = assemble_MT(op, ws, GammaSM::permissive());
    CHECK(r.str() == Forest{ms.tree(), ExtMorphObject::parse("{γ,δ| γ δ}").tree()}.key());
    CHECK(assemble_MT(op, Forest{ExtMorphObject::parse("{γ,δ| γ δ}").tree()}, GammaSM::permissive()).empty());
    GammaSM strict({{parse_bundle("γ,δ"), "T"}});
    CHECK_THROWS_AS(assemble_MT(op, ws, strict), MatchError);
}

TEST_CASE("assemble_KT agrees with the tuple reference")
{
    RandomTrees r(7);
    for (int i = 0; i < 30; ++i) {
        int fresh = 0;
        auto t = SyntacticObject(r.syntactic_distinct(r.uniform(1, 3), "x"));
        std::vector<Tree> comps;
        int n = r.uniform(1, 3);
        for (int k = 0; k < n; ++k)
            comps.push_back(r.morph(fresh_features(fresh, r.uniform(1, 2))).tree());
        Forest ws(comps);
        CHECK(assemble_KT(t, ws, GammaSM::permissive()) ==
              assemble_KT_by_tuples(t, ws, GammaSM::permissive()));
    }
}

TEST_CASE("fusion errors")
{
    auto ms = MorphoSynTree::parse("(V ({α,β @ AGR| α β}^ {δ,ε @ T| δ ε}))");
    auto c = cherries(ms);
    REQUIRE(c.size() == 1);
    CHECK_THROWS_AS(fusion_at(ms, {}, GammaSM::permissive()), NotACherryError);
    GammaSM none({{parse_bundle("α,β"), "AGR"}, {parse_bundle("δ,ε"), "T"}});
    CHECK_THROWS_AS(fusion_at(ms, c[0], none), GammaError);
    auto nohead = MorphoSynTree::parse("(V ({α,β @ AGR| α β} {δ,ε @ T| δ ε}))");
    CHECK_THROWS_AS(fusion_at(nohead, cherries(nohead)[0], GammaSM::permissive()), NoHeadError);
    CHECK_THROWS_AS(fusion_all(nohead, GammaSM::permissive()), NoHeadError);
    CHECK(fusion_all(ms, GammaSM::permissive()).size() == 1);
}

TEST_CASE("fission errors")
{
    auto ms = with_insertion("(X T)", "T", "{α,β,γ,φ| α {β,γ,φ| β {γ,φ| γ φ}}}");
    int l = golden::leaf_with_atom(ms, "T");
    GammaSM any = GammaSM::permissive();
    CHECK_THROWS_AS(fission(ms, {l, bundle({"φ"}), bundle({"α"}), bundle({"γ"}), "T"}, any), PartitionError);
    CHECK_THROWS_AS(fission(ms, {l, bundle({"φ"}), bundle({"α", "φ"}), bundle({"β", "γ"}), "T"}, any),
                    PartitionError);
    CHECK_THROWS_AS(fission(ms, {l, bundle({"κ"}), bundle({"α", "β"}), bundle({"γ", "φ"}), "T"}, any),
                    PartitionError);
    GammaSM none({{parse_bundle("α,β,γ,φ"), "T"}});
    CHECK_THROWS_AS(fission(ms, {l, {}, bundle({"α", "β"}), bundle({"γ", "φ"}), "T"}, none), GammaError);
    auto bare = with_insertion("(X T)", "none", "{α| α}");
    CHECK_THROWS_AS(obliterate(bare, 0), NoInsertionError);
    CHECK_THROWS_AS(obliterate(ms, 9), IndexError);
    auto s = ExtMorphObject::parse("{α,β| α β}");
    CHECK_THROWS_AS(fission_split(s, bundle({"γ"})), EmptySplitError);
    CHECK_THROWS_AS(fission_split(s, bundle({"α", "γ"})), NotSubsetError);
}

TEST_CASE("obliteration and impoverishment")
{
    auto ms = with_insertion("(X D)", "D", golden::kOblS);
    int l = golden::leaf_with_atom(ms, "D");
    GammaSM any = GammaSM::permissive();
    CHECK(obliterate(ms, l).key() == parse_tree("(X D)", LeafMode::Syntax).enc());
    CHECK_THROWS_AS(impoverish_subset(ms, l, bundle({"κ"}), any), NotSubsetError);
    CHECK_THROWS_AS(impoverish_subset(ms, l, bundle({"φ", "α", "β", "γ", "δ"}), any), NotSubsetError);
    GammaSM strict({{parse_bundle("φ,α,β,γ,δ"), "D"}});
    CHECK_THROWS_AS(impoverish_subset(ms, l, bundle({"φ", "α"}), strict), GammaError);

    FissionSpec spec{l, {}, bundle({"β", "γ", "δ"}), bundle({"φ", "α"}), "D"};
    auto trace = impoverish_trace(ms, spec, any);
    CHECK(trace.key() == parse_tree("(X {α,β,γ,δ,φ @ D| {α,φ| α φ}})").enc());
    ImpoverishOptions unmarked{Feature::parse("ω")};
    auto hooked = impoverish_subset(ms, l, bundle({"φ", "α"}), any, unmarked);
    CHECK(hooked.insertion(l)->root_bundle().count(Feature::parse("ω")) == 1);

    Forest ws{ExtMorphObject::parse(golden::kOblS).tree(), parse_tree("{ζ|}", LeafMode::Morph)};
    auto p = impov_pipeline(ws, AssemblyOp(ms), spec, any);
    bool found = false;
    for (const auto& [k, t] : p)
        for (const auto& c : t.second.forest.comps())
            if (c == trace.tree())
                found = true;
    CHECK(found);
}

TEST_CASE("generators compose and report the failing step")
{
    auto ms = MorphoSynTree::parse("(V ({α,β @ AGR| α β}^ {δ,ε @ T| δ ε}))");
    AssemblyOp op(ms);
    GammaSM any = GammaSM::permissive();
    auto site = cherries(ms)[0];
    auto one = semigroup_apply({Fuse{site}}, op, any);
    CHECK(one.size() == 1);
    try {
        semigroup_apply({Fuse{site}, Fuse{site}}, op, any);
        FAIL("expected a generator error");
    } catch (const GeneratorError& e) {
        CHECK(e.index() == 1);
        CHECK(e.inner_kind() == "NotACherryError");
    }
    CHECK(generator_str(Generator{Impoverish{0, parse_bundle("α")}}).size() > 0);
}

TEST_CASE("morphological merge and root cut")
{
    Forest ws{ExtMorphObject::parse("{α,β| α β}").tree(), parse_tree("γ", LeafMode::Morph)};
    auto m = morph_merge(ws, ws.comps()[0], ws.comps()[1]);
    CHECK(m.str() == Forest{ExtMorphObject::parse("{α,β,γ| {α,β| α β} γ}").tree()}.key());
    auto cut = cut_split(ws, ws.comps()[0], {}, bundle({"α"}), bundle({"β"}));
    REQUIRE(cut.has_value());
    CHECK(cut->size() == 3);
    CHECK_FALSE(cut_split(ws, parse_tree("δ", LeafMode::Morph), {}, bundle({"α"}), bundle({"β"})).has_value());
}

TEST_CASE("law suites pass at small budgets")
{
    VerifyOptions o;
    o.budget = 60;
    o.max_leaves = 4;
    for (const auto& name : suite_names()) {
        auto rep = run_suite(name, o);
        INFO(rep.str());
        CHECK(rep.ok());
    }
    CHECK_THROWS_AS(run_suite("nonsense", o), std::invalid_argument);
}

TEST_CASE("mutated coproduct is caught")
{
    VerifyOptions o;
    o.max_leaves = 4;
    o.swap_quotient_modes = true;
    CHECK_FALSE(run_suite("hopf", o).ok());
}
