#include "doctest.h"

#include "msx/morph.hpp"
#include "oracles.hpp"

using namespace msx;

namespace {

std::vector<Forest> syn_forests(int max_leaves)
{
    return forests(1, max_leaves, [](int n) { return syntactic_trees(n, {"a", "b"}); });
}

} // namespace

TEST_CASE("coproduct of a cherry")
{
    auto d = coproduct(parse_tree("(a b)"), {});
    CHECK(d.size() == 4);
    CHECK(d.coef(Tensor(parse_forest("a"), parse_forest("b")).key()) == Coef(1));
    CHECK(d.coef(Tensor(parse_forest("1"), parse_forest("(a b)")).key()) == Coef(1));
    CHECK(d.coef(Tensor(parse_forest("(a b)"), parse_forest("1")).key()) == Coef(1));
    auto dd = coproduct(parse_tree("(a a)"), {});
    CHECK(dd.coef(Tensor(parse_forest("a"), parse_forest("a")).key()) == Coef(2));
}

TEST_CASE("contracting coproduct matches the reference on forests up to five leaves")
{
    for (const auto& f : syn_forests(5)) {
        CHECK_MESSAGE(oracle::to_sum(coproduct(f, {QuotientMode::D, CopyCancellation::Off})) ==
                          oracle::coproduct(f, true, false),
                      f.key());
    }
}

TEST_CASE("copy cancellation matches the reference")
{
    for (const auto& f : syn_forests(4))
        CHECK_MESSAGE(oracle::to_sum(coproduct_syn(f)) == oracle::coproduct(f, true, true), f.key());
}

TEST_CASE("label-keeping coproduct matches the reference on morphological forests")
{
    std::vector<Feature> fs{Feature::parse("α"), Feature::parse("β")};
    auto all = forests(1, 4, [&](int n) { return morph_trees(n, fs); });
    for (const auto& f : all)
        CHECK_MESSAGE(oracle::to_sum(coproduct_rho(f)) == oracle::coproduct(f, false, false), f.key());
}

TEST_CASE("Hopf laws on small forests")
{
    auto d = [](const Forest& f) { return coproduct(f, {QuotientMode::D, CopyCancellation::Off}); };
    auto rho = [](const Forest& f) { return coproduct(f, {QuotientMode::Rho, CopyCancellation::Off}); };
    for (const auto& f : syn_forests(4)) {
        auto r = check_hopf(f, d);
        CHECK_MESSAGE(r.ok(), f.key());
    }
    std::vector<Feature> fs{Feature::parse("α"), Feature::parse("β")};
    for (const auto& f : forests(1, 4, [&](int n) { return morph_trees(n, fs); }))
        CHECK_MESSAGE(check_hopf(f, rho).ok(), f.key());
}

TEST_CASE("mixing quotient modes breaks coassociativity")
{
    auto mixed = [](const Forest& f) {
        return coproduct(f, {f.num_leaves() >= 3 ? QuotientMode::D : QuotientMode::Rho,
                             CopyCancellation::Off});
    };
    bool broken = false;
    for (const auto& f : syn_forests(4))
        if (!check_hopf(f, mixed).coassociative)
            broken = true;
    CHECK(broken);
}

TEST_CASE("linear sums")
{
    WorkspaceSum a = single(parse_forest("a"), Coef(2));
    WorkspaceSum b = single(parse_forest("a"), Coef(-2));
    CHECK((a + b).empty());
    CHECK((a - b).coef(parse_forest("a").key()) == Coef(4));
    CHECK(a.scaled(Coef(1, 2)).total() == Coef(1));
    CHECK(a.str() == "2·a");
    CHECK(WorkspaceSum().str() == "0");
}
