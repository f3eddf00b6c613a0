#include "msx/morph.hpp"

namespace msx {

void check_feature(const Feature& f, const MorphInventory& inv)
{
    auto it = inv.find(f.cat);
    if (it == inv.end())
        throw UnknownFeatureError("feature category '" + f.cat + "' is not in the inventory");
    if (!it->second.count(f.val))
        throw UnknownFeatureError("valuation of " + f.str() + " is not allowed");
}

std::string violation_kind_str(Violation::Kind k)
{
    switch (k) {
    case Violation::Structure: return "structure";
    case Violation::Monotone: return "monotone";
    case Violation::Covering: return "covering";
    case Violation::Tightness: return "tightness";
    }
    return "?";
}

size_t ValidationReport::count(Violation::Kind k) const
{
    size_t n = 0;
    for (const auto& v : violations)
        n += v.kind == k;
    return n;
}

std::string ValidationReport::str() const
{
    if (ok())
        return "valid";
    std::string s;
    for (const auto& v : violations) {
        if (!s.empty())
            s += "\n";
        s += violation_kind_str(v.kind) + " at " + vertex_str(v.vertex) + ": " + v.message;
    }
    return s;
}

Bundle leaf_features(const Tree& t)
{
    if (t.is_leaf()) {
        if (t.leaf_kind() == LeafKind::Feature)
            return {t.leaf_label().feature};
        if (t.leaf_kind() == LeafKind::Stub || t.leaf_kind() == LeafKind::Boundary)
            return t.root_bundle();
        return {};
    }
    Bundle b;
    for (const auto& k : t.kids())
        b = bundle_union(b, leaf_features(k));
    return b;
}

namespace {

void validate_rec(const Tree& t, VertexId& path, ValidationReport& rep)
{
    auto add = [&](Violation::Kind k, std::string m) {
        rep.violations.push_back(Violation{k, path, std::move(m)});
    };
    if (t.is_leaf()) {
        auto k = t.leaf_kind();
        if (k == LeafKind::Stub && !t.label())
            add(Violation::Structure, "childless vertex without a bundle");
        else if (k != LeafKind::Feature && k != LeafKind::Stub)
            add(Violation::Structure, "leaf " + t.enc() + " is not a feature");
        return;
    }
    if (!t.label()) {
        add(Violation::Structure, "internal vertex without a bundle");
    } else {
        const Bundle& b = t.label()->bundle;
        Bundle below = leaf_features(t);
        if (!bundle_subset(below, b))
            add(Violation::Covering, bundle_str(b) + " misses " + bundle_str(bundle_minus(below, b)));
        if (!t.has_unary() && b != below)
            add(Violation::Tightness, bundle_str(b) + " differs from leaf union " + bundle_str(below));
        for (size_t i = 0; i < t.kids().size(); ++i) {
            const Tree& k = t.kids()[i];
            if (k.is_leaf() && k.leaf_kind() != LeafKind::Feature && k.leaf_kind() != LeafKind::Stub)
                continue;
            if (!k.is_leaf() && !k.label())
                continue;
            Bundle kb = k.root_bundle();
            if (!bundle_subset(kb, b)) {
                VertexId c = path;
                c.push_back(static_cast<int>(i));
                rep.violations.push_back(Violation{Violation::Monotone, c,
                                                   bundle_str(kb) + " not contained in parent " +
                                                       bundle_str(b)});
            }
        }
    }
    for (size_t i = 0; i < t.kids().size(); ++i) {
        path.push_back(static_cast<int>(i));
        validate_rec(t.kids()[i], path, rep);
        path.pop_back();
    }
}

Tree label_rec(const Tree& t, const MorphInventory* inv)
{
    if (t.is_leaf()) {
        if (t.leaf_kind() != LeafKind::Feature)
            throw ValidationError("leaf " + t.enc() + " is not a feature");
        if (inv)
            check_feature(t.leaf_label().feature, *inv);
        return t;
    }
    if (t.is_unary())
        throw ValidationError("a magma term has no unary vertices: " + t.enc());
    Tree a = label_rec(t.kid(0), inv);
    Tree b = label_rec(t.kid(1), inv);
    Bundle u = bundle_union(a.root_bundle(), b.root_bundle());
    return Tree::binary(std::move(a), std::move(b), InternalLabel{u, ""});
}

} // namespace

ValidationReport validate_ext(const Tree& t)
{
    ValidationReport rep;
    VertexId path;
    validate_rec(t, path, rep);
    return rep;
}

ExtMorphObject::ExtMorphObject(Tree t) : t_(std::move(t))
{
    auto rep = validate_ext(t_);
    if (!rep.ok())
        throw ValidationError("not an extended morphological object: " + rep.str());
}

ExtMorphObject ExtMorphObject::parse(std::string_view text)
{
    return ExtMorphObject(parse_tree(text, LeafMode::Morph));
}

bool ExtMorphObject::is_magma() const
{
    if (t_.has_unary())
        return false;
    for (const auto& v : t_.leaves())
        if (t_.at(v).leaf_kind() != LeafKind::Feature)
            return false;
    return true;
}

ExtMorphObject build_morph(const Tree& term, const MorphInventory* inv)
{
    return ExtMorphObject(label_rec(term, inv));
}

ExtMorphObject build_morph(std::string_view text, const MorphInventory* inv)
{
    return build_morph(parse_tree(text, LeafMode::Morph), inv);
}

TensorSum coproduct_rho(const Forest& ws)
{
    return coproduct(ws, CoproductOptions{QuotientMode::Rho, CopyCancellation::Off});
}

ComoduleReport comodule_report(const Forest& sample)
{
    ComoduleReport rep;
    ForestCoproduct rho_r = [](const Forest& f) { return coproduct_rho(f); };
    ForestCoproduct rho_l = [](const Forest& f) {
        TensorSum s;
        s.add(Tensor(Forest{}, f));
        return s;
    };

    TensorSum r = rho_r(sample);
    rep.right_coassociative = apply_at(r, 0, rho_r) == apply_at(r, 1, rho_r);

    WorkspaceSum cu;
    for (const auto& [k, cv] : r)
        if (cv.second.right().empty())
            cu.add(WorkspaceTerm{cv.second.left()}, cv.first);
    rep.counit = cu == single(sample);

    TensorSum l = rho_l(sample);
    bool left_coassoc = apply_at(l, 1, rho_l) == apply_at(l, 0, rho_r);
    WorkspaceSum lcu;
    for (const auto& [k, cv] : l)
        if (cv.second.left().empty())
            lcu.add(WorkspaceTerm{cv.second.right()}, cv.first);
    rep.left_laws = left_coassoc && lcu == single(sample);

    rep.bicomodule = apply_at(l, 1, rho_r) == apply_at(r, 0, rho_l);

    bool magma_input = true;
    for (const auto& c : sample.comps())
        if (c.has_unary())
            magma_input = false;
    if (magma_input) {
        for (const auto& [k, cv] : r)
            for (const auto& c : cv.second.left().comps())
                if (c.has_unary())
                    rep.left_channel_magma = false;
    }
    return rep;
}

bool check_comodule(const Forest& sample)
{
    return comodule_report(sample).ok();
}

Tree simplify_unary(const Tree& t)
{
    if (t.is_leaf())
        return t;
    std::vector<Tree> kids;
    for (const auto& k : t.kids())
        kids.push_back(simplify_unary(k));
    if (kids.size() == 1 && t.label() && !t.label()->boundary()) {
        const Tree& c = kids[0];
        bool bundled = !c.is_leaf() || c.leaf_kind() == LeafKind::Feature ||
                       c.leaf_kind() == LeafKind::Stub;
        if (bundled && !(c.label() && c.label()->boundary()) &&
            c.root_bundle() == t.label()->bundle)
            return c;
    }
    return Tree::from_kids(std::move(kids), t.label(), t.head());
}

ExtMorphObject simplify_unary(const ExtMorphObject& t)
{
    return ExtMorphObject(simplify_unary(t.tree()));
}

} // namespace msx
