#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "msx/coproduct.hpp"

namespace msx {

// Allowed valuations per feature category.
using MorphInventory = std::map<std::string, std::set<Valuation>>;

void check_feature(const Feature& f, const MorphInventory& inv);

struct Violation {
    enum Kind { Structure, Monotone, Covering, Tightness };
    Kind kind;
    VertexId vertex;
    std::string message;
};
std::string violation_kind_str(Violation::Kind k);

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    size_t count(Violation::Kind k) const;
    std::string str() const;
};

ValidationReport validate_ext(const Tree& t);

// Features at the leaves of t, plus the bundles of bundle-labelled childless vertices.
Bundle leaf_features(const Tree& t);

// At most binary tree of features with a bundle on every internal vertex, satisfying
// the monotone, covering and tightness conditions.
class ExtMorphObject {
public:
    explicit ExtMorphObject(Tree t);
    static ExtMorphObject parse(std::string_view text);

    const Tree& tree() const { return t_; }
    const std::string& key() const { return t_.enc(); }
    Bundle root_bundle() const { return t_.root_bundle(); }
    // full binary with union labels: an element of the free magma on features
    bool is_magma() const;
    bool operator==(const ExtMorphObject& o) const { return t_ == o.t_; }

private:
    Tree t_;
};

// Labels every internal vertex of a feature tree by the union of its leaves.
ExtMorphObject build_morph(const Tree& term, const MorphInventory* inv = nullptr);
ExtMorphObject build_morph(std::string_view text, const MorphInventory* inv = nullptr);

TensorSum coproduct_rho(const Forest& ws);

struct ComoduleReport {
    bool right_coassociative = true;
    bool counit = true;
    bool left_laws = true;
    bool bicomodule = true;
    bool left_channel_magma = true;   // left channels of magma inputs stay full binary
    bool ok() const
    {
        return right_coassociative && counit && left_laws && bicomodule && left_channel_magma;
    }
};

ComoduleReport comodule_report(const Forest& sample);
bool check_comodule(const Forest& sample);

// Contracts unary vertices that add nothing to the bundle of their child.
Tree simplify_unary(const Tree& t);
ExtMorphObject simplify_unary(const ExtMorphObject& t);

} // namespace msx
