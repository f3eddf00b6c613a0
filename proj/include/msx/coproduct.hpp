#pragma once

#include <functional>

#include "msx/sum.hpp"
#include "msx/tree_ops.hpp"

namespace msx {

enum class CopyCancellation { Off, CanonicalEquality };

struct CoproductOptions {
    QuotientMode mode = QuotientMode::D;
    CopyCancellation cancel = CopyCancellation::Off;
};

// True when the set contains every child of some vertex. Such extractions leave a
// vertex with nothing below it; the contracting quotient has no full binary tree to
// return there, so the D-mode coproduct skips them.
bool empties_a_vertex(const Tree& t, const VertexSet& set);

// One admissible extraction from a forest: a vertex set per component.
struct Extraction {
    std::vector<VertexSet> sets;
    Forest left;
    Forest right;
};

// Visits every extraction of the forest, in a deterministic order.
void for_each_extraction(const Forest& f, const CoproductOptions& opt,
                         const std::function<void(const Extraction&)>& visit);

// Quotient of one tree for one vertex set, honoring the copy-cancellation switch.
std::optional<Tree> coproduct_quotient(const Tree& t, const VertexSet& set,
                                       const CoproductOptions& opt);

TensorSum coproduct(const Forest& f, const CoproductOptions& opt);
TensorSum coproduct(const Tree& t, const CoproductOptions& opt);

// Linear extensions to tensors: apply the coproduct to one tensor slot.
using ForestCoproduct = std::function<TensorSum(const Forest&)>;
LinearSum<Tensor> apply_at(const LinearSum<Tensor>& s, size_t slot, const ForestCoproduct& d);

struct HopfReport {
    bool coassociative = true;
    bool counit_left = true;
    bool counit_right = true;
    bool multiplicative = true;
    bool ok() const { return coassociative && counit_left && counit_right && multiplicative; }
};

// Checks coassociativity and the counit laws on one forest, and multiplicativity
// against the split into its first component and the rest.
HopfReport check_hopf(const Forest& f, const ForestCoproduct& d);

} // namespace msx
