#pragma once

#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "msx/tree.hpp"

namespace msx {

using VertexSet = std::vector<VertexId>;   // sorted, no duplicates

enum class QuotientMode { C, Rho, D };

std::vector<std::pair<VertexId, Tree>> accessible_terms(const Tree& t);

// All sets of pairwise non-nested vertices, including {} and {root}.
// Sorted by size, then lexicographically.
std::vector<VertexSet> nonoverlapping_vertex_sets(const Tree& t);

bool is_ancestor_or_self(const VertexId& a, const VertexId& b);
void check_vertex_set(const Tree& t, const VertexSet& set);

// Returns nullopt when the whole tree is extracted (the forest unit).
std::optional<Tree> quotient(const Tree& t, const VertexSet& extracted, QuotientMode mode);

// As quotient, but the subtrees at `traced` (disjoint from everything extracted)
// are first replaced by trace leaves.
std::optional<Tree> quotient_with_traces(const Tree& t, const VertexSet& extracted,
                                         const VertexSet& traced, QuotientMode mode);

// Replaces every unary vertex by its child.
Tree contract_unary(const Tree& t);

Tree graft(const Forest& f);
Forest root_cut(const Tree& t);

Forest extracted_forest(const Tree& t, const VertexSet& set);

// Rebuilds t with every leaf replaced by f(leaf, k), k the canonical leaf index.
// Labels and head marks of internal vertices are kept.
Tree map_leaves(const Tree& t, const std::function<Tree(const Tree&, int)>& f);

} // namespace msx
