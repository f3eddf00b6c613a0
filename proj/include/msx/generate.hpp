#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "msx/dm.hpp"

namespace msx {

// Exhaustive enumeration, canonical and without duplicates.

// Full binary trees with n leaves drawn from `leaves`.
std::vector<Tree> binary_trees(int n, const std::vector<Tree>& leaves);
std::vector<Tree> syntactic_trees(int n, const std::vector<std::string>& atoms);
// Feature trees with every internal vertex labelled by the union of its leaves.
std::vector<Tree> morph_trees(int n, const std::vector<Feature>& features);
// Operad elements with n inputs: every shape, with every hole numbering when
// all_numberings is set, canonical numbering otherwise.
std::vector<OperadElement> operad_elements(int n, bool all_numberings);

// Multisets of trees with total leaf count in [min_leaves, max_leaves].
std::vector<Forest> forests(int min_leaves, int max_leaves,
                            const std::function<std::vector<Tree>(int)>& trees_of);

// Seeded random instances.
class RandomTrees {
public:
    explicit RandomTrees(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }
    int uniform(int lo, int hi);   // inclusive
    bool chance(double p);

    // Random binary shape over the given leaves, consumed in order.
    Tree shape_over(std::vector<Tree> leaves);
    Tree syntactic(int n, const std::vector<std::string>& atoms);
    // Distinct atoms a0, a1, ... with the given prefix.
    Tree syntactic_distinct(int n, const std::string& prefix);
    ExtMorphObject morph(const std::vector<Feature>& features);
    OperadElement operad(int n);
    // Random head choice at every binary vertex.
    Tree with_random_heads(const Tree& t);

private:
    std::mt19937_64 rng_;
};

// Fresh unvalued features f<k>, f<k+1>, ...
std::vector<Feature> fresh_features(int& counter, int n);

} // namespace msx
