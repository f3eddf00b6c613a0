#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msx/generate.hpp"
#include "msx/io.hpp"

namespace msx {

struct LawResult {
    LawResult(std::string name = {}) : law(std::move(name)) {}

    std::string law;
    long checked = 0;
    long failed = 0;
    long vacuous = 0;   // instances where both sides are the zero sum
    std::string counterexample;   // first failure

    bool ok() const { return failed == 0; }
    void record(bool pass, const std::string& instance);
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    long budget = 0;
    double seconds = 0;
    std::vector<LawResult> laws;

    bool ok() const;
    std::string str() const;
    json to_json() const;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    long budget = -1;       // random samples; -1 picks the suite default
    int max_leaves = -1;    // exhaustive bound; -1 picks the suite default
    // Mutation smoke test: in the Hopf suite every coproduct after the first one on a
    // workspace uses the other quotient mode.
    bool swap_quotient_modes = false;
};

const std::vector<std::string>& suite_names();

// Runs the named law suite (hopf, comodule, operad, correspondence, fusion, fission,
// dm_derived). Failures are report content; unknown names throw std::invalid_argument.
SuiteReport run_suite(const std::string& name, const VerifyOptions& opt = {});

// Sum over the distinct argument tuples of the assembly of t, the reference for
// assemble_KT.
WorkspaceSum assemble_KT_by_tuples(const SyntacticObject& t, const Forest& ws,
                                   const GammaSM& gamma);

// Random admissible instances for the morphosyntactic diagrams.
struct FusionInstance {
    AssemblyOp op;
    VertexId site;
    Forest ws;
    GammaSM gamma;
};
FusionInstance random_fusion_instance(RandomTrees& r, int& fresh);

struct FissionInstance {
    AssemblyOp op;
    FissionSpec spec;
    Forest ws;
    GammaSM gamma;
};
// require_gamma: the correspondence admits at least one assignment of the parts.
FissionInstance random_fission_instance(RandomTrees& r, int& fresh, bool require_gamma);

} // namespace msx
