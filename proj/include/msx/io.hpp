#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "msx/dm.hpp"

namespace msx {

using json = nlohmann::json;

json tree_to_json(const Tree& t);
Tree tree_from_json(const json& j);
json forest_to_json(const Forest& f);
Forest forest_from_json(const json& j);
json sum_to_json(const WorkspaceSum& s);
WorkspaceSum sum_from_json(const json& j);
json op_to_json(const AssemblyOp& op);
AssemblyOp op_from_json(const json& j);

// Graphviz rendering. Boundary vertices are highlighted; syntax sits above them and
// morphology below.
std::string tree_to_dot(const Tree& t, const std::string& name = "tree");
std::string forest_to_dot(const Forest& f, const std::string& name = "workspace");
// One cluster per term, captioned with its coefficient.
std::string sum_to_dot(const WorkspaceSum& s, const std::string& name = "sum");
int count_boundary_nodes(const Tree& t);

struct ProjectConfig {
    AtomInventory so_inventory;
    MorphInventory mo_inventory;
    GammaSM gamma = GammaSM::permissive();
    std::vector<std::string> fission_atom_candidates;
    std::optional<Feature> unmarked_feature;

    ImpoverishOptions impoverish_options() const { return {unmarked_feature}; }
    // Partner atoms for a fission producing the given bundle at the new leaf.
    std::vector<std::string> partners_for(const Bundle& b) const;
};

ProjectConfig config_from_json(const json& j);
json config_to_json(const ProjectConfig& c);
ProjectConfig load_config(const std::string& path);
// Inventories and the feature correspondence agree with each other.
void check_config(const ProjectConfig& c);

// Atoms and features of a tree against the configured inventories.
void check_tree_inventory(const Tree& t, const ProjectConfig& c);

json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

} // namespace msx
