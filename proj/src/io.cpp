#include "msx/io.hpp"

#include <fstream>
#include <sstream>

namespace msx {

namespace {

json bundle_json(const Bundle& b)
{
    json a = json::array();
    for (const auto& f : b)
        a.push_back(f.str());
    return a;
}

Bundle bundle_from(const json& j)
{
    Bundle b;
    for (const auto& f : j)
        b.insert(Feature::parse(f.get<std::string>()));
    return b;
}

json label_json(const InternalLabel& l)
{
    json j{{"bundle", bundle_json(l.bundle)}};
    if (l.boundary())
        j["atom"] = l.atom;
    return j;
}

std::optional<InternalLabel> label_from(const json& j)
{
    if (!j.contains("label"))
        return std::nullopt;
    const json& l = j.at("label");
    return InternalLabel{bundle_from(l.at("bundle")), l.value("atom", "")};
}

Coef coef_from(const std::string& s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Coef(std::stoll(s));
    return Coef(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

std::string dot_escape(const std::string& s)
{
    std::string o;
    for (char c : s) {
        if (c == '"' || c == '\\')
            o += '\\';
        o += c;
    }
    return o;
}

// Emits nodes and edges of t with ids prefixed by `pre`.
void dot_nodes(const Tree& t, const std::string& pre, std::ostringstream& out)
{
    int counter = 0;
    std::function<std::string(const Tree&, bool)> rec = [&](const Tree& n, bool morph) {
        std::string id = pre + std::to_string(counter++);
        std::string label, attrs;
        bool boundary = is_boundary_root(n);
        if (n.is_leaf()) {
            switch (n.leaf_kind()) {
            case LeafKind::Atom: label = n.leaf_label().name; attrs = "shape=plaintext"; break;
            case LeafKind::Feature: label = n.leaf_label().feature.str(); attrs = "shape=ellipse"; break;
            case LeafKind::Hole: label = "•" + std::to_string(n.leaf_label().hole); attrs = "shape=circle"; break;
            case LeafKind::Trace: label = "<" + n.leaf_label().name + ">"; attrs = "shape=plaintext,fontcolor=gray40"; break;
            case LeafKind::Boundary:
                label = bundle_str(n.leaf_label().bundle) + " @ " + n.leaf_label().name;
                break;
            case LeafKind::Stub:
                label = n.label() ? n.label()->str() : "()";
                attrs = "shape=box,style=dashed";
                break;
            }
        } else {
            label = n.label() ? n.label()->str() : "";
            attrs = morph ? "shape=ellipse" : "shape=point";
        }
        if (boundary)
            attrs = "shape=doubleoctagon,style=filled,fillcolor=gold";
        else if (morph && !n.is_leaf())
            attrs += ",style=filled,fillcolor=lightblue";
        out << "  " << id << " [label=\"" << dot_escape(label) << "\"," << attrs << "];\n";
        bool below = morph || boundary;
        for (size_t i = 0; i < n.kids().size(); ++i) {
            std::string c = rec(n.kids()[i], below);
            out << "  " << id << " -> " << c;
            if (static_cast<int>(i) == n.head())
                out << " [penwidth=2]";
            out << ";\n";
        }
        return id;
    };
    rec(t, t.label() && !is_boundary_root(t));
}

} // namespace

json tree_to_json(const Tree& t)
{
    json j;
    if (t.is_leaf()) {
        const LeafLabel& l = t.leaf_label();
        switch (l.kind) {
        case LeafKind::Atom: j = {{"kind", "atom"}, {"name", l.name}}; break;
        case LeafKind::Feature: j = {{"kind", "feature"}, {"feature", l.feature.str()}}; break;
        case LeafKind::Boundary:
            j = {{"kind", "boundary"}, {"bundle", bundle_json(l.bundle)}, {"atom", l.name}};
            break;
        case LeafKind::Hole: j = {{"kind", "hole"}, {"index", l.hole}}; break;
        case LeafKind::Trace: j = {{"kind", "trace"}, {"of", l.name}}; break;
        case LeafKind::Stub:
            j = {{"kind", "stub"}};
            if (t.label())
                j["label"] = label_json(*t.label());
            break;
        }
        return j;
    }
    j = {{"kind", "vertex"}};
    if (t.label())
        j["label"] = label_json(*t.label());
    if (t.head() >= 0)
        j["head"] = t.head();
    json kids = json::array();
    for (const auto& k : t.kids())
        kids.push_back(tree_to_json(k));
    j["children"] = kids;
    return j;
}

Tree tree_from_json(const json& j)
{
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "atom")
            return Tree::atom(j.at("name").get<std::string>());
        if (kind == "feature")
            return Tree::feature(Feature::parse(j.at("feature").get<std::string>()));
        if (kind == "boundary")
            return Tree::boundary(bundle_from(j.at("bundle")), j.at("atom").get<std::string>());
        if (kind == "hole")
            return Tree::hole(j.at("index").get<int>());
        if (kind == "trace") {
            LeafLabel l;
            l.kind = LeafKind::Trace;
            l.name = j.at("of").get<std::string>();
            return Tree::leaf(l);
        }
        if (kind == "stub")
            return Tree::stub(label_from(j));
        if (kind == "vertex") {
            std::vector<Tree> kids;
            for (const auto& k : j.at("children"))
                kids.push_back(tree_from_json(k));
            if (kids.empty())
                throw SyntaxError("vertex without children");
            return Tree::from_kids(std::move(kids), label_from(j), j.value("head", -1));
        }
        throw SyntaxError("unknown node kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw SyntaxError(std::string("malformed tree JSON: ") + e.what());
    }
}

json forest_to_json(const Forest& f)
{
    json comps = json::array();
    for (const auto& c : f.comps())
        comps.push_back(tree_to_json(c));
    return {{"kind", "forest"}, {"components", comps}};
}

Forest forest_from_json(const json& j)
{
    if (j.is_array() || (j.is_object() && j.value("kind", "") == "forest")) {
        const json& comps = j.is_array() ? j : j.at("components");
        std::vector<Tree> v;
        for (const auto& c : comps)
            v.push_back(tree_from_json(c));
        return Forest(std::move(v));
    }
    return Forest{tree_from_json(j)};
}

json sum_to_json(const WorkspaceSum& s)
{
    json terms = json::array();
    for (const auto& [k, cv] : s)
        terms.push_back({{"coef", coef_str(cv.first)}, {"forest", forest_to_json(cv.second.forest)}});
    return {{"kind", "sum"}, {"terms", terms}};
}

WorkspaceSum sum_from_json(const json& j)
{
    WorkspaceSum s;
    try {
        for (const auto& t : j.at("terms"))
            s.add(WorkspaceTerm{forest_from_json(t.at("forest"))},
                  coef_from(t.value("coef", std::string("1"))));
    } catch (const json::exception& e) {
        throw SyntaxError(std::string("malformed sum JSON: ") + e.what());
    }
    return s;
}

json op_to_json(const AssemblyOp& op)
{
    json args = json::array();
    for (const auto& a : op.args())
        args.push_back(a ? tree_to_json(a->tree()) : json(nullptr));
    return {{"kind", "assembly"}, {"skeleton", tree_to_json(op.skeleton())}, {"args", args}};
}

AssemblyOp op_from_json(const json& j)
{
    std::vector<Insertion> args;
    for (const auto& a : j.at("args"))
        args.push_back(a.is_null() ? Insertion() : Insertion(ExtMorphObject(tree_from_json(a))));
    return AssemblyOp(MorphoSynTree(tree_from_json(j.at("skeleton")), std::move(args)));
}

std::string tree_to_dot(const Tree& t, const std::string& name)
{
    std::ostringstream out;
    out << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=TB;\n";
    dot_nodes(t, "n", out);
    out << "}\n";
    return out.str();
}

std::string forest_to_dot(const Forest& f, const std::string& name)
{
    std::ostringstream out;
    out << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=TB;\n";
    for (size_t i = 0; i < f.size(); ++i)
        dot_nodes(f.comps()[i], "c" + std::to_string(i) + "_", out);
    out << "}\n";
    return out.str();
}

std::string sum_to_dot(const WorkspaceSum& s, const std::string& name)
{
    std::ostringstream out;
    out << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=TB;\n";
    int i = 0;
    for (const auto& [k, cv] : s) {
        out << " subgraph cluster_" << i << " {\n  label=\"" << coef_str(cv.first) << "\";\n";
        const Forest& f = cv.second.forest;
        if (f.empty())
            out << "  t" << i << "_unit [label=\"1\",shape=plaintext];\n";
        for (size_t c = 0; c < f.size(); ++c)
            dot_nodes(f.comps()[c], "t" + std::to_string(i) + "_" + std::to_string(c) + "_", out);
        out << " }\n";
        ++i;
    }
    out << "}\n";
    return out.str();
}

int count_boundary_nodes(const Tree& t)
{
    int n = 0;
    for (const auto& v : t.vertices())
        n += is_boundary_root(t.at(v));
    return n;
}

std::vector<std::string> ProjectConfig::partners_for(const Bundle& b) const
{
    std::vector<std::string> out;
    if (gamma.is_permissive()) {
        if (!fission_atom_candidates.empty())
            return fission_atom_candidates;
        return {so_inventory.begin(), so_inventory.end()};
    }
    auto admitted = gamma.atoms_for(b);
    if (fission_atom_candidates.empty())
        return admitted;
    for (const auto& a : fission_atom_candidates)
        if (std::find(admitted.begin(), admitted.end(), a) != admitted.end())
            out.push_back(a);
    return out;
}

ProjectConfig config_from_json(const json& j)
{
    ProjectConfig c;
    try {
        for (const auto& a : j.value("so_inventory", json::array()))
            c.so_inventory.insert(a.get<std::string>());
        const json mo = j.value("mo_inventory", json::object());
        for (const auto& [cat, vals] : mo.items()) {
            auto& set = c.mo_inventory[cat];
            for (const auto& v : vals) {
                std::string s = v.get<std::string>();
                if (s == "+")
                    set.insert(Valuation::Plus);
                else if (s == "-")
                    set.insert(Valuation::Minus);
                else if (s == "u" || s.empty())
                    set.insert(Valuation::Unvalued);
                else
                    throw SyntaxError("unknown valuation '" + s + "' for " + cat);
            }
        }
        if (j.contains("gamma_sm")) {
            const json& g = j.at("gamma_sm");
            if (g.value("permissive", false)) {
                c.gamma = GammaSM::permissive();
            } else {
                std::set<std::pair<Bundle, std::string>> pairs;
                for (const auto& p : g.value("pairs", json::array()))
                    pairs.emplace(bundle_from(p.at("bundle")), p.at("atom").get<std::string>());
                c.gamma = GammaSM(std::move(pairs), g.value("surjective", false));
            }
        }
        for (const auto& a : j.value("fission_atom_candidates", json::array()))
            c.fission_atom_candidates.push_back(a.get<std::string>());
        if (j.contains("unmarked_feature") && !j.at("unmarked_feature").is_null())
            c.unmarked_feature = Feature::parse(j.at("unmarked_feature").get<std::string>());
    } catch (const json::exception& e) {
        throw SyntaxError(std::string("malformed config: ") + e.what());
    }
    return c;
}

json config_to_json(const ProjectConfig& c)
{
    json mo = json::object();
    for (const auto& [cat, vals] : c.mo_inventory) {
        json a = json::array();
        for (auto v : vals)
            a.push_back(v == Valuation::Plus ? "+" : v == Valuation::Minus ? "-" : "u");
        mo[cat] = a;
    }
    json g;
    if (c.gamma.is_permissive()) {
        g = {{"permissive", true}};
    } else {
        json pairs = json::array();
        for (const auto& [b, a] : c.gamma.pairs())
            pairs.push_back({{"bundle", bundle_json(b)}, {"atom", a}});
        g = {{"pairs", pairs}, {"surjective", c.gamma.surjective()}};
    }
    json j{{"so_inventory", c.so_inventory},
           {"mo_inventory", mo},
           {"gamma_sm", g},
           {"fission_atom_candidates", c.fission_atom_candidates}};
    if (c.unmarked_feature)
        j["unmarked_feature"] = c.unmarked_feature->str();
    return j;
}

json read_json_file(const std::string& path)
{
    std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw SyntaxError(path + ": " + e.what());
    }
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IOError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ProjectConfig load_config(const std::string& path)
{
    ProjectConfig c = config_from_json(read_json_file(path));
    check_config(c);
    return c;
}

void check_config(const ProjectConfig& c)
{
    if (c.gamma.is_permissive())
        return;
    for (const auto& [b, a] : c.gamma.pairs()) {
        if (!c.so_inventory.empty() && !c.so_inventory.count(a))
            throw InventoryError("correspondence atom '" + a + "' is not in the atom inventory");
        if (!c.mo_inventory.empty())
            for (const auto& f : b)
                check_feature(f, c.mo_inventory);
    }
    for (const auto& a : c.fission_atom_candidates)
        if (!c.so_inventory.empty() && !c.so_inventory.count(a))
            throw InventoryError("fission candidate '" + a + "' is not in the atom inventory");
    if (c.unmarked_feature && !c.mo_inventory.empty())
        check_feature(*c.unmarked_feature, c.mo_inventory);
    if (!c.so_inventory.empty())
        c.gamma.check_surjective(c.so_inventory);
}

void check_tree_inventory(const Tree& t, const ProjectConfig& c)
{
    for (const auto& v : t.vertices()) {
        const Tree& n = t.at(v);
        if (n.is_leaf() && n.leaf_kind() == LeafKind::Atom && !c.so_inventory.empty() &&
            !c.so_inventory.count(n.leaf_label().name))
            throw InventoryError("atom '" + n.leaf_label().name + "' at " + vertex_str(v) +
                                 " is not in the inventory");
        if (c.mo_inventory.empty())
            continue;
        Bundle b;
        if (n.is_leaf() && n.leaf_kind() == LeafKind::Feature)
            b.insert(n.leaf_label().feature);
        if (n.is_leaf() && n.leaf_kind() == LeafKind::Boundary)
            b = n.leaf_label().bundle;
        if (n.label())
            b = n.label()->bundle;
        for (const auto& f : b) {
            try {
                check_feature(f, c.mo_inventory);
            } catch (const UnknownFeatureError& e) {
                throw InventoryError(std::string(e.what()) + " at " + vertex_str(v));
            }
        }
    }
}

} // namespace msx
