#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "msx/verify.hpp"

using namespace msx;

namespace {

struct Globals {
    std::string config_path;
    std::uint64_t seed = 1;
    long budget = -1;
    std::string format = "text";
};

struct Value {
    std::string kind;
    std::optional<Tree> tree;
    std::optional<Forest> forest;
    std::optional<WorkspaceSum> sum;

    WorkspaceSum as_sum() const
    {
        if (sum)
            return *sum;
        return single(forest ? *forest : Forest{*tree});
    }
};

ProjectConfig config_of(const Globals& g)
{
    if (g.config_path.empty())
        return ProjectConfig{};
    return load_config(g.config_path);
}

std::string forest_text(const Forest& f)
{
    if (f.empty())
        return "1";
    std::string s;
    for (const auto& c : f.comps())
        s += (s.empty() ? "" : " ⊔ ") + c.henc();
    return s;
}

std::string sum_text(const WorkspaceSum& s, const std::string& indent)
{
    if (s.empty())
        return indent + "0\n";
    std::string out;
    for (const auto& [k, cv] : s)
        out += indent + coef_str(cv.first) + "  " + forest_text(cv.second.forest) + "\n";
    return out;
}

std::optional<json> try_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::exception&) {
        return std::nullopt;
    }
}

Tree validated(const Tree& t, const std::string& kind)
{
    if (kind == "so")
        return SyntacticObject(t).tree();
    if (kind == "mo")
        return build_morph(t).tree();
    if (kind == "ext")
        return ExtMorphObject(t).tree();
    if (kind == "ms")
        return MorphoSynTree::from_tree(t).tree();
    if (kind == "operad")
        return OperadElement(t).tree();
    if (kind == "tree" || kind == "auto")
        return t;
    throw ValidationError("unknown value kind '" + kind + "'");
}

LeafMode mode_for(const std::string& kind)
{
    if (kind == "mo" || kind == "ext")
        return LeafMode::Morph;
    if (kind == "so" || kind == "operad")
        return LeafMode::Syntax;
    return LeafMode::Auto;
}

void check_inventory(const Value& v, const ProjectConfig& c)
{
    auto check_forest = [&](const Forest& f) {
        for (const auto& t : f.comps())
            check_tree_inventory(t, c);
    };
    if (v.tree)
        check_tree_inventory(*v.tree, c);
    if (v.forest)
        check_forest(*v.forest);
    if (v.sum)
        for (const auto& [k, cv] : *v.sum)
            check_forest(cv.second.forest);
}

Value parse_value(const std::string& text, const std::string& kind, const ProjectConfig& c)
{
    Value v;
    v.kind = kind;
    if (auto j = try_json(text)) {
        std::string jk = j->is_object() ? j->value("kind", "") : "";
        if (jk == "sum")
            v.sum = sum_from_json(*j);
        else if (jk == "forest" || j->is_array())
            v.forest = forest_from_json(*j);
        else if (jk == "assembly")
            v.tree = op_from_json(*j).ms().tree();
        else
            v.tree = validated(tree_from_json(*j), kind);
    } else {
        std::string t = text;
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
            t.pop_back();
        bool is_forest = kind == "forest" ||
                         (kind == "auto" && (t.find("⊔") != std::string::npos || t == "1"));
        if (is_forest) {
            v.forest = parse_forest(t, LeafMode::Auto);
        } else {
            v.tree = validated(parse_tree(t, mode_for(kind)), kind);
        }
    }
    check_inventory(v, c);
    return v;
}

std::string input_text(const std::string& arg)
{
    if (arg == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream probe(arg);
    if (probe)
        return read_text_file(arg);
    return arg;   // inline value
}

std::string render(const Value& v, const std::string& format)
{
    if (format == "json") {
        if (v.sum)
            return sum_to_json(*v.sum).dump(2) + "\n";
        if (v.forest)
            return forest_to_json(*v.forest).dump(2) + "\n";
        return tree_to_json(*v.tree).dump(2) + "\n";
    }
    if (format == "dot") {
        if (v.sum)
            return sum_to_dot(*v.sum);
        if (v.forest)
            return forest_to_dot(*v.forest);
        return tree_to_dot(*v.tree);
    }
    if (v.sum)
        return sum_text(*v.sum, "");
    if (v.forest)
        return forest_text(*v.forest) + "\n";
    return v.tree->henc() + "\n";
}

// ---- run -------------------------------------------------------------------

Bundle bundle_field(const json& step, const char* name)
{
    if (!step.contains(name))
        return {};
    const json& b = step.at(name);
    if (b.is_string())
        return parse_bundle(b.get<std::string>());
    Bundle out;
    for (const auto& f : b)
        out.insert(Feature::parse(f.get<std::string>()));
    return out;
}

int leaf_field(const MorphoSynTree& ms, const json& step)
{
    const json& l = step.at("leaf");
    if (l.is_number_integer())
        return l.get<int>();
    const std::string atom = l.get<std::string>();
    int found = -1;
    for (int k = 0; k < ms.num_syn_leaves(); ++k) {
        if (ms.atom(k) == atom) {
            if (found >= 0)
                throw IndexError("atom '" + atom + "' occurs at more than one leaf");
            found = k;
        }
    }
    if (found < 0)
        throw IndexError("no leaf carries atom '" + atom + "'");
    return found;
}

VertexId site_field(const MorphoSynTree& ms, const json& step)
{
    const json& s = step.at("site");
    if (s.empty() || s.front().is_number_integer())
        return s.get<VertexId>();
    std::multiset<std::string> want;
    for (const auto& a : s)
        want.insert(a.get<std::string>());
    for (const auto& v : cherries(ms)) {
        const Tree& n = ms.skeleton().at(v);
        std::multiset<std::string> got{n.kid(0).leaf_label().name, n.kid(1).leaf_label().name};
        if (got == want)
            return v;
    }
    throw NotACherryError("no cherry with morphology at the atoms given");
}

FissionSpec spec_field(const MorphoSynTree& ms, const json& step)
{
    FissionSpec spec;
    spec.leaf = leaf_field(ms, step);
    spec.shared = bundle_field(step, "shared");
    if (step.contains("removed")) {
        spec.part1 = bundle_field(step, "removed");
        spec.part2 = bundle_minus(bundle_minus(ms.insertion(spec.leaf) ? ms.insertion(spec.leaf)->root_bundle()
                                                                       : Bundle{},
                                               spec.part1),
                                  spec.shared);
    } else {
        spec.part1 = bundle_field(step, "part1");
        spec.part2 = bundle_field(step, "part2");
    }
    spec.partner = step.value("partner", "");
    return spec;
}

// Applies an operation to the morphosyntactic component of every term.
WorkspaceSum on_ms(const WorkspaceSum& state,
                   const std::function<WorkspaceSum(const MorphoSynTree&)>& op)
{
    WorkspaceSum out;
    for (const auto& [k, cv] : state) {
        const Forest& f = cv.second.forest;
        std::optional<size_t> at;
        for (size_t i = 0; i < f.size() && !at; ++i) {
            try {
                (void)MorphoSynTree::from_tree(f.comps()[i]);
                at = i;
            } catch (const ValidationError&) {
            }
        }
        if (!at)
            throw ValidationError("term " + f.key() + " has no morphosyntactic component");
        MorphoSynTree ms = MorphoSynTree::from_tree(f.comps()[*at]);
        Forest rest = f.without(*at);
        for (const auto& [k2, cv2] : op(ms))
            out.add(WorkspaceTerm{rest + cv2.second.forest}, cv.first * cv2.first);
    }
    return out;
}

WorkspaceSum one(const MorphoSynTree& ms)
{
    return single(Forest{ms.tree()});
}

WorkspaceSum on_forests(const WorkspaceSum& state, const std::function<WorkspaceSum(const Forest&)>& op)
{
    WorkspaceSum out;
    for (const auto& [k, cv] : state)
        out.add(op(cv.second.forest), cv.first);
    return out;
}

WorkspaceSum run_step(const json& step, const WorkspaceSum& state, const ProjectConfig& cfg,
                      std::ostream& log)
{
    const std::string kind = step.at("kind").get<std::string>();
    const GammaSM& g = cfg.gamma;
    auto tree_arg = [&](const char* name, LeafMode mode) {
        return parse_tree(step.at(name).get<std::string>(), mode);
    };

    if (kind == "fuse")
        return on_ms(state, [&](const MorphoSynTree& ms) { return one(fusion_at(ms, site_field(ms, step), g)); });
    if (kind == "fuse_all")
        return on_ms(state, [&](const MorphoSynTree& ms) { return fusion_all(ms, g); });
    if (kind == "fission")
        return on_ms(state, [&](const MorphoSynTree& ms) {
            FissionSpec spec = spec_field(ms, step);
            if (!spec.partner.empty())
                return fission(ms, spec, g);
            WorkspaceSum out;
            bool any = false;
            for (const auto& p : cfg.partners_for(bundle_union(spec.part2, spec.shared))) {
                spec.partner = p;
                try {
                    out.add(fission(ms, spec, g));
                    any = true;
                } catch (const GammaError&) {
                }
            }
            if (!any)
                throw GammaError("no partner atom admits the split");
            return out;
        });
    if (kind == "obliterate")
        return on_ms(state, [&](const MorphoSynTree& ms) { return one(obliterate(ms, leaf_field(ms, step))); });
    if (kind == "impoverish") {
        const std::string form = step.value("form", "subset");
        return on_ms(state, [&](const MorphoSynTree& ms) {
            if (form == "subset")
                return one(impoverish_subset(ms, leaf_field(ms, step), bundle_field(step, "removed"), g,
                                             cfg.impoverish_options()));
            if (form == "trace") {
                FissionSpec spec = spec_field(ms, step);
                if (spec.partner.empty())
                    spec.partner = ms.atom(spec.leaf);
                return one(impoverish_trace(ms, spec, g, cfg.impoverish_options()));
            }
            if (form == "generator") {
                OpSum r = apply_generator(Impoverish{leaf_field(ms, step), bundle_field(step, "removed")},
                                          AssemblyOp(ms), g);
                WorkspaceSum out;
                for (const auto& [k, cv] : r)
                    out.add(one(cv.second.ms()), cv.first);
                return out;
            }
            throw ValidationError("unknown impoverishment form '" + form + "'");
        });
    }
    if (kind == "assemble") {
        AssemblyOp op(MorphoSynTree::parse(step.at("recipe").get<std::string>()));
        log << "  recipe: " << op.str() << "\n";
        return on_forests(state, [&](const Forest& f) { return assemble_MT(op, f, g); });
    }
    if (kind == "assemble_kt") {
        SyntacticObject t(tree_arg("skeleton", LeafMode::Syntax));
        return on_forests(state, [&](const Forest& f) { return assemble_KT(t, f, g); });
    }
    if (kind == "merge") {
        Tree s1 = tree_arg("s1", LeafMode::Auto);
        std::optional<Tree> s2;
        if (step.contains("s2"))
            s2 = tree_arg("s2", LeafMode::Auto);
        return on_forests(state, [&](const Forest& f) { return merge_pair(f, s1, s2); });
    }
    if (kind == "merge_all")
        return on_forests(state, [&](const Forest& f) { return merge_all(f); });
    if (kind == "morph_merge") {
        Tree s1 = tree_arg("s1", LeafMode::Morph), s2 = tree_arg("s2", LeafMode::Morph);
        return on_forests(state, [&](const Forest& f) { return morph_merge(f, s1, s2); });
    }
    if (kind == "coproduct") {
        const std::string which = step.value("mode", "syntactic");
        for (const auto& [k, cv] : state) {
            TensorSum t = which == "syntactic" ? coproduct_syn(cv.second.forest, CopyCancellation::Off)
                                               : coproduct_rho(cv.second.forest);
            log << "  Δ(" << cv.second.forest.key() << ") has " << t.size() << " terms\n";
            for (const auto& [k2, tv] : t)
                log << "    " << coef_str(tv.first) << "  " << forest_text(tv.second.left()) << " ⊗ "
                    << forest_text(tv.second.right()) << "\n";
        }
        return state;
    }
    if (kind == "oblit_pipeline" || kind == "impov_pipeline") {
        AssemblyOp op(MorphoSynTree::parse(step.at("recipe").get<std::string>()));
        const MorphoSynTree& ms = op.ms();
        return on_forests(state, [&](const Forest& f) {
            if (kind == "oblit_pipeline") {
                int l = leaf_field(ms, step);
                Bundle removed = bundle_field(step, "removed");
                Bundle kept = bundle_minus(ms.insertion(l) ? ms.insertion(l)->root_bundle() : Bundle{}, removed);
                return oblit_pipeline(f, op, l, removed, kept, g);
            }
            FissionSpec spec = spec_field(ms, step);
            if (spec.partner.empty())
                spec.partner = ms.atom(spec.leaf);
            return impov_pipeline(f, op, spec, g);
        });
    }
    throw ValidationError("unknown step kind '" + kind + "'");
}

int cmd_run(const Globals& gl, const std::string& script_path)
{
    ProjectConfig cfg = config_of(gl);
    json script = read_json_file(script_path);
    Value input = script.contains("input") && script.at("input").is_string()
                      ? parse_value(script.at("input").get<std::string>(), script.value("input_kind", "auto"), cfg)
                      : parse_value(script.at("input").dump(), script.value("input_kind", "auto"), cfg);
    WorkspaceSum state = input.as_sum();
    json steps_out = json::array();
    std::ostringstream log;
    log << "input:\n" << sum_text(state, "  ");
    const json steps = script.value("steps", json::array());
    for (size_t i = 0; i < steps.size(); ++i) {
        const json& step = steps[i];
        log << "step " << i << ": " << step.dump() << "\n";
        WorkspaceSum before = state;
        try {
            state = run_step(step, state, cfg, log);
        } catch (const Error& e) {
            throw GeneratorError(i, e);
        } catch (const json::exception& e) {
            throw GeneratorError(i, SyntaxError(std::string("malformed step: ") + e.what()));
        }
        log << "  before:\n" << sum_text(before, "    ") << "  after:\n" << sum_text(state, "    ");
        steps_out.push_back({{"index", i}, {"step", step}, {"before", sum_to_json(before)},
                             {"after", sum_to_json(state)}});
    }
    log << "result:\n" << sum_text(state, "  ");
    if (gl.format == "json")
        std::cout << json{{"steps", steps_out}, {"result", sum_to_json(state)}}.dump(2) << "\n";
    else if (gl.format == "dot")
        std::cout << sum_to_dot(state, "result");
    else
        std::cout << log.str();
    return 0;
}

int cmd_verify(const Globals& gl, std::vector<std::string> suites, int max_leaves, bool mutant)
{
    if (suites.empty() || (suites.size() == 1 && suites[0] == "all"))
        suites = suite_names();
    VerifyOptions o;
    o.seed = gl.seed;
    o.budget = gl.budget;
    o.max_leaves = max_leaves;
    o.swap_quotient_modes = mutant;
    bool ok = true;
    json all = json::array();
    for (const auto& s : suites) {
        SuiteReport r = run_suite(s, o);
        ok = ok && r.ok();
        if (gl.format == "json")
            all.push_back(r.to_json());
        else
            std::cout << r.str() << std::flush;
    }
    if (gl.format == "json")
        std::cout << json{{"pass", ok}, {"suites", all}}.dump(2) << "\n";
    return ok ? 0 : 2;
}

int cmd_config_check(const Globals& gl)
{
    if (gl.config_path.empty())
        throw IOError("config check needs --config");
    ProjectConfig c = load_config(gl.config_path);
    if (gl.format == "json") {
        std::cout << config_to_json(c).dump(2) << "\n";
        return 0;
    }
    std::cout << "config " << gl.config_path << ": ok\n"
              << "  atoms: " << c.so_inventory.size() << "\n"
              << "  feature categories: " << c.mo_inventory.size() << "\n";
    if (c.gamma.is_permissive())
        std::cout << "  correspondence: every pair admitted\n";
    else
        std::cout << "  correspondence: " << c.gamma.pairs().size() << " pairs"
                  << (c.gamma.surjective() ? ", surjective" : "") << "\n";
    std::cout << "  fission partner candidates: " << c.fission_atom_candidates.size() << "\n";
    if (c.unmarked_feature)
        std::cout << "  unmarked feature: " << c.unmarked_feature->str() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"msx: Merge, morphology and Distributed Morphology operations on trees"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals gl;
    app.add_option("--config", gl.config_path, "project configuration (JSON)");
    app.add_option("--seed", gl.seed, "random seed for sampled checks");
    app.add_option("--budget", gl.budget, "number of random samples");
    app.add_option("--format", gl.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));

    std::string parse_in, parse_kind = "auto";
    auto* parse = app.add_subcommand("parse", "parse and validate a value, print its canonical form");
    parse->add_option("input", parse_in, "file, '-' for stdin, or an inline value")->required();
    parse->add_option("--kind", parse_kind, "so, mo, ext, ms, operad, forest, tree or auto")
        ->check(CLI::IsMember({"so", "mo", "ext", "ms", "operad", "forest", "tree", "auto"}));

    std::string script;
    auto* run = app.add_subcommand("run", "run an operation script");
    run->add_option("script", script, "JSON script")->required();

    std::vector<std::string> suites;
    int max_leaves = -1;
    bool mutant = false;
    auto* verify = app.add_subcommand("verify", "run law suites");
    verify->add_option("suites", suites, "hopf, comodule, operad, correspondence, fusion, fission, dm_derived or all");
    verify->add_option("--max-leaves", max_leaves, "exhaustive leaf bound");
    verify->add_flag("--mutant", mutant, "mutation smoke test: swap quotient modes in inner coproducts");

    std::string export_in, export_kind = "auto", export_out;
    auto* exp = app.add_subcommand("export", "write a value as text, JSON or DOT");
    exp->add_option("input", export_in, "file, '-' for stdin, or an inline value")->required();
    exp->add_option("--kind", export_kind, "value kind")
        ->check(CLI::IsMember({"so", "mo", "ext", "ms", "operad", "forest", "tree", "auto"}));
    exp->add_option("-o,--output", export_out, "output file (default stdout)");

    auto* config = app.add_subcommand("config", "configuration commands");
    config->require_subcommand(1);
    auto* check = config->add_subcommand("check", "validate the configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*parse) {
            ProjectConfig cfg = config_of(gl);
            std::cout << render(parse_value(input_text(parse_in), parse_kind, cfg), gl.format);
            return 0;
        }
        if (*run)
            return cmd_run(gl, script);
        if (*verify)
            return cmd_verify(gl, suites, max_leaves, mutant);
        if (*exp) {
            ProjectConfig cfg = config_of(gl);
            std::string out = render(parse_value(input_text(export_in), export_kind, cfg), gl.format);
            if (export_out.empty()) {
                std::cout << out;
            } else {
                std::ofstream f(export_out);
                if (!f || !(f << out))
                    throw IOError("cannot write " + export_out);
            }
            return 0;
        }
        if (*check)
            return cmd_config_check(gl);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
