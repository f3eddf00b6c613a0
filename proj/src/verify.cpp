#include "msx/verify.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace msx {

void LawResult::record(bool pass, const std::string& instance)
{
    ++checked;
    if (!pass) {
        if (failed == 0)
            counterexample = instance;
        ++failed;
    }
}

bool SuiteReport::ok() const
{
    for (const auto& l : laws)
        if (!l.ok())
            return false;
    return true;
}

std::string SuiteReport::str() const
{
    std::ostringstream o;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", seconds);
    o << "suite " << suite << " (seed " << seed << ", budget " << budget << "): "
      << (ok() ? "PASS" : "FAIL") << " in " << secs << " s\n";
    for (const auto& l : laws) {
        o << "  " << (l.ok() ? "pass" : "FAIL") << "  " << l.law << ": " << l.checked
          << " checked, " << l.failed << " failed";
        if (l.vacuous)
            o << ", " << l.vacuous << " vacuous";
        o << "\n";
        if (!l.ok())
            o << "        counterexample: " << l.counterexample << "\n";
    }
    return o.str();
}

json SuiteReport::to_json() const
{
    json ls = json::array();
    for (const auto& l : laws) {
        json j{{"law", l.law}, {"checked", l.checked}, {"failed", l.failed}, {"vacuous", l.vacuous},
               {"pass", l.ok()}};
        if (!l.ok())
            j["counterexample"] = l.counterexample;
        ls.push_back(j);
    }
    return {{"suite", suite}, {"seed", seed},      {"budget", budget},
            {"seconds", seconds}, {"pass", ok()}, {"laws", ls}};
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"hopf",   "comodule", "operad",    "correspondence",
                                                "fusion", "fission",  "dm_derived"};
    return names;
}

WorkspaceSum assemble_KT_by_tuples(const SyntacticObject& t, const Forest& ws, const GammaSM& gamma)
{
    std::map<std::string, Tree> terms;
    for (const auto& c : ws.comps())
        for (const auto& v : c.vertices())
            terms.emplace(c.at(v).enc(), c.at(v));
    std::vector<Tree> cand;
    for (auto& [k, v] : terms)
        cand.push_back(v);

    const auto leaves = t.tree().leaves();
    const int n = static_cast<int>(leaves.size());
    const int total = ws.num_leaves();
    WorkspaceSum out;
    std::vector<int> idx(n, 0);
    if (cand.empty())
        return out;
    for (;;) {
        bool ok = true;
        int used = 0;
        std::vector<Insertion> args;
        for (int k = 0; k < n && ok; ++k) {
            const Tree& s = cand[idx[k]];
            used += s.num_leaves();
            ok = used <= total &&
                 gamma.admits(s.root_bundle(), t.tree().at(leaves[k]).leaf_label().name);
            if (ok)
                args.emplace_back(ExtMorphObject(s));
        }
        if (ok)
            out.add(assemble_MT(AssemblyOp(t, args), ws, gamma));
        int k = 0;
        while (k < n && ++idx[k] == static_cast<int>(cand.size()))
            idx[k++] = 0;
        if (k == n)
            break;
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string> kAtoms{"a", "b"};
const std::vector<Feature> kFeatures{Feature{"f", Valuation::Unvalued},
                                     Feature{"g", Valuation::Unvalued}};

long pick(long v, long dflt)
{
    return v < 0 ? dflt : v;
}

// ---- hopf ------------------------------------------------------------------

void hopf_suite(SuiteReport& rep, const VerifyOptions& opt)
{
    const int n = static_cast<int>(pick(opt.max_leaves, 6));
    rep.budget = n;
    auto run = [&](const std::string& tag, const std::vector<Forest>& fs, QuotientMode mode) {
        const QuotientMode other = mode == QuotientMode::D ? QuotientMode::Rho : QuotientMode::D;
        int calls = 0;
        ForestCoproduct d = [&](const Forest& f) {
            QuotientMode m = opt.swap_quotient_modes && calls++ > 0 ? other : mode;
            return coproduct(f, CoproductOptions{m, CopyCancellation::Off});
        };
        LawResult ca{tag + " coassociativity"}, mu{tag + " multiplicativity"},
            cl{tag + " left counit"}, cr{tag + " right counit"};
        for (const auto& f : fs) {
            calls = 0;
            HopfReport h = check_hopf(f, d);
            ca.record(h.coassociative, f.key());
            mu.record(h.multiplicative, f.key());
            cl.record(h.counit_left, f.key());
            cr.record(h.counit_right, f.key());
        }
        rep.laws.insert(rep.laws.end(), {ca, mu, cl, cr});
    };
    run("syntactic", forests(1, n, [](int k) { return syntactic_trees(k, kAtoms); }), QuotientMode::D);
    run("morphological", forests(1, n, [](int k) { return morph_trees(k, kFeatures); }), QuotientMode::Rho);
}

// ---- comodule --------------------------------------------------------------

std::vector<std::string> leaf_multiset(const Tree& t)
{
    std::vector<std::string> v;
    for (const auto& l : t.leaves())
        if (t.at(l).leaf_kind() != LeafKind::Stub)
            v.push_back(t.at(l).enc());
    std::sort(v.begin(), v.end());
    return v;
}

void comodule_suite(SuiteReport& rep, const VerifyOptions& opt)
{
    const int n = static_cast<int>(pick(opt.max_leaves, 5));
    rep.budget = n;
    LawResult rc{"right comodule coassociativity"}, cu{"counit"}, ll{"left channel laws"},
        bi{"bicomodule compatibility"}, lm{"left channels of magma inputs are full binary"},
        cl{"right channels pass validation"}, bm{"build_morph output is valid without unary vertices"},
        su{"simplify_unary keeps root bundle and leaves"};
    for (int k = 1; k <= n; ++k)
        for (const auto& t : morph_trees(k, kFeatures))
            bm.record(validate_ext(t).ok() && !t.has_unary(), t.enc());
    for (const auto& f : forests(1, n, [](int k) { return morph_trees(k, kFeatures); })) {
        ComoduleReport r = comodule_report(f);
        rc.record(r.right_coassociative, f.key());
        cu.record(r.counit, f.key());
        ll.record(r.left_laws, f.key());
        bi.record(r.bicomodule, f.key());
        lm.record(r.left_channel_magma, f.key());
        for (const auto& [k, cv] : coproduct_rho(f)) {
            for (const auto& c : cv.second.right().comps()) {
                cl.record(validate_ext(c).ok(), f.key() + " -> " + c.enc());
                Tree s = simplify_unary(c);
                su.record(s.root_bundle() == c.root_bundle() && leaf_multiset(s) == leaf_multiset(c),
                          c.enc());
            }
        }
    }
    rep.laws.insert(rep.laws.end(), {rc, cu, ll, bi, lm, cl, bm, su});
}

// ---- operad ----------------------------------------------------------------

std::string ops_str(const std::vector<OperadElement>& v)
{
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + v[i].tree().enc();
    return s + "]";
}

OperadElement fold_inserts(const OperadElement& x, const std::vector<OperadElement>& ys)
{
    OperadElement r = x;
    for (int i = static_cast<int>(ys.size()); i >= 1; --i)
        r = operad_insert(r, i, ys[i - 1]);
    return r;
}

template <class T>
std::vector<T> slice(const std::vector<T>& v, size_t from, size_t n)
{
    return std::vector<T>(v.begin() + from, v.begin() + from + n);
}

MorphoSynTree random_ms(RandomTrees& r)
{
    Tree sk = r.syntactic(r.uniform(1, 3), kAtoms);
    std::vector<Insertion> ins;
    for (int k = 0; k < sk.num_leaves(); ++k) {
        if (r.chance(0.6)) {
            std::vector<Feature> fs{kFeatures[r.uniform(0, 1)]};
            if (r.chance(0.5))
                fs.push_back(kFeatures[r.uniform(0, 1)]);
            ins.emplace_back(r.morph(fs));
        } else {
            ins.emplace_back(std::nullopt);
        }
    }
    return MorphoSynTree(sk, ins);
}

struct OperadLaws {
    LawResult unit{"unit"}, seq{"sequential associativity"}, par{"exchange law"},
        circs{"composition by nested insertions"}, assoc{"composition associativity"},
        alg_so{"algebra law on syntactic objects"}, alg_ms{"algebra law on morphosyntactic trees"},
        grade{"leaf-count grading"}, forget{"forgetting morphology is a morphism"};
};

void check_algebra(OperadLaws& L, RandomTrees& r, const OperadElement& x,
                   const std::vector<OperadElement>& ys)
{
    const OperadElement c = operad_compose(x, ys);
    const std::string inst = x.tree().enc() + " ∘ " + ops_str(ys);
    std::vector<SyntacticObject> as;
    std::vector<MorphoSynTree> ms;
    int leaves_so = 0, leaves_ms = 0;
    for (int k = 0; k < c.arity(); ++k) {
        as.emplace_back(r.syntactic(r.uniform(1, 2), kAtoms));
        ms.push_back(random_ms(r));
        leaves_so += as.back().num_leaves();
        leaves_ms += ms.back().num_syn_leaves();
    }
    std::vector<SyntacticObject> inner_so;
    std::vector<MorphoSynTree> inner_ms;
    size_t off = 0;
    for (const auto& y : ys) {
        inner_so.push_back(act_SO(y, slice(as, off, y.arity())));
        inner_ms.push_back(act_MS(y, slice(ms, off, y.arity())));
        off += y.arity();
    }
    SyntacticObject lso = act_SO(c, as);
    MorphoSynTree lms = act_MS(c, ms);
    L.alg_so.record(lso == act_SO(x, inner_so), inst);
    L.alg_ms.record(lms == act_MS(x, inner_ms), inst);
    L.grade.record(lso.num_leaves() == leaves_so && lms.num_syn_leaves() == leaves_ms, inst);
    L.forget.record(check_forget_square(c, ms), inst);
}

void operad_suite(SuiteReport& rep, const VerifyOptions& opt)
{
    const int n = static_cast<int>(pick(opt.max_leaves, 5));
    const long budget = pick(opt.budget, 1000);
    rep.budget = budget;
    RandomTrees r(opt.seed);
    std::vector<std::vector<OperadElement>> els(n + 1);
    for (int k = 1; k <= n; ++k)
        els[k] = operad_elements(k, true);
    const OperadElement one = OperadElement::unit();

    OperadLaws E;
    for (int a = 1; a <= n; ++a)
        for (const auto& x : els[a])
            for (int i = 1; i <= a; ++i)
                E.unit.record(operad_insert(x, i, one) == x && operad_insert(one, 1, x) == x,
                              x.tree().enc());

    for (int a = 1; a <= n; ++a)
        for (int b = 1; a + b - 1 <= n; ++b)
            for (int c = 1; a + b + c - 2 <= n; ++c)
                for (const auto& x : els[a])
                    for (const auto& y : els[b])
                        for (const auto& z : els[c]) {
                            std::string inst = x.tree().enc() + ", " + y.tree().enc() + ", " +
                                               z.tree().enc();
                            for (int i = 1; i <= a; ++i) {
                                for (int j = 1; j <= b; ++j)
                                    E.seq.record(operad_insert(operad_insert(x, i, y), i + j - 1, z) ==
                                                     operad_insert(x, i, operad_insert(y, j, z)),
                                                 inst);
                                for (int j = i + 1; j <= a; ++j)
                                    E.par.record(operad_insert(operad_insert(x, i, y), j + b - 1, z) ==
                                                     operad_insert(operad_insert(x, j, z), i, y),
                                                 inst);
                            }
                        }

    // Tuples of elements with the given arities.
    std::function<void(const std::vector<int>&, size_t, std::vector<OperadElement>&,
                       const std::function<void(const std::vector<OperadElement>&)>&)>
        tuples = [&](const std::vector<int>& ar, size_t k, std::vector<OperadElement>& cur,
                     const std::function<void(const std::vector<OperadElement>&)>& f) {
            if (k == ar.size()) {
                f(cur);
                return;
            }
            for (const auto& e : els[ar[k]]) {
                cur.push_back(e);
                tuples(ar, k + 1, cur, f);
                cur.pop_back();
            }
        };
    // Arity vectors of length len with entries >= 1 and sum <= cap.
    std::function<void(int, int, std::vector<int>&, const std::function<void(const std::vector<int>&)>&)>
        arities = [&](int len, int cap, std::vector<int>& cur,
                      const std::function<void(const std::vector<int>&)>& f) {
            if (static_cast<int>(cur.size()) == len) {
                f(cur);
                return;
            }
            for (int k = 1; k <= cap - (len - static_cast<int>(cur.size()) - 1); ++k) {
                cur.push_back(k);
                arities(len, cap - k, cur, f);
                cur.pop_back();
            }
        };

    for (int a = 1; a <= std::min(n, 3); ++a)
        for (const auto& x : els[a]) {
            std::vector<int> ar;
            arities(a, n, ar, [&](const std::vector<int>& ys_ar) {
                std::vector<OperadElement> ys;
                tuples(ys_ar, 0, ys, [&](const std::vector<OperadElement>& yv) {
                    E.circs.record(operad_compose(x, yv) == fold_inserts(x, yv),
                                   x.tree().enc() + " ∘ " + ops_str(yv));
                    check_algebra(E, r, x, yv);
                    const OperadElement c = operad_compose(x, yv);
                    if (c.arity() > 4)
                        return;
                    std::vector<int> zs_ar;
                    arities(c.arity(), n, zs_ar, [&](const std::vector<int>& za) {
                        if (*std::max_element(za.begin(), za.end()) > 2)
                            return;
                        std::vector<OperadElement> zs;
                        tuples(za, 0, zs, [&](const std::vector<OperadElement>& zv) {
                            std::vector<OperadElement> inner;
                            size_t off = 0;
                            for (const auto& y : yv) {
                                inner.push_back(operad_compose(y, slice(zv, off, y.arity())));
                                off += y.arity();
                            }
                            E.assoc.record(operad_compose(c, zv) == operad_compose(x, inner),
                                           x.tree().enc() + " ∘ " + ops_str(yv) + " ∘ " + ops_str(zv));
                        });
                    });
                });
            });
        }

    OperadLaws R;
    for (long s = 0; s < budget; ++s) {
        OperadElement x = r.operad(r.uniform(2, 5));
        OperadElement y = r.operad(r.uniform(1, 4));
        OperadElement z = r.operad(r.uniform(1, 4));
        const std::string inst = x.tree().enc() + ", " + y.tree().enc() + ", " + z.tree().enc();
        int i = r.uniform(1, x.arity());
        int j = r.uniform(1, y.arity());
        R.unit.record(operad_insert(x, i, OperadElement::unit()) == x, inst);
        R.seq.record(operad_insert(operad_insert(x, i, y), i + j - 1, z) ==
                         operad_insert(x, i, operad_insert(y, j, z)),
                     inst);
        int k = r.uniform(1, x.arity());
        if (k != i) {
            int lo = std::min(i, k), hi = std::max(i, k);
            R.par.record(operad_insert(operad_insert(x, lo, y), hi + y.arity() - 1, z) ==
                             operad_insert(operad_insert(x, hi, z), lo, y),
                         inst);
        }
        std::vector<OperadElement> ys, zs;
        for (int q = 0; q < x.arity(); ++q)
            ys.push_back(r.operad(r.uniform(1, 3)));
        R.circs.record(operad_compose(x, ys) == fold_inserts(x, ys), x.tree().enc() + " ∘ " + ops_str(ys));
        const OperadElement c = operad_compose(x, ys);
        for (int q = 0; q < c.arity(); ++q)
            zs.push_back(r.operad(r.uniform(1, 2)));
        std::vector<OperadElement> inner;
        size_t off = 0;
        for (const auto& yy : ys) {
            inner.push_back(operad_compose(yy, slice(zs, off, yy.arity())));
            off += yy.arity();
        }
        R.assoc.record(operad_compose(c, zs) == operad_compose(x, inner),
                       x.tree().enc() + " ∘ " + ops_str(ys) + " ∘ " + ops_str(zs));
        check_algebra(R, r, x, ys);
    }

    auto add = [&](OperadLaws& L, const std::string& tag) {
        for (LawResult* l : {&L.unit, &L.seq, &L.par, &L.circs, &L.assoc, &L.alg_so, &L.alg_ms,
                             &L.grade, &L.forget}) {
            l->law += tag;
            rep.laws.push_back(*l);
        }
    };
    add(E, " [exhaustive]");
    add(R, " [random]");
}

// ---- correspondence ----------------------------------------------------------

bool five_leaf_two_ways()
{
    auto S = [](const char* text) { return Insertion(build_morph(parse_tree(text, LeafMode::Morph))); };
    std::map<std::string, Insertion> at{{"α1", S("(φ11 (φ12 φ13))")},
                                        {"α2", S("(φ21 φ22)")},
                                        {"α3", S("(φ31 (φ32 (φ33 φ34)))")},
                                        {"α4", S("((φ41 φ42) (φ43 φ44))")},
                                        {"α5", S("(φ51 ((φ52 φ53) φ54))")}};
    GammaSM g;
    for (auto& [a, s] : at)
        g.add(s->root_bundle(), a);
    std::vector<SyntacticObject> parts{SyntacticObject::parse("(α1 α2)"), SyntacticObject::parse("α3"),
                                       SyntacticObject::parse("(α4 α5)")};
    std::vector<std::vector<Insertion>> args;
    for (const auto& p : parts) {
        std::vector<Insertion> v;
        for (const auto& l : p.tree().leaves())
            v.push_back(at.at(p.tree().at(l).leaf_label().name));
        args.push_back(v);
    }
    OperadElement t(Tree::binary(Tree::hole(1), Tree::binary(Tree::hole(2), Tree::hole(3))));
    return verify_correspondence(t, parts, args, g);
}

void correspondence_suite(SuiteReport& rep, const VerifyOptions& opt)
{
    const long budget = pick(opt.budget, 500);
    rep.budget = budget;
    RandomTrees r(opt.seed);
    LawResult ex{"worked example with three parts"}, rnd{"compose-then-insert equals insert-then-act"};
    try {
        ex.record(five_leaf_two_ways(), "five-leaf sample");
    } catch (const Error& e) {
        ex.record(false, std::string("five-leaf sample: ") + e.what());
    }
    int fresh = 0;
    const std::vector<std::string> atoms{"a", "b", "c"};
    for (long s = 0; s < budget; ++s) {
        OperadElement t = r.operad(r.uniform(1, 4));
        std::vector<SyntacticObject> parts;
        std::vector<std::vector<Insertion>> args;
        GammaSM g;
        std::string inst = t.tree().enc() + " ∘ [";
        for (int i = 0; i < t.arity(); ++i) {
            parts.emplace_back(r.syntactic(r.uniform(1, 3), atoms));
            std::vector<Insertion> v;
            for (const auto& l : parts.back().tree().leaves()) {
                if (r.chance(0.6)) {
                    ExtMorphObject m = r.morph(fresh_features(fresh, r.uniform(1, 3)));
                    g.add(m.root_bundle(), parts.back().tree().at(l).leaf_label().name);
                    v.emplace_back(m);
                } else {
                    v.emplace_back(std::nullopt);
                }
            }
            args.push_back(v);
            inst += (i ? ", " : "") + MorphoSynTree(parts.back().tree(), v).key();
        }
        inst += "]";
        try {
            rnd.record(verify_correspondence(t, parts, args, g), inst);
        } catch (const Error& e) {
            rnd.record(false, inst + ": " + e.what());
        }
    }
    rep.laws.insert(rep.laws.end(), {ex, rnd});
}

// ---- morphosyntactic diagrams ------------------------------------------------

std::vector<Insertion> random_insertions(RandomTrees& r, int& fresh, const Tree& sk,
                                         const std::set<int>& forced)
{
    std::vector<Insertion> ins;
    for (int k = 0; k < sk.num_leaves(); ++k) {
        if (forced.count(k) || r.chance(0.6))
            ins.emplace_back(r.morph(fresh_features(fresh, r.uniform(1, 3))));
        else
            ins.emplace_back(std::nullopt);
    }
    return ins;
}

Forest workspace_for(RandomTrees& r, int& fresh, const std::vector<Insertion>& ins)
{
    std::vector<Tree> comps;
    for (const auto& a : ins)
        if (a)
            comps.push_back(a->tree());
    for (int e = r.uniform(0, 2); e > 0; --e)
        comps.push_back(r.morph(fresh_features(fresh, r.uniform(1, 3))).tree());
    return Forest(std::move(comps));
}

GammaSM exact_gamma(const MorphoSynTree& ms)
{
    GammaSM g;
    for (int k = 0; k < ms.num_syn_leaves(); ++k)
        if (ms.insertion(k))
            g.add(ms.insertion(k)->root_bundle(), ms.atom(k));
    return g;
}

} // namespace

FusionInstance random_fusion_instance(RandomTrees& r, int& fresh)
{
    Tree sk = r.with_random_heads(r.syntactic_distinct(r.uniform(2, 5), "x"));
    std::vector<VertexId> cs;
    for (const auto& v : sk.vertices())
        if (sk.at(v).is_binary() && sk.at(v).kid(0).is_leaf() && sk.at(v).kid(1).is_leaf())
            cs.push_back(v);
    VertexId site = cs[r.uniform(0, static_cast<int>(cs.size()) - 1)];
    auto leaves = sk.leaves();
    std::set<int> forced;
    for (int k = 0; k < static_cast<int>(leaves.size()); ++k)
        if (is_ancestor_or_self(site, leaves[k]))
            forced.insert(k);
    auto ins = random_insertions(r, fresh, sk, forced);
    MorphoSynTree ms(sk, ins);
    GammaSM g = exact_gamma(ms);
    if (r.chance(0.9)) {
        const Tree& c = sk.at(site);
        Bundle b = bundle_union(ins[*forced.begin()]->root_bundle(), ins[*forced.rbegin()]->root_bundle());
        g.add(b, c.kid(c.head()).leaf_label().name);
    }
    return {AssemblyOp(ms), site, workspace_for(r, fresh, ins), g};
}

FissionInstance random_fission_instance(RandomTrees& r, int& fresh, bool require_gamma)
{
    Tree sk = r.with_random_heads(r.syntactic_distinct(r.uniform(1, 4), "x"));
    int leaf = r.uniform(0, sk.num_leaves() - 1);
    auto ins = random_insertions(r, fresh, sk, {});
    ins[leaf] = r.morph(fresh_features(fresh, r.uniform(2, 4)));
    MorphoSynTree ms(sk, ins);

    const Bundle bv = ins[leaf]->root_bundle();
    std::vector<Feature> fs(bv.begin(), bv.end());
    std::shuffle(fs.begin(), fs.end(), r.rng());
    int a = r.uniform(0, static_cast<int>(fs.size()) - 2);
    int b1 = r.uniform(1, static_cast<int>(fs.size()) - a - 1);
    FissionSpec spec;
    spec.leaf = leaf;
    spec.partner = "p";
    for (int k = 0; k < static_cast<int>(fs.size()); ++k)
        (k < a ? spec.shared : k < a + b1 ? spec.part1 : spec.part2).insert(fs[k]);

    GammaSM g = exact_gamma(ms);
    const Bundle x = bundle_union(spec.part1, spec.shared);
    const Bundle y = bundle_union(spec.part2, spec.shared);
    const std::string al = ms.atom(leaf);
    int choice = r.uniform(0, 9);
    if (require_gamma && choice == 9)
        choice = 2;
    if (choice <= 3 || choice == 8) {
        g.add(x, al);
        g.add(y, spec.partner);
    }
    if ((choice >= 4 && choice <= 7) || choice == 8) {
        g.add(y, al);
        g.add(x, spec.partner);
    }
    return {AssemblyOp(ms), spec, workspace_for(r, fresh, ins), g};
}

namespace {

void fusion_suite(SuiteReport& rep, const VerifyOptions& opt)
{
    const long budget = pick(opt.budget, 500);
    rep.budget = budget;
    RandomTrees r(opt.seed);
    int fresh = 0;
    LawResult d{"assemble then fuse equals merge then assemble"},
        motion{"fusion removes one syntactic leaf and deepens the morphology"},
        vac{"vacuous instances at most 20%"};
    for (long s = 0; s < budget; ++s) {
        FusionInstance in = random_fusion_instance(r, fresh);
        std::string inst = in.op.str() + " at " + vertex_str(in.site) + " in " + in.ws.key();
        try {
            DiagramResult res = verify_fusion_diagram(in.op, in.site, in.ws, in.gamma);
            d.record(res.commutes, inst);
            d.vacuous += res.vacuous;
            if (!res.vacuous) {
                MorphoSynTree f = fusion_at(in.op.ms(), in.site, in.gamma);
                VertexId l0 = in.site;
                l0.push_back(0);
                auto leaves = in.op.skeleton().leaves();
                int k0 = static_cast<int>(std::find(leaves.begin(), leaves.end(), l0) - leaves.begin());
                int depth = std::max(in.op.args()[k0]->tree().depth(), in.op.args()[k0 + 1]->tree().depth());
                bool ok = f.num_syn_leaves() == in.op.arity() - 1;
                int deepest = 0;
                for (const auto& a : f.insertions())
                    if (a)
                        deepest = std::max(deepest, a->tree().depth());
                motion.record(ok && deepest >= depth + 1, inst);
            }
        } catch (const Error& e) {
            d.record(false, inst + ": " + e.what());
        }
    }
    vac.record(d.vacuous * 5 <= d.checked, std::to_string(d.vacuous) + " of " + std::to_string(d.checked));
    vac.vacuous = d.vacuous;
    rep.laws.insert(rep.laws.end(), {d, motion, vac});
}

void fission_suite(SuiteReport& rep, const VerifyOptions& opt)
{
    const long budget = pick(opt.budget, 500);
    rep.budget = budget;
    RandomTrees r(opt.seed);
    int fresh = 0;
    LawResult d{"assemble then fission equals cut then assemble"},
        motion{"fission adds one syntactic leaf"}, vac{"vacuous instances at most 20%"};
    for (long s = 0; s < budget; ++s) {
        FissionInstance in = random_fission_instance(r, fresh, false);
        std::string inst = in.op.str() + " leaf " + std::to_string(in.spec.leaf) + " A=" +
                           bundle_str(in.spec.shared) + " B1=" + bundle_str(in.spec.part1) +
                           " B2=" + bundle_str(in.spec.part2) + " in " + in.ws.key();
        try {
            DiagramResult res = verify_fission_diagram(in.op, in.spec, in.ws, in.gamma);
            d.record(res.commutes, inst);
            d.vacuous += res.vacuous;
            if (!res.vacuous)
                for (const auto& [k, cv] : fission(in.op.ms(), in.spec, in.gamma))
                    motion.record(MorphoSynTree::from_tree(cv.second.forest.comps()[0]).num_syn_leaves() ==
                                      in.op.arity() + 1,
                                  inst);
        } catch (const Error& e) {
            d.record(false, inst + ": " + e.what());
        }
    }
    vac.record(d.vacuous * 5 <= d.checked, std::to_string(d.vacuous) + " of " + std::to_string(d.checked));
    vac.vacuous = d.vacuous;
    rep.laws.insert(rep.laws.end(), {d, motion, vac});
}

// The unique component of a pipeline output that is a morphosyntactic tree.
std::optional<MorphoSynTree> ms_component(const WorkspaceSum& s)
{
    if (s.size() != 1 || s.begin()->second.first != Coef(1))
        return std::nullopt;
    std::optional<MorphoSynTree> out;
    for (const auto& c : s.begin()->second.second.forest.comps()) {
        try {
            MorphoSynTree m = MorphoSynTree::from_tree(c);
            if (out)
                return std::nullopt;
            out = m;
        } catch (const ValidationError&) {
        }
    }
    return out;
}

bool reassembles(const MorphoSynTree& m, const GammaSM& g)
{
    try {
        return gamma_SO_MO(SyntacticObject(m.skeleton()), m.insertions(), g) == m;
    } catch (const Error&) {
        return false;
    }
}

void dm_suite(SuiteReport& rep, const VerifyOptions& opt)
{
    const long budget = pick(opt.budget, 200);
    const int n = static_cast<int>(pick(opt.max_leaves, 5));
    rep.budget = budget;
    RandomTrees r(opt.seed);
    int fresh = 0;
    LawResult ob{"obliteration pipeline equals direct impoverishment"},
        im{"impoverishment pipeline equals direct impoverishment"},
        pres{"obliteration keeps the skeleton and the other insertions"},
        split{"split trees are valid with the target root bundle"},
        closure{"outputs reassemble through the insertion map"},
        kt{"assemble_KT equals the sum of assemble_MT"}, ident{"empty generator sequence is the identity"};

    for (long s = 0; s < budget; ++s) {
        FissionInstance in = random_fission_instance(r, fresh, true);
        const MorphoSynTree& ms = in.op.ms();
        const int l = in.spec.leaf;
        const ExtMorphObject& S = *ms.insertion(l);
        const Bundle removed = in.spec.part1;
        const Bundle kept = bundle_union(in.spec.part2, in.spec.shared);
        GammaSM g = in.gamma;
        g.add(kept, ms.atom(l));
        std::string inst = in.op.str() + " leaf " + std::to_string(l) + " A=" +
                           bundle_str(in.spec.shared) + " B1=" + bundle_str(in.spec.part1) +
                           " B2=" + bundle_str(in.spec.part2) + " in " + in.ws.key();
        try {
            auto direct = impoverish_subset(ms, l, removed, g);
            auto piped = ms_component(oblit_pipeline(in.ws, in.op, l, removed, kept, g));
            ob.record(piped && *piped == direct, inst);
            closure.record(reassembles(direct, g), inst);
        } catch (const Error& e) {
            ob.record(false, inst + ": " + e.what());
        }
        try {
            auto direct = impoverish_trace(ms, in.spec, g);
            auto piped = ms_component(impov_pipeline(in.ws, in.op, in.spec, g));
            im.record(piped && *piped == direct, inst);
            closure.record(reassembles(direct, g), inst);
        } catch (const Error& e) {
            im.record(false, inst + ": " + e.what());
        }
        MorphoSynTree o = obliterate(ms, l);
        bool same = o.skeleton() == ms.skeleton() && !o.insertion(l);
        for (int k = 0; k < ms.num_syn_leaves(); ++k)
            if (k != l)
                same = same && o.insertion(k).has_value() == ms.insertion(k).has_value() &&
                       (!o.insertion(k) || o.insertion(k)->tree() == ms.insertion(k)->tree());
        pres.record(same, inst);
        for (const Bundle& target : {bundle_union(in.spec.part1, in.spec.shared), kept}) {
            ExtMorphObject sp = fission_split(S, target);
            split.record(validate_ext(sp.tree()).ok() && sp.root_bundle() == target,
                         S.tree().enc() + " to " + bundle_str(target));
        }
        try {
            for (const auto& [k, cv] : fission(ms, in.spec, in.gamma))
                closure.record(reassembles(MorphoSynTree::from_tree(cv.second.forest.comps()[0]), in.gamma),
                               inst);
        } catch (const GammaError&) {
        }
        ident.record(semigroup_apply({}, in.op, in.gamma) == [&] {
            OpSum one;
            one.add(in.op);
            return one;
        }(), inst);
    }

    GammaSM g;
    const Bundle f{kFeatures[0]}, gg{kFeatures[1]}, fg{kFeatures[0], kFeatures[1]};
    g.add(f, "a");
    g.add(fg, "a");
    g.add(gg, "b");
    g.add(fg, "b");
    std::vector<SyntacticObject> skeletons;
    for (int k = 1; k <= 3; ++k)
        for (const auto& t : syntactic_trees(k, kAtoms))
            skeletons.emplace_back(t);
    for (const auto& ws : forests(1, n, [](int k) { return morph_trees(k, kFeatures); }))
        for (const auto& t : skeletons) {
            if (t.num_leaves() == 3 && ws.num_leaves() > 4)
                continue;
            kt.record(assemble_KT(t, ws, g) == assemble_KT_by_tuples(t, ws, g),
                      t.key() + " on " + ws.key());
        }
    rep.laws.insert(rep.laws.end(), {ob, im, pres, split, closure, kt, ident});
}

} // namespace

SuiteReport run_suite(const std::string& name, const VerifyOptions& opt)
{
    SuiteReport rep;
    rep.suite = name;
    rep.seed = opt.seed;
    auto t0 = Clock::now();
    if (name == "hopf")
        hopf_suite(rep, opt);
    else if (name == "comodule")
        comodule_suite(rep, opt);
    else if (name == "operad")
        operad_suite(rep, opt);
    else if (name == "correspondence")
        correspondence_suite(rep, opt);
    else if (name == "fusion")
        fusion_suite(rep, opt);
    else if (name == "fission")
        fission_suite(rep, opt);
    else if (name == "dm_derived")
        dm_suite(rep, opt);
    else
        throw std::invalid_argument("unknown suite '" + name + "'");
    rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
}

} // namespace msx
