// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <type_traits>

#include "goldens.hpp"
#include "msx/verify.hpp"
#include "oracles.hpp"

using namespace msx;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Line {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& why)
    {
        if (!ok) {
            pass = false;
            detail << " [" << why << "]";
        }
    }
};

const LawResult* find_law(const SuiteReport& r, const std::string& name)
{
    for (const auto& l : r.laws)
        if (l.law == name)
            return &l;
    return nullptr;
}

void suite_summary(Line& line, const SuiteReport& r)
{
    long checked = 0, failed = 0;
    for (const auto& l : r.laws) {
        checked += l.checked;
        failed += l.failed;
        if (!l.ok())
            line.require(false, r.suite + ": " + l.law + " failed on " + l.counterexample);
    }
    line.detail << r.suite << " " << checked << " checks, " << failed << " failures, " << r.seconds << " s; ";
}

bool golden_ok(const std::vector<golden::Check>& gs, const std::string& name)
{
    for (const auto& g : gs)
        if (g.name == name)
            return g.ok;
    return false;
}

template <class Arg>
concept SyntacticAction = requires(OperadElement t, std::vector<Arg> xs) { act_SO(t, xs); };
template <class Arg>
concept MorphoSyntacticAction = requires(OperadElement t, std::vector<Arg> xs) { act_MS(t, xs); };

} // namespace

int main()
{
    std::vector<std::pair<int, Line>> lines;
    auto report = [&](int n, Line& l) {
        std::cout << "criterion " << n << ": " << (l.pass ? "PASS" : "FAIL") << "  " << l.detail.str()
                  << std::endl;
        lines.emplace_back(n, std::move(l));
    };

    // 1: worked examples, under one second
    std::vector<golden::Check> goldens;
    {
        Line l;
        auto t0 = Clock::now();
        goldens = golden::run();
        double s = since(t0);
        long ok = 0;
        for (const auto& g : goldens) {
            ok += g.ok;
            l.require(g.ok, g.name + ": " + g.detail);
        }
        l.detail << ok << "/" << goldens.size() << " examples, " << s << " s";
        l.require(s < 1.0, "runtime over 1 s");
        report(1, l);
    }

    // 2: Hopf laws, exhaustive up to six leaves, under 60 s
    {
        Line l;
        auto r = run_suite("hopf");
        suite_summary(l, r);
        l.require(r.budget >= 6, "leaf bound below 6");
        l.require(r.seconds < 60.0, "runtime over 60 s");
        report(2, l);
    }

    // 3: comodule laws up to five leaves
    {
        Line l;
        auto r = run_suite("comodule");
        suite_summary(l, r);
        l.require(r.budget >= 5, "leaf bound below 5");
        report(3, l);
    }

    // 4: operad laws, exhaustive up to five leaves plus random instances
    {
        Line l;
        auto r = run_suite("operad");
        suite_summary(l, r);
        l.require(r.budget >= 1000, "fewer than 1000 random instances");
        report(4, l);
    }

    // 5: correspondence diagram
    {
        Line l;
        auto r = run_suite("correspondence");
        suite_summary(l, r);
        const LawResult* rnd = find_law(r, "compose-then-insert equals insert-then-act");
        l.require(rnd && rnd->checked >= 500, "fewer than 500 instances");
        l.require(golden_ok(goldens, "compose then insert") && golden_ok(goldens, "insert then compose"),
                  "worked two-path example");
        report(5, l);
    }

    // 6: fusion and fission diagrams
    {
        Line l;
        for (const char* name : {"fusion", "fission"}) {
            auto r = run_suite(name);
            suite_summary(l, r);
            const LawResult* d = nullptr;
            for (const auto& law : r.laws)
                if (law.law.find("then assemble") != std::string::npos)
                    d = &law;
            l.require(d != nullptr, std::string(name) + ": no diagram law");
            if (d) {
                l.detail << name << " vacuous " << d->vacuous << "/" << d->checked << "; ";
                l.require(d->checked >= 500, std::string(name) + ": fewer than 500 instances");
                l.require(d->vacuous * 5 <= d->checked, std::string(name) + ": over 20% vacuous");
            }
        }
        report(6, l);
    }

    // 7 and 8 share the derived-operations suite
    auto dm = run_suite("dm_derived");
    {
        Line l;
        suite_summary(l, dm);
        const LawResult* ob = find_law(dm, "obliteration pipeline equals direct impoverishment");
        const LawResult* im = find_law(dm, "impoverishment pipeline equals direct impoverishment");
        l.require(ob && ob->checked >= 200, "fewer than 200 obliteration pipelines");
        l.require(im && im->checked >= 200, "fewer than 200 impoverishment pipelines");
        for (const char* g : {"obliteration pipeline", "obliteration without fission",
                              "impoverishment through fission", "impoverishment direct"})
            l.require(golden_ok(goldens, g), std::string("example: ") + g);
        report(7, l);
    }
    {
        Line l;
        const LawResult* kt = find_law(dm, "assemble_KT equals the sum of assemble_MT");
        l.require(kt != nullptr, "no assemble_KT law");
        if (kt) {
            l.detail << kt->checked << " workspaces, " << kt->failed << " failures";
            l.require(kt->ok(), kt->counterexample);
            l.require(kt->checked > 0, "no workspaces checked");
        }
        l.require(dm.budget > 0, "empty run");
        report(8, l);
    }

    // 9: no operad action on morphological objects
    {
        static_assert(SyntacticAction<SyntacticObject>);
        static_assert(MorphoSyntacticAction<MorphoSynTree>);
        static_assert(!SyntacticAction<ExtMorphObject>);
        static_assert(!MorphoSyntacticAction<ExtMorphObject>);
        static_assert(!std::is_constructible_v<OperadElement, ExtMorphObject>);
        Line l;
        bool rejected = false;
        try {
            OperadElement(parse_tree("{α,β| α β}", LeafMode::Morph));
        } catch (const Error&) {
            rejected = true;
        }
        l.require(rejected, "operad element built from a morphological tree");
        bool grafted_invalid = false;
        try {
            ExtMorphObject(graft(Forest{ExtMorphObject::parse("{α,β| α β}").tree(),
                                        ExtMorphObject::parse("{γ,δ| γ δ}").tree()}));
        } catch (const ValidationError&) {
            grafted_invalid = true;
        }
        l.require(grafted_invalid, "grafted morphological trees accepted as an object");
        l.detail << "action entry points reject morphological arguments at compile time";
        report(9, l);
    }

    // 10: merge engine against the brute-force successor sets
    {
        Line l;
        auto t0 = Clock::now();
        auto r = oracle::check_merge_engine(3, 3);
        l.detail << r.workspaces << " workspaces, " << r.successors << " successors, " << r.failures
                 << " failures, " << since(t0) << " s";
        l.require(r.failures == 0, r.first_failure);
        report(10, l);
    }

    bool all = true;
    for (const auto& [n, l] : lines)
        all = all && l.pass;
    return all ? 0 : 1;
}
