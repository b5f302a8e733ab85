#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cuntz/approx.hpp"
#include "cuntz/elliott.hpp"
#include "cuntz/goodearl.hpp"
#include "cuntz/wmodel.hpp"
#include "document.hpp"
#include "suites.hpp"

namespace {

using namespace cuntz;
using doc::json;

struct options {
    std::uint64_t seed = 20240917;
    int bound = 6;
    int stages = 5;
    std::string out;
    std::string format = "json";
};

/// A report plus an optional table; the table is what --format table prints.
struct result {
    json report;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    json document; // emitted to --out when present
};

std::string join(const std::vector<std::string>& xs, char sep)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? std::string(1, sep) : "") + xs[i];
    return s;
}

std::string scalar_text(const json& v)
{
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void emit(const result& r, const options& opt)
{
    std::ostringstream text;
    if (opt.format == "table") {
        if (!r.header.empty()) {
            text << join(r.header, '\t') << '\n';
            for (const auto& row : r.rows) text << join(row, '\t') << '\n';
        } else {
            text << "key\tvalue\n";
            for (const auto& [k, v] : r.report.items()) text << k << '\t' << scalar_text(v) << '\n';
        }
    } else {
        text << r.report.dump(2) << '\n';
    }

    if (!opt.out.empty()) {
        std::ofstream f(opt.out);
        if (!f) throw contract_error("cannot write " + opt.out);
        f << (r.document.is_null() ? text.str() : r.document.dump(2) + "\n");
        if (!r.document.is_null()) std::cout << text.str();
    } else {
        std::cout << text.str();
    }
}

rat_vec parse_vector(const std::string& s)
{
    rat_vec v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(rational::parse(item));
    if (v.empty()) throw contract_error("empty vector");
    return v;
}

json verdict_row(const char* dir, const wmodel::comparison& c)
{
    return {{"direction", dir}, {"holds", c.holds}, {"rule", wmodel::to_string(c.rule)}};
}

std::string verdict_text(bool xy, bool yx)
{
    if (xy && yx) return "≤ and ≥";
    if (xy) return "≤ only";
    if (yx) return "≥ only";
    return "neither";
}

result cmd_compare(const std::string& m, const std::string& x, const std::string& y)
{
    const auto w = doc::to_wmodel(doc::load(m));
    const auto a = doc::to_class(doc::load(x));
    const auto b = doc::to_class(doc::load(y));
    const auto xy = wmodel::decide(w, a, b);
    const auto yx = wmodel::decide(w, b, a);
    result r;
    r.report = {{"command", "compare"},
                {"x", wmodel::describe(a)},
                {"y", wmodel::describe(b)},
                {"verdict", verdict_text(xy.holds, yx.holds)},
                {"x_leq_y", verdict_row("x <= y", xy)},
                {"y_leq_x", verdict_row("y <= x", yx)}};
    r.header = {"direction", "holds", "rule"};
    r.rows = {{"x <= y", xy.holds ? "true" : "false", wmodel::to_string(xy.rule)},
              {"y <= x", yx.holds ? "true" : "false", wmodel::to_string(yx.rule)}};
    return r;
}

result class_result(const char* command, const wmodel::cuntz_class& z)
{
    result r;
    r.report = {{"command", command}, {"result", wmodel::describe(z)}, {"class", doc::from(z)}};
    r.document = doc::from(z);
    return r;
}

result cmd_k0star(const std::string& m, const std::string& x, const std::string& y)
{
    const auto w = doc::to_wmodel(doc::load(m));
    const auto k = wmodel::make_k0_star(w);
    rat_vec d = wmodel::gamma(w, doc::to_class(doc::load(x)));
    if (!y.empty()) d = sub(d, wmodel::gamma(w, doc::to_class(doc::load(y))));
    result r;
    r.report = {{"command", "k0star"},
                {"rank", k.n},
                {"element", doc::from(d)},
                {"in_cone_plus", k.cone_plus(d)},
                {"in_cone_plusplus", k.cone_plusplus(d)}};
    return r;
}

result cmd_order_unit(const std::string& m, const std::string& v)
{
    const auto w = doc::to_wmodel(doc::load(m));
    const auto k = wmodel::make_k0_star(w);
    const rat_vec d = parse_vector(v);
    result r;
    r.report = {{"command", "order-unit"}, {"element", doc::from(d)}, {"order_unit", wmodel::is_order_unit(k, d)}};
    return r;
}

result cmd_check(const std::string& path, const std::string& suite, const options& opt)
{
    const auto j = doc::load(path);
    const auto kind = j.at("kind").get<std::string>();
    suites::outcome o;
    if (kind == "group") {
        const auto g = doc::to_group(j);
        if (suite == "weak-unperforation")
            o = suites::weak_unperforation(g, opt.bound);
        else if (suite == "archimedean")
            o = suites::archimedean(g, opt.bound);
        else
            throw contract_error("suite \"" + suite + "\" needs a wmodel document");
    } else {
        const auto w = doc::to_wmodel(j);
        if (suite == "order-axioms")
            o = suites::order_axioms(w, opt.seed);
        else if (suite == "strict-cone")
            o = suites::strict_cone(w, opt.seed, opt.bound);
        else if (suite == "weak-unperforation")
            o = suites::weak_unperforation(w);
        else if (suite == "archimedean")
            o = suites::archimedean(w);
        else if (suite == "oracle-agreement")
            o = suites::oracle_agreement(w, opt.seed);
        else
            throw contract_error("unknown suite \"" + suite + "\"");
    }
    result r;
    r.report = {{"command", "check"},
                {"suite", o.suite},
                {"seed", opt.seed},
                {"pass", o.pass},
                {"checked", o.checked},
                {"inconclusive", o.inconclusive},
                {"counterexamples", o.counterexamples}};
    r.header = {"suite", "pass", "checked", "inconclusive", "counterexample"};
    r.rows = {{o.suite, o.pass ? "pass" : "fail", std::to_string(o.checked), std::to_string(o.inconclusive),
               o.counterexamples.empty() ? "" : o.counterexamples.front()}};
    return r;
}

json w_morphism_json(const elliott::w_morphism& m)
{
    return {{"kind", "wmorphism"}, {"proj_part", doc::from(m.proj_part)}, {"soft_part", doc::from(m.soft_part)}};
}

json report_json(const elliott::report& rep) { return {{"valid", rep.ok()}, {"violations", rep.violations}}; }

result cmd_functor(const std::string& inv_path, const std::string& mor_path, const std::string& target_path)
{
    const auto a = doc::to_invariant(doc::load(inv_path));
    result r;
    const auto w = elliott::functor_G_obj(a);
    r.report = {{"command", "functor"}, {"wmodel", doc::from(w)}};
    r.document = doc::from(w);
    if (!mor_path.empty()) {
        if (target_path.empty()) throw contract_error("--morphism needs --target");
        const auto b = doc::to_invariant(doc::load(target_path));
        const auto t = doc::to_morphism(doc::load(mor_path), a);
        const auto rep = elliott::validate_morphism(t, a, b);
        r.report["morphism_validation"] = report_json(rep);
        if (!rep.ok()) throw contract_error("invalid morphism: " + rep.violations.front());
        const auto gm = elliott::functor_G_mor(t, a, b);
        r.report["wmorphism"] = w_morphism_json(gm);
        r.report["is_identity"] = gm == elliott::identity(w);
    }
    return r;
}

result cmd_morphism_check(const std::string& mor, const std::string& src, const std::string& dst)
{
    const auto a = doc::to_invariant(doc::load(src));
    const auto b = doc::to_invariant(doc::load(dst));
    const auto t = doc::to_morphism(doc::load(mor), a);
    const auto rep = elliott::validate_morphism(t, a, b);
    result r;
    r.report = {{"command", "morphism-check"}, {"valid", rep.ok()}, {"violations", rep.violations}};
    r.header = {"valid", "violation"};
    if (rep.ok()) r.rows = {{"true", ""}};
    for (const auto& v : rep.violations) r.rows.push_back({"false", v});
    return r;
}

result realize_vector(const rat_vec& f, const std::string& sched, const options& opt)
{
    result r;
    if (!sched.empty()) {
        approx::dense_subgroup d;
        d.denominators = doc::to_sizes(doc::load(sched));
        const auto stages = approx::projection_sup_realization(f, d, opt.stages);
        json st = json::array();
        r.header = {"stage", "denominator", "value", "gap"};
        for (std::size_t i = 0; i < stages.size(); ++i) {
            const auto gap = sup_norm(sub(f, stages[i]));
            st.push_back({{"stage", i + 1}, {"value", doc::from(stages[i])}, {"gap", gap.str()}});
            r.rows.push_back({std::to_string(i + 1), std::to_string(d.denominators[i]), suites::show(stages[i]),
                              gap.str()});
        }
        r.report = {{"command", "realize"}, {"mode", "projection-sup"}, {"target", doc::from(f)}, {"stages", st}};
        return r;
    }
    const auto rep = approx::summable_decomposition(f, opt.stages);
    json st = json::array();
    r.header = {"stage", "g", "h", "gap", "gap_bound"};
    for (const auto& s : rep.stages) {
        st.push_back({{"stage", s.index},
                      {"g", doc::from(s.g)},
                      {"h", doc::from(s.h)},
                      {"gap", s.gap.str()},
                      {"gap_bound", s.gap_bound.str()}});
        r.rows.push_back(
            {std::to_string(s.index), suites::show(s.g), suites::show(s.h), s.gap.str(), s.gap_bound.str()});
    }
    r.report = {{"command", "realize"},
                {"mode", "dyadic"},
                {"target", doc::from(f)},
                {"first_stage", rep.first_stage},
                {"stages", st},
                {"increment_norm_sum", rep.increment_norm_sum.str()},
                {"increment_norm_bound", rep.increment_norm_bound.str()},
                {"certified", rep.certified()}};
    return r;
}

result realize_step(const goodearl::step_fn& f, const std::string& sched, const options& opt)
{
    goodearl::schedule s = goodearl::schedule::dyadic(opt.stages);
    if (!sched.empty()) s.sizes = doc::to_sizes(doc::load(sched));
    const auto rep = goodearl::realize(f, s, opt.stages);
    result r;
    json st = json::array();
    r.header = {"stage", "x", "f", "f_i", "d"};
    for (const auto& stage : rep.stages) {
        st.push_back({{"stage", stage.index},
                      {"size", stage.size},
                      {"approximant", doc::from(stage.approximant)},
                      {"increment", stage.increment.str()},
                      {"dimension_identity", stage.dimension_identity},
                      {"gap_bound", stage.gap_bound},
                      {"refines_previous", stage.refines_previous},
                      {"dominates_previous", stage.dominates_previous},
                      {"increment_bound", stage.increment_bound}});
        for (const auto& row : stage.samples)
            r.rows.push_back({std::to_string(stage.index), row.x.str(), row.f.str(), row.f_i.str(), row.d.str()});
    }
    r.report = {{"command", "realize"}, {"mode", "step"}, {"stages", st}, {"certified", rep.certified()}};
    return r;
}

result cmd_realize(const std::string& target, const std::string& sched, const options& opt)
{
    const auto t = doc::to_target(doc::load(target));
    return t.vector ? realize_vector(*t.vector, sched, opt) : realize_step(*t.step, sched, opt);
}

result cmd_goodearl(const std::string& op, const std::string& elem, const std::vector<std::string>& args)
{
    const auto a = doc::to_element(doc::load(elem));
    auto need = [&](std::size_t n) {
        if (args.size() < n) throw contract_error("goodearl " + op + " needs " + std::to_string(n) + " more argument(s)");
    };
    auto measures = [&](std::size_t from) {
        std::vector<goodearl::measure_spec> ts;
        for (std::size_t i = from; i < args.size(); ++i) ts.push_back(doc::to_measure(doc::load(args[i])));
        if (ts.empty()) throw contract_error("at least one measure document is required");
        return ts;
    };
    result r;
    r.report = {{"command", "goodearl"}, {"op", op}};
    if (op == "classify") {
        r.report["spectrum"] = goodearl::to_string(goodearl::spectrum_classify(a));
    } else if (op == "coz") {
        json sets = json::array();
        for (const auto& e : a.entries) sets.push_back(doc::from(goodearl::coz(e)));
        r.report["coz"] = sets;
    } else if (op == "dim") {
        json vals = json::array();
        for (const auto& mu : measures(0)) vals.push_back(goodearl::dim_fn(a, mu).str());
        r.report["dim"] = vals;
    } else if (op == "cutdown") {
        need(1);
        const auto c = goodearl::cutdown(a, rational::parse(args[0]));
        r.report["element"] = doc::from(c);
        r.document = doc::from(c);
    } else if (op == "compare") {
        need(2);
        const auto b = doc::to_element(doc::load(args[0]));
        r.report["a_leq_b"] = goodearl::compare_elements(a, b, measures(1));
        r.report["b_leq_a"] = goodearl::compare_elements(b, a, measures(1));
    } else if (op == "lemma") {
        need(4);
        r.report["strict"] = goodearl::comparison_lemma_check(a, rational::parse(args[0]), rational::parse(args[1]),
                                                               rational::parse(args[2]),
                                                               doc::to_measure(doc::load(args[3])));
    } else {
        throw contract_error("unknown goodearl operation \"" + op + "\"");
    }
    return r;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact models of Cuntz semigroups, their Elliott invariants, and realizations"};
    app.require_subcommand(1);
    app.fallthrough();
    options opt;
    app.add_option("--seed", opt.seed, "seed for randomized suites")->capture_default_str();
    app.add_option("--bound", opt.bound, "enumeration/search bound")->capture_default_str();
    app.add_option("--stages", opt.stages, "number of realization stages")->capture_default_str();
    app.add_option("--out", opt.out, "write the produced document (or the report) to this path");
    app.add_option("--format", opt.format, "report format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    bool timing = false;
    app.add_flag("--timing", timing, "print elapsed time to stderr");

    std::string m, x, y, v, suite, inv, mor, target, sched, op, elem;
    std::vector<std::string> extra;
    std::function<result()> run;

    auto* c = app.add_subcommand("compare", "decide x <= y and y <= x");
    c->add_option("model", m)->required();
    c->add_option("x", x)->required();
    c->add_option("y", y)->required();
    c->callback([&] { run = [&] { return cmd_compare(m, x, y); }; });

    auto* a = app.add_subcommand("add", "x + y");
    a->add_option("model", m)->required();
    a->add_option("x", x)->required();
    a->add_option("y", y)->required();
    a->callback([&] {
        run = [&] {
            const auto w = doc::to_wmodel(doc::load(m));
            return class_result("add", wmodel::add(w, doc::to_class(doc::load(x)), doc::to_class(doc::load(y))));
        };
    });

    auto* s = app.add_subcommand("scale", "lambda * x for a soft class");
    s->add_option("model", m)->required();
    s->add_option("x", x)->required();
    s->add_option("lambda", v, "positive rational p/q")->required();
    s->callback([&] {
        run = [&] {
            const auto w = doc::to_wmodel(doc::load(m));
            return class_result("scale", wmodel::scale(w, doc::to_class(doc::load(x)), rational::parse(v)));
        };
    });

    auto* so = app.add_subcommand("soften", "Proj(v) to Soft(v hat)");
    so->add_option("model", m)->required();
    so->add_option("x", x)->required();
    so->callback([&] {
        run = [&] {
            const auto w = doc::to_wmodel(doc::load(m));
            return class_result("soften", wmodel::soften(w, doc::to_class(doc::load(x))));
        };
    });

    auto* co = app.add_subcommand("complement", "z with x + z = y, if any");
    co->add_option("model", m)->required();
    co->add_option("x", x)->required();
    co->add_option("y", y)->required();
    co->callback([&] {
        run = [&] {
            const auto w = doc::to_wmodel(doc::load(m));
            const auto z = wmodel::complement(w, doc::to_class(doc::load(x)), doc::to_class(doc::load(y)));
            if (z) return class_result("complement", *z);
            result r;
            r.report = {{"command", "complement"}, {"result", nullptr}};
            return r;
        };
    });

    auto* k = app.add_subcommand("k0star", "image of gamma(x) or gamma(x) - gamma(y) in K0*");
    k->add_option("model", m)->required();
    k->add_option("x", x)->required();
    k->add_option("y", y);
    k->callback([&] { run = [&] { return cmd_k0star(m, x, y); }; });

    auto* ou = app.add_subcommand("order-unit", "order-unit test in K0*");
    ou->add_option("model", m)->required();
    ou->add_option("element", v, "comma-separated rationals")->required();
    ou->callback([&] { run = [&] { return cmd_order_unit(m, v); }; });

    auto* ch = app.add_subcommand("check", "run a property suite");
    ch->add_option("document", m, "wmodel or group document")->required();
    ch->add_option("suite", suite)->required()->check(CLI::IsMember(suites::names()));
    ch->callback([&] { run = [&] { return cmd_check(m, suite, opt); }; });

    auto* f = app.add_subcommand("functor", "apply G to an invariant (and a morphism)");
    f->add_option("invariant", inv)->required();
    f->add_option("--morphism", mor);
    f->add_option("--target", target, "invariant document of the morphism's target");
    f->callback([&] { run = [&] { return cmd_functor(inv, mor, target); }; });

    auto* mc = app.add_subcommand("morphism-check", "validate a morphism of invariants");
    mc->add_option("morphism", mor)->required();
    mc->add_option("source", inv)->required();
    mc->add_option("target", target)->required();
    mc->callback([&] { run = [&] { return cmd_morphism_check(mor, inv, target); }; });

    auto* re = app.add_subcommand("realize", "realize a target as a supremum");
    re->add_option("target", target)->required();
    re->add_option("schedule", sched, "schedule document (denominators or matrix sizes)");
    re->callback([&] { run = [&] { return cmd_realize(target, sched, opt); }; });

    auto* ge = app.add_subcommand("goodearl", "diagonal elements over C[0,1]");
    ge->add_option("op", op, "classify | coz | dim | cutdown | compare | lemma")->required();
    ge->add_option("element", elem)->required();
    ge->add_option("args", extra);
    ge->callback([&] { run = [&] { return cmd_goodearl(op, elem, extra); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        const result r = run();
        emit(r, opt);
        if (timing) {
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
            std::cerr << "elapsed " << dt.count() << " s\n";
        }
        return 0;
    } catch (const contract_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed document: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
