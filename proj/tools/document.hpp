#ifndef CUNTZ_TOOLS_DOCUMENT_HPP
#define CUNTZ_TOOLS_DOCUMENT_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cuntz/approx.hpp"
#include "cuntz/elliott.hpp"
#include "cuntz/error.hpp"
#include "cuntz/goodearl.hpp"
#include "cuntz/ordmon.hpp"
#include "cuntz/rational.hpp"
#include "cuntz/wmodel.hpp"

// JSON documents: {"kind": ..., fields}. Rationals are "p/q" strings,
// integers are JSON integers, and floating-point numbers are rejected.
namespace cuntz::doc {

using json = nlohmann::ordered_json;

inline void reject_floats(const json& j, const std::string& path = "$")
{
    if (j.is_number_float()) throw contract_error("floating-point number at " + path + "; write rationals as \"p/q\"");
    if (j.is_array())
        for (std::size_t i = 0; i < j.size(); ++i) reject_floats(j[i], path + "[" + std::to_string(i) + "]");
    if (j.is_object())
        for (const auto& [k, v] : j.items()) reject_floats(v, path + "." + k);
}

inline json parse_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw contract_error(std::string("malformed JSON: ") + e.what());
    }
    reject_floats(j);
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw contract_error("document must be an object with a string \"kind\"");
    return j;
}

inline json load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw contract_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

inline const json& field(const json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name)) throw contract_error(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

inline void require_kind(const json& j, const std::string& kind)
{
    const auto got = field(j, "kind").get<std::string>();
    if (got != kind) throw contract_error("expected a \"" + kind + "\" document, got \"" + got + "\"");
}

// -- scalars and arrays ------------------------------------------------------

inline rational to_rat(const json& j)
{
    if (j.is_number_integer()) return rational(j.get<std::int64_t>());
    if (!j.is_string()) throw contract_error("rational must be a \"p/q\" string");
    return rational::parse(j.get<std::string>());
}

inline std::int64_t to_int(const json& j)
{
    if (!j.is_number_integer()) throw contract_error("expected an integer");
    return j.get<std::int64_t>();
}

inline json from(const rational& r) { return r.str(); }

inline rat_vec to_rat_vec(const json& j)
{
    if (!j.is_array()) throw contract_error("expected an array of rationals");
    rat_vec v;
    for (const auto& x : j) v.push_back(to_rat(x));
    return v;
}

inline int_vec to_int_vec(const json& j)
{
    if (!j.is_array()) throw contract_error("expected an array of integers");
    int_vec v;
    for (const auto& x : j) v.push_back(to_int(x));
    return v;
}

inline json from(const rat_vec& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline json from(const int_vec& v) { return json(v); }

inline rat_matrix to_rat_matrix(const json& j)
{
    if (!j.is_array()) throw contract_error("expected a matrix (array of rows)");
    std::vector<rat_vec> rows;
    for (const auto& r : j) rows.push_back(to_rat_vec(r));
    return rat_matrix::from_rows(rows);
}

inline int_matrix to_int_matrix(const json& j)
{
    if (!j.is_array()) throw contract_error("expected a matrix (array of rows)");
    std::vector<int_vec> rows;
    for (const auto& r : j) rows.push_back(to_int_vec(r));
    return int_matrix::from_rows(rows);
}

inline json from(const rat_matrix& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(from(m.row(i)));
    return a;
}

inline json from(const int_matrix& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(m.row(i));
    return a;
}

// -- wmodel ------------------------------------------------------------------

inline wmodel::k0_model to_k0(const json& j)
{
    wmodel::k0_model k;
    k.unit = to_int_vec(field(j, "unit"));
    k.states = to_rat_matrix(field(j, "states"));
    return k;
}

inline json from(const wmodel::k0_model& k) { return {{"unit", from(k.unit)}, {"states", from(k.states)}}; }

inline wmodel::trace_simplex to_traces(const json& j)
{
    if (!j.is_array()) throw contract_error("traces must be an array of labels");
    wmodel::trace_simplex t;
    for (const auto& l : j) {
        if (!l.is_string()) throw contract_error("trace labels must be strings");
        t.labels.push_back(l.get<std::string>());
    }
    return t;
}

inline wmodel::w_model to_wmodel(const json& j)
{
    require_kind(j, "wmodel");
    const std::string type = j.value("model", std::string("finite"));
    if (type == "purely_infinite") return wmodel::purely_infinite();
    if (type != "finite") throw contract_error("model must be \"finite\" or \"purely_infinite\"");
    wmodel::w_model w;
    w.k0 = to_k0(field(j, "k0"));
    w.traces = to_traces(field(j, "traces"));
    w.validate();
    return w;
}

inline json from(const wmodel::w_model& w)
{
    if (w.kind == wmodel::model_kind::purely_infinite) return {{"kind", "wmodel"}, {"model", "purely_infinite"}};
    return {{"kind", "wmodel"}, {"model", "finite"}, {"k0", from(w.k0)}, {"traces", w.traces.labels}};
}

inline wmodel::cuntz_class to_class(const json& j)
{
    require_kind(j, "class");
    const bool p = j.contains("proj");
    const bool s = j.contains("soft");
    if (p == s) throw contract_error("class document needs exactly one of \"proj\" and \"soft\"");
    if (p) return wmodel::proj{to_int_vec(j.at("proj"))};
    return wmodel::soft{to_rat_vec(j.at("soft"))};
}

inline json from(const wmodel::cuntz_class& x)
{
    if (const auto* p = std::get_if<wmodel::proj>(&x)) return {{"kind", "class"}, {"proj", from(p->v)}};
    return {{"kind", "class"}, {"soft", from(std::get<wmodel::soft>(x).f)}};
}

// -- ordmon ------------------------------------------------------------------

inline ordmon::po_group to_group(const json& j)
{
    require_kind(j, "group");
    ordmon::po_group g;
    g.rank = static_cast<std::size_t>(to_int(field(j, "rank")));
    g.order_unit = to_int_vec(field(j, "unit"));
    const auto& c = field(j, "cone");
    const auto type = field(c, "type").get<std::string>();
    if (type == "simplicial")
        g.cone = ordmon::simplicial_cone{};
    else if (type == "strict_state")
        g.cone = ordmon::strict_state_cone{to_rat_matrix(field(c, "states"))};
    else if (type == "generated") {
        ordmon::generated_cone gc;
        for (const auto& v : field(c, "generators")) gc.generators.push_back(to_int_vec(v));
        g.cone = gc;
    } else if (type == "lexicographic")
        g.cone = ordmon::lexicographic_cone{};
    else
        throw contract_error("unknown cone type \"" + type + "\"");
    if (j.contains("search_bound")) g.search_bound = static_cast<int>(to_int(j.at("search_bound")));
    g.validate();
    return g;
}

// -- elliott -----------------------------------------------------------------

inline elliott::invariant to_invariant(const json& j)
{
    require_kind(j, "invariant");
    elliott::invariant inv;
    inv.k0 = to_k0(field(j, "k0"));
    inv.traces = to_traces(field(j, "traces"));
    if (j.contains("k1")) {
        const auto& k1 = j.at("k1");
        inv.k1.free_rank = static_cast<std::size_t>(to_int(field(k1, "free_rank")));
        inv.k1.torsion = to_int_vec(field(k1, "torsion"));
    }
    return inv;
}

inline json from(const elliott::invariant& inv)
{
    return {{"kind", "invariant"},
            {"k0", from(inv.k0)},
            {"k1", {{"free_rank", inv.k1.free_rank}, {"torsion", inv.k1.torsion}}},
            {"traces", inv.traces.labels}};
}

/// θ1 with no rows is read with as many columns as the source K1 needs.
inline elliott::morphism to_morphism(const json& j, const elliott::invariant& source)
{
    require_kind(j, "morphism");
    elliott::morphism m;
    m.theta0 = to_int_matrix(field(j, "theta0"));
    m.theta1 = j.contains("theta1") ? to_int_matrix(j.at("theta1")) : int_matrix();
    if (m.theta1.rows() == 0) m.theta1 = int_matrix(0, source.k1.size());
    m.gamma = to_rat_matrix(field(j, "gamma"));
    return m;
}

inline json from(const elliott::morphism& m)
{
    return {{"kind", "morphism"}, {"theta0", from(m.theta0)}, {"theta1", from(m.theta1)}, {"gamma", from(m.gamma)}};
}

// -- approx / goodearl -------------------------------------------------------

/// A target is either a strictly positive vector or an lsc step function.
struct target {
    std::optional<rat_vec> vector;
    std::optional<goodearl::step_fn> step;
};

inline goodearl::step_fn to_step(const json& j)
{
    goodearl::step_fn f;
    f.xs = to_rat_vec(field(j, "partition"));
    f.interval_values = to_rat_vec(field(j, "intervals"));
    f.point_values = to_rat_vec(field(j, "points"));
    f.validate();
    return f;
}

inline json from(const goodearl::step_fn& f)
{
    return {{"partition", from(f.xs)}, {"intervals", from(f.interval_values)}, {"points", from(f.point_values)}};
}

inline target to_target(const json& j)
{
    require_kind(j, "target");
    target t;
    if (j.contains("vector")) t.vector = to_rat_vec(j.at("vector"));
    if (j.contains("step")) t.step = to_step(j.at("step"));
    if (t.vector.has_value() == t.step.has_value())
        throw contract_error("target document needs exactly one of \"vector\" and \"step\"");
    if (t.vector) approx::require_positive_target(*t.vector);
    return t;
}

inline goodearl::measure_spec to_measure(const json& j)
{
    require_kind(j, "measure");
    goodearl::measure_spec m;
    if (j.contains("partition")) m.partition = to_rat_vec(j.at("partition"));
    if (j.contains("density")) m.density = to_rat_vec(j.at("density"));
    if (j.contains("atoms"))
        for (const auto& a : j.at("atoms")) {
            if (!a.is_array() || a.size() != 2) throw contract_error("atoms are [point, weight] pairs");
            m.atoms.emplace_back(to_rat(a[0]), to_rat(a[1]));
        }
    m.validate();
    return m;
}

inline std::vector<std::int64_t> to_sizes(const json& j)
{
    require_kind(j, "schedule");
    return to_int_vec(field(j, "sizes"));
}

inline goodearl::diagonal_element to_element(const json& j)
{
    require_kind(j, "element");
    goodearl::diagonal_element a;
    for (const auto& e : field(j, "entries"))
        a.entries.push_back({to_rat_vec(field(e, "breakpoints")), to_rat_vec(field(e, "values"))});
    a.validate();
    return a;
}

inline json from(const goodearl::diagonal_element& a)
{
    json entries = json::array();
    for (const auto& e : a.entries) entries.push_back({{"breakpoints", from(e.xs)}, {"values", from(e.ys)}});
    return {{"kind", "element"}, {"entries", entries}};
}

inline json from(const goodearl::open_set& o)
{
    json a = json::array();
    for (const auto& p : o.parts)
        a.push_back({{"lo", p.lo.str()}, {"hi", p.hi.str()}, {"lo_closed", p.lo_closed}, {"hi_closed", p.hi_closed}});
    return a;
}

} // namespace cuntz::doc

#endif
