#include "fibertrace/serialize.hpp"

#include <json.hpp>

namespace fibertrace {

using nlohmann::ordered_json;

namespace {

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json config_object(const EmbeddingConfig& c) {
    ordered_json j;
    j["radius"] = c.radius ? to_string(*c.radius) : std::string("auto");
    j["curvature"] = to_string(c.curvature);
    j["epsilon"] = to_string(c.epsilon);
    j["depth"] = to_string(c.depth);
    if (!c.abscissas.empty()) {
        ordered_json xs = ordered_json::array();
        for (const auto& x : c.abscissas) xs.push_back(to_string(x));
        j["abscissas"] = xs;
    }
    if (!c.perturbations.empty()) {
        ordered_json ps = ordered_json::array();
        for (const auto& p : c.perturbations) ps.push_back(to_string(p));
        j["perturbations"] = ps;
    }
    j["max_retries"] = c.max_retries;
    return j;
}

ordered_json phi_value(const QuadSurd& phi) {
    ordered_json j;
    j["exact"] = phi.to_string();
    j["approx"] = phi.to_double();
    return j;
}

ordered_json pair_array(const OrderedPair& p) { return ordered_json::array({p.p, p.q}); }

ordered_json event_object(const Event& e) {
    ordered_json j;
    j["kind"] = event_kind_name(e.kind);
    j["sector"] = e.sector;
    j["half"] = e.half;
    j["phi"] = phi_value(e.phi);
    j["strands"] = e.strands;
    return j;
}

}  // namespace

std::string config_json(const EmbeddingConfig& config) { return dump(config_object(config)); }

std::string graph_json(const TraceGraph& graph, const EmbeddingConfig& config) {
    ordered_json j;
    j["config"] = config_object(config);
    j["m"] = graph.m;
    ordered_json vs = ordered_json::array();
    for (const auto& v : graph.vertices) {
        ordered_json o;
        o["kind"] = vertex_kind_name(v.kind);
        o["sector"] = v.sector;
        o["phi"] = phi_value(v.phi);
        ordered_json strands = ordered_json::array();
        for (const auto& p : v.pairs) strands.push_back(pair_array(p));
        o["strands"] = strands;
        vs.push_back(o);
    }
    j["vertices"] = vs;
    ordered_json as = ordered_json::array();
    for (const auto& a : graph.arcs) {
        ordered_json o;
        const auto& first = a.runs.front();
        o["pair"] = {first.p, first.q};
        o["sector"] = first.sector;
        o["phi_lo"] = a.phi_lo();
        o["phi_hi"] = a.phi_hi();
        o["sign"] = a.knot_sign;
        o["marking"] = a.marking.label();
        o["trace"] = a.trace;
        as.push_back(o);
    }
    j["arcs"] = as;
    ordered_json ts = ordered_json::array();
    for (const auto& t : graph.traces) {
        ordered_json o;
        o["id"] = t.id;
        o["closed"] = t.closed;
        o["marking"] = t.marking.label();
        ts.push_back(o);
    }
    j["traces"] = ts;
    return dump(j);
}

std::string writhe_json(const WritheTable& table, const EmbeddingConfig& config) {
    ordered_json j;
    j["config"] = config_object(config);
    j["m"] = table.m;
    ordered_json u = ordered_json::array();
    for (const auto& [k, v] : table.W_u) u.push_back({{"a", k.first}, {"b", k.second}, {"value", v}});
    j["W_u"] = u;
    ordered_json o = ordered_json::array();
    for (const auto& [k, v] : table.W_o) o.push_back({{"a", k.first}, {"b", k.second}, {"value", v}});
    j["W_o"] = o;
    ordered_json c = ordered_json::array();
    for (const auto& [k, v] : table.W_c) c.push_back({{"a", k}, {"value", v}});
    j["W_c"] = c;
    return dump(j);
}

std::string bound_json(const BoundReport& r, const EmbeddingConfig& config) {
    ordered_json j;
    j["config"] = config_object(config);
    j["m"] = r.m;
    j["bound_u"] = to_string(r.bound_u);
    j["ceil_u"] = r.ceil_u;
    j["bound_c"] = to_string(r.bound_c);
    j["ceil_c"] = r.ceil_c;
    if (r.bound_o) {
        j["bound_o"] = to_string(*r.bound_o);
        j["ceil_o"] = *r.ceil_o;
        j["bound_o_at_least_bound_u"] = *r.bound_o_at_least_bound_u;
    }
    j["readings"] = {{"fqs_without_extreme_secants", r.fqs_without_extreme_secants},
                     {"fes_without_quadrisecants", r.fes_without_quadrisecants}};
    return dump(j);
}

std::string events_json(const EventSet& events, const EmbeddingConfig& config) {
    ordered_json j;
    j["config"] = config_object(config);
    auto list = [](const std::vector<Event>& es) {
        ordered_json a = ordered_json::array();
        for (const auto& e : es) a.push_back(event_object(e));
        return a;
    };
    j["collinear"] = list(events.collinear);
    j["parallel"] = list(events.parallel);
    j["cusps"] = list(events.cusps);
    ordered_json t = ordered_json::array();
    for (const auto& s : events.tangents) {
        ordered_json o = event_object(s.event);
        o["chain"] = s.chain;
        t.push_back(o);
    }
    j["tangents"] = t;
    return dump(j);
}

std::string genericity_json(const GenericityReport& report, const EmbeddingConfig& config) {
    ordered_json j;
    j["config"] = config_object(config);
    j["generic"] = report.ok();
    if (report.violation) {
        const auto& v = *report.violation;
        j["violation"] = {{"condition", v.condition},
                          {"sector", v.sector},
                          {"phi_lo", to_string(v.phi_lo)},
                          {"phi_hi", to_string(v.phi_hi)},
                          {"detail", v.detail}};
    }
    return dump(j);
}

std::string comparison_json(const ComparisonReport& report, const SampledSweep& sweep, const EmbeddingConfig& config) {
    ordered_json j;
    j["config"] = config_object(config);
    j["samples_per_sector"] = sweep.samples;
    j["full_match"] = report.full_match();
    ordered_json kinds = ordered_json::array();
    for (const auto& k : report.kinds) {
        kinds.push_back({{"kind", k.kind},
                         {"exact", k.exact},
                         {"sampled", k.sampled},
                         {"matched", k.matched},
                         {"unmatched", k.unmatched}});
    }
    j["kinds"] = kinds;
    j["sign_mismatches"] = report.sign_mismatches;
    j["tables_equal"] = report.tables_equal;
    j["warnings"] = report.warnings;
    return dump(j);
}

}  // namespace fibertrace
