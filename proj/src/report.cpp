#include "cechdr/report.hpp"

#include <sstream>

namespace cechdr {

Json schedule_to_json(const WindowSchedule& s) {
    return Json{{"k0", s.k0},
                {"D0", s.D0},
                {"dk", s.dk},
                {"dD", s.dD},
                {"probe_depth", s.probe_depth},
                {"span", s.span},
                {"max_windows", s.max_windows}};
}

Json window_to_json(const TruncationWindow& w) {
    return Json{{"pole_order", w.pole_order}, {"numerator_degree", w.numerator_degree}};
}

Json derham_to_json(const DeRhamResult& r) {
    Json out;
    out["stabilized"] = r.stabilized;
    out["dims"] = r.dims;
    if (r.stabilized) {
        out["chi"] = r.chi;
        out["chi_c"] = r.chi_c;
    }
    Json ops = Json::array();
    for (int v : r.ops) ops.push_back(v);
    out["operators"] = ops;
    if (!r.note.empty()) out["note"] = r.note;
    Json trace = Json::array();
    for (const auto& e : r.trace) {
        Json entry;
        entry["window"] = window_to_json(e.window);
        entry["apparent_dims"] = e.apparent;
        entry["cycle_dims"] = e.cycles;
        entry["probe_exhausted"] = e.probe_exhausted;
        trace.push_back(std::move(entry));
    }
    out["window_trace"] = std::move(trace);
    out["schedule"] = schedule_to_json(r.schedule);
    out["work"] = Json{{"outer_windows", r.counters.outer_windows},
                       {"echelon_work", r.counters.echelon_work},
                       {"columns", r.counters.columns},
                       {"max_quotient_dim", r.counters.max_quotient_dim}};
    return out;
}

Json geometry_to_json(const CurveGeometry& g) {
    Json out;
    out["degree"] = g.degree;
    out["points_at_infinity"] = g.points_at_infinity;
    out["closure_variable"] = g.closure_variable;
    Json closure = Json::array();
    for (const auto& p : g.closure.generators) closure.push_back(p.str());
    out["closure_ideal"] = std::move(closure);
    return out;
}

Json form_to_json(const GenericLinearForm& f) {
    return Json{{"form", f.form.str()},
                {"certificate",
                 Json{{"not_in_ideal", f.certificate.not_in_ideal},
                      {"distinct_count_matches", f.certificate.distinct_count_matches},
                      {"none_at_infinity", f.certificate.none_at_infinity},
                      {"seed", f.certificate.seed},
                      {"attempts", f.certificate.attempts}}}};
}

Json verification_to_json(const VerificationReport& v) {
    Json out;
    out["statement"] = v.statement;
    out["verdict"] = verdict_name(v.verdict);
    out["detail"] = v.detail;
    out["prime_asserted_by_user"] = v.prime_asserted;
    Json q;
    for (const auto& [name, value] : v.quantities) q[name] = value;
    out["quantities"] = std::move(q);
    if (v.form) out["generic_form"] = form_to_json(*v.form);
    if (v.geometry) out["geometry"] = geometry_to_json(*v.geometry);
    if (v.module_result) out["module"] = derham_to_json(*v.module_result);
    if (v.localized_result) out["localized_module"] = derham_to_json(*v.localized_result);
    out["seed"] = v.seed;
    return out;
}

Json report_envelope(const std::string& command, Json inputs, Json result) {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["engine"] = Json{{"name", kEngineName}, {"version", kEngineVersion}};
    out["command"] = command;
    out["inputs"] = std::move(inputs);
    out["result"] = std::move(result);
    return out;
}

namespace {

bool scalar_array(const Json& a) {
    for (const auto& v : a)
        if (v.is_structured()) return false;
    return true;
}

void render(const Json& node, std::ostringstream& out, int indent) {
    const std::string pad(indent * 2, ' ');
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            if (value.is_object() || (value.is_array() && !scalar_array(value))) {
                out << pad << key << ":\n";
                render(value, out, indent + 1);
            } else {
                out << pad << key << ": " << value.dump() << "\n";
            }
        }
    } else if (node.is_array()) {
        int i = 0;
        for (const auto& item : node) {
            out << pad << "- [" << i++ << "]\n";
            render(item, out, indent + 1);
        }
    } else {
        out << pad << node.dump() << "\n";
    }
}

}  // namespace

std::string render_text(const Json& report) {
    std::ostringstream out;
    render(report, out, 0);
    return out.str();
}

}  // namespace cechdr
