#include "nodal/serialize.hpp"

#include <fstream>

namespace nodal {

json to_json(const PointSet& points) {
    json out;
    out["field"] = points.field().to_string();
    out["ambient_dim"] = points.ambient_dim();
    json arr = json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        json pt;
        pt["label"] = points.label(i);
        json coords = json::array();
        for (const Scalar& c : points[i].coords()) coords.push_back(c.to_string());
        pt["coords"] = std::move(coords);
        arr.push_back(std::move(pt));
    }
    out["points"] = std::move(arr);
    return out;
}

PointSet point_set_from_json(const json& j) {
    try {
        const FieldSpec field = FieldSpec::parse(j.at("field").get<std::string>());
        const std::size_t dim = j.at("ambient_dim").get<std::size_t>();
        PointSet points(dim, field);
        for (const json& pt : j.at("points")) {
            std::vector<Scalar> coords;
            for (const json& c : pt.at("coords"))
                coords.push_back(Scalar::parse(field, c.get<std::string>()));
            if (coords.size() != dim + 1)
                throw ParseError("point with " + std::to_string(coords.size()) +
                                 " coordinates in P^" + std::to_string(dim));
            points.add(ProjectivePoint(std::move(coords)),
                       pt.value("label", std::string{}));
        }
        return points;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad point-set JSON: ") + e.what());
    }
}

json to_json(const HomogeneousForm& form) {
    json out;
    out["dim"] = form.ambient_dim();
    out["degree"] = form.degree();
    json terms = json::array();
    for (const auto& [m, c] : form.terms()) {
        json term;
        term["exp"] = m.exps;
        term["coeff"] = c.to_string();
        terms.push_back(std::move(term));
    }
    out["terms"] = std::move(terms);
    return out;
}

HomogeneousForm form_from_json(const json& j, const FieldSpec& field) {
    try {
        const std::size_t dim = j.at("dim").get<std::size_t>();
        const unsigned degree = j.at("degree").get<unsigned>();
        std::map<Monomial, Scalar> terms;
        for (const json& term : j.at("terms")) {
            Monomial m{term.at("exp").get<std::vector<unsigned>>()};
            Scalar c = Scalar::parse(field, term.at("coeff").get<std::string>());
            auto [it, inserted] = terms.emplace(std::move(m), c);
            if (!inserted) it->second += c;
        }
        return HomogeneousForm::from_terms(dim, degree, field, std::move(terms));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad form JSON: ") + e.what());
    }
}

json to_json(const NodalInstance& inst) {
    json out;
    out["n"] = inst.n;
    out["field"] = inst.field.to_string();
    out["form"] = inst.form ? to_json(*inst.form) : json(nullptr);
    out["nodes"] = to_json(inst.nodes);
    out["provenance"] = to_string(inst.provenance);
    out["notes"] = inst.notes;
    return out;
}

NodalInstance instance_from_json(const json& j) {
    try {
        NodalInstance inst;
        inst.n = j.at("n").get<unsigned>();
        inst.field = FieldSpec::parse(j.at("field").get<std::string>());
        if (j.contains("form") && !j.at("form").is_null()) {
            if (j.at("form").is_string())
                inst.form = parse_form(j.at("form").get<std::string>(), 4,
                                       inst.field);
            else
                inst.form = form_from_json(j.at("form"), inst.field);
        }
        inst.nodes = point_set_from_json(j.at("nodes"));
        inst.provenance = provenance_from_string(j.at("provenance").get<std::string>());
        if (j.contains("notes"))
            inst.notes = j.at("notes").get<std::vector<std::string>>();
        if (inst.nodes.ambient_dim() != 4)
            throw ParseError("instance nodes must live in P^4");
        if (!(inst.nodes.field() == inst.field))
            throw ParseError("instance field does not match its node set");
        return inst;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad instance JSON: ") + e.what());
    }
}

json to_json(const NormalityReport& r) {
    json out;
    out["degree"] = r.degree;
    out["point_count"] = r.point_count;
    out["independent_conditions"] = r.rank;
    out["defect"] = r.defect;
    out["d_normal"] = r.d_normal();
    out["separable"] = r.separable;
    out["dependent_witness"] =
        r.dependent_witness ? json(*r.dependent_witness) : json(nullptr);
    return out;
}

json to_json(const FactorialityVerdict& v) {
    json out;
    out["n"] = v.n;
    out["node_count"] = v.node_count;
    out["independent_conditions"] = v.rank;
    out["h4_rank"] = v.h4_rank;
    out["factorial"] = v.factorial;
    out["trace"] = v.trace;
    out["normality"] = to_json(v.normality);
    return out;
}

json to_json(const EkReport& r) {
    json out;
    out["degree"] = r.degree;
    out["point_count"] = r.point_count;
    out["satisfied"] = r.satisfied;
    json entries = json::array();
    for (const EkEntry& e : r.entries) {
        json je;
        je["k"] = e.k;
        je["threshold"] = e.threshold;
        je["measured"] = e.measured;
        if (e.measured) je["max_in_flat"] = e.max_in_flat;
        je["ok"] = e.ok;
        entries.push_back(std::move(je));
    }
    out["entries"] = std::move(entries);
    if (r.first_violation_k) {
        out["first_violation_k"] = *r.first_violation_k;
        out["violation_witness"] = to_json(*r.violation_witness);
    }
    return out;
}

json to_json(const BeseReport& r) {
    json out;
    out["degree"] = r.degree;
    out["point_count"] = r.point_count;
    out["m"] = r.m;
    out["size_cap"] = r.size_cap;
    out["size_ok"] = r.size_ok;
    out["satisfied"] = r.satisfied;
    if (r.degree3_note)
        out["note"] = "degree-3 thresholds follow the displayed formula";
    json entries = json::array();
    for (const BeseEntry& e : r.entries) {
        json je;
        je["k"] = e.k;
        je["threshold"] = e.threshold;
        je["measured"] = e.measured;
        je["status"] = to_string(e.status);
        je["ok"] = e.ok;
        entries.push_back(std::move(je));
    }
    out["entries"] = std::move(entries);
    return out;
}

json to_json(const PositionReport& r) {
    json out;
    out["max_collinear"] = r.max_collinear;
    out["collinear_bound"] = r.collinear_bound;
    out["collinear_ok"] = r.collinear_ok;
    if (r.collinear_witness) out["collinear_witness"] = to_json(*r.collinear_witness);
    out["max_in_plane"] = r.max_in_plane;
    out["plane_threshold"] = r.plane_threshold;
    out["plane_over_threshold"] = r.plane_over_threshold;
    out["plane_contained_in_hypersurface"] =
        r.plane_contained_in_hypersurface ? json(*r.plane_contained_in_hypersurface)
                                          : json(nullptr);
    out["node_count_meets_lemma"] =
        r.node_count_meets_lemma ? json(*r.node_count_meets_lemma) : json(nullptr);
    out["flags"] = r.flags;
    return out;
}

json to_json(const FuzzReport& r) {
    json out;
    out["n"] = r.n;
    out["trials"] = r.trials;
    out["k_max"] = r.k_max;
    out["set_size"] = r.set_size;
    out["regenerations"] = r.regenerations;
    out["violation_count"] = r.violations.size();
    json viols = json::array();
    for (const FuzzViolation& v : r.violations) {
        json jv;
        jv["trial"] = v.trial;
        jv["seed"] = v.seed;
        jv["k"] = v.k;
        jv["count"] = v.count;
        jv["bound"] = v.bound;
        jv["status"] = "candidate counterexample, genericity unverified";
        viols.push_back(std::move(jv));
    }
    out["violations"] = std::move(viols);
    out["trial_seeds"] = r.trial_seeds;
    return out;
}

json to_json(const ConfigurationProfile& p) {
    json out;
    out["point_count"] = p.point_count;
    out["ambient_dim"] = p.ambient_dim;
    out["max_collinear"] = p.max_collinear;
    if (p.collinear_witness) out["collinear_witness"] = to_json(*p.collinear_witness);
    if (p.max_in_2plane) out["max_in_2plane"] = *p.max_in_2plane;
    if (p.plane_witness) out["plane_witness"] = to_json(*p.plane_witness);
    if (p.max_in_hyperplane) out["max_in_hyperplane"] = *p.max_in_hyperplane;
    if (p.hyperplane_witness)
        out["hyperplane_witness"] = to_json(*p.hyperplane_witness);
    if (!p.curves.empty()) {
        json curves = json::array();
        for (const auto& [k, inc] : p.curves) {
            json jc;
            jc["k"] = k;
            jc["count"] = inc.count;
            jc["status"] = to_string(inc.status);
            jc["members"] = inc.members;
            if (inc.curve) jc["curve"] = to_json(*inc.curve);
            curves.push_back(std::move(jc));
        }
        out["max_on_curve"] = std::move(curves);
    }
    return out;
}

json to_json(const SeparatorCertificate& c) {
    json out;
    out["target"] = c.target_label;
    out["degree"] = c.degree;
    out["method"] = to_string(c.method);
    out["seed"] = c.seed;
    out["form"] = to_json(c.form);
    json log = json::array();
    for (const EvaluationLogEntry& e : c.evaluation_log) {
        json je;
        je["point"] = e.point_label;
        je["value"] = e.value;
        je["expected_zero"] = e.expected_zero;
        je["ok"] = e.ok;
        log.push_back(std::move(je));
    }
    out["evaluation_log"] = std::move(log);
    return out;
}

void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
}

void save_instance(const NodalInstance& inst, const std::string& path) {
    save_json(to_json(inst), path);
}

NodalInstance load_instance(const std::string& path) {
    return instance_from_json(load_json(path));
}

}  // namespace nodal
