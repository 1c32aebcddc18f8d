#include "opframe/json_io.hpp"

namespace opframe {

namespace {

json complex_to_json(cxd z) { return json::array({z.real(), z.imag()}); }

cxd complex_from_json(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::runtime_error(std::string("expected [re, im] pair in ") + where);
    return {j[0].get<double>(), j[1].get<double>()};
}

AlgebraDescriptor descriptor_from_json(const json& j) {
    if (!j.contains("kind") || !j.contains("n"))
        throw std::runtime_error("algebra descriptor needs kind and n");
    const std::string kind = j.at("kind").get<std::string>();
    AlgebraDescriptor d;
    if (kind == "full")
        d.kind = AlgebraKind::full;
    else if (kind == "diagonal")
        d.kind = AlgebraKind::diagonal;
    else
        throw std::runtime_error("unknown algebra kind: " + kind);
    d.n = j.at("n").get<int>();
    if (d.n < 1) throw std::runtime_error("algebra size must be >= 1");
    return d;
}

json descriptor_to_json(AlgebraDescriptor d) {
    return {{"kind", d.kind == AlgebraKind::full ? "full" : "diagonal"},
            {"n", d.n}};
}

}  // namespace

json to_json(const AlgebraElement& a) {
    json j = descriptor_to_json(a.desc);
    if (a.kind() == AlgebraKind::diagonal) {
        json diag = json::array();
        for (int i = 0; i < a.n(); ++i) diag.push_back(complex_to_json(a.at(i, i)));
        j["entries"] = std::move(diag);
        return j;
    }
    json rows = json::array();
    for (int i = 0; i < a.n(); ++i) {
        json row = json::array();
        for (int k = 0; k < a.n(); ++k) row.push_back(complex_to_json(a.at(i, k)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

AlgebraElement algebra_element_from_json(const json& j) {
    const AlgebraDescriptor d = descriptor_from_json(j);
    if (!j.contains("entries"))
        throw std::runtime_error("algebra element needs entries");
    const json& e = j.at("entries");
    AlgebraElement a(d);
    if (!e.is_array()) throw std::runtime_error("entries must be an array");
    const bool flat = !e.empty() && e[0].is_array() && !e[0].empty() &&
                      e[0][0].is_number();
    if (flat) {
        // Flat list of n diagonal pairs.
        if (d.kind != AlgebraKind::diagonal)
            throw std::runtime_error("flat entries are only valid for diagonal kind");
        if (static_cast<int>(e.size()) != d.n)
            throw std::runtime_error("diagonal entries length mismatch");
        for (int i = 0; i < d.n; ++i)
            a.at(i, i) = complex_from_json(e[i], "diagonal entries");
        return a;
    }
    if (static_cast<int>(e.size()) != d.n)
        throw std::runtime_error("entries row count mismatch");
    for (int i = 0; i < d.n; ++i) {
        const json& row = e[i];
        if (!row.is_array() || static_cast<int>(row.size()) != d.n)
            throw std::runtime_error("entries column count mismatch");
        for (int k = 0; k < d.n; ++k) {
            const cxd z = complex_from_json(row[k], "entries");
            if (d.kind == AlgebraKind::diagonal && i != k &&
                (z.real() != 0.0 || z.imag() != 0.0))
                throw std::runtime_error(
                    "diagonal element has nonzero off-diagonal entry");
            a.at(i, k) = z;
        }
    }
    return a;
}

json to_json(const ModuleVector& x) {
    json comps = json::array();
    for (const auto& c : x.components) comps.push_back(to_json(c));
    return {{"rank", x.rank()}, {"components", std::move(comps)}};
}

ModuleVector module_vector_from_json(const json& j, AlgebraDescriptor d) {
    if (!j.contains("rank") || !j.contains("components"))
        throw std::runtime_error("module vector needs rank and components");
    const int rank = j.at("rank").get<int>();
    const json& comps = j.at("components");
    if (!comps.is_array() || static_cast<int>(comps.size()) != rank)
        throw std::runtime_error("module vector component count mismatch");
    ModuleVector x(d, rank);
    for (int k = 0; k < rank; ++k) {
        x.components[k] = algebra_element_from_json(comps[k]);
        if (!(x.components[k].desc == d))
            throw std::runtime_error("module vector component descriptor mismatch");
    }
    return x;
}

json to_json(const CoefficientSequence& s) {
    json out = json::array();
    for (const auto& v : s.entries) out.push_back(to_json(v));
    return out;
}

CoefficientSequence coefficient_sequence_from_json(const json& j,
                                                   AlgebraDescriptor d) {
    if (!j.is_array() || j.empty())
        throw std::runtime_error("coefficient sequence must be a nonempty array");
    CoefficientSequence s;
    for (const auto& vj : j) s.entries.push_back(module_vector_from_json(vj, d));
    const int rank = s.entries.front().rank();
    for (const auto& v : s.entries)
        if (v.rank() != rank)
            throw std::runtime_error("coefficient sequence shape mismatch");
    return s;
}

json to_json(const ModuleOperator& t) {
    json rows = json::array();
    for (int j = 0; j < t.rank; ++j) {
        json row = json::array();
        for (int k = 0; k < t.rank; ++k) row.push_back(to_json(t.at(j, k)));
        rows.push_back(std::move(row));
    }
    return {{"rank", t.rank}, {"grid", std::move(rows)}};
}

ModuleOperator module_operator_from_json(const json& j, AlgebraDescriptor d) {
    if (!j.contains("rank") || !j.contains("grid"))
        throw std::runtime_error("module operator needs rank and grid");
    const int rank = j.at("rank").get<int>();
    if (rank < 1) throw std::runtime_error("operator rank must be >= 1");
    const json& grid = j.at("grid");
    if (!grid.is_array() || static_cast<int>(grid.size()) != rank)
        throw std::runtime_error("operator grid row count mismatch");
    ModuleOperator t(d, rank);
    for (int r = 0; r < rank; ++r) {
        const json& row = grid[r];
        if (!row.is_array() || static_cast<int>(row.size()) != rank)
            throw std::runtime_error("operator grid column count mismatch");
        for (int c = 0; c < rank; ++c) {
            t.at(r, c) = algebra_element_from_json(row[c]);
            if (!(t.at(r, c).desc == d))
                throw std::runtime_error("operator grid descriptor mismatch");
        }
    }
    return t;
}

json to_json(const Instance& inst) {
    const AlgebraDescriptor d = inst.family.descriptor();
    json fam = json::array();
    for (const auto& t : inst.family.ops) fam.push_back(to_json(t));
    json j = {{"algebra", descriptor_to_json(d)},
              {"rank", inst.family.rank()},
              {"family", std::move(fam)},
              {"C", to_json(inst.family.C)},
              {"C_prime", to_json(inst.family.C_prime)}};
    if (inst.bounds)
        j["bounds"] = {{"A", to_json(inst.bounds->A)},
                       {"B", to_json(inst.bounds->B)}};
    return j;
}

Instance instance_from_json(const json& j) {
    if (!j.is_object()) throw std::runtime_error("instance must be an object");
    for (const char* key : {"algebra", "rank", "family", "C", "C_prime"})
        if (!j.contains(key))
            throw std::runtime_error(std::string("instance missing field ") + key);
    const AlgebraDescriptor d = descriptor_from_json(j.at("algebra"));
    const int rank = j.at("rank").get<int>();

    Instance inst;
    const json& fam = j.at("family");
    if (!fam.is_array() || fam.empty())
        throw std::runtime_error("instance family must be a nonempty array");
    for (const auto& tj : fam) {
        ModuleOperator t = module_operator_from_json(tj, d);
        if (t.rank != rank) throw std::runtime_error("family rank mismatch");
        inst.family.ops.push_back(std::move(t));
    }
    inst.family.C = module_operator_from_json(j.at("C"), d);
    inst.family.C_prime = module_operator_from_json(j.at("C_prime"), d);
    if (inst.family.C.rank != rank || inst.family.C_prime.rank != rank)
        throw std::runtime_error("controller rank mismatch");

    if (j.contains("bounds")) {
        const json& b = j.at("bounds");
        if (!b.contains("A") || !b.contains("B"))
            throw std::runtime_error("bounds need both A and B");
        StarBoundPair pair{algebra_element_from_json(b.at("A")),
                           algebra_element_from_json(b.at("B"))};
        if (!(pair.A.desc == d) || !(pair.B.desc == d))
            throw std::runtime_error("bounds descriptor mismatch");
        inst.bounds = std::move(pair);
    }
    return inst;
}

json to_json(const FrameCertificate& cert) {
    return {{"verdict", verdict_name(cert.verdict)},
            {"scalar_lower", cert.scalar_lower},
            {"scalar_upper", cert.scalar_upper},
            {"star_residual_min", cert.star_residual_min},
            {"commutation_residual", cert.commutation_residual},
            {"tol", cert.tol},
            {"samples", cert.samples},
            {"seed", cert.seed},
            {"tight", cert.tight},
            {"parseval", cert.parseval},
            {"check_residuals", cert.check_residuals}};
}

json to_json(const TransformReport& rep) {
    json j;
    if (rep.predicted_lower_element)
        j["predicted_lower"] = to_json(*rep.predicted_lower_element);
    else
        j["predicted_lower"] = rep.predicted_scalar_lower;
    if (rep.predicted_upper_element)
        j["predicted_upper"] = to_json(*rep.predicted_upper_element);
    else
        j["predicted_upper"] = rep.predicted_scalar_upper;
    j["predicted_scalar_lower"] = rep.predicted_scalar_lower;
    j["predicted_scalar_upper"] = rep.predicted_scalar_upper;
    j["certificate"] = to_json(rep.certificate);
    if (rep.frame_operator_residual)
        j["frame_operator_residual"] = *rep.frame_operator_residual;
    else
        j["frame_operator_residual"] = nullptr;
    if (rep.canonical_residual) j["canonical_residual"] = *rep.canonical_residual;
    j["mode"] = mode_name(rep.mode);
    j["held"] = rep.held;
    return j;
}

json to_json(const TransportReport& rep) {
    return {{"defining_relation_residual", rep.defining_relation_residual},
            {"commutation_residual", rep.commutation_residual},
            {"intertwining_residual", rep.intertwining_residual},
            {"certificate", to_json(rep.certificate)},
            {"transported_bounds",
             {{"A", to_json(rep.transported_bounds.A)},
              {"B", to_json(rep.transported_bounds.B)}}},
            {"held", rep.held}};
}

}  // namespace opframe
