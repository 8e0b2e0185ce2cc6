#pragma once

#include <json.hpp>  // vendored nlohmann/json

#include <cstdint>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "dunkl/dunkl.hpp"

namespace dunkl {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// scalars and complex entries

inline json scalar_to_json(const Rational& x) { return format_scalar(x); }
inline json scalar_to_json(double x) { return x; }

template <class K>
json scalar_vec_to_json(const std::vector<K>& v) {
    json a = json::array();
    for (const K& x : v) a.push_back(scalar_to_json(x));
    return a;
}

inline Rational json_to_rational(const json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    fail(errc::bad_input, where + ": exact mode needs rational strings (\"p/q\") or integers");
}

inline double json_to_double(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
    fail(errc::bad_input, where + ": float mode needs numbers");
}

template <class K>
K json_to_scalar(const json& j, const std::string& where) {
    if constexpr (is_exact_v<K>)
        return json_to_rational(j, where);
    else
        return json_to_double(j, where);
}

template <class K>
json complex_to_json(const Cx<K>& z) {
    return json::array({scalar_to_json(z.re), scalar_to_json(z.im)});
}

template <class K>
Cx<K> json_to_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        fail(errc::bad_input, where + ": complex entries are [re, im] pairs");
    return Cx<K>{json_to_scalar<K>(j[0], where), json_to_scalar<K>(j[1], where)};
}

// ---------------------------------------------------------------------------
// arrangement and weights files

template <class K>
json arrangement_to_json(const Arrangement<K>& arr) {
    json j;
    j["d"] = arr.dim;
    j["mode"] = mode_name(Arrangement<K>::mode);
    json normals = json::array();
    for (const auto& v : arr.normals) {
        json row = json::array();
        for (const auto& z : v) row.push_back(complex_to_json(z));
        normals.push_back(std::move(row));
    }
    j["normals"] = std::move(normals);
    j["labels"] = arr.labels;
    return j;
}

using ArrangementVariant = std::variant<Arrangement<Rational>, Arrangement<double>>;

template <class K>
Arrangement<K> parse_arrangement_typed(const json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("normals"))
        fail(errc::bad_input, "arrangement file needs {\"d\", \"mode\", \"normals\"}");
    int d = j["d"].get<int>();
    std::vector<CVec<K>> normals;
    for (const auto& row : j["normals"]) {
        CVec<K> v;
        for (const auto& entry : row) v.push_back(json_to_complex<K>(entry, "normals"));
        normals.push_back(std::move(v));
    }
    std::vector<std::string> labels;
    if (j.contains("labels") && !j["labels"].is_null())
        labels = j["labels"].get<std::vector<std::string>>();
    return validate_arrangement<K>(d, std::move(normals), std::move(labels));
}

inline ArrangementVariant parse_arrangement_json(const json& j_in) {
    // tolerate a report envelope around the arrangement object
    const json& j = (j_in.is_object() && j_in.contains("payload") && !j_in.contains("normals"))
                        ? j_in["payload"]
                        : j_in;
    std::string mode = j.is_object() && j.contains("mode") ? j["mode"].get<std::string>() : "exact";
    if (mode == "exact") return parse_arrangement_typed<Rational>(j);
    if (mode == "float") return parse_arrangement_typed<double>(j);
    fail(errc::bad_input, "mode must be \"exact\" or \"float\", got \"" + mode + "\"");
}

template <class K>
WeightVector<K> parse_weights_json(const json& j, int n) {
    if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array())
        fail(errc::bad_input, "weights file needs {\"weights\": [...]}");
    WeightVector<K> w;
    for (const auto& entry : j["weights"]) w.push_back(json_to_scalar<K>(entry, "weights"));
    validate_weights(w, n);
    return w;
}

template <class K>
json weights_to_json(const WeightVector<K>& w) {
    return json{{"weights", scalar_vec_to_json(w)}};
}

// ---------------------------------------------------------------------------
// report payloads (flat member indices are 1-based in every report)

inline json members_to_json(const std::vector<int>& members) {
    json a = json::array();
    for (int i : members) a.push_back(i + 1);
    return a;
}

inline json poset_to_json(const IntersectionPoset& poset) {
    json j;
    j["d"] = poset.dim;
    j["n"] = poset.n;
    j["essential"] = poset.essential;
    j["irreducible"] = poset.irreducible;
    json flats = json::array();
    for (const Flat& f : poset.flats) {
        flats.push_back(json{{"members", members_to_json(f.members)},
                             {"rank", f.rank},
                             {"multiplicity", f.multiplicity()},
                             {"class", f.irreducible ? "irreducible" : "reducible"}});
    }
    j["flats"] = std::move(flats);
    json counts = json::object();
    for (int r = 1; r <= poset.dim; ++r) {
        int c = static_cast<int>(poset.flats_of_rank(r).size());
        if (c) counts[std::to_string(r)] = c;
    }
    j["flat_counts_by_rank"] = std::move(counts);
    j["g2_count"] = poset.rank2_irreducible.size();
    json pairs = json::array();
    for (auto [a, b] : poset.rank2_reducible_pairs) pairs.push_back(json::array({a + 1, b + 1}));
    j["r2_pairs"] = std::move(pairs);
    return j;
}

template <class K>
json stability_to_json(const IntersectionPoset& poset, const StabilityReport<K>& rep) {
    json j;
    j["stable"] = rep.stable;
    j["global_mean"] = scalar_to_json(rep.global_mean);
    j["total"] = scalar_to_json(rep.total);
    auto row_json = [&](const StabilityRow<K>& row) {
        const Flat& f = poset.flats[row.flat_index];
        return json{{"flat", members_to_json(f.members)},
                    {"rank", f.rank},
                    {"a_L", scalar_to_json(row.a_L)},
                    {"margin", scalar_to_json(row.margin)}};
    };
    if (rep.worst_row >= 0) j["worst"] = row_json(rep.rows[rep.worst_row]);
    json rows = json::array();
    for (const auto& row : rep.rows) rows.push_back(row_json(row));
    j["rows"] = std::move(rows);
    j["normalized_weights"] = scalar_vec_to_json(rep.normalized_weights);
    return j;
}

template <class K>
json qform_to_json(const IntersectionPoset& poset, const QEvaluation<K>& ev) {
    json j;
    j["Q"] = scalar_to_json(ev.Q);
    j["grad"] = scalar_vec_to_json(ev.grad);
    j["s"] = scalar_vec_to_json(ev.s);
    j["critQ_residual"] = scalar_vec_to_json(ev.critq_residual);
    j["B"] = ev.B;
    j["total"] = scalar_to_json(ev.total);
    json lw = json::array();
    for (const auto& [fi, aL] : ev.local_weights)
        lw.push_back(json{{"flat", members_to_json(poset.flats[fi].members)},
                          {"a_L", scalar_to_json(aL)}});
    j["local_weights"] = std::move(lw);
    return j;
}

inline json langer_to_json(int n, const LangerStatistic& st) {
    return json{{"n", n},
                {"sum_mult", st.sum_mult},
                {"bound", format_scalar(st.bound)},
                {"max_mult_ok", st.max_mult_ok},
                {"holds", st.holds}};
}

inline json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.n; ++i) {
        json row = json::array();
        for (int k = 0; k < m.n; ++k)
            row.push_back(json::array({std::real(m(i, k)), std::imag(m(i, k))}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json frame_to_json(const std::vector<cdvec>& frame) {
    json rows = json::array();
    for (const cdvec& v : frame) {
        json row = json::array();
        for (const cd& z : v) row.push_back(json::array({std::real(z), std::imag(z)}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json balance_to_json(const BalanceResult& res) {
    json j;
    j["status"] = balance_status_name(res.status);
    j["c"] = res.c;
    j["residual"] = res.residual;
    j["iterations"] = res.iterations;
    j["gauge_cond"] = res.gauge_cond;
    if (res.converged()) {
        j["gauge"] = mat_to_json(res.gauge);
        j["metric"] = mat_to_json(res.metric);
        j["balanced_frame"] = frame_to_json(res.balanced_frame);
        j["projector_residual"] = res.projector_residual;
    }
    if (res.certificate) {
        j["certificate"] = json{{"flat", members_to_json(res.certificate->members)},
                                {"a_L", res.certificate->a_L},
                                {"global_mean", res.certificate->global_mean},
                                {"margin", res.certificate->margin}};
    } else {
        j["certificate"] = nullptr;
    }
    return j;
}

inline json condition_f_to_json(const IntersectionPoset& poset, const ConditionFReport& rep) {
    json j;
    j["passed"] = rep.passed;
    j["max_commutator"] = rep.max_commutator;
    j["tol"] = rep.tol;
    j["characterization_passed"] = rep.characterization_passed;
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back(json{{"flat", members_to_json(poset.flats[r.flat_index].members)},
                            {"hyperplane", r.hyperplane + 1},
                            {"commutator_norm", r.commutator_norm}});
    j["commutators"] = std::move(rows);
    json orth = json::array();
    for (const auto& r : rep.orthogonality_rows)
        orth.push_back(json{{"i", r.i + 1}, {"j", r.j + 1}, {"abs_inner", r.inner_abs}});
    j["orthogonality_rows"] = std::move(orth);
    json sub = json::array();
    for (const auto& r : rep.subframe_rows)
        sub.push_back(json{{"flat", members_to_json(poset.flats[r.flat_index].members)},
                           {"gap", r.gap},
                           {"rhs", r.rhs},
                           {"tight", r.tight}});
    j["subframe_rows"] = std::move(sub);
    return j;
}

template <class K>
json verdict_to_json(const IntersectionPoset& poset, const DunklVerdict<K>& v) {
    json j;
    j["decision"] = decision_name(v.decision);
    j["essential"] = v.essential;
    j["irreducible"] = v.irreducible;
    j["stable_and_q_zero"] = v.stable_and_q_zero;
    j["stable_and_critq_zero"] = v.stable_and_critq_zero;
    j["stability"] = v.stability ? stability_to_json(poset, *v.stability) : json(nullptr);
    j["qform"] = v.q_eval ? qform_to_json(poset, *v.q_eval) : json(nullptr);
    j["balance"] = v.balance_result ? balance_to_json(*v.balance_result) : json(nullptr);
    j["condition_f"] = v.condition_f ? condition_f_to_json(poset, *v.condition_f) : json(nullptr);
    j["certificates"] = v.certificates;
    j["inconsistencies"] = v.inconsistencies;
    j["consistent"] = v.consistent();
    return j;
}

template <class K>
json feasibility_to_json(const IntersectionPoset& poset, const FeasibilityResult<K>& res) {
    (void)poset;
    json j;
    j["feasible"] = res.feasible;
    j["status"] = feasibility_status_name(res.status);
    j["dimension"] = res.dimension;
    j["slack"] = scalar_to_json(res.slack);
    j["sample"] = res.feasible ? scalar_vec_to_json(res.sample) : json(nullptr);
    j["active_constraints"] = res.active_constraints;
    return j;
}

// ---------------------------------------------------------------------------
// run-report envelope

inline constexpr const char* tool_version = "0.1.0";

/// FNV-1a 64-bit over raw bytes, hex-encoded. Stable fingerprint for the
/// reproducibility contract, not a cryptographic hash.
inline std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

inline json run_report(const std::string& command, scalar_mode mode, json input_digest,
                       json payload, const json* timing = nullptr) {
    json j;
    j["command"] = command;
    j["version"] = tool_version;
    j["mode"] = mode_name(mode);
    j["input_digest"] = std::move(input_digest);
    j["payload"] = std::move(payload);
    if (timing) j["timing"] = *timing;
    return j;
}

}  // namespace dunkl
