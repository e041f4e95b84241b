#ifndef FFH_REPORT_HPP
#define FFH_REPORT_HPP

// JSON renderings of results. Every number that is not a count is an exact
// rational string; decimal renderings are optional and labelled approximate.

#include "ffh/gap_scan.hpp"
#include "ffh/isotriviality.hpp"

#include <json.hpp>

#include <optional>

namespace ffh {

using Json = nlohmann::ordered_json;

inline Json point_json(const ProjectivePoint& p) { return Json(to_literals(p)); }

inline Json map_json(const Endomorphism& f) {
    Json forms = Json::array();
    for (const auto& form : f.forms()) forms.push_back(to_string(form));
    const auto& cert = f.certificate();
    return Json{{"k", f.k()},
                {"d", f.d()},
                {"forms", forms},
                {"coeff_height", f.coeff_height()},
                {"defect_bound", f.defect_bound()},
                {"certificate",
                 {{"t0", to_string(cert.t0)}, {"value", to_string(cert.value)}, {"res_degree_bound", cert.res_degree_bound}}}};
}

inline Json interval_json(const HeightInterval& i, std::optional<int> decimal = std::nullopt) {
    Json j{{"lo", to_string(i.lo)}, {"hi", to_string(i.hi)}, {"n", i.n_used}, {"defect", i.defect_used}};
    if (decimal) j["approx"] = {{"lo", to_decimal(i.lo, *decimal)}, {"hi", to_decimal(i.hi, *decimal)}};
    return j;
}

inline Json verdict_json(const Verdict& v, std::optional<int> decimal = std::nullopt) {
    Json j{{"kind", verdict_kind(v)}};
    if (const auto* p = std::get_if<Preperiodic>(&v)) {
        j["tail"] = p->tail;
        j["period"] = p->period;
    } else if (const auto* p = std::get_if<PositiveCertified>(&v)) {
        j["lower"] = to_string(p->lower);
        if (decimal) j["lower_approx"] = to_decimal(p->lower, *decimal);
        j["witness_n"] = p->witness_n;
    } else {
        const auto& u = std::get<Undecided>(v);
        j["budget"] = u.n_max;
        j["interval"] = interval_json(u.interval, decimal);
        j["escape_n"] = u.escape_n ? Json(*u.escape_n) : Json(nullptr);
        j["truncated"] = u.truncated;
    }
    return j;
}

/// Deterministic content of a scan report; run metadata is left out.
inline Json scan_report_json(const ScanReport& r, std::optional<int> decimal = std::nullopt) {
    Json undecided = Json::array();
    Json verdicts = Json::array();
    for (const auto& e : r.entries) {
        if (const auto* u = std::get_if<Undecided>(&e.verdict))
            undecided.push_back({{"point", point_json(e.point)}, {"interval", interval_json(u->interval, decimal)}});
        verdicts.push_back({{"point", point_json(e.point)}, {"verdict", verdict_json(e.verdict, decimal)}});
    }
    Json j{{"total", r.total},
           {"preperiodic", r.preperiodic},
           {"positive_certified", r.positive_certified},
           {"undecided", r.undecided},
           {"min_positive_lower", r.min_positive_lower ? Json(to_string(*r.min_positive_lower)) : Json(nullptr)}};
    if (decimal && r.min_positive_lower) j["min_positive_lower_approx"] = to_decimal(*r.min_positive_lower, *decimal);
    j["undecided_points"] = std::move(undecided);
    j["verdicts"] = std::move(verdicts);
    return j;
}

inline std::string multiplier_text(const FixedPointData& data) {
    const std::string num = to_string(data.multiplier_num), den = to_string(data.multiplier_den);
    if (den == "1") return num;
    return "(" + num + ")/(" + den + ")";
}

inline Json isotriviality_json(const FixedPointData& data, const MultiplierInvariants& inv,
                               const IsotrivialityVerdict& v) {
    Json sigma = Json::array();
    for (const auto& s : inv.sigma) sigma.push_back(to_string(s));
    Json verdict;
    if (std::holds_alternative<Isotrivial>(v)) {
        verdict = {{"kind", "isotrivial"}};
    } else if (const auto* n = std::get_if<NonIsotrivial>(&v)) {
        verdict = {{"kind", "nonisotrivial"}, {"witness", "sigma" + std::to_string(n->witness)}, {"value", to_string(n->value)}};
    } else {
        verdict = {{"kind", "inconclusive"}, {"reason", std::get<Inconclusive>(v).reason}};
    }
    Json j{{"fixed_points",
            {{"phi", to_string(data.phi)},
             {"infinity_fixed", data.infinity_fixed},
             {"multiplier", multiplier_text(data)}}},
           {"sigma", sigma}};
    if (inv.sigma.size() == 3) j["index_relation"] = inv.sigma[2] == inv.sigma[0] - RationalFunc(2);
    j["verdict"] = std::move(verdict);
    return j;
}

}  // namespace ffh

#endif  // FFH_REPORT_HPP
