#include "hllab/json_io.hpp"

#include <cmath>

namespace hllab {

using nlohmann::json;

namespace {

json p_to_json(const std::vector<double>& entries) {
    json out = json::array();
    for (double p : entries) {
        if (std::isinf(p))
            out.push_back("inf");
        else
            out.push_back(p);
    }
    return out;
}

}  // namespace

json vector_to_json(const Vector& x, Field field) {
    json out = json::array();
    for (const Scalar& v : x) {
        if (field == Field::Real)
            out.push_back(v.real());
        else
            out.push_back({v.real(), v.imag()});
    }
    return out;
}

json norm_to_json(const NormResult& r, Field field) {
    json j;
    j["value"] = r.value;
    j["method"] = to_string(r.method);
    j["certified"] = r.certified_exact;
    j["starts_used"] = r.starts_used;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["degenerate_restarts"] = r.degenerate_restarts;
    json w = json::array();
    for (const Vector& x : r.witness) w.push_back(vector_to_json(x, field));
    j["witness"] = std::move(w);
    return j;
}

json record_to_json(const VerificationRecord& rec, Field field) {
    json j;
    j["lhs"] = rec.lhs;
    j["rho"] = rec.rho;
    j["norm"] = rec.norm.value;
    j["norm_method"] = to_string(rec.norm.method);
    j["certified"] = rec.norm_certified;
    j["constant"] = rec.constant;
    j["bound_source"] = rec.bound_source;
    if (rec.ratio)
        j["ratio"] = *rec.ratio;
    else
        j["ratio"] = nullptr;
    j["holds"] = rec.holds;
    j["verdict"] = to_string(rec.verdict);
    j["slack"] = rec.slack;
    (void)field;
    return j;
}

json summary_to_json(const BatchSummary& s) {
    json j;
    j["count"] = s.count;
    j["holds"] = s.holds;
    j["inconclusive"] = s.inconclusive;
    j["certified_violations"] = s.violations;
    j["min_slack"] = s.min_slack;
    if (s.max_ratio)
        j["max_ratio"] = *s.max_ratio;
    else
        j["max_ratio"] = nullptr;
    j["argmax_tensor_id"] = s.argmax_tensor_id;
    return j;
}

json regime_to_json(const Regime& r) {
    json j;
    j["tag"] = to_string(r.tag);
    j["recip_sum"] = r.recip_sum;
    j["bh_admissible"] = r.bh_admissible;  // set only on the |1/p| = 1/2 boundary
    return j;
}

json subset_report_to_json(const SubsetReport& rep) {
    json j;
    if (rep.s)
        j["s"] = *rep.s;
    else
        j["s"] = nullptr;
    j["indices"] = rep.indices;
    j["partial_sum"] = rep.partial_sum;
    j["mode"] = to_string(rep.mode);
    json all = json::array();
    for (const QualifyingSubset& q : rep.all_qualifying) {
        json e;
        e["indices"] = q.indices;
        e["partial_sum"] = q.partial_sum;
        e["bound"] = q.bound;
        all.push_back(std::move(e));
    }
    j["all_qualifying"] = std::move(all);
    return j;
}

json best_bound_to_json(const BestBound& b) {
    json j;
    j["value"] = b.value;
    json srcs = json::array();
    for (BoundSource s : b.sources) srcs.push_back(to_string(s));
    j["sources"] = std::move(srcs);
    json cands = json::array();
    for (const auto& [src, v] : b.candidates) {
        json c;
        c["source"] = to_string(src);
        c["value"] = v;
        cands.push_back(std::move(c));
    }
    j["candidates"] = std::move(cands);
    return j;
}

json growth_table_to_json(const GrowthTable& t) {
    json j;
    j["p"] = p_to_json(t.p_pattern);
    j["q"] = t.q;
    json rows = json::array();
    for (const GrowthRow& r : t.rows) {
        json e;
        e["n"] = r.n;
        e["trials"] = r.trials;
        e["best_ratio"] = r.best_ratio;
        e["mean_ratio"] = r.mean_ratio;
        e["std_ratio"] = r.std_ratio;
        e["certified_fraction"] = r.certified_fraction;
        rows.push_back(std::move(e));
    }
    j["rows"] = std::move(rows);
    j["slope"] = t.slope;
    j["slope_stderr"] = t.slope_stderr;
    return j;
}

json ratio_record_to_json(const RatioRecord& rec) {
    json j;
    j["ratio"] = rec.ratio;
    j["lhs"] = rec.lhs;
    j["norm"] = norm_to_json(rec.norm, rec.tensor.field());
    j["iterations"] = rec.iterations;
    j["seed_label"] = to_string(rec.seed_label);
    j["tensor"] = json::parse(tensor_to_json(rec.tensor));
    return j;
}

}  // namespace hllab
