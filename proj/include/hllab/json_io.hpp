#pragma once

#include <json.hpp>

#include "hllab/exponents.hpp"
#include "hllab/ksz.hpp"
#include "hllab/norms.hpp"
#include "hllab/search.hpp"
#include "hllab/verify.hpp"

namespace hllab {

nlohmann::json vector_to_json(const Vector& x, Field field);
nlohmann::json norm_to_json(const NormResult& r, Field field);
nlohmann::json record_to_json(const VerificationRecord& rec, Field field);
nlohmann::json summary_to_json(const BatchSummary& s);
nlohmann::json regime_to_json(const Regime& r);
nlohmann::json subset_report_to_json(const SubsetReport& rep);
nlohmann::json best_bound_to_json(const BestBound& b);
nlohmann::json growth_table_to_json(const GrowthTable& t);
nlohmann::json ratio_record_to_json(const RatioRecord& rec);

}  // namespace hllab
