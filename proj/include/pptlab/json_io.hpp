#pragma once

#include <string>

#include <json.hpp>

#include "pptlab/analysis.hpp"
#include "pptlab/normal_form.hpp"
#include "pptlab/oracle.hpp"
#include "pptlab/product.hpp"

namespace pptlab {

using Json = nlohmann::ordered_json;

/// Doubles pass through 12 significant digits before serialization so a fixed
/// config always prints byte-identical JSON.
double round12(double x);
Json json_double(double x);

Json make_report(const std::string& kind);

Json normal_form_json(const HnnNormalForm& nf);
Json audit_json(const AuditReport& report);
std::string audit_csv(const AuditReport& report);
std::string audit_text(const AuditReport& report);
Json classification_json(const Classification& c);
Json tits_json(const TitsReport& report);
Json confining_json(const ConfiningReport& report);
Json rank_obstruction_json(const std::optional<RankObstruction>& r);
Json pingpong_json(const PingPongResult& r);
Json growth_json(const GrowthSeries& s);
std::string growth_csv(const GrowthSeries& s);

}  // namespace pptlab
