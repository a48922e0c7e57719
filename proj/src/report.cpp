#include "qreflect/report.hpp"

#include <nlohmann/json.hpp>

namespace qreflect {
namespace report {

using nlohmann::json;

std::string RunReport::to_json() const {
  json j;
  j["suite"] = suite;
  j["elapsed_ms"] = elapsed_ms;
  j["checks"] = json::array();
  for (const auto& c : checks) {
    json jc;
    jc["id"] = c.id;
    jc["params"] = json::object();
    for (const auto& [k, v] : c.params) jc["params"][k] = v;
    jc["status"] = status_name(c.status);
    jc["points_tried"] = c.points_tried;
    if (c.witness) {
      json w;
      w["row"] = c.witness->row;
      w["col"] = c.witness->col;
      if (!c.witness->row_label.empty()) w["row_label"] = c.witness->row_label;
      if (!c.witness->col_label.empty()) w["col_label"] = c.witness->col_label;
      w["lhs"] = c.witness->lhs;
      w["rhs"] = c.witness->rhs;
      if (!c.witness->detail.empty()) w["detail"] = c.witness->detail;
      jc["witness"] = w;
    }
    j["checks"].push_back(jc);
  }
  return j.dump(2);
}

}  // namespace report
}  // namespace qreflect
