// JSON instance and solution files.
//
// Instance: {mode, capacity_mode, k, p, clients:[id...],
//            facilities:[{id,cap}...],
//            metric: {type:"matrix", order:[ids], values:[[...]]}
//                  | {type:"graph", edges:[[clientId,facilityId]...]}}
// Solution: {radius, open:[{id,mult}...], assign:[[clientId,facilityId]...]}

#ifndef CKSO_JSON_IO_HPP
#define CKSO_JSON_IO_HPP

#include <string>

#include "ckso/instance.hpp"

namespace ckso {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

MetricInstance load_instance(const std::string& path);
MetricInstance parse_instance(const std::string& json_text);
std::string instance_to_json(const MetricInstance& inst);
void save_instance(const MetricInstance& inst, const std::string& path);

Solution load_solution(const std::string& path);
Solution parse_solution(const std::string& json_text);
std::string solution_to_json(const Solution& sol);
void save_solution(const Solution& sol, const std::string& path);

}  // namespace ckso

#endif  // CKSO_JSON_IO_HPP
