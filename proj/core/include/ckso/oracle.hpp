// Exact brute-force optimum for desk-scale instances: ascending radius scan
// over candidate thresholds, enumerating facility k-subsets (k-multisets
// over positive capacities in soft mode) and checking service by max-flow.

#ifndef CKSO_ORACLE_HPP
#define CKSO_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "ckso/instance.hpp"

namespace ckso {

struct OracleResult {
  bool feasible = false;
  double opt = 0.0;
  std::optional<Solution> witness;
};

class OracleBudgetExceeded : public std::runtime_error {
 public:
  explicit OracleBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct OracleOptions {
  std::int64_t flow_budget = 1000000;  // refuse, never guess, beyond this
};

OracleResult exact_opt(const MetricInstance& inst, const OracleOptions& opts = {});

// Can exactly p clients be served at radius tau with k facilities?
bool oracle_feasible_at(const MetricInstance& inst, double tau,
                        const OracleOptions& opts = {});

}  // namespace ckso

#endif  // CKSO_ORACLE_HPP
