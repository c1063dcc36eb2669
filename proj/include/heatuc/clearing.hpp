#pragma once

#include <map>
#include <string>
#include <vector>

#include "heatuc/compact.hpp"

namespace heatuc {

/// Raised when a clearing has no feasible dispatch; names the first
/// period/node where committed supply cannot cover the load.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::string market, int period, std::string node,
                  std::string detail)
      : std::runtime_error("infeasible " + market + " clearing at t=" +
                           std::to_string(period) +
                           (node.empty() ? "" : " near node " + node) + ": " +
                           detail),
        market(std::move(market)),
        period(period),
        node(std::move(node)),
        detail(std::move(detail)) {}
  std::string market;
  int period;
  std::string node;
  std::string detail;
};

struct BlockAcceptance {
  std::string unit;
  int period = 0;
  int block = 0;
  double price = 0.0;
  double offered = 0.0;
  double accepted = 0.0;
};

/// Primal dispatch plus duals for one market clearing over the horizon.
struct MarketOutcome {
  std::string market;
  std::vector<BlockAcceptance> accepted;
  std::map<std::string, std::vector<double>> heat_dispatch;    // Q_jt
  std::map<std::string, std::vector<double>> power_dispatch;   // P_jt
  std::map<std::string, std::vector<double>> hp_consumption;   // L_jt
  std::map<std::string, std::vector<double>> nodal_price;
  std::map<std::string, std::vector<double>> flow;  // net line/pipe flow
  double objective = 0.0;  // sum of price*accepted over all blocks

  // Raw solver vectors, for duality checks and downstream model coupling.
  std::vector<double> x;
  std::vector<double> duals;
  double solver_objective = 0.0;
};

struct SequentialResult {
  MarketOutcome heat;
  std::vector<AdjustedElectricityPosition> positions;  // per chp/hp, period
  MarketOutcome electricity;
  std::vector<double> curtailment_mwh;  // per period
  std::vector<double> available_mwh;    // per period
  double curtailment_pct = 0.0;         // of total available wind
};

MarketOutcome clear_heat(const CompactModel& m, const CommitmentPlan& plan,
                         const Tolerances& tol = {});

MarketOutcome clear_electricity(
    const CompactModel& m,
    const std::vector<AdjustedElectricityPosition>& positions,
    const Tolerances& tol = {});

/// Heat clearing, position adjustment, then electricity clearing, per the
/// sequential market order.
SequentialResult run_sequential(const Case& c, const CompactModel& m,
                                const CommitmentPlan& plan,
                                const Tolerances& tol = {});

struct ValidityRecord {
  std::string unit;
  int period = 0;
  int block = 0;
  double price = 0.0;
  double marginal_cost = 0.0;  // curve at the realized LMP
  double accepted = 0.0;
  bool valid = true;
  double loss = 0.0;  // (marginal_cost - price) * accepted when invalid
};

struct ValidityReport {
  std::vector<ValidityRecord> records;
  std::map<std::string, double> loss_by_unit;
  int violations = 0;
  double total_loss = 0.0;
};

/// Flags every accepted heat block whose price fails to cover the unit's
/// marginal heat cost at the realized electricity LMPs.
ValidityReport check_cost_recovery(const CompactModel& m,
                                   const SequentialResult& seq,
                                   double tol = 1e-6);

/// Builds positions for all CHPs and heat pumps from a heat outcome.
std::vector<AdjustedElectricityPosition> derive_positions(
    const Case& c, const CompactModel& m, const CommitmentPlan& plan,
    const MarketOutcome& heat);

}  // namespace heatuc
