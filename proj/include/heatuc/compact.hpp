#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "heatuc/bidding.hpp"
#include "heatuc/model.hpp"
#include "heatuc/solver.hpp"

namespace heatuc {

/// UC decisions for the whole horizon: on/off, start-up/shut-down
/// indicators, incurred start-up costs, and per-block bid selection.
/// Pipe time-delay assignments exist in the model but are fixed at zero.
struct CommitmentPlan {
  struct UnitPlan {
    std::vector<int> on;     // u0_t
    std::vector<int> start;  // v_t
    std::vector<int> stop;   // w_t
    std::vector<double> startup_cost;          // r_t
    std::vector<std::vector<int>> block_on;    // [t][b]
  };
  int periods = 0;
  std::map<std::string, UnitPlan> units;

  /// All-on plan with every block available (used by the `clear` command).
  static CommitmentPlan all_on(const Case& c,
                               const std::vector<BidLadder>& ladders);
  /// Derives start/stop/startup_cost from `on` and sets block_on = on.
  static CommitmentPlan from_on_states(
      const Case& c, const std::vector<BidLadder>& ladders,
      const std::map<std::string, std::vector<int>>& on);
};

/// Checks 3-binary UC logic, min up/down times, and block monotonicity.
std::vector<std::string> check_plan(const Case& c,
                                    const std::vector<BidLadder>& ladders,
                                    const CommitmentPlan& plan);

/// Scalar affine in the UC vector z: constant + sum coef*z.
struct ZAffine {
  double constant = 0.0;
  std::vector<std::pair<int, double>> z;

  bool depends_on_z() const { return !z.empty(); }
  double at(const std::vector<double>& zval) const {
    double v = constant;
    for (const auto& [i, c] : z) v += c * zval[i];
    return v;
  }
};

/// Block form of the three-level model:
///   UC rows       A_uc z >= b_uc                     (set Z^UC)
///   heat rows     A_h(z) x_h + B_h z  {>=,==} b_h
///   elec rows     A_e x_e + B_e x_h   {>=,==} b_e
/// with costs c0 (z), ch (x_h), ce (x_e). A_h coefficients are affine in z
/// (constant for the bundled cases, which fix pipe delays at zero).
struct CompactModel {
  int T = 0;

  // ---- z block ----
  int nz = 0;
  std::vector<double> c0;
  std::vector<bool> z_binary;
  std::vector<std::string> z_names;
  std::vector<LinearModel::Row> uc_rows;
  std::vector<std::vector<int>> z_u0, z_v, z_w, z_r;   // [unit][t]
  std::vector<std::vector<std::vector<int>>> z_ub;     // [unit][t][b]

  // ---- heat block ----
  int nxh = 0;
  std::vector<double> ch;          // true bid costs
  std::vector<double> ch_perturb;  // deterministic tie-break addition
  std::vector<std::string> xh_names;
  /// Upper bounds of x_h columns, used by the exact McCormick envelopes of
  /// z*x_h products wherever an A_h coefficient depends on z.
  std::vector<double> xh_upper;
  struct HEntry {
    int col;
    ZAffine coef;
  };
  struct HRow {
    RowSense sense = RowSense::GreaterEqual;
    double rhs = 0.0;
    std::vector<HEntry> a;
    std::vector<std::pair<int, double>> bz;
    std::string name;
  };
  std::vector<HRow> h_rows;
  std::vector<std::vector<std::vector<int>>> xh_s;  // [unit][t][b]
  std::vector<std::vector<int>> xh_q;               // [unit][t]
  std::vector<std::vector<int>> xh_sc, xh_fc;       // [chp][t]
  std::vector<std::vector<int>> xh_hl;              // [hp][t]
  std::vector<std::vector<std::array<int, 2>>> xh_pf;  // [pipe][t][fwd,bwd]
  std::vector<std::vector<int>> h_balance_row;      // [heat node][t]

  // ---- elec block ----
  int nxe = 0;
  std::vector<double> ce;
  std::vector<double> ce_perturb;
  std::vector<std::string> xe_names;
  std::vector<bool> xe_free;  // voltage angles
  struct ERow {
    RowSense sense = RowSense::GreaterEqual;
    double rhs = 0.0;
    std::vector<std::pair<int, double>> ae;
    std::vector<std::pair<int, double>> be;
    std::string name;
  };
  std::vector<ERow> e_rows;
  std::vector<std::vector<std::vector<int>>> xe_ts;  // [thermal][t][b]
  std::vector<std::vector<int>> xe_w;                // [wind][t]
  std::vector<std::vector<int>> xe_pflex;            // [chp][t]
  std::vector<std::vector<int>> xe_theta;  // [bus][t]; -1 = reference bus
  std::vector<std::vector<int>> e_balance_row;       // [bus][t]

  // ---- economics ----
  std::vector<std::vector<std::vector<double>>> alpha;  // heat bid prices
  std::vector<std::vector<std::vector<double>>> sbar;   // heat bid quantities
  double lambda_bar = 0.0;  // highest electricity bid price in the case
  double dual_bound = 0.0;  // Y = 10*lambda_bar, McCormick dual bounds
  std::vector<double> big_m;  // per heat unit, max of curve on [0,lambda_bar]

  // ---- references ----
  Case source;
  std::vector<HeatUnitRef> units;
  std::vector<MarginalHeatCostCurve> curves;
  std::vector<std::string> heat_node_ids, bus_ids;
  int ref_bus = 0;

  int unit_index(const std::string& id) const;
  int bus_index(const std::string& id) const;
  int heat_node_index(const std::string& id) const;
};

CompactModel build_compact(const Case& c,
                           const std::vector<BidLadder>& ladders);

/// z vector (length nz) from a plan, and back.
std::vector<double> z_from_plan(const CompactModel& m,
                                const CommitmentPlan& plan);
CommitmentPlan plan_from_z(const CompactModel& m,
                           const std::vector<double>& z);

/// Middle-level LP at fixed z: rows follow h_rows order, columns follow
/// x_h order, so duals and primals map back by index.
LinearModel heat_lp(const CompactModel& m, const std::vector<double>& z);

/// Lower-level LP at fixed x_h (same index correspondence with e_rows).
LinearModel elec_lp(const CompactModel& m, const std::vector<double>& xh);

}  // namespace heatuc
