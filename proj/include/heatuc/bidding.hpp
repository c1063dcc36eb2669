#pragma once

#include <string>
#include <vector>

#include "heatuc/model.hpp"

namespace heatuc {

/// Convex piecewise-linear marginal heat production cost as a function of
/// the electricity LMP: value(lambda) = max over pieces of
/// slope*lambda + intercept.
struct MarginalHeatCostCurve {
  struct Piece {
    double slope = 0.0;
    double intercept = 0.0;
  };
  std::string unit;
  std::vector<Piece> pieces;

  double value(double lambda) const;
  /// Largest curve value over lambda in [0, lambda_bar]; the big-M of the
  /// unit's bid-validity constraints.
  double max_over(double lambda_bar) const;
};

/// Heat pump: single piece lambda/COP.
MarginalHeatCostCurve hp_curve(const HeatPump& hp);
/// Extraction CHP: piece L (incremental cost at the minimum heat-to-power
/// ratio, slope -r) and piece H (opportunity loss at maximum ratio, slope
/// rho_h/rho_e). The pieces meet at lambda = fuel_cost*rho_e.
MarginalHeatCostCurve chp_curve(const ExtractionChp& chp);
/// Heat-only unit: flat at its static marginal cost.
MarginalHeatCostCurve heat_only_curve(const HeatOnlyUnit& u);

/// Curves for every CHP, heat pump, and heat-only unit of the case, in
/// heat_units() order.
std::vector<MarginalHeatCostCurve> build_curves(const Case& c);

double marginal_heat_cost(const MarginalHeatCostCurve& curve, double lambda);

/// Builds a unit's day-ahead heat ladder: per period, block quantities are
/// block_fractions (of the unit's maximum heat output) and every block is
/// priced at the curve evaluated at that period's foreseen LMP.
BidLadder build_heat_bids(const HeatUnitRef& unit,
                          const MarginalHeatCostCurve& curve,
                          const std::vector<double>& foreseen_lmps,
                          const std::vector<double>& block_fractions);

/// Heat ladders for all heat units of the case, in heat_units() order.
std::vector<BidLadder> build_all_heat_bids(const Case& c);

/// Electricity-market position implied by a heat dispatch: a
/// price-inelastic self-committed quantity (positive injection for CHPs,
/// negative for heat pump consumption) plus, for CHPs, one flexible block.
struct AdjustedElectricityPosition {
  std::string unit;
  std::string node_power;
  int period = 0;
  int last_selected_bid = -1;
  double self_commit = 0.0;  // MWh; negative = consumption
  std::vector<BidBlock> flexible;
};

/// CHP: self-commit max(r*Q, (f_min - rho_h*Q)/rho_e) when committed, one
/// flexible block up to the fuel ceiling priced at fuel_cost*rho_e.
AdjustedElectricityPosition adjust_electricity_position(
    const ExtractionChp& chp, double heat_dispatch, bool committed,
    int period, int last_selected_bid);
/// Heat pump: inelastic consumption Q/COP, no flexible blocks.
AdjustedElectricityPosition adjust_electricity_position(
    const HeatPump& hp, double heat_dispatch, bool committed, int period,
    int last_selected_bid);

}  // namespace heatuc
