#include "heatuc/bidding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatuc {

double MarginalHeatCostCurve::value(double lambda) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : pieces)
    best = std::max(best, p.slope * lambda + p.intercept);
  return best;
}

double MarginalHeatCostCurve::max_over(double lambda_bar) const {
  // Convex, so the maximum over an interval sits at an endpoint.
  return std::max(value(0.0), value(lambda_bar));
}

MarginalHeatCostCurve hp_curve(const HeatPump& hp) {
  return {hp.id, {{1.0 / hp.cop, 0.0}}};
}

MarginalHeatCostCurve chp_curve(const ExtractionChp& chp) {
  return {chp.id,
          {{-chp.r, chp.fuel_cost * (chp.rho_h + chp.r * chp.rho_e)},
           {chp.rho_h / chp.rho_e, 0.0}}};
}

MarginalHeatCostCurve heat_only_curve(const HeatOnlyUnit& u) {
  return {u.id, {{0.0, u.marginal_cost}}};
}

std::vector<MarginalHeatCostCurve> build_curves(const Case& c) {
  std::vector<MarginalHeatCostCurve> out;
  for (const auto& u : c.chps) out.push_back(chp_curve(u));
  for (const auto& u : c.heat_pumps) out.push_back(hp_curve(u));
  for (const auto& u : c.heat_only) out.push_back(heat_only_curve(u));
  return out;
}

double marginal_heat_cost(const MarginalHeatCostCurve& curve, double lambda) {
  if (curve.pieces.empty())
    throw std::invalid_argument("curve for '" + curve.unit + "' not built");
  return curve.value(lambda);
}

BidLadder build_heat_bids(const HeatUnitRef& unit,
                          const MarginalHeatCostCurve& curve,
                          const std::vector<double>& foreseen_lmps,
                          const std::vector<double>& block_fractions) {
  if (block_fractions.empty())
    throw std::invalid_argument("empty block split for '" + unit.id + "'");
  BidLadder ladder;
  ladder.unit = unit.id;
  ladder.market = Market::Heat;
  ladder.blocks.resize(foreseen_lmps.size());
  for (size_t t = 0; t < foreseen_lmps.size(); ++t) {
    double price = curve.value(foreseen_lmps[t]);
    for (double f : block_fractions)
      ladder.blocks[t].push_back({price, f * unit.q_max});
  }
  return ladder;
}

std::vector<BidLadder> build_all_heat_bids(const Case& c) {
  auto units = heat_units(c);
  auto curves = build_curves(c);
  std::vector<double> flat_lmps(c.horizon.periods, 0.0);
  std::vector<BidLadder> out;
  for (size_t i = 0; i < units.size(); ++i) {
    const auto& u = units[i];
    auto fr_it = c.heat_bid_fractions.find(u.id);
    std::vector<double> fractions =
        fr_it != c.heat_bid_fractions.end() ? fr_it->second
                                            : std::vector<double>{1.0};
    auto lmp_it = c.foreseen_lmps.find(u.id);
    // Heat-only ladders are LMP-independent; a flat zero profile suffices.
    const auto& lmps =
        lmp_it != c.foreseen_lmps.end() ? lmp_it->second : flat_lmps;
    out.push_back(build_heat_bids(u, curves[i], lmps, fractions));
  }
  return out;
}

AdjustedElectricityPosition adjust_electricity_position(
    const ExtractionChp& chp, double heat_dispatch, bool committed,
    int period, int last_selected_bid) {
  AdjustedElectricityPosition pos;
  pos.unit = chp.id;
  pos.node_power = chp.node_power;
  pos.period = period;
  pos.last_selected_bid = last_selected_bid;
  if (!committed) {
    if (heat_dispatch > 1e-9)
      throw std::invalid_argument(chp.id + ": heat dispatch on an off unit");
    return pos;
  }
  if (heat_dispatch < -1e-9 || heat_dispatch > chp.q_max() + 1e-6)
    throw std::invalid_argument(chp.id + ": heat dispatch outside capability");
  double q = std::max(heat_dispatch, 0.0);
  // Minimum electricity output given the heat dispatch: the r-line, or the
  // fuel floor when the dispatch sits below the minimum-fuel heat point.
  double p_min =
      std::max(chp.r * q, (chp.f_min - chp.rho_h * q) / chp.rho_e);
  double p_max = (chp.f_max - chp.rho_h * q) / chp.rho_e;
  pos.self_commit = p_min;
  double flex = p_max - p_min;
  if (flex > 1e-12)
    pos.flexible.push_back({chp.fuel_cost * chp.rho_e, flex});
  return pos;
}

AdjustedElectricityPosition adjust_electricity_position(
    const HeatPump& hp, double heat_dispatch, bool committed, int period,
    int last_selected_bid) {
  AdjustedElectricityPosition pos;
  pos.unit = hp.id;
  pos.node_power = hp.node_power;
  pos.period = period;
  pos.last_selected_bid = last_selected_bid;
  if (!committed) {
    if (heat_dispatch > 1e-9)
      throw std::invalid_argument(hp.id + ": heat dispatch on an off unit");
    return pos;
  }
  if (heat_dispatch < -1e-9 || heat_dispatch > hp.q_max + 1e-6)
    throw std::invalid_argument(hp.id + ": heat dispatch outside capability");
  pos.self_commit = -std::max(heat_dispatch, 0.0) / hp.cop;
  return pos;
}

}  // namespace heatuc
