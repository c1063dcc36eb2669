#include "heatuc/clearing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace heatuc {

namespace {

constexpr double kAccepted = 1e-7;  // threshold for "block was selected"

/// Connected components of the heat network, as node-index sets.
std::vector<std::vector<int>> heat_components(const CompactModel& m,
                                              const Case& c) {
  int n = static_cast<int>(m.heat_node_ids.size());
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> adj(n);
  for (const auto& p : c.heat.pipes) {
    int a = m.heat_node_index(p.from), b = m.heat_node_index(p.to);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comps.emplace_back();
    std::vector<int> stack{s};
    comp[s] = static_cast<int>(comps.size()) - 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comps.back().push_back(u);
      for (int v : adj[u])
        if (comp[v] < 0) {
          comp[v] = comp[u];
          stack.push_back(v);
        }
    }
  }
  return comps;
}

}  // namespace

MarketOutcome clear_heat(const CompactModel& m, const CommitmentPlan& plan,
                         const Tolerances& tol) {
  auto z = z_from_plan(m, plan);
  LinearModel lp = heat_lp(m, z);
  SolveReport rep = solve_lp(lp, tol);
  if (rep.status == SolveStatus::Infeasible) {
    // Name the first period/component whose committed supply cannot cover
    // the load; pipe limits are the remaining cause otherwise.
    for (int t = 0; t < m.T; ++t) {
      std::map<std::string, double> supply, demand;
      for (size_t j = 0; j < m.units.size(); ++j) {
        const auto& up = plan.units.at(m.units[j].id);
        double cap = 0.0;
        for (size_t b = 0; b < m.sbar[j][t].size(); ++b)
          if (up.block_on[t][b]) cap += m.sbar[j][t][b];
        supply[m.units[j].node_heat] += cap;
      }
      // Conservatively ignore pipe limits and losses for the deficit scan.
      double total_supply = 0.0, total_demand = 0.0;
      std::string worst_node;
      for (size_t n = 0; n < m.heat_node_ids.size(); ++n) {
        total_supply += supply[m.heat_node_ids[n]];
        double d = 0.0;
        // load lives in the balance rhs
        d = m.h_rows[m.h_balance_row[n][t]].rhs;
        total_demand += d;
        if (worst_node.empty() && d > 0) worst_node = m.heat_node_ids[n];
      }
      if (total_supply < total_demand - 1e-9)
        throw InfeasibleError(
            "heat", t, worst_node,
            "committed capacity " + std::to_string(total_supply) +
                " MWh below load " + std::to_string(total_demand) + " MWh");
    }
    throw InfeasibleError("heat", -1, "",
                          "no aggregate capacity deficit; transport or "
                          "minimum-output constraints bind");
  }
  if (rep.status != SolveStatus::Optimal)
    throw SolverError("heat clearing failed: " + rep.detail);

  MarketOutcome out;
  out.market = "heat";
  out.x = rep.x;
  out.duals = rep.duals;
  out.solver_objective = rep.objective;
  for (size_t j = 0; j < m.units.size(); ++j) {
    const auto& id = m.units[j].id;
    out.heat_dispatch[id].assign(m.T, 0.0);
    for (int t = 0; t < m.T; ++t) {
      out.heat_dispatch[id][t] = rep.x[m.xh_q[j][t]];
      for (size_t b = 0; b < m.sbar[j][t].size(); ++b) {
        double acc = rep.x[m.xh_s[j][t][b]];
        out.accepted.push_back({id, t, static_cast<int>(b),
                                m.alpha[j][t][b], m.sbar[j][t][b], acc});
        out.objective += m.alpha[j][t][b] * acc;
      }
    }
  }
  for (size_t n = 0; n < m.heat_node_ids.size(); ++n) {
    auto& prices = out.nodal_price[m.heat_node_ids[n]];
    prices.assign(m.T, 0.0);
    for (int t = 0; t < m.T; ++t)
      prices[t] = rep.duals[m.h_balance_row[n][t]];
  }
  for (size_t p = 0; p < m.xh_pf.size(); ++p) {
    std::string key = "pipe" + std::to_string(p);
    auto& f = out.flow[key];
    f.assign(m.T, 0.0);
    for (int t = 0; t < m.T; ++t)
      f[t] = rep.x[m.xh_pf[p][t][0]] - rep.x[m.xh_pf[p][t][1]];
  }
  return out;
}

std::vector<AdjustedElectricityPosition> derive_positions(
    const Case& c, const CompactModel& m, const CommitmentPlan& plan,
    const MarketOutcome& heat) {
  std::vector<AdjustedElectricityPosition> out;
  auto last_selected = [&](int j, int t) {
    int last = -1;
    for (size_t b = 0; b < m.sbar[j][t].size(); ++b) {
      double acc = heat.x[m.xh_s[j][t][b]];
      if (acc > kAccepted) last = static_cast<int>(b);
    }
    return last;
  };
  for (size_t i = 0; i < c.chps.size(); ++i) {
    int j = m.unit_index(c.chps[i].id);
    const auto& up = plan.units.at(c.chps[i].id);
    for (int t = 0; t < m.T; ++t)
      out.push_back(adjust_electricity_position(
          c.chps[i], heat.heat_dispatch.at(c.chps[i].id)[t], up.on[t] != 0,
          t, last_selected(j, t)));
  }
  for (size_t i = 0; i < c.heat_pumps.size(); ++i) {
    int j = m.unit_index(c.heat_pumps[i].id);
    const auto& up = plan.units.at(c.heat_pumps[i].id);
    for (int t = 0; t < m.T; ++t)
      out.push_back(adjust_electricity_position(
          c.heat_pumps[i], heat.heat_dispatch.at(c.heat_pumps[i].id)[t],
          up.on[t] != 0, t, last_selected(j, t)));
  }
  return out;
}

MarketOutcome clear_electricity(
    const CompactModel& m,
    const std::vector<AdjustedElectricityPosition>& positions,
    const Tolerances& tol) {
  // Positions fill the x_h columns the electricity rows reference.
  std::vector<double> xh(m.nxh, 0.0);
  std::vector<std::vector<double>> sc_by_chp(m.xh_sc.size(),
                                             std::vector<double>(m.T, 0.0));
  for (const auto& pos : positions) {
    bool matched = false;
    for (size_t i = 0; i < m.xh_sc.size(); ++i) {
      // CHP positions inject; heat pump positions consume.
      if (m.units[i].id == pos.unit && m.units[i].kind == HeatUnitRef::Chp) {
        xh[m.xh_sc[i][pos.period]] = pos.self_commit;
        sc_by_chp[i][pos.period] = pos.self_commit;
        xh[m.xh_fc[i][pos.period]] =
            pos.flexible.empty() ? 0.0 : pos.flexible[0].quantity;
        matched = true;
      }
    }
    if (!matched) {
      for (size_t j = 0; j < m.units.size(); ++j) {
        if (m.units[j].id == pos.unit &&
            m.units[j].kind == HeatUnitRef::Pump) {
          size_t hp_i = 0;
          for (size_t k = 0; k < m.units.size() && k < j; ++k)
            if (m.units[k].kind == HeatUnitRef::Pump) ++hp_i;
          xh[m.xh_hl[hp_i][pos.period]] = -pos.self_commit;
          matched = true;
        }
      }
    }
    if (!matched)
      throw std::invalid_argument("position for unknown unit '" + pos.unit +
                                  "'");
  }

  LinearModel lp = elec_lp(m, xh);
  SolveReport rep = solve_lp(lp, tol);
  if (rep.status == SolveStatus::Infeasible) {
    for (int t = 0; t < m.T; ++t) {
      double net_selfcommit = 0.0, load = 0.0;
      for (size_t i = 0; i < m.xh_sc.size(); ++i)
        net_selfcommit += xh[m.xh_sc[i][t]];
      for (size_t i = 0; i < m.xh_hl.size(); ++i)
        load += xh[m.xh_hl[i][t]];
      for (size_t n = 0; n < m.bus_ids.size(); ++n)
        load += m.e_rows[m.e_balance_row[n][t]].rhs;
      if (net_selfcommit > load + 1e-9)
        throw InfeasibleError(
            "electricity", t, "",
            "self-committed injection " + std::to_string(net_selfcommit) +
                " MWh exceeds total load " + std::to_string(load) + " MWh");
    }
    throw InfeasibleError("electricity", -1, "",
                          "transmission limits prevent a balanced dispatch");
  }
  if (rep.status != SolveStatus::Optimal)
    throw SolverError("electricity clearing failed: " + rep.detail);

  MarketOutcome out;
  out.market = "electricity";
  out.x = rep.x;
  out.duals = rep.duals;
  out.solver_objective = rep.objective;
  for (size_t g = 0; g < m.xe_ts.size(); ++g) {
    std::string id = "thermal" + std::to_string(g);
    // prefer case ids via names stored in columns
    id = m.xe_names[m.xe_ts[g][0][0]];
    // name format e_<id>_t0_b0; recover the unit id
    id = id.substr(2, id.find("_t") - 2);
    auto& p = out.power_dispatch[id];
    p.assign(m.T, 0.0);
    for (int t = 0; t < m.T; ++t)
      for (size_t b = 0; b < m.xe_ts[g][t].size(); ++b) {
        double acc = rep.x[m.xe_ts[g][t][b]];
        p[t] += acc;
        double price = m.ce[m.xe_ts[g][t][b]];
        out.accepted.push_back({id, t, static_cast<int>(b), price,
                                -m.e_rows[0].rhs, acc});
        out.objective += price * acc;
      }
  }
  for (size_t w = 0; w < m.xe_w.size(); ++w) {
    std::string id = m.xe_names[m.xe_w[w][0]];
    id = id.substr(5, id.find("_t") - 5);
    auto& p = out.power_dispatch[id];
    p.assign(m.T, 0.0);
    for (int t = 0; t < m.T; ++t) {
      p[t] = rep.x[m.xe_w[w][t]];
      out.accepted.push_back({id, t, 0, 0.0, 0.0, p[t]});
    }
  }
  for (size_t i = 0; i < m.xh_sc.size(); ++i) {
    std::string id = m.units[i].id;
    auto& p = out.power_dispatch[id];
    p.assign(m.T, 0.0);
    for (int t = 0; t < m.T; ++t) {
      double flex = rep.x[m.xe_pflex[i][t]];
      double price = m.ce[m.xe_pflex[i][t]];
      p[t] = sc_by_chp[i][t] + flex;
      out.accepted.push_back({id, t, 0, price, xh[m.xh_fc[i][t]], flex});
      out.objective += price * flex;
    }
  }
  {
    size_t hp_i = 0;
    for (const auto& u : m.units) {
      if (u.kind != HeatUnitRef::Pump) continue;
      auto& l = out.hp_consumption[u.id];
      l.assign(m.T, 0.0);
      for (int t = 0; t < m.T; ++t) l[t] = xh[m.xh_hl[hp_i][t]];
      ++hp_i;
    }
  }
  for (size_t n = 0; n < m.bus_ids.size(); ++n) {
    auto& prices = out.nodal_price[m.bus_ids[n]];
    prices.assign(m.T, 0.0);
    for (int t = 0; t < m.T; ++t)
      prices[t] = rep.duals[m.e_balance_row[n][t]];
  }
  return out;
}

SequentialResult run_sequential(const Case& c, const CompactModel& m,
                                const CommitmentPlan& plan,
                                const Tolerances& tol) {
  SequentialResult seq;
  seq.heat = clear_heat(m, plan, tol);
  seq.positions = derive_positions(c, m, plan, seq.heat);
  seq.electricity = clear_electricity(m, seq.positions, tol);
  seq.curtailment_mwh.assign(m.T, 0.0);
  seq.available_mwh.assign(m.T, 0.0);
  double avail_total = 0.0, curtailed_total = 0.0;
  for (size_t w = 0; w < c.wind.size(); ++w) {
    const auto& dispatch = seq.electricity.power_dispatch.at(c.wind[w].id);
    for (int t = 0; t < m.T; ++t) {
      double avail = c.wind[w].profile[t];
      seq.available_mwh[t] += avail;
      seq.curtailment_mwh[t] += avail - dispatch[t];
      avail_total += avail;
      curtailed_total += avail - dispatch[t];
    }
  }
  seq.curtailment_pct =
      avail_total > 0.0 ? 100.0 * curtailed_total / avail_total : 0.0;
  return seq;
}

ValidityReport check_cost_recovery(const CompactModel& m,
                                   const SequentialResult& seq, double tol) {
  ValidityReport report;
  for (size_t j = 0; j < m.units.size(); ++j) {
    const auto& u = m.units[j];
    double unit_loss = 0.0;
    for (int t = 0; t < m.T; ++t) {
      double lambda = 0.0;
      if (!u.node_power.empty())
        lambda = seq.electricity.nodal_price.at(u.node_power)[t];
      double gamma_dot = m.curves[j].value(lambda);
      for (size_t b = 0; b < m.sbar[j][t].size(); ++b) {
        double acc = seq.heat.x[m.xh_s[j][t][b]];
        if (acc <= kAccepted) continue;
        ValidityRecord rec;
        rec.unit = u.id;
        rec.period = t;
        rec.block = static_cast<int>(b);
        rec.price = m.alpha[j][t][b];
        rec.marginal_cost = gamma_dot;
        rec.accepted = acc;
        rec.valid = rec.price >= gamma_dot - tol;
        if (!rec.valid) {
          rec.loss = (gamma_dot - rec.price) * acc;
          unit_loss += rec.loss;
          ++report.violations;
          report.total_loss += rec.loss;
        }
        report.records.push_back(std::move(rec));
      }
    }
    report.loss_by_unit[u.id] = unit_loss;
  }
  return report;
}

}  // namespace heatuc
