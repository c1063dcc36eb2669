#include "heatuc/compact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace heatuc {

namespace {

std::string tag(const std::string& base, const std::string& id, int t,
                int b = -1) {
  std::ostringstream os;
  os << base << "_" << id << "_t" << t;
  if (b >= 0) os << "_b" << b;
  return os.str();
}

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPerturb = 1e-9;

}  // namespace

int CompactModel::unit_index(const std::string& id) const {
  for (size_t i = 0; i < units.size(); ++i)
    if (units[i].id == id) return static_cast<int>(i);
  throw std::invalid_argument("unknown heat unit '" + id + "'");
}

int CompactModel::bus_index(const std::string& id) const {
  for (size_t i = 0; i < bus_ids.size(); ++i)
    if (bus_ids[i] == id) return static_cast<int>(i);
  throw std::invalid_argument("unknown bus '" + id + "'");
}

int CompactModel::heat_node_index(const std::string& id) const {
  for (size_t i = 0; i < heat_node_ids.size(); ++i)
    if (heat_node_ids[i] == id) return static_cast<int>(i);
  throw std::invalid_argument("unknown heat node '" + id + "'");
}

CompactModel build_compact(const Case& c,
                           const std::vector<BidLadder>& ladders) {
  CompactModel m;
  m.source = c;
  m.T = c.horizon.periods;
  m.units = heat_units(c);
  m.curves = build_curves(c);
  const int J = static_cast<int>(m.units.size());
  if (static_cast<int>(ladders.size()) != J)
    throw std::invalid_argument("one heat ladder per heat unit required");

  for (const auto& n : c.heat.nodes) m.heat_node_ids.push_back(n.id);
  for (const auto& b : c.power.buses) m.bus_ids.push_back(b.id);
  m.ref_bus = 0;

  // ---------------- z block ----------------
  auto new_z = [&](std::string name, bool binary, double cost) {
    m.z_names.push_back(std::move(name));
    m.z_binary.push_back(binary);
    m.c0.push_back(cost);
    return m.nz++;
  };
  m.z_u0.assign(J, {});
  m.z_v.assign(J, {});
  m.z_w.assign(J, {});
  m.z_r.assign(J, {});
  m.z_ub.assign(J, {});
  m.alpha.assign(J, {});
  m.sbar.assign(J, {});
  for (int j = 0; j < J; ++j) {
    const auto& u = m.units[j];
    m.z_ub[j].resize(m.T);
    m.alpha[j].resize(m.T);
    m.sbar[j].resize(m.T);
    for (int t = 0; t < m.T; ++t) {
      m.z_u0[j].push_back(new_z(tag("u0", u.id, t), true, u.no_load_cost));
      m.z_v[j].push_back(new_z(tag("vstart", u.id, t), true, 0.0));
      m.z_w[j].push_back(new_z(tag("wstop", u.id, t), true, 0.0));
      m.z_r[j].push_back(new_z(tag("rcost", u.id, t), false, 1.0));
      const auto& blocks = ladders[j].blocks.at(t);
      for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        m.z_ub[j][t].push_back(new_z(tag("ubid", u.id, t, b), true, 0.0));
        m.alpha[j][t].push_back(blocks[b].price);
        m.sbar[j][t].push_back(blocks[b].quantity);
      }
    }
  }

  // Z^UC rows: 3-binary transition logic, min up/down, start-up cost
  // epigraph, and monotone prefix selection of bid blocks.
  for (int j = 0; j < J; ++j) {
    const auto& u = m.units[j];
    for (int t = 0; t < m.T; ++t) {
      LinearModel::Row logic;
      logic.sense = RowSense::Equal;
      logic.rhs = 0.0;
      logic.name = tag("uc_logic", u.id, t);
      logic.coef = {{m.z_u0[j][t], 1.0},
                    {m.z_v[j][t], -1.0},
                    {m.z_w[j][t], 1.0}};
      if (t > 0) logic.coef.push_back({m.z_u0[j][t - 1], -1.0});
      m.uc_rows.push_back(std::move(logic));

      m.uc_rows.push_back({RowSense::GreaterEqual,
                           -1.0,
                           {{m.z_v[j][t], -1.0}, {m.z_w[j][t], -1.0}},
                           tag("uc_excl", u.id, t)});

      LinearModel::Row up;
      up.sense = RowSense::GreaterEqual;
      up.rhs = 0.0;
      up.name = tag("uc_minup", u.id, t);
      up.coef.push_back({m.z_u0[j][t], 1.0});
      for (int tau = std::max(0, t - u.min_up + 1); tau <= t; ++tau)
        up.coef.push_back({m.z_v[j][tau], -1.0});
      m.uc_rows.push_back(std::move(up));

      LinearModel::Row down;
      down.sense = RowSense::GreaterEqual;
      down.rhs = -1.0;
      down.name = tag("uc_mindown", u.id, t);
      down.coef.push_back({m.z_u0[j][t], -1.0});
      for (int tau = std::max(0, t - u.min_down + 1); tau <= t; ++tau)
        down.coef.push_back({m.z_w[j][tau], -1.0});
      m.uc_rows.push_back(std::move(down));

      m.uc_rows.push_back(
          {RowSense::GreaterEqual,
           0.0,
           {{m.z_r[j][t], 1.0}, {m.z_v[j][t], -u.startup_cost}},
           tag("uc_startup", u.id, t)});

      const int B = static_cast<int>(m.z_ub[j][t].size());
      for (int b = 0; b < B; ++b) {
        LinearModel::Row mono;
        mono.sense = RowSense::GreaterEqual;
        mono.rhs = 0.0;
        mono.name = tag("uc_block", u.id, t, b);
        int upper = b == 0 ? m.z_u0[j][t] : m.z_ub[j][t][b - 1];
        mono.coef = {{upper, 1.0}, {m.z_ub[j][t][b], -1.0}};
        m.uc_rows.push_back(std::move(mono));
      }
    }
  }

  // ---------------- heat block ----------------
  auto new_xh = [&](std::string name, double cost, double upper,
                    bool perturb) {
    m.xh_names.push_back(std::move(name));
    m.ch.push_back(cost);
    m.ch_perturb.push_back(perturb ? kPerturb * (m.nxh + 1) : 0.0);
    m.xh_upper.push_back(upper);
    return m.nxh++;
  };

  const int NH = static_cast<int>(c.heat.nodes.size());
  const int NP = static_cast<int>(c.heat.pipes.size());
  m.xh_s.assign(J, {});
  m.xh_q.assign(J, {});
  m.xh_sc.assign(c.chps.size(), {});
  m.xh_fc.assign(c.chps.size(), {});
  m.xh_hl.assign(c.heat_pumps.size(), {});
  m.xh_pf.assign(NP, {});

  for (int j = 0; j < J; ++j) {
    const auto& u = m.units[j];
    m.xh_s[j].resize(m.T);
    for (int t = 0; t < m.T; ++t) {
      const auto& blocks = ladders[j].blocks[t];
      for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
        m.xh_s[j][t].push_back(new_xh(tag("s", u.id, t, b), blocks[b].price,
                                      blocks[b].quantity, true));
      m.xh_q[j].push_back(new_xh(tag("q", u.id, t), 0.0, u.q_max, false));
    }
  }
  for (size_t i = 0; i < c.chps.size(); ++i) {
    const auto& u = c.chps[i];
    for (int t = 0; t < m.T; ++t) {
      m.xh_sc[i].push_back(
          new_xh(tag("selfcommit", u.id, t), 0.0, u.r * u.q_max(), false));
      m.xh_fc[i].push_back(
          new_xh(tag("flexcap", u.id, t), 0.0, u.f_max / u.rho_e, false));
    }
  }
  for (size_t i = 0; i < c.heat_pumps.size(); ++i) {
    const auto& u = c.heat_pumps[i];
    for (int t = 0; t < m.T; ++t)
      m.xh_hl[i].push_back(
          new_xh(tag("hpload", u.id, t), 0.0, u.q_max / u.cop, false));
  }
  for (int p = 0; p < NP; ++p) {
    const auto& pipe = c.heat.pipes[p];
    std::string pid = pipe.from + "_" + pipe.to;
    for (int t = 0; t < m.T; ++t)
      m.xh_pf[p].push_back(
          {new_xh(tag("pf", pid, t), 0.0, pipe.capacity, true),
           new_xh(tag("pb", pid, t), 0.0, pipe.capacity, true)});
  }

  auto zc = [](int col, double coef) { return std::pair<int, double>{col, coef}; };
  auto aconst = [](int col, double coef) {
    return CompactModel::HEntry{col, {coef, {}}};
  };

  // Per-unit coupling rows.
  int chp_i = 0, hp_i = 0;
  for (int j = 0; j < J; ++j) {
    const auto& u = m.units[j];
    for (int t = 0; t < m.T; ++t) {
      // Q = sum of accepted blocks.
      CompactModel::HRow qdef;
      qdef.sense = RowSense::Equal;
      qdef.rhs = 0.0;
      qdef.name = tag("h_qdef", u.id, t);
      qdef.a.push_back(aconst(m.xh_q[j][t], 1.0));
      for (int col : m.xh_s[j][t]) qdef.a.push_back(aconst(col, -1.0));
      m.h_rows.push_back(std::move(qdef));

      // Block availability: s <= quantity * u_b.
      const auto& blocks = ladders[j].blocks[t];
      for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        CompactModel::HRow cap;
        cap.sense = RowSense::GreaterEqual;
        cap.rhs = 0.0;
        cap.name = tag("h_scap", u.id, t, b);
        cap.a.push_back(aconst(m.xh_s[j][t][b], -1.0));
        cap.bz.push_back(zc(m.z_ub[j][t][b], blocks[b].quantity));
        m.h_rows.push_back(std::move(cap));
      }
    }
    if (u.kind == HeatUnitRef::Chp) {
      const auto& chp = c.chps[u.index];
      double fuel_per_q = chp.rho_h + chp.r * chp.rho_e;
      for (int t = 0; t < m.T; ++t) {
        // Fuel floor along P = r*Q: committed units must produce the
        // minimum-fuel heat point.
        CompactModel::HRow fmin;
        fmin.sense = RowSense::GreaterEqual;
        fmin.rhs = 0.0;
        fmin.name = tag("h_fmin", u.id, t);
        fmin.a.push_back(aconst(m.xh_q[j][t], fuel_per_q));
        fmin.bz.push_back(zc(m.z_u0[j][t], -chp.f_min));
        m.h_rows.push_back(std::move(fmin));

        CompactModel::HRow fmax;
        fmax.sense = RowSense::GreaterEqual;
        fmax.rhs = 0.0;
        fmax.name = tag("h_fmax", u.id, t);
        fmax.a.push_back(aconst(m.xh_q[j][t], -fuel_per_q));
        fmax.bz.push_back(zc(m.z_u0[j][t], chp.f_max));
        m.h_rows.push_back(std::move(fmax));

        CompactModel::HRow sc;
        sc.sense = RowSense::Equal;
        sc.rhs = 0.0;
        sc.name = tag("h_scdef", u.id, t);
        sc.a.push_back(aconst(m.xh_sc[chp_i][t], 1.0));
        sc.a.push_back(aconst(m.xh_q[j][t], -chp.r));
        m.h_rows.push_back(std::move(sc));

        // flexcap = (f_max*u0 - rho_h*Q)/rho_e - selfcommit.
        CompactModel::HRow fc;
        fc.sense = RowSense::Equal;
        fc.rhs = 0.0;
        fc.name = tag("h_fcdef", u.id, t);
        fc.a.push_back(aconst(m.xh_fc[chp_i][t], 1.0));
        fc.a.push_back(aconst(m.xh_sc[chp_i][t], 1.0));
        fc.a.push_back(aconst(m.xh_q[j][t], chp.rho_h / chp.rho_e));
        fc.bz.push_back(zc(m.z_u0[j][t], -chp.f_max / chp.rho_e));
        m.h_rows.push_back(std::move(fc));
      }
      ++chp_i;
    } else if (u.kind == HeatUnitRef::Pump) {
      const auto& hp = c.heat_pumps[u.index];
      for (int t = 0; t < m.T; ++t) {
        CompactModel::HRow ld;
        ld.sense = RowSense::Equal;
        ld.rhs = 0.0;
        ld.name = tag("h_hldef", u.id, t);
        ld.a.push_back(aconst(m.xh_hl[hp_i][t], 1.0));
        ld.a.push_back(aconst(m.xh_q[j][t], -1.0 / hp.cop));
        m.h_rows.push_back(std::move(ld));
      }
      ++hp_i;
    }
  }

  // Pipe capacity rows.
  for (int p = 0; p < NP; ++p) {
    const auto& pipe = c.heat.pipes[p];
    for (int t = 0; t < m.T; ++t) {
      for (int dir = 0; dir < 2; ++dir) {
        CompactModel::HRow cap;
        cap.sense = RowSense::GreaterEqual;
        cap.rhs = -pipe.capacity;
        cap.name = tag(dir == 0 ? "h_pfcap" : "h_pbcap",
                       pipe.from + "_" + pipe.to, t);
        cap.a.push_back(aconst(m.xh_pf[p][t][dir], -1.0));
        m.h_rows.push_back(std::move(cap));
      }
    }
  }

  // Nodal heat balance with per-traversal losses.
  m.h_balance_row.assign(NH, std::vector<int>(m.T, -1));
  for (int n = 0; n < NH; ++n) {
    const auto& node = c.heat.nodes[n];
    for (int t = 0; t < m.T; ++t) {
      CompactModel::HRow bal;
      bal.sense = RowSense::Equal;
      bal.rhs = node.load[t];
      bal.name = tag("h_balance", node.id, t);
      for (int j = 0; j < J; ++j)
        if (m.units[j].node_heat == node.id)
          bal.a.push_back(aconst(m.xh_q[j][t], 1.0));
      for (int p = 0; p < NP; ++p) {
        const auto& pipe = c.heat.pipes[p];
        if (pipe.from == node.id) {
          bal.a.push_back(aconst(m.xh_pf[p][t][0], -1.0));
          bal.a.push_back(aconst(m.xh_pf[p][t][1], 1.0 - pipe.loss));
        }
        if (pipe.to == node.id) {
          bal.a.push_back(aconst(m.xh_pf[p][t][0], 1.0 - pipe.loss));
          bal.a.push_back(aconst(m.xh_pf[p][t][1], -1.0));
        }
      }
      m.h_balance_row[n][t] = static_cast<int>(m.h_rows.size());
      m.h_rows.push_back(std::move(bal));
    }
  }

  // ---------------- electricity block ----------------
  auto new_xe = [&](std::string name, double cost, bool free_var,
                    bool perturb) {
    m.xe_names.push_back(std::move(name));
    m.ce.push_back(cost);
    m.ce_perturb.push_back(perturb ? kPerturb * (m.nxe + 1) : 0.0);
    m.xe_free.push_back(free_var);
    return m.nxe++;
  };

  const int NB = static_cast<int>(c.power.buses.size());
  const int NG = static_cast<int>(c.thermal.size());
  const int NW = static_cast<int>(c.wind.size());
  const int NL = static_cast<int>(c.power.lines.size());

  m.xe_ts.assign(NG, {});
  for (int g = 0; g < NG; ++g) {
    m.xe_ts[g].resize(m.T);
    for (int t = 0; t < m.T; ++t)
      for (int b = 0; b < static_cast<int>(c.thermal[g].blocks.size()); ++b)
        m.xe_ts[g][t].push_back(new_xe(tag("e", c.thermal[g].id, t, b),
                                       c.thermal[g].blocks[b].price, false,
                                       true));
  }
  m.xe_w.assign(NW, {});
  for (int w = 0; w < NW; ++w)
    for (int t = 0; t < m.T; ++t)
      m.xe_w[w].push_back(new_xe(tag("wind", c.wind[w].id, t), 0.0, false,
                                 true));
  m.xe_pflex.assign(c.chps.size(), {});
  for (size_t i = 0; i < c.chps.size(); ++i)
    for (int t = 0; t < m.T; ++t)
      m.xe_pflex[i].push_back(new_xe(tag("pflex", c.chps[i].id, t),
                                     c.chps[i].fuel_cost * c.chps[i].rho_e,
                                     false, true));
  m.xe_theta.assign(NB, std::vector<int>(m.T, -1));
  for (int n = 0; n < NB; ++n) {
    if (n == m.ref_bus) continue;
    for (int t = 0; t < m.T; ++t)
      m.xe_theta[n][t] =
          new_xe(tag("theta", c.power.buses[n].id, t), 0.0, true, false);
  }

  auto theta_terms = [&](int line, int t) {
    const auto& l = c.power.lines[line];
    int a = m.bus_index(l.from), b = m.bus_index(l.to);
    std::vector<std::pair<int, double>> terms;
    if (m.xe_theta[a][t] >= 0)
      terms.push_back({m.xe_theta[a][t], l.susceptance});
    if (m.xe_theta[b][t] >= 0)
      terms.push_back({m.xe_theta[b][t], -l.susceptance});
    return terms;  // flow from->to = B*(theta_a - theta_b)
  };

  // Bid feasibility rows.
  for (int g = 0; g < NG; ++g)
    for (int t = 0; t < m.T; ++t)
      for (int b = 0; b < static_cast<int>(c.thermal[g].blocks.size()); ++b) {
        CompactModel::ERow cap;
        cap.rhs = -c.thermal[g].blocks[b].quantity;
        cap.name = tag("e_cap", c.thermal[g].id, t, b);
        cap.ae.push_back({m.xe_ts[g][t][b], -1.0});
        m.e_rows.push_back(std::move(cap));
      }
  for (int w = 0; w < NW; ++w)
    for (int t = 0; t < m.T; ++t) {
      CompactModel::ERow cap;
      cap.rhs = -c.wind[w].profile[t];
      cap.name = tag("e_windcap", c.wind[w].id, t);
      cap.ae.push_back({m.xe_w[w][t], -1.0});
      m.e_rows.push_back(std::move(cap));
    }
  for (size_t i = 0; i < c.chps.size(); ++i)
    for (int t = 0; t < m.T; ++t) {
      // Flexible CHP acceptance within the capacity set by the heat market.
      CompactModel::ERow cap;
      cap.rhs = 0.0;
      cap.name = tag("e_flexcap", c.chps[i].id, t);
      cap.ae.push_back({m.xe_pflex[i][t], -1.0});
      cap.be.push_back({m.xh_fc[i][t], 1.0});
      m.e_rows.push_back(std::move(cap));
    }

  // Line limits, both directions.
  for (int l = 0; l < NL; ++l)
    for (int t = 0; t < m.T; ++t) {
      auto terms = theta_terms(l, t);
      const auto& line = c.power.lines[l];
      CompactModel::ERow fwd;
      fwd.rhs = -line.capacity;
      fwd.name = tag("e_flowf", line.from + "_" + line.to, t);
      for (auto [col, coef] : terms) fwd.ae.push_back({col, -coef});
      m.e_rows.push_back(std::move(fwd));
      CompactModel::ERow bwd;
      bwd.rhs = -line.capacity;
      bwd.name = tag("e_flowb", line.from + "_" + line.to, t);
      for (auto [col, coef] : terms) bwd.ae.push_back({col, coef});
      m.e_rows.push_back(std::move(bwd));
    }

  // Nodal power balance; duals are the LMPs.
  m.e_balance_row.assign(NB, std::vector<int>(m.T, -1));
  for (int n = 0; n < NB; ++n) {
    const auto& bus = c.power.buses[n];
    for (int t = 0; t < m.T; ++t) {
      CompactModel::ERow bal;
      bal.sense = RowSense::Equal;
      bal.rhs = bus.load[t];
      bal.name = tag("e_balance", bus.id, t);
      for (int g = 0; g < NG; ++g)
        if (c.thermal[g].node_power == bus.id)
          for (int col : m.xe_ts[g][t]) bal.ae.push_back({col, 1.0});
      for (int w = 0; w < NW; ++w)
        if (c.wind[w].node_power == bus.id)
          bal.ae.push_back({m.xe_w[w][t], 1.0});
      for (size_t i = 0; i < c.chps.size(); ++i)
        if (c.chps[i].node_power == bus.id) {
          bal.ae.push_back({m.xe_pflex[i][t], 1.0});
          bal.be.push_back({m.xh_sc[i][t], 1.0});
        }
      for (size_t i = 0; i < c.heat_pumps.size(); ++i)
        if (c.heat_pumps[i].node_power == bus.id)
          bal.be.push_back({m.xh_hl[i][t], -1.0});
      for (int l = 0; l < NL; ++l) {
        const auto& line = c.power.lines[l];
        if (line.from != bus.id && line.to != bus.id) continue;
        double sign = line.from == bus.id ? -1.0 : 1.0;
        for (auto [col, coef] : theta_terms(l, t))
          bal.ae.push_back({col, sign * coef});
      }
      m.e_balance_row[n][t] = static_cast<int>(m.e_rows.size());
      m.e_rows.push_back(std::move(bal));
    }
  }

  // ---------------- economics ----------------
  m.lambda_bar = 1.0;
  for (const auto& g : c.thermal)
    for (const auto& b : g.blocks)
      m.lambda_bar = std::max(m.lambda_bar, b.price);
  for (const auto& chp : c.chps)
    m.lambda_bar = std::max(m.lambda_bar, chp.fuel_cost * chp.rho_e);
  m.dual_bound = 10.0 * m.lambda_bar;
  for (int j = 0; j < J; ++j)
    m.big_m.push_back(m.curves[j].max_over(m.lambda_bar));

  return m;
}

std::vector<double> z_from_plan(const CompactModel& m,
                                const CommitmentPlan& plan) {
  std::vector<double> z(m.nz, 0.0);
  for (size_t j = 0; j < m.units.size(); ++j) {
    auto it = plan.units.find(m.units[j].id);
    if (it == plan.units.end())
      throw std::invalid_argument("plan missing unit '" + m.units[j].id + "'");
    const auto& up = it->second;
    for (int t = 0; t < m.T; ++t) {
      z[m.z_u0[j][t]] = up.on[t];
      z[m.z_v[j][t]] = up.start[t];
      z[m.z_w[j][t]] = up.stop[t];
      z[m.z_r[j][t]] = up.startup_cost[t];
      for (size_t b = 0; b < m.z_ub[j][t].size(); ++b)
        z[m.z_ub[j][t][b]] = up.block_on[t][b];
    }
  }
  return z;
}

CommitmentPlan plan_from_z(const CompactModel& m,
                           const std::vector<double>& z) {
  CommitmentPlan plan;
  plan.periods = m.T;
  for (size_t j = 0; j < m.units.size(); ++j) {
    CommitmentPlan::UnitPlan up;
    up.on.resize(m.T);
    up.start.resize(m.T);
    up.stop.resize(m.T);
    up.startup_cost.resize(m.T);
    up.block_on.resize(m.T);
    for (int t = 0; t < m.T; ++t) {
      up.on[t] = std::lround(z[m.z_u0[j][t]]);
      up.start[t] = std::lround(z[m.z_v[j][t]]);
      up.stop[t] = std::lround(z[m.z_w[j][t]]);
      up.startup_cost[t] = z[m.z_r[j][t]];
      for (int col : m.z_ub[j][t])
        up.block_on[t].push_back(std::lround(z[col]));
    }
    plan.units[m.units[j].id] = std::move(up);
  }
  return plan;
}

CommitmentPlan CommitmentPlan::all_on(const Case& c,
                                      const std::vector<BidLadder>& ladders) {
  std::map<std::string, std::vector<int>> on;
  for (const auto& u : heat_units(c))
    on[u.id] = std::vector<int>(c.horizon.periods, 1);
  return from_on_states(c, ladders, on);
}

CommitmentPlan CommitmentPlan::from_on_states(
    const Case& c, const std::vector<BidLadder>& ladders,
    const std::map<std::string, std::vector<int>>& on) {
  CommitmentPlan plan;
  plan.periods = c.horizon.periods;
  auto units = heat_units(c);
  for (size_t j = 0; j < units.size(); ++j) {
    const auto& u = units[j];
    auto it = on.find(u.id);
    if (it == on.end())
      throw std::invalid_argument("on-states missing unit '" + u.id + "'");
    UnitPlan up;
    up.on = it->second;
    up.start.assign(plan.periods, 0);
    up.stop.assign(plan.periods, 0);
    up.startup_cost.assign(plan.periods, 0.0);
    up.block_on.resize(plan.periods);
    for (int t = 0; t < plan.periods; ++t) {
      int prev = t == 0 ? 0 : up.on[t - 1];
      up.start[t] = up.on[t] > prev ? 1 : 0;
      up.stop[t] = up.on[t] < prev ? 1 : 0;
      up.startup_cost[t] = up.start[t] * u.startup_cost;
      up.block_on[t].assign(ladders[j].blocks[t].size(), up.on[t]);
    }
    plan.units[u.id] = std::move(up);
  }
  return plan;
}

std::vector<std::string> check_plan(const Case& c,
                                    const std::vector<BidLadder>& ladders,
                                    const CommitmentPlan& plan) {
  std::vector<std::string> problems;
  auto units = heat_units(c);
  if (plan.periods != c.horizon.periods)
    problems.push_back("plan horizon differs from case horizon");
  for (size_t j = 0; j < units.size(); ++j) {
    const auto& u = units[j];
    auto it = plan.units.find(u.id);
    if (it == plan.units.end()) {
      problems.push_back("plan missing unit " + u.id);
      continue;
    }
    const auto& up = it->second;
    for (int t = 0; t < plan.periods; ++t) {
      int prev = t == 0 ? 0 : up.on[t - 1];
      if (up.on[t] - prev != up.start[t] - up.stop[t])
        problems.push_back(u.id + ": transition logic broken at t=" +
                           std::to_string(t));
      if (up.start[t] && up.stop[t])
        problems.push_back(u.id + ": start and stop both set at t=" +
                           std::to_string(t));
      if (up.startup_cost[t] + 1e-9 < u.startup_cost * up.start[t])
        problems.push_back(u.id + ": start-up cost under-counted at t=" +
                           std::to_string(t));
      for (int tau = std::max(0, t - u.min_up + 1); tau <= t; ++tau)
        if (up.start[tau] && !up.on[t])
          problems.push_back(u.id + ": min up time violated at t=" +
                             std::to_string(t));
      for (int tau = std::max(0, t - u.min_down + 1); tau <= t; ++tau)
        if (up.stop[tau] && up.on[t])
          problems.push_back(u.id + ": min down time violated at t=" +
                             std::to_string(t));
      if (up.block_on[t].size() != ladders[j].blocks[t].size())
        problems.push_back(u.id + ": block selection size mismatch");
      for (size_t b = 0; b < up.block_on[t].size(); ++b) {
        int upper = b == 0 ? up.on[t] : up.block_on[t][b - 1];
        if (up.block_on[t][b] > upper)
          problems.push_back(u.id + ": non-monotone block selection at t=" +
                             std::to_string(t));
      }
    }
  }
  return problems;
}

LinearModel heat_lp(const CompactModel& m, const std::vector<double>& z) {
  LinearModel lp;
  for (int v = 0; v < m.nxh; ++v)
    lp.add_var(0.0, kInf, m.ch[v] + m.ch_perturb[v], m.xh_names[v]);
  for (const auto& row : m.h_rows) {
    LinearModel::Row r;
    r.sense = row.sense;
    r.name = row.name;
    double rhs = row.rhs;
    for (const auto& [zcol, coef] : row.bz) rhs -= coef * z[zcol];
    r.rhs = rhs;
    for (const auto& e : row.a) {
      double coef = e.coef.at(z);
      if (coef != 0.0) r.coef.push_back({e.col, coef});
    }
    lp.add_row(std::move(r));
  }
  return lp;
}

LinearModel elec_lp(const CompactModel& m, const std::vector<double>& xh) {
  LinearModel lp;
  for (int v = 0; v < m.nxe; ++v)
    lp.add_var(m.xe_free[v] ? -kInf : 0.0, kInf,
               m.ce[v] + m.ce_perturb[v], m.xe_names[v]);
  for (const auto& row : m.e_rows) {
    LinearModel::Row r;
    r.sense = row.sense;
    r.name = row.name;
    double rhs = row.rhs;
    for (const auto& [col, coef] : row.be) rhs -= coef * xh[col];
    r.rhs = rhs;
    r.coef = row.ae;
    lp.add_row(std::move(r));
  }
  return lp;
}

}  // namespace heatuc
