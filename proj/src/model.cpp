#include "heatuc/model.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

namespace heatuc {

namespace {

std::string idx(const std::string& base, int i, const std::string& field) {
  std::ostringstream os;
  os << base << "[" << i << "]." << field;
  return os.str();
}

class Checker {
 public:
  explicit Checker(const Case& c) : c_(c) {}

  std::vector<Violation> run() {
    check_horizon();
    collect_nodes();
    check_power_network();
    check_heat_network();
    check_chps();
    check_heat_pumps();
    check_heat_only();
    check_thermal();
    check_wind();
    check_profiles();
    return std::move(out_);
  }

 private:
  void fail(std::string path, std::string msg) {
    out_.push_back({std::move(path), std::move(msg)});
  }

  void check_horizon() {
    if (c_.horizon.periods <= 0)
      fail("horizon.periods", "horizon must be nonempty");
  }

  void collect_nodes() {
    for (const auto& b : c_.power.buses)
      if (!buses_.insert(b.id).second)
        fail("power.buses", "duplicate bus id '" + b.id + "'");
    for (const auto& n : c_.heat.nodes)
      if (!hnodes_.insert(n.id).second)
        fail("heat.nodes", "duplicate heat node id '" + n.id + "'");
  }

  void expect_bus(const std::string& path, const std::string& id) {
    if (!buses_.count(id)) fail(path, "unknown bus '" + id + "'");
  }
  void expect_hnode(const std::string& path, const std::string& id) {
    if (!hnodes_.count(id)) fail(path, "unknown heat node '" + id + "'");
  }

  void expect_load(const std::string& path, const std::vector<double>& l) {
    if (static_cast<int>(l.size()) != c_.horizon.periods)
      fail(path, "load profile length differs from horizon");
    for (double v : l)
      if (v < 0.0) fail(path, "negative load");
  }

  void check_power_network() {
    if (c_.power.buses.empty()) {
      fail("power.buses", "no buses");
      return;
    }
    for (int i = 0; i < static_cast<int>(c_.power.buses.size()); ++i)
      expect_load(idx("power.buses", i, "load"), c_.power.buses[i].load);
    std::map<std::string, std::vector<std::string>> adj;
    for (int i = 0; i < static_cast<int>(c_.power.lines.size()); ++i) {
      const auto& l = c_.power.lines[i];
      expect_bus(idx("power.lines", i, "from"), l.from);
      expect_bus(idx("power.lines", i, "to"), l.to);
      if (l.capacity <= 0.0)
        fail(idx("power.lines", i, "capacity"), "capacity must be positive");
      if (l.susceptance <= 0.0)
        fail(idx("power.lines", i, "susceptance"),
             "susceptance must be positive");
      adj[l.from].push_back(l.to);
      adj[l.to].push_back(l.from);
    }
    // Connectivity over the bus set.
    if (!buses_.empty()) {
      std::set<std::string> seen;
      std::queue<std::string> q;
      q.push(*buses_.begin());
      seen.insert(*buses_.begin());
      while (!q.empty()) {
        auto u = q.front();
        q.pop();
        for (const auto& v : adj[u])
          if (seen.insert(v).second) q.push(v);
      }
      if (seen.size() != buses_.size())
        fail("power.lines", "power network is not connected");
    }
  }

  void check_heat_network() {
    for (int i = 0; i < static_cast<int>(c_.heat.nodes.size()); ++i)
      expect_load(idx("heat.nodes", i, "load"), c_.heat.nodes[i].load);
    for (int i = 0; i < static_cast<int>(c_.heat.pipes.size()); ++i) {
      const auto& p = c_.heat.pipes[i];
      expect_hnode(idx("heat.pipes", i, "from"), p.from);
      expect_hnode(idx("heat.pipes", i, "to"), p.to);
      if (p.capacity <= 0.0)
        fail(idx("heat.pipes", i, "capacity"), "capacity must be positive");
      if (p.loss < 0.0 || p.loss >= 1.0)
        fail(idx("heat.pipes", i, "loss"), "loss coefficient outside [0,1)");
      if (p.delay != 0.0)
        fail(idx("heat.pipes", i, "delay"),
             "schema v1 fixes pipe time delays at zero");
    }
  }

  void check_unit_common(const std::string& base, int i, const std::string& id,
                         double no_load, double startup, int min_up,
                         int min_down) {
    if (id.empty()) fail(idx(base, i, "id"), "empty unit id");
    if (!unit_ids_.insert(id).second)
      fail(idx(base, i, "id"), "duplicate unit id '" + id + "'");
    if (no_load < 0.0) fail(idx(base, i, "no_load_cost"), "negative cost");
    if (startup < 0.0) fail(idx(base, i, "startup_cost"), "negative cost");
    if (min_up < 1) fail(idx(base, i, "min_up"), "minimum up time below 1");
    if (min_down < 1)
      fail(idx(base, i, "min_down"), "minimum down time below 1");
  }

  void check_chps() {
    for (int i = 0; i < static_cast<int>(c_.chps.size()); ++i) {
      const auto& u = c_.chps[i];
      const std::string base = "units.chp";
      check_unit_common(base, i, u.id, u.no_load_cost, u.startup_cost,
                        u.min_up, u.min_down);
      expect_bus(idx(base, i, "node_power"), u.node_power);
      expect_hnode(idx(base, i, "node_heat"), u.node_heat);
      if (u.r < 0.0)
        fail(idx(base, i, "r"), "negative heat-to-power ratio");
      if (u.rho_e <= 0.0)
        fail(idx(base, i, "rho_e"), "electricity efficiency must be positive");
      if (u.rho_h <= 0.0)
        fail(idx(base, i, "rho_h"), "heat efficiency must be positive");
      if (u.fuel_cost < 0.0) fail(idx(base, i, "fuel_cost"), "negative cost");
      if (u.f_min < 0.0) fail(idx(base, i, "f_min"), "negative fuel bound");
      if (!(u.f_min < u.f_max))
        fail(idx(base, i, "f_max"), "empty fuel interval");
    }
  }

  void check_heat_pumps() {
    for (int i = 0; i < static_cast<int>(c_.heat_pumps.size()); ++i) {
      const auto& u = c_.heat_pumps[i];
      const std::string base = "units.heat_pump";
      check_unit_common(base, i, u.id, u.no_load_cost, u.startup_cost,
                        u.min_up, u.min_down);
      expect_bus(idx(base, i, "node_power"), u.node_power);
      expect_hnode(idx(base, i, "node_heat"), u.node_heat);
      if (u.cop <= 1.0) fail(idx(base, i, "cop"), "COP must exceed 1");
      if (u.q_max <= 0.0)
        fail(idx(base, i, "q_max"), "maximum heat output must be positive");
    }
  }

  void check_heat_only() {
    for (int i = 0; i < static_cast<int>(c_.heat_only.size()); ++i) {
      const auto& u = c_.heat_only[i];
      const std::string base = "units.heat_only";
      check_unit_common(base, i, u.id, u.no_load_cost, u.startup_cost,
                        u.min_up, u.min_down);
      expect_hnode(idx(base, i, "node_heat"), u.node_heat);
      if (u.q_max <= 0.0)
        fail(idx(base, i, "q_max"), "maximum heat output must be positive");
      if (u.marginal_cost < 0.0)
        fail(idx(base, i, "marginal_cost"), "negative marginal cost");
    }
  }

  void check_thermal() {
    for (int i = 0; i < static_cast<int>(c_.thermal.size()); ++i) {
      const auto& u = c_.thermal[i];
      const std::string base = "units.thermal";
      if (u.id.empty() || !unit_ids_.insert(u.id).second)
        fail(idx(base, i, "id"), "empty or duplicate unit id");
      expect_bus(idx(base, i, "node_power"), u.node_power);
      if (u.blocks.empty()) fail(idx(base, i, "blocks"), "no bid blocks");
      for (const auto& b : u.blocks) {
        if (b.price < 0.0) fail(idx(base, i, "blocks"), "negative bid price");
        if (b.quantity < 0.0)
          fail(idx(base, i, "blocks"), "negative bid quantity");
      }
      for (size_t b = 1; b < u.blocks.size(); ++b)
        if (u.blocks[b].price < u.blocks[b - 1].price - 1e-12)
          fail(idx(base, i, "blocks"), "blocks not sorted by price");
    }
  }

  void check_wind() {
    for (int i = 0; i < static_cast<int>(c_.wind.size()); ++i) {
      const auto& u = c_.wind[i];
      const std::string base = "units.wind";
      if (u.id.empty() || !unit_ids_.insert(u.id).second)
        fail(idx(base, i, "id"), "empty or duplicate unit id");
      expect_bus(idx(base, i, "node_power"), u.node_power);
      if (static_cast<int>(u.profile.size()) != c_.horizon.periods)
        fail(idx(base, i, "profile"), "profile length differs from horizon");
      for (double v : u.profile)
        if (v < 0.0) fail(idx(base, i, "profile"), "negative availability");
    }
  }

  void check_profiles() {
    for (const auto& [unit, lmps] : c_.foreseen_lmps) {
      if (!unit_ids_.count(unit))
        fail("foreseen_lmps." + unit, "unknown unit");
      if (static_cast<int>(lmps.size()) != c_.horizon.periods)
        fail("foreseen_lmps." + unit, "profile length differs from horizon");
    }
    // CHPs and heat pumps price their heat bids off foreseen LMPs.
    for (const auto& u : c_.chps)
      if (!c_.foreseen_lmps.count(u.id))
        fail("foreseen_lmps", "missing profile for CHP '" + u.id + "'");
    for (const auto& u : c_.heat_pumps)
      if (!c_.foreseen_lmps.count(u.id))
        fail("foreseen_lmps", "missing profile for heat pump '" + u.id + "'");
    for (const auto& [unit, fr] : c_.heat_bid_fractions) {
      if (!unit_ids_.count(unit))
        fail("heat_bid_fractions." + unit, "unknown unit");
      if (fr.empty())
        fail("heat_bid_fractions." + unit, "empty block split");
      double sum = 0.0;
      for (double f : fr) {
        if (f <= 0.0)
          fail("heat_bid_fractions." + unit, "nonpositive block fraction");
        sum += f;
      }
      if (std::abs(sum - 1.0) > 1e-9)
        fail("heat_bid_fractions." + unit, "block fractions must sum to 1");
    }
  }

  const Case& c_;
  std::vector<Violation> out_;
  std::set<std::string> buses_, hnodes_, unit_ids_;
};

}  // namespace

std::vector<Violation> validate_case(const Case& c) {
  return Checker(c).run();
}

bool for_contains(const ExtractionChp& chp, double p, double q, bool on,
                  double tol) {
  if (p < -tol || q < -tol) return false;
  if (p + tol < chp.r * q) return false;
  double fuel = chp.rho_h * q + chp.rho_e * p;
  double lo = on ? chp.f_min : 0.0;
  double hi = on ? chp.f_max : 0.0;
  return fuel >= lo - tol && fuel <= hi + tol;
}

std::vector<HeatUnitRef> heat_units(const Case& c) {
  std::vector<HeatUnitRef> out;
  for (int i = 0; i < static_cast<int>(c.chps.size()); ++i) {
    const auto& u = c.chps[i];
    out.push_back({HeatUnitRef::Chp, i, u.id, u.node_heat, u.node_power,
                   u.q_max(), u.no_load_cost, u.startup_cost, u.min_up,
                   u.min_down});
  }
  for (int i = 0; i < static_cast<int>(c.heat_pumps.size()); ++i) {
    const auto& u = c.heat_pumps[i];
    out.push_back({HeatUnitRef::Pump, i, u.id, u.node_heat, u.node_power,
                   u.q_max, u.no_load_cost, u.startup_cost, u.min_up,
                   u.min_down});
  }
  for (int i = 0; i < static_cast<int>(c.heat_only.size()); ++i) {
    const auto& u = c.heat_only[i];
    out.push_back({HeatUnitRef::HeatOnly, i, u.id, u.node_heat, "", u.q_max,
                   u.no_load_cost, u.startup_cost, u.min_up, u.min_down});
  }
  return out;
}

}  // namespace heatuc
