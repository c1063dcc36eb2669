#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace heatuc {

/// Extraction CHP. The admissible (power, heat) pairs form the polytope
///   P >= r*Q,  u*f_min <= rho_h*Q + rho_e*P <= u*f_max,  P,Q >= 0.
struct ExtractionChp {
  std::string id;
  std::string node_power;
  std::string node_heat;
  double r = 0.0;          // minimum heat-to-power ratio
  double rho_e = 0.0;      // fuel per MWh of electricity
  double rho_h = 0.0;      // fuel per MWh-th of heat
  double f_min = 0.0;
  double f_max = 0.0;
  double fuel_cost = 0.0;  // $ per fuel unit
  double no_load_cost = 0.0;
  double startup_cost = 0.0;
  int min_up = 1;
  int min_down = 1;

  /// Largest heat output, reached on the P = r*Q boundary at f_max.
  double q_max() const { return f_max / (rho_h + r * rho_e); }
  /// Heat output at minimum fuel on the P = r*Q boundary.
  double q_knee() const { return f_min / (rho_h + r * rho_e); }
};

struct HeatPump {
  std::string id;
  std::string node_power;
  std::string node_heat;
  double cop = 0.0;   // heat out per MWh of electricity in
  double q_max = 0.0;
  double no_load_cost = 0.0;
  double startup_cost = 0.0;
  int min_up = 1;
  int min_down = 1;
};

struct HeatOnlyUnit {
  std::string id;
  std::string node_heat;
  double q_max = 0.0;
  double marginal_cost = 0.0;
  double no_load_cost = 0.0;
  double startup_cost = 0.0;
  int min_up = 1;
  int min_down = 1;
};

struct BidBlock {
  double price = 0.0;
  double quantity = 0.0;
};

struct ThermalPlant {
  std::string id;
  std::string node_power;
  std::vector<BidBlock> blocks;  // offered every period
};

struct WindFarm {
  std::string id;
  std::string node_power;
  std::vector<double> profile;  // available MWh per period, offered at $0
};

struct Line {
  std::string from;
  std::string to;
  double susceptance = 0.0;
  double capacity = 0.0;
};

struct Bus {
  std::string id;
  std::vector<double> load;  // MWh per period
};

struct PowerNetwork {
  std::vector<Bus> buses;
  std::vector<Line> lines;
};

struct Pipe {
  std::string from;
  std::string to;
  double capacity = 0.0;
  double loss = 0.0;   // fraction lost per traversal
  double delay = 0.0;  // hours; fixed at zero in schema v1
};

struct HeatNode {
  std::string id;
  std::vector<double> load;
};

struct HeatNetwork {
  std::vector<HeatNode> nodes;
  std::vector<Pipe> pipes;
};

enum class Market { Heat, Electricity };

/// Ordered price-quantity blocks per period for one unit in one market.
struct BidLadder {
  std::string unit;
  Market market = Market::Heat;
  std::vector<std::vector<BidBlock>> blocks;  // [period][block]
};

struct Horizon {
  int periods = 24;
};

struct Case {
  int schema_version = 1;
  std::string name;
  Horizon horizon;
  PowerNetwork power;
  HeatNetwork heat;
  std::vector<ExtractionChp> chps;
  std::vector<HeatPump> heat_pumps;
  std::vector<HeatOnlyUnit> heat_only;
  std::vector<ThermalPlant> thermal;
  std::vector<WindFarm> wind;
  /// Foreseen electricity LMP per heat unit per period, used to price its
  /// heat bids day-ahead.
  std::map<std::string, std::vector<double>> foreseen_lmps;
  /// Quantity split of each unit's heat ladder, as fractions of maximum
  /// heat output. Defaults to a single full-quantity block.
  std::map<std::string, std::vector<double>> heat_bid_fractions;
};

struct Violation {
  std::string path;  // location in the case file, e.g. "units.chp[0].r"
  std::string message;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string what, std::vector<Violation> violations)
      : std::runtime_error(std::move(what)),
        violations(std::move(violations)) {}
  std::vector<Violation> violations;
};

/// Checks every structural and physical invariant of the case. Returns all
/// violations found, not just the first.
std::vector<Violation> validate_case(const Case& c);

/// True iff (p, q) lies in the CHP's feasible operating region for the
/// given commitment state. An off unit admits only the origin.
bool for_contains(const ExtractionChp& chp, double p, double q, bool on,
                  double tol = 1e-9);

/// Kind-erased handle over the three heat unit kinds, in the deterministic
/// order chps, heat_pumps, heat_only.
struct HeatUnitRef {
  enum Kind { Chp, Pump, HeatOnly } kind;
  int index;  // into the corresponding Case vector
  std::string id;
  std::string node_heat;
  std::string node_power;  // empty for heat-only units
  double q_max = 0.0;
  double no_load_cost = 0.0;
  double startup_cost = 0.0;
  int min_up = 1;
  int min_down = 1;
};

std::vector<HeatUnitRef> heat_units(const Case& c);

}  // namespace heatuc
