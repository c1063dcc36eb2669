#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heatuc {

/// Central numeric tolerances. Feasibility and duality defaults follow the
/// project-wide convention; MILP gaps are set per caller.
struct Tolerances {
  double feasibility = 1e-7;
  double duality = 1e-6;
  double mip_rel_gap = 1e-4;
  double mip_abs_gap = 1e-6;
  double time_limit_seconds = 600.0;
};

enum class RowSense { GreaterEqual, Equal };

enum class SolveStatus { Optimal, Infeasible, Unbounded, Limit };

struct SolveReport {
  SolveStatus status = SolveStatus::Limit;
  double objective = 0.0;
  std::vector<double> x;
  /// Row duals. Populated for LPs, and for MILPs solved with with_duals=true
  /// (a follow-up LP solve with the integers fixed).
  std::vector<double> duals;
  double gap = 0.0;
  double wall_seconds = 0.0;
  std::string detail;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-oriented minimization model. Every structural constraint is a row
/// (sense >= or ==); variables carry only simple bounds. Market models put
/// all economically meaningful bounds into rows so that the dual objective
/// is exactly sum(dual * rhs).
class LinearModel {
 public:
  struct Row {
    RowSense sense = RowSense::GreaterEqual;
    double rhs = 0.0;
    std::vector<std::pair<int, double>> coef;
    std::string name;
  };

  int add_var(double lb, double ub, double cost, std::string name = {});
  int add_binary(std::string name = {});
  int add_row(Row row);
  int add_ge(std::vector<std::pair<int, double>> coef, double rhs,
             std::string name = {});
  int add_eq(std::vector<std::pair<int, double>> coef, double rhs,
             std::string name = {});

  void set_cost(int var, double cost) { cost_[var] = cost; }
  void add_cost(int var, double cost) { cost_[var] += cost; }
  void fix_var(int var, double value) { lb_[var] = ub_[var] = value; }

  int num_vars() const { return static_cast<int>(cost_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  bool has_integers() const { return num_binaries_ > 0; }

  double lb(int v) const { return lb_[v]; }
  double ub(int v) const { return ub_[v]; }
  double cost(int v) const { return cost_[v]; }
  bool is_binary(int v) const { return binary_[v]; }
  const std::string& var_name(int v) const { return names_[v]; }
  const std::vector<Row>& rows() const { return rows_; }

  double row_activity(const std::vector<double>& x, int r) const;
  /// sum(y_i * rhs_i); the dual objective when variable bounds are only
  /// {0, +inf} or free, which is how the market models are built.
  double dual_objective(const std::vector<double>& y) const;
  /// c_j - sum_i y_i A_ij for every column (reduced costs under y).
  std::vector<double> reduced_costs(const std::vector<double>& y) const;

 private:
  std::vector<double> lb_, ub_, cost_;
  std::vector<bool> binary_;
  std::vector<std::string> names_;
  std::vector<Row> rows_;
  int num_binaries_ = 0;
};

/// Backend abstraction. One open-source backend (HiGHS) ships with the
/// repository; add a new one by implementing this interface and extending
/// make_backend(). Select via the HEATUC_SOLVER environment variable.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual SolveReport solve_lp(const LinearModel& model,
                               const Tolerances& tol) = 0;
  virtual SolveReport solve_milp(const LinearModel& model,
                                 const Tolerances& tol, bool with_duals) = 0;
  /// Write the model in LP or MPS interchange format (by file extension).
  virtual void write_model(const LinearModel& model,
                           const std::string& path) = 0;
  /// Re-import an exported file and solve it; used to verify round-trips.
  virtual SolveReport solve_file(const std::string& path,
                                 const Tolerances& tol) = 0;
};

/// Returns the backend named by HEATUC_SOLVER (default "highs").
SolverBackend& backend();

SolveReport solve_lp(const LinearModel& model, const Tolerances& tol = {});
SolveReport solve_milp(const LinearModel& model, const Tolerances& tol = {},
                       bool with_duals = false);
void write_model(const LinearModel& model, const std::string& path);

}  // namespace heatuc
