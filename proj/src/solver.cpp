#include "heatuc/solver.hpp"

#include <Highs.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>

namespace heatuc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

int LinearModel::add_var(double lb, double ub, double cost, std::string name) {
  lb_.push_back(lb);
  ub_.push_back(ub);
  cost_.push_back(cost);
  binary_.push_back(false);
  names_.push_back(std::move(name));
  return num_vars() - 1;
}

int LinearModel::add_binary(std::string name) {
  int v = add_var(0.0, 1.0, 0.0, std::move(name));
  binary_[v] = true;
  ++num_binaries_;
  return v;
}

int LinearModel::add_row(Row row) {
  for (const auto& [col, coef] : row.coef) {
    if (col < 0 || col >= num_vars())
      throw SolverError("row '" + row.name + "' references undeclared variable");
    (void)coef;
  }
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

int LinearModel::add_ge(std::vector<std::pair<int, double>> coef, double rhs,
                        std::string name) {
  return add_row({RowSense::GreaterEqual, rhs, std::move(coef), std::move(name)});
}

int LinearModel::add_eq(std::vector<std::pair<int, double>> coef, double rhs,
                        std::string name) {
  return add_row({RowSense::Equal, rhs, std::move(coef), std::move(name)});
}

double LinearModel::row_activity(const std::vector<double>& x, int r) const {
  double a = 0.0;
  for (const auto& [col, coef] : rows_[r].coef) a += coef * x[col];
  return a;
}

double LinearModel::dual_objective(const std::vector<double>& y) const {
  double obj = 0.0;
  for (int r = 0; r < num_rows(); ++r) obj += y[r] * rows_[r].rhs;
  return obj;
}

std::vector<double> LinearModel::reduced_costs(
    const std::vector<double>& y) const {
  std::vector<double> rc(cost_);
  for (int r = 0; r < num_rows(); ++r) {
    for (const auto& [col, coef] : rows_[r].coef) rc[col] -= y[r] * coef;
  }
  return rc;
}

namespace {

HighsLp to_highs(const LinearModel& m) {
  HighsLp lp;
  lp.num_col_ = m.num_vars();
  lp.num_row_ = m.num_rows();
  lp.sense_ = ObjSense::kMinimize;
  lp.col_cost_.resize(lp.num_col_);
  lp.col_lower_.resize(lp.num_col_);
  lp.col_upper_.resize(lp.num_col_);
  bool any_int = false;
  for (int v = 0; v < lp.num_col_; ++v) {
    lp.col_cost_[v] = m.cost(v);
    lp.col_lower_[v] = m.lb(v);
    lp.col_upper_[v] = m.ub(v);
    if (m.is_binary(v)) any_int = true;
  }
  if (any_int) {
    lp.integrality_.resize(lp.num_col_, HighsVarType::kContinuous);
    for (int v = 0; v < lp.num_col_; ++v)
      if (m.is_binary(v)) lp.integrality_[v] = HighsVarType::kInteger;
  }
  lp.row_lower_.resize(lp.num_row_);
  lp.row_upper_.resize(lp.num_row_);
  for (int r = 0; r < lp.num_row_; ++r) {
    const auto& row = m.rows()[r];
    lp.row_lower_[r] = row.rhs;
    lp.row_upper_[r] = row.sense == RowSense::Equal ? row.rhs : kInf;
  }
  // Column-wise matrix assembled from the row storage.
  std::vector<int> count(lp.num_col_, 0);
  for (const auto& row : m.rows())
    for (const auto& [col, coef] : row.coef) ++count[col];
  lp.a_matrix_.format_ = MatrixFormat::kColwise;
  lp.a_matrix_.start_.assign(lp.num_col_ + 1, 0);
  for (int v = 0; v < lp.num_col_; ++v)
    lp.a_matrix_.start_[v + 1] = lp.a_matrix_.start_[v] + count[v];
  lp.a_matrix_.index_.resize(lp.a_matrix_.start_.back());
  lp.a_matrix_.value_.resize(lp.a_matrix_.start_.back());
  std::vector<int> cursor(lp.a_matrix_.start_.begin(),
                          lp.a_matrix_.start_.end() - 1);
  for (int r = 0; r < lp.num_row_; ++r) {
    for (const auto& [col, coef] : m.rows()[r].coef) {
      lp.a_matrix_.index_[cursor[col]] = r;
      lp.a_matrix_.value_[cursor[col]] = coef;
      ++cursor[col];
    }
  }
  return lp;
}

SolveStatus map_status(HighsModelStatus st, std::string& detail) {
  switch (st) {
    case HighsModelStatus::kOptimal:
      return SolveStatus::Optimal;
    case HighsModelStatus::kInfeasible:
      return SolveStatus::Infeasible;
    case HighsModelStatus::kUnbounded:
      return SolveStatus::Unbounded;
    case HighsModelStatus::kUnboundedOrInfeasible:
      detail = "unbounded or infeasible";
      return SolveStatus::Unbounded;
    default:
      detail = "solver stopped: " +
               std::to_string(static_cast<int>(st));
      return SolveStatus::Limit;
  }
}

class HighsBackend final : public SolverBackend {
 public:
  std::string name() const override { return "highs"; }

  SolveReport solve_lp(const LinearModel& model,
                       const Tolerances& tol) override {
    return run(model, tol, /*as_mip=*/false, /*with_duals=*/true);
  }

  SolveReport solve_milp(const LinearModel& model, const Tolerances& tol,
                         bool with_duals) override {
    SolveReport rep = run(model, tol, /*as_mip=*/true, /*with_duals=*/false);
    if (with_duals && rep.status == SolveStatus::Optimal) {
      // Re-solve with integers fixed at the incumbent to recover duals.
      LinearModel fixed = model;  // cheap at our scale
      for (int v = 0; v < model.num_vars(); ++v)
        if (model.is_binary(v)) fixed.fix_var(v, std::round(rep.x[v]));
      SolveReport lp = run(fixed, tol, false, true);
      if (lp.status != SolveStatus::Optimal)
        throw SolverError("fixed-integer re-solve failed: " + lp.detail);
      rep.x = std::move(lp.x);
      rep.duals = std::move(lp.duals);
      rep.objective = lp.objective;
    }
    return rep;
  }

  void write_model(const LinearModel& model, const std::string& path) override {
    Highs h;
    configure(h, Tolerances{});
    if (h.passModel(to_highs(model)) != HighsStatus::kOk)
      throw SolverError("backend rejected model");
    if (h.writeModel(path) == HighsStatus::kError)
      throw SolverError("failed to write model to " + path);
  }

  SolveReport solve_file(const std::string& path,
                         const Tolerances& tol) override {
    Highs h;
    configure(h, tol);
    if (h.readModel(path) != HighsStatus::kOk)
      throw SolverError("failed to read model from " + path);
    auto t0 = std::chrono::steady_clock::now();
    HighsStatus hst = h.run();
    SolveReport rep;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (hst == HighsStatus::kError) {
      rep.status = SolveStatus::Limit;
      rep.detail = "backend error on re-import";
      return rep;
    }
    rep.status = map_status(h.getModelStatus(), rep.detail);
    if (rep.status == SolveStatus::Optimal) {
      rep.objective = h.getInfo().objective_function_value;
      rep.x = h.getSolution().col_value;
    }
    return rep;
  }

 private:
  static void configure(Highs& h, const Tolerances& tol) {
    h.setOptionValue("output_flag", false);
    h.setOptionValue("threads", 1);
    h.setOptionValue("random_seed", 7);
    h.setOptionValue("mip_rel_gap", tol.mip_rel_gap);
    h.setOptionValue("mip_abs_gap", tol.mip_abs_gap);
    h.setOptionValue("time_limit", tol.time_limit_seconds);
  }

  SolveReport run(const LinearModel& model, const Tolerances& tol, bool as_mip,
                  bool with_duals) {
    Highs h;
    configure(h, tol);
    HighsLp lp = to_highs(model);
    if (!as_mip) lp.integrality_.clear();
    if (h.passModel(std::move(lp)) != HighsStatus::kOk)
      throw SolverError("backend rejected model");
    auto t0 = std::chrono::steady_clock::now();
    HighsStatus hst = h.run();
    SolveReport rep;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (hst == HighsStatus::kError) {
      rep.status = SolveStatus::Limit;
      rep.detail = "backend reported numerical failure";
      return rep;
    }
    rep.status = map_status(h.getModelStatus(), rep.detail);
    if (rep.status == SolveStatus::Optimal ||
        (rep.status == SolveStatus::Limit &&
         h.getInfo().primal_solution_status == kSolutionStatusFeasible)) {
      rep.objective = h.getInfo().objective_function_value;
      rep.x = h.getSolution().col_value;
      if (with_duals) rep.duals = h.getSolution().row_dual;
      if (as_mip) rep.gap = h.getInfo().mip_gap;
    }
    return rep;
  }
};

}  // namespace

SolverBackend& backend() {
  static std::mutex mu;
  static std::unique_ptr<SolverBackend> instance;
  std::lock_guard<std::mutex> lock(mu);
  if (!instance) {
    const char* env = std::getenv("HEATUC_SOLVER");
    std::string want = env ? env : "highs";
    if (want == "highs")
      instance = std::make_unique<HighsBackend>();
    else
      throw SolverError("unknown solver backend '" + want +
                        "' (available: highs)");
  }
  return *instance;
}

SolveReport solve_lp(const LinearModel& model, const Tolerances& tol) {
  return backend().solve_lp(model, tol);
}

SolveReport solve_milp(const LinearModel& model, const Tolerances& tol,
                       bool with_duals) {
  return backend().solve_milp(model, tol, with_duals);
}

void write_model(const LinearModel& model, const std::string& path) {
  backend().write_model(model, path);
}

}  // namespace heatuc
