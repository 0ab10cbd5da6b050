#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace greenbs {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// minimize c.x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  lower <= x <= upper.
///
/// Variables must all be added before the first row; rows are dense and must
/// have one coefficient per variable. Lower bounds are finite, upper bounds
/// may be infinite.
class LinearProgram {
public:
    using Term = std::pair<std::size_t, double>;

    std::size_t add_variable(std::string label, double cost, double lower = 0.0,
                             double upper = kInfinity);

    void add_eq_row(std::vector<double> coeffs, double rhs);
    void add_ub_row(std::vector<double> coeffs, double rhs);
    /// Sparse helpers; repeated indices are summed.
    void add_eq_row(std::span<const Term> terms, double rhs);
    void add_ub_row(std::span<const Term> terms, double rhs);

    void set_bounds(std::size_t var, double lower, double upper);
    void set_cost(std::size_t var, double cost);

    std::size_t num_vars() const { return cost_.size(); }
    std::size_t num_eq_rows() const { return eq_rhs_.size(); }
    std::size_t num_ub_rows() const { return ub_rhs_.size(); }

    const std::vector<double>& cost() const { return cost_; }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::vector<double>>& eq_rows() const { return eq_rows_; }
    const std::vector<double>& eq_rhs() const { return eq_rhs_; }
    const std::vector<std::vector<double>>& ub_rows() const { return ub_rows_; }
    const std::vector<double>& ub_rhs() const { return ub_rhs_; }

    /// Objective value of an assignment.
    double evaluate(std::span<const double> x) const;
    /// Largest violation of any row or bound by `x` (0 when feasible).
    double max_violation(std::span<const double> x) const;

private:
    std::vector<double> densify(std::span<const Term> terms) const;
    void check_row(const std::vector<double>& coeffs, double rhs) const;

    std::vector<double> cost_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<std::string> labels_;
    std::unordered_set<std::string> label_set_;
    std::vector<std::vector<double>> eq_rows_;
    std::vector<double> eq_rhs_;
    std::vector<std::vector<double>> ub_rows_;
    std::vector<double> ub_rhs_;
};

enum class LpStatus { optimal, infeasible, unbounded };

const char* to_string(LpStatus status);

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double objective_value = 0.0;
    std::size_t iterations = 0;
};

struct SimplexOptions {
    double feasibility_tol = 1e-7;
    double pivot_tol = 1e-9;
    double optimality_tol = 1e-9;
};

/// Two-phase dense tableau simplex. Dantzig pricing with lowest-index ties;
/// switches to Bland's rule after 2*(rows+cols) consecutive degenerate pivots.
LpSolution solve(const LinearProgram& lp, const SimplexOptions& options = {});

/// Exhaustive basic-solution enumeration. Exponential; meant as a test oracle.
/// Throws std::invalid_argument when the LP has more than `max_vars` variables.
LpSolution brute_force_solve(const LinearProgram& lp, std::size_t max_vars = 12);

/// CPLEX-style LP text, for cross-checking with external solvers.
void write_lp_text(const LinearProgram& lp, std::ostream& out);

} // namespace greenbs
