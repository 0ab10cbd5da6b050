#include "greenbs/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace greenbs {

// ---------------------------------------------------------------------------
// LinearProgram

std::size_t LinearProgram::add_variable(std::string label, double cost, double lower,
                                        double upper) {
    if (!eq_rows_.empty() || !ub_rows_.empty()) {
        throw std::logic_error("add_variable: variables must be added before rows");
    }
    if (!std::isfinite(cost)) {
        throw std::invalid_argument("add_variable: cost of '" + label + "' is not finite");
    }
    if (!std::isfinite(lower) || std::isnan(upper) || lower > upper) {
        throw std::invalid_argument("add_variable: invalid bounds for '" + label + "'");
    }
    if (!label_set_.insert(label).second) {
        throw std::invalid_argument("add_variable: duplicate label '" + label + "'");
    }
    cost_.push_back(cost);
    lower_.push_back(lower);
    upper_.push_back(upper);
    labels_.push_back(std::move(label));
    return cost_.size() - 1;
}

void LinearProgram::check_row(const std::vector<double>& coeffs, double rhs) const {
    if (coeffs.size() != num_vars()) {
        throw std::invalid_argument("row has " + std::to_string(coeffs.size()) +
                                    " coefficients for " + std::to_string(num_vars()) +
                                    " variables");
    }
    if (!std::isfinite(rhs) ||
        std::any_of(coeffs.begin(), coeffs.end(), [](double a) { return !std::isfinite(a); })) {
        throw std::invalid_argument("row has non-finite data");
    }
}

std::vector<double> LinearProgram::densify(std::span<const Term> terms) const {
    std::vector<double> row(num_vars(), 0.0);
    for (const auto& [j, a] : terms) {
        if (j >= num_vars()) {
            throw std::invalid_argument("row references variable " + std::to_string(j) +
                                        " of " + std::to_string(num_vars()));
        }
        row[j] += a;
    }
    return row;
}

void LinearProgram::add_eq_row(std::vector<double> coeffs, double rhs) {
    check_row(coeffs, rhs);
    eq_rows_.push_back(std::move(coeffs));
    eq_rhs_.push_back(rhs);
}

void LinearProgram::add_ub_row(std::vector<double> coeffs, double rhs) {
    check_row(coeffs, rhs);
    ub_rows_.push_back(std::move(coeffs));
    ub_rhs_.push_back(rhs);
}

void LinearProgram::add_eq_row(std::span<const Term> terms, double rhs) {
    add_eq_row(densify(terms), rhs);
}

void LinearProgram::add_ub_row(std::span<const Term> terms, double rhs) {
    add_ub_row(densify(terms), rhs);
}

void LinearProgram::set_bounds(std::size_t var, double lower, double upper) {
    if (var >= num_vars()) throw std::out_of_range("set_bounds: no such variable");
    if (!std::isfinite(lower) || std::isnan(upper) || lower > upper) {
        throw std::invalid_argument("set_bounds: invalid bounds for '" + labels_[var] + "'");
    }
    lower_[var] = lower;
    upper_[var] = upper;
}

void LinearProgram::set_cost(std::size_t var, double cost) {
    if (var >= num_vars()) throw std::out_of_range("set_cost: no such variable");
    if (!std::isfinite(cost)) throw std::invalid_argument("set_cost: cost not finite");
    cost_[var] = cost;
}

double LinearProgram::evaluate(std::span<const double> x) const {
    double value = 0.0;
    for (std::size_t j = 0; j < cost_.size(); ++j) value += cost_[j] * x[j];
    return value;
}

double LinearProgram::max_violation(std::span<const double> x) const {
    double worst = 0.0;
    auto dot = [&](const std::vector<double>& row) {
        double s = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
        return s;
    };
    for (std::size_t i = 0; i < eq_rows_.size(); ++i) {
        worst = std::max(worst, std::abs(dot(eq_rows_[i]) - eq_rhs_[i]));
    }
    for (std::size_t i = 0; i < ub_rows_.size(); ++i) {
        worst = std::max(worst, dot(ub_rows_[i]) - ub_rhs_[i]);
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        worst = std::max(worst, lower_[j] - x[j]);
        worst = std::max(worst, x[j] - upper_[j]);
    }
    return worst;
}

const char* to_string(LpStatus status) {
    switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Simplex

namespace {

struct StandardRow {
    std::vector<double> coeffs; // over reduced columns
    double rhs = 0.0;
    bool equality = false;
};

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(cols + 1), data_(rows * stride_, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return data_[i * stride_ + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * stride_ + j]; }
    double& rhs(std::size_t i) { return data_[i * stride_ + cols_]; }
    double rhs(std::size_t i) const { return data_[i * stride_ + cols_]; }
    double* row(std::size_t i) { return data_.data() + i * stride_; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::size_t stride_;
    std::vector<double> data_;
};

class SimplexEngine {
public:
    SimplexEngine(Tableau& tab, std::vector<std::size_t>& basis, const SimplexOptions& opt)
        : tab_(tab), basis_(basis), opt_(opt) {}

    enum class Outcome { optimal, unbounded };

    // Minimizes cost over columns [0, allowed_cols). Reduced costs are rebuilt
    // from `cost` and the current basis.
    Outcome run(const std::vector<double>& cost, std::size_t allowed_cols) {
        const std::size_t m = tab_.rows();
        const std::size_t n = tab_.cols();
        reduced_.assign(cost.begin(), cost.end());
        reduced_.resize(n + 1, 0.0);
        reduced_[n] = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double cb = cost[basis_[i]];
            if (cb == 0.0) continue;
            const double* r = tab_.row(i);
            for (std::size_t j = 0; j <= n; ++j) reduced_[j] -= cb * r[j];
        }

        bool bland = false;
        std::size_t stall = 0;
        const std::size_t stall_limit = 2 * (m + n);
        const std::size_t iteration_limit = 50 * (m + n) + 1000;
        std::size_t local = 0;

        while (true) {
            if (++local > iteration_limit) {
                throw std::runtime_error("simplex: iteration limit exceeded");
            }
            // entering column
            std::size_t q = n;
            double best = -opt_.optimality_tol;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                if (reduced_[j] < best) {
                    q = j;
                    if (bland) break;
                    best = reduced_[j];
                }
            }
            if (q == n) return Outcome::optimal;

            // leaving row: min ratio, ties to the lowest basic index
            std::size_t r = m;
            double best_ratio = kInfinity;
            for (std::size_t i = 0; i < m; ++i) {
                const double a = tab_.at(i, q);
                if (a <= opt_.pivot_tol) continue;
                const double ratio = std::max(tab_.rhs(i), 0.0) / a;
                if (r == m) {
                    r = i;
                    best_ratio = ratio;
                    continue;
                }
                const double tie = 1e-12 * std::max(1.0, best_ratio);
                if (ratio < best_ratio - tie) {
                    r = i;
                    best_ratio = ratio;
                } else if (ratio <= best_ratio + tie && basis_[i] < basis_[r]) {
                    r = i;
                    best_ratio = std::min(best_ratio, ratio);
                }
            }
            if (r == m) return Outcome::unbounded;

            if (best_ratio * -reduced_[q] <= 1e-14) {
                if (++stall > stall_limit) bland = true;
            } else {
                stall = 0;
            }
            pivot(r, q);
            ++iterations;
        }
    }

    void pivot(std::size_t r, std::size_t q) {
        const std::size_t m = tab_.rows();
        const std::size_t n = tab_.cols();
        double* pr = tab_.row(r);
        const double inv = 1.0 / pr[q];
        nonzero_.clear();
        for (std::size_t j = 0; j <= n; ++j) {
            if (pr[j] != 0.0) {
                pr[j] *= inv;
                nonzero_.push_back(j);
            }
        }
        pr[q] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            double* ri = tab_.row(i);
            const double f = ri[q];
            if (f == 0.0) continue;
            for (std::size_t j : nonzero_) ri[j] -= f * pr[j];
            ri[q] = 0.0;
        }
        if (!reduced_.empty()) {
            const double f = reduced_[q];
            if (f != 0.0) {
                for (std::size_t j : nonzero_) reduced_[j] -= f * pr[j];
                reduced_[q] = 0.0;
            }
        }
        basis_[r] = q;
    }

    std::size_t iterations = 0;

private:
    Tableau& tab_;
    std::vector<std::size_t>& basis_;
    const SimplexOptions& opt_;
    std::vector<double> reduced_;
    std::vector<std::size_t> nonzero_;
};

} // namespace

LpSolution solve(const LinearProgram& lp, const SimplexOptions& opt) {
    const std::size_t n_orig = lp.num_vars();
    const auto& lower = lp.lower();
    const auto& upper = lp.upper();

    // Shift every variable to its lower bound; fixed variables leave the problem.
    std::vector<std::size_t> column_of(n_orig, n_orig);
    std::vector<std::size_t> free_vars;
    for (std::size_t j = 0; j < n_orig; ++j) {
        if (upper[j] > lower[j]) {
            column_of[j] = free_vars.size();
            free_vars.push_back(j);
        }
    }
    const std::size_t nk = free_vars.size();

    LpSolution result;
    result.x = lower;

    std::vector<StandardRow> rows;
    auto add_row = [&](const std::vector<double>& a, double b, bool eq) {
        StandardRow row{std::vector<double>(nk, 0.0), b, eq};
        double scale = 0.0;
        for (std::size_t j = 0; j < n_orig; ++j) {
            if (a[j] == 0.0) continue;
            row.rhs -= a[j] * lower[j];
            if (column_of[j] != n_orig) {
                row.coeffs[column_of[j]] = a[j];
                scale = std::max(scale, std::abs(a[j]));
            }
        }
        if (scale == 0.0) {
            // constant row: either trivially satisfied or proves infeasibility
            const bool ok = eq ? std::abs(row.rhs) <= opt.feasibility_tol
                               : row.rhs >= -opt.feasibility_tol;
            return ok;
        }
        for (double& c : row.coeffs) c /= scale;
        row.rhs /= scale;
        rows.push_back(std::move(row));
        return true;
    };

    bool consistent = true;
    for (std::size_t i = 0; i < lp.num_eq_rows(); ++i) {
        consistent &= add_row(lp.eq_rows()[i], lp.eq_rhs()[i], true);
    }
    for (std::size_t i = 0; i < lp.num_ub_rows(); ++i) {
        consistent &= add_row(lp.ub_rows()[i], lp.ub_rhs()[i], false);
    }
    for (std::size_t k = 0; k < nk; ++k) {
        const std::size_t j = free_vars[k];
        if (std::isfinite(upper[j])) {
            StandardRow row{std::vector<double>(nk, 0.0), upper[j] - lower[j], false};
            row.coeffs[k] = 1.0;
            rows.push_back(std::move(row));
        }
    }
    if (!consistent) {
        result.status = LpStatus::infeasible;
        return result;
    }

    const std::size_t m = rows.size();
    std::size_t n_slack = 0;
    std::size_t n_art = 0;
    for (const auto& row : rows) {
        if (!row.equality) ++n_slack;
        if (row.equality || row.rhs < 0.0) ++n_art;
    }
    const std::size_t slack0 = nk;
    const std::size_t art0 = nk + n_slack;
    const std::size_t ncols = art0 + n_art;

    Tableau tab(m, ncols);
    std::vector<std::size_t> basis(m);
    std::size_t next_slack = slack0;
    std::size_t next_art = art0;
    double max_rhs = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = rows[i];
        const double sign = row.rhs < 0.0 ? -1.0 : 1.0;
        for (std::size_t k = 0; k < nk; ++k) tab.at(i, k) = sign * row.coeffs[k];
        tab.rhs(i) = sign * row.rhs;
        max_rhs = std::max(max_rhs, tab.rhs(i));
        if (!row.equality) {
            tab.at(i, next_slack) = sign;
            if (sign > 0.0) basis[i] = next_slack;
            ++next_slack;
        }
        if (row.equality || sign < 0.0) {
            tab.at(i, next_art) = 1.0;
            basis[i] = next_art++;
        }
    }

    SimplexEngine engine(tab, basis, opt);

    if (n_art > 0) {
        std::vector<double> phase1(ncols, 0.0);
        for (std::size_t j = art0; j < ncols; ++j) phase1[j] = 1.0;
        engine.run(phase1, ncols);
        double infeasibility = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] >= art0) infeasibility += std::max(tab.rhs(i), 0.0);
        }
        if (infeasibility > opt.feasibility_tol * std::max(1.0, max_rhs)) {
            result.status = LpStatus::infeasible;
            result.iterations = engine.iterations;
            return result;
        }
        // Pivot zero-level artificials out; rows with no candidate are redundant.
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < art0) continue;
            for (std::size_t j = 0; j < art0; ++j) {
                if (std::abs(tab.at(i, j)) > opt.pivot_tol) {
                    engine.pivot(i, j);
                    break;
                }
            }
        }
    }

    double cost_scale = 0.0;
    for (std::size_t k = 0; k < nk; ++k) {
        cost_scale = std::max(cost_scale, std::abs(lp.cost()[free_vars[k]]));
    }
    if (cost_scale == 0.0) cost_scale = 1.0;
    std::vector<double> phase2(ncols, 0.0);
    for (std::size_t k = 0; k < nk; ++k) phase2[k] = lp.cost()[free_vars[k]] / cost_scale;

    const auto outcome = engine.run(phase2, art0);
    result.iterations = engine.iterations;
    if (outcome == SimplexEngine::Outcome::unbounded) {
        result.status = LpStatus::unbounded;
        return result;
    }

    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < nk) {
            const std::size_t j = free_vars[basis[i]];
            result.x[j] = std::clamp(lower[j] + std::max(tab.rhs(i), 0.0), lower[j], upper[j]);
        }
    }
    result.status = LpStatus::optimal;
    result.objective_value = lp.evaluate(result.x);
    return result;
}

// ---------------------------------------------------------------------------
// LP text export

void write_lp_text(const LinearProgram& lp, std::ostream& out) {
    const auto prec = out.precision(17);
    auto write_terms = [&](const std::vector<double>& coeffs) {
        bool first = true;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            if (coeffs[j] == 0.0) continue;
            out << (coeffs[j] < 0.0 ? " - " : (first ? " " : " + ")) << std::abs(coeffs[j])
                << ' ' << lp.labels()[j];
            first = false;
        }
        if (first) out << " 0 " << (lp.num_vars() > 0 ? lp.labels()[0] : "x");
    };
    out << "Minimize\n obj:";
    write_terms(lp.cost());
    out << "\nSubject To\n";
    for (std::size_t i = 0; i < lp.num_eq_rows(); ++i) {
        out << " e" << i + 1 << ':';
        write_terms(lp.eq_rows()[i]);
        out << " = " << lp.eq_rhs()[i] << '\n';
    }
    for (std::size_t i = 0; i < lp.num_ub_rows(); ++i) {
        out << " u" << i + 1 << ':';
        write_terms(lp.ub_rows()[i]);
        out << " <= " << lp.ub_rhs()[i] << '\n';
    }
    out << "Bounds\n";
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        const double lo = lp.lower()[j];
        const double up = lp.upper()[j];
        if (lo == up) {
            out << ' ' << lp.labels()[j] << " = " << lo << '\n';
        } else if (std::isfinite(up)) {
            out << ' ' << lo << " <= " << lp.labels()[j] << " <= " << up << '\n';
        } else {
            out << ' ' << lp.labels()[j] << " >= " << lo << '\n';
        }
    }
    out << "End\n";
    out.precision(prec);
}

} // namespace greenbs
