#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "greenbs/lp.hpp"

// Vertex enumeration: every bounded-below LP with a nonempty feasible set has
// a basic feasible solution, so scanning all bases finds the optimum when it
// exists. Unboundedness is decided separately on the normalized recession cone.

namespace greenbs {

namespace {

constexpr double kTol = 1e-7;

struct Polyhedron {
    std::size_t n = 0;
    std::vector<std::vector<double>> eq_a;
    std::vector<double> eq_b;
    std::vector<std::vector<double>> le_a; // a.x <= b
    std::vector<double> le_b;
};

double dot(const std::vector<double>& a, const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
    return s;
}

std::size_t rank_of(std::vector<std::vector<double>> rows, std::size_t n) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t best = rank;
        for (std::size_t i = rank; i < rows.size(); ++i) {
            if (std::abs(rows[i][col]) > std::abs(rows[best][col])) best = i;
        }
        if (std::abs(rows[best][col]) < 1e-10) continue;
        std::swap(rows[rank], rows[best]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            const double f = rows[i][col] / rows[rank][col];
            for (std::size_t j = col; j < n; ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Unique solution of an (over)determined consistent system, if it has one.
std::optional<std::vector<double>> solve_system(std::vector<std::vector<double>> a,
                                                std::vector<double> b, std::size_t n) {
    const std::size_t m = a.size();
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t best = rank;
        for (std::size_t i = rank; i < m; ++i) {
            if (std::abs(a[i][col]) > std::abs(a[best][col])) best = i;
        }
        if (std::abs(a[best][col]) < 1e-10) return std::nullopt; // rank deficient
        std::swap(a[rank], a[best]);
        std::swap(b[rank], b[best]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank) continue;
            const double f = a[i][col] / a[rank][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[rank][j];
            b[i] -= f * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank < n) return std::nullopt;
    for (std::size_t i = rank; i < m; ++i) {
        if (std::abs(b[i]) > 1e-9) return std::nullopt;
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    return x;
}

bool feasible(const Polyhedron& p, const std::vector<double>& x) {
    for (std::size_t i = 0; i < p.eq_a.size(); ++i) {
        if (std::abs(dot(p.eq_a[i], x) - p.eq_b[i]) > kTol * (1.0 + std::abs(p.eq_b[i]))) {
            return false;
        }
    }
    for (std::size_t i = 0; i < p.le_a.size(); ++i) {
        if (dot(p.le_a[i], x) - p.le_b[i] > kTol * (1.0 + std::abs(p.le_b[i]))) return false;
    }
    return true;
}

struct Vertex {
    std::vector<double> x;
    double value = 0.0;
};

std::optional<Vertex> best_vertex(const Polyhedron& p, const std::vector<double>& cost) {
    const std::size_t eq_rank = p.eq_a.empty() ? 0 : rank_of(p.eq_a, p.n);
    if (eq_rank > p.n) return std::nullopt;
    const std::size_t k = p.n - eq_rank;
    const std::size_t m = p.le_a.size();
    if (k > m) return std::nullopt; // no pointed vertex can be formed

    std::optional<Vertex> best;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        auto a = p.eq_a;
        auto b = p.eq_b;
        for (std::size_t idx : pick) {
            a.push_back(p.le_a[idx]);
            b.push_back(p.le_b[idx]);
        }
        if (auto x = solve_system(std::move(a), std::move(b), p.n); x && feasible(p, *x)) {
            const double value = dot(cost, *x);
            if (!best || value < best->value - 1e-12) best = Vertex{*x, value};
        }
        // next combination in lexicographic order
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

} // namespace

LpSolution brute_force_solve(const LinearProgram& lp, std::size_t max_vars) {
    const std::size_t n = lp.num_vars();
    if (n > max_vars) {
        throw std::invalid_argument("brute_force_solve: " + std::to_string(n) +
                                    " variables exceeds limit " + std::to_string(max_vars));
    }
    LpSolution result;
    if (n == 0) {
        result.status = LpStatus::optimal;
        for (std::size_t i = 0; i < lp.num_eq_rows(); ++i) {
            if (std::abs(lp.eq_rhs()[i]) > kTol) result.status = LpStatus::infeasible;
        }
        for (std::size_t i = 0; i < lp.num_ub_rows(); ++i) {
            if (lp.ub_rhs()[i] < -kTol) result.status = LpStatus::infeasible;
        }
        return result;
    }

    Polyhedron region;
    region.n = n;
    region.eq_a = lp.eq_rows();
    region.eq_b = lp.eq_rhs();
    region.le_a = lp.ub_rows();
    region.le_b = lp.ub_rhs();
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = -1.0;
        region.le_a.push_back(e);
        region.le_b.push_back(-lp.lower()[j]);
        if (std::isfinite(lp.upper()[j])) {
            e[j] = 1.0;
            region.le_a.push_back(e);
            region.le_b.push_back(lp.upper()[j]);
        }
    }

    const auto vertex = best_vertex(region, lp.cost());
    if (!vertex) {
        result.status = LpStatus::infeasible;
        return result;
    }

    // Recession directions d >= 0 with sum(d) = 1; finite upper bounds pin d_j = 0.
    Polyhedron cone;
    cone.n = n;
    for (const auto& row : lp.eq_rows()) {
        cone.eq_a.push_back(row);
        cone.eq_b.push_back(0.0);
    }
    cone.eq_a.emplace_back(n, 1.0);
    cone.eq_b.push_back(1.0);
    for (const auto& row : lp.ub_rows()) {
        cone.le_a.push_back(row);
        cone.le_b.push_back(0.0);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        if (std::isfinite(lp.upper()[j])) {
            cone.eq_a.push_back(e);
            cone.eq_b.push_back(0.0);
        }
        e[j] = -1.0;
        cone.le_a.push_back(e);
        cone.le_b.push_back(0.0);
    }
    if (const auto ray = best_vertex(cone, lp.cost()); ray && ray->value < -1e-9) {
        result.status = LpStatus::unbounded;
        return result;
    }

    result.status = LpStatus::optimal;
    result.x = vertex->x;
    result.objective_value = lp.evaluate(result.x);
    return result;
}

} // namespace greenbs
