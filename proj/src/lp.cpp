#include "circres/lp.hpp"

#include "float_guide.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace circres::lp {

std::size_t LinearProgram::add_constraint(std::vector<Term> coeffs, Rational rhs) {
    for (const Term& t : coeffs) {
        if (t.var < 0 || t.var >= num_vars_) {
            throw std::out_of_range("variable " + std::to_string(t.var) + " out of range");
        }
    }
    std::sort(coeffs.begin(), coeffs.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
    std::vector<Term> merged;
    merged.reserve(coeffs.size());
    for (Term& t : coeffs) {
        if (!merged.empty() && merged.back().var == t.var) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(std::move(t));
        }
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
    rows_.push_back({std::move(merged), std::move(rhs)});
    return rows_.size() - 1;
}

namespace {

using SparseRow = std::vector<std::pair<int, Rational>>;
using Entry = std::pair<int, Rational>;

const Rational* find_entry(const SparseRow& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const Entry& e, int c) { return e.first < c; });
    return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

/// dst := (dst without column `skip`) + alpha * src
void add_scaled(SparseRow& dst, int skip, const Rational& alpha, const SparseRow& src,
                SparseRow& scratch) {
    scratch.clear();
    scratch.reserve(dst.size() + src.size());
    auto a = dst.begin();
    auto b = src.begin();
    while (a != dst.end() || b != src.end()) {
        if (b == src.end() || (a != dst.end() && a->first < b->first)) {
            if (a->first != skip) scratch.push_back(std::move(*a));
            ++a;
        } else if (a == dst.end() || b->first < a->first) {
            Rational v = alpha * b->second;
            if (v != 0) scratch.emplace_back(b->first, std::move(v));
            ++b;
        } else {
            Rational v = a->second + alpha * b->second;
            if (v != 0 && a->first != skip) scratch.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    dst.swap(scratch);
}

/// Ax >= b, x >= 0 in dictionary form. Variables: [0,n) structural,
/// [n,n+m) slacks, [n+m,n+2m) artificials (only rows with b > 0 get one).
/// Bland's rule throughout.
class PhaseOne {
public:
    PhaseOne(int num_columns, const std::vector<SparseRow>& rows, const std::vector<Rational>& rhs)
        : n_(num_columns), m_(static_cast<int>(rows.size())) {
        dict_.resize(rows.size());
        value_.resize(rows.size());
        basic_.resize(rows.size());
        for (int i = 0; i < m_; ++i) {
            const SparseRow& a = rows[static_cast<std::size_t>(i)];
            const Rational& b = rhs[static_cast<std::size_t>(i)];
            SparseRow& row = dict_[static_cast<std::size_t>(i)];
            if (b <= 0) {
                // s_i = -b + a.x
                row = a;
                value_[static_cast<std::size_t>(i)] = -b;
                basic_[static_cast<std::size_t>(i)] = slack(i);
            } else {
                // t_i = b - a.x + s_i
                row.reserve(a.size() + 1);
                for (const auto& e : a) row.emplace_back(e.first, -e.second);
                row.emplace_back(slack(i), Rational(1));
                value_[static_cast<std::size_t>(i)] = b;
                basic_[static_cast<std::size_t>(i)] = artificial(i);
                objective_value_ += b;
                SparseRow tmp;
                add_scaled(objective_, -1, Rational(1), row, tmp);
            }
        }
    }

    int slack(int i) const { return n_ + i; }
    int artificial(int i) const { return n_ + m_ + i; }
    bool is_artificial(int v) const { return v >= n_ + m_; }

    /// Runs to optimality; returns true iff the artificial sum reaches zero.
    bool run() {
        SparseRow scratch;
        while (objective_value_ > 0) {
            int entering = -1;
            for (const auto& e : objective_) {
                if (e.second < 0 && !is_artificial(e.first)) {
                    entering = e.first;  // smallest index
                    break;
                }
            }
            if (entering < 0) return false;

            int leave_row = -1;
            Rational best_ratio;
            for (int r = 0; r < m_; ++r) {
                const Rational* c = find_entry(dict_[static_cast<std::size_t>(r)], entering);
                if (c == nullptr || *c >= 0) continue;
                Rational ratio = value_[static_cast<std::size_t>(r)] / -*c;
                if (leave_row < 0 || ratio < best_ratio ||
                    (ratio == best_ratio &&
                     basic_[static_cast<std::size_t>(r)] < basic_[static_cast<std::size_t>(leave_row)])) {
                    leave_row = r;
                    best_ratio = std::move(ratio);
                }
            }
            // The artificial sum is bounded below, so some row must block.
            if (leave_row < 0) return false;
            pivot(leave_row, entering, scratch);
            ++pivots_;
        }
        return true;
    }

    std::vector<Rational> structural_values() const {
        std::vector<Rational> x(static_cast<std::size_t>(n_), Rational(0));
        for (int r = 0; r < m_; ++r) {
            int v = basic_[static_cast<std::size_t>(r)];
            if (v < n_) x[static_cast<std::size_t>(v)] = value_[static_cast<std::size_t>(r)];
        }
        return x;
    }

    /// Multiplier of row i: coefficient of its slack in the objective row.
    std::vector<Rational> row_multipliers() const {
        std::vector<Rational> lambda(static_cast<std::size_t>(m_), Rational(0));
        for (const auto& e : objective_) {
            if (e.first >= n_ && e.first < n_ + m_) lambda[static_cast<std::size_t>(e.first - n_)] = e.second;
        }
        return lambda;
    }

    std::size_t pivots() const noexcept { return pivots_; }

private:
    void pivot(int r, int entering, SparseRow& scratch) {
        SparseRow& prow = dict_[static_cast<std::size_t>(r)];
        const int leaving = basic_[static_cast<std::size_t>(r)];
        const Rational c = *find_entry(prow, entering);
        const Rational inv = Rational(1) / c;

        // entering = -v/c + (1/c) leaving - sum (a_k/c) x_k
        SparseRow fresh;
        fresh.reserve(prow.size());
        bool placed = is_artificial(leaving);  // dropped columns never come back
        for (auto& e : prow) {
            if (!placed && leaving < e.first) {
                fresh.emplace_back(leaving, inv);
                placed = true;
            }
            if (e.first == entering) continue;
            fresh.emplace_back(e.first, -e.second * inv);
        }
        if (!placed) fresh.emplace_back(leaving, inv);
        Rational fresh_value = -value_[static_cast<std::size_t>(r)] * inv;

        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            SparseRow& row = dict_[static_cast<std::size_t>(i)];
            const Rational* alpha = find_entry(row, entering);
            if (alpha == nullptr) continue;
            Rational a = *alpha;
            Rational& v = value_[static_cast<std::size_t>(i)];
            v += a * fresh_value;
            add_scaled(row, entering, a, fresh, scratch);
        }
        if (const Rational* alpha = find_entry(objective_, entering)) {
            Rational a = *alpha;
            objective_value_ += a * fresh_value;
            add_scaled(objective_, entering, a, fresh, scratch);
        }
        prow = std::move(fresh);
        value_[static_cast<std::size_t>(r)] = std::move(fresh_value);
        basic_[static_cast<std::size_t>(r)] = entering;
    }

    int n_;
    int m_;
    std::vector<SparseRow> dict_;
    std::vector<Rational> value_;
    std::vector<int> basic_;
    SparseRow objective_;
    Rational objective_value_ = Rational(0);
    std::size_t pivots_ = 0;
};

// Exact vertex of a floating-point basis: rows outside the basis hold with
// equality, columns outside it are zero. Nothing when the square system is
// singular or its solution violates Ax >= b, x >= 0.
std::optional<std::vector<Rational>> solve_on_basis(int num_columns, const std::vector<SparseRow>& rows,
                                                    const std::vector<Rational>& rhs,
                                                    const std::vector<bool>& basic_column,
                                                    const std::vector<bool>& basic_row) {
    std::vector<int> sub(static_cast<std::size_t>(num_columns), -1);
    std::vector<int> cols;
    for (int c = 0; c < num_columns; ++c) {
        if (basic_column[static_cast<std::size_t>(c)]) {
            sub[static_cast<std::size_t>(c)] = static_cast<int>(cols.size());
            cols.push_back(c);
        }
    }
    // Tight rows restricted to basic columns, right-hand side in column k.
    const int k = static_cast<int>(cols.size());
    std::vector<SparseRow> eq;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (basic_row[i]) continue;
        SparseRow r;
        for (const Entry& e : rows[i]) {
            if (int j = sub[static_cast<std::size_t>(e.first)]; j >= 0) r.emplace_back(j, e.second);
        }
        std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
        if (rhs[i] != 0) r.emplace_back(k, rhs[i]);
        eq.push_back(std::move(r));
    }
    if (static_cast<int>(eq.size()) != k) return std::nullopt;

    // Gauss-Jordan elimination, sparsest pivot row first.
    std::vector<bool> used(eq.size(), false);
    std::vector<int> pivot_row(static_cast<std::size_t>(k), -1);
    SparseRow scratch;
    for (int j = 0; j < k; ++j) {
        int best = -1;
        for (std::size_t r = 0; r < eq.size(); ++r) {
            if (used[r] || find_entry(eq[r], j) == nullptr) continue;
            if (best < 0 || eq[r].size() < eq[static_cast<std::size_t>(best)].size()) best = static_cast<int>(r);
        }
        if (best < 0) return std::nullopt;
        SparseRow& p = eq[static_cast<std::size_t>(best)];
        const Rational inv = Rational(1) / *find_entry(p, j);
        for (Entry& e : p) e.second *= inv;
        used[static_cast<std::size_t>(best)] = true;
        pivot_row[static_cast<std::size_t>(j)] = best;
        for (std::size_t r = 0; r < eq.size(); ++r) {
            if (static_cast<int>(r) == best) continue;
            const Rational* a = find_entry(eq[r], j);
            if (a == nullptr) continue;
            const Rational factor = -*a;
            add_scaled(eq[r], -1, factor, p, scratch);
        }
    }
    std::vector<Rational> x(static_cast<std::size_t>(num_columns), Rational(0));
    for (int j = 0; j < k; ++j) {
        const Rational* v = find_entry(eq[static_cast<std::size_t>(pivot_row[static_cast<std::size_t>(j)])], k);
        if (v == nullptr) continue;
        if (*v < 0) return std::nullopt;
        x[static_cast<std::size_t>(cols[static_cast<std::size_t>(j)])] = *v;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Rational activity = 0;
        for (const Entry& e : rows[i]) activity += e.second * x[static_cast<std::size_t>(e.first)];
        if (activity < rhs[i]) return std::nullopt;
    }
    return x;
}

// Exact re-solve over the columns a floating-point run gives positive value.
// Nothing when that restricted system is infeasible.
std::optional<std::vector<Rational>> solve_on_support(int num_columns, const std::vector<SparseRow>& rows,
                                                      const std::vector<Rational>& rhs,
                                                      const std::vector<double>& guide, std::size_t& pivots) {
    std::vector<int> sub(static_cast<std::size_t>(num_columns), -1);
    int sub_n = 0;
    for (std::size_t c = 0; c < sub.size(); ++c) {
        if (guide[c] > 1e-9) sub[c] = sub_n++;
    }
    std::vector<SparseRow> sub_rows;
    sub_rows.reserve(rows.size());
    for (const SparseRow& row : rows) {
        SparseRow r;
        for (const Entry& e : row) {
            if (int k = sub[static_cast<std::size_t>(e.first)]; k >= 0) r.emplace_back(k, e.second);
        }
        sub_rows.push_back(std::move(r));
    }
    PhaseOne exact(sub_n, sub_rows, rhs);
    const bool ok = exact.run();
    pivots += exact.pivots();
    if (!ok) return std::nullopt;
    std::vector<Rational> xs = exact.structural_values();
    std::vector<Rational> x(static_cast<std::size_t>(num_columns), Rational(0));
    for (std::size_t c = 0; c < x.size(); ++c) {
        if (sub[c] >= 0) x[c] = std::move(xs[static_cast<std::size_t>(sub[c])]);
    }
    return x;
}

// Nearest fraction with denominator at most `limit`, by continued fractions.
Rational nearest_fraction(double v, long long limit) {
    const bool negative = v < 0;
    double rest = std::abs(v);
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int step = 0; step < 64; ++step) {
        const double whole = std::floor(rest);
        if (whole > 1e15) break;
        const Integer a(static_cast<long long>(whole));
        Integer p2 = a * p1 + p0;
        Integer q2 = a * q1 + q0;
        if (q2 > limit) break;
        p0 = std::move(p1);
        q0 = std::move(q1);
        p1 = std::move(p2);
        q1 = std::move(q2);
        const double frac = rest - whole;
        if (frac < 1e-12) break;
        rest = 1 / frac;
    }
    if (q1 == 0) return Rational(0);
    Rational r(p1, q1);
    return negative ? Rational(-r) : r;
}

// The ray scaled by `factor` and rounded, if that is an exact certificate:
// lambda >= 0, lambda A <= 0 and lambda b > 0.
std::optional<std::vector<Rational>> round_ray(int num_columns, const std::vector<SparseRow>& rows,
                                               const std::vector<Rational>& rhs, const std::vector<double>& ray,
                                               double factor) {
    for (long long limit : {1000LL, 1'000'000LL}) {
        std::vector<Rational> lambda(rows.size());
        std::vector<Rational> combo(static_cast<std::size_t>(num_columns), Rational(0));
        Rational value = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            lambda[i] = nearest_fraction(ray[i] * factor, limit);
            if (lambda[i] <= 0) {
                lambda[i] = 0;
                continue;
            }
            for (const Entry& e : rows[i]) combo[static_cast<std::size_t>(e.first)] += lambda[i] * e.second;
            value += lambda[i] * rhs[i];
        }
        if (value > 0 && std::all_of(combo.begin(), combo.end(), [](const Rational& q) { return q <= 0; })) {
            return lambda;
        }
    }
    return std::nullopt;
}

// Exact Farkas multipliers for the reduced rows read off a floating-point
// ray of either sign, when rounding recovers them.
std::optional<std::vector<Rational>> round_multipliers(int num_columns, const std::vector<SparseRow>& rows,
                                                       const std::vector<Rational>& rhs,
                                                       const std::vector<double>& ray) {
    for (double sign : {1.0, -1.0}) {
        double scale = 0;
        for (double d : ray) scale = std::max(scale, sign * d);
        if (scale <= 0) continue;
        if (auto lambda = round_ray(num_columns, rows, rhs, ray, sign / scale)) return lambda;
    }
    return std::nullopt;
}

struct VariableMap {
    bool bounded = false;
    Rational lower = 0;
    std::size_t bound_row = 0;
    int pos = -1;
    int neg = -1;
};

}  // namespace

Solution solve(const LinearProgram& lp, const SolveOptions& options) {
    const auto& cons = lp.constraints();
    const std::size_t nv = static_cast<std::size_t>(lp.num_vars());

    // Lower bounds from single-variable rows with positive coefficient.
    std::vector<VariableMap> vars(nv);
    for (std::size_t k = 0; k < cons.size(); ++k) {
        const Constraint& c = cons[k];
        if (c.coeffs.size() != 1 || c.coeffs[0].coeff <= 0) continue;
        auto& v = vars[static_cast<std::size_t>(c.coeffs[0].var)];
        Rational bound = c.rhs / c.coeffs[0].coeff;
        if (!v.bounded || bound > v.lower) {
            v.bounded = true;
            v.lower = std::move(bound);
            v.bound_row = k;
        }
    }
    std::vector<bool> is_bound_row(cons.size(), false);
    int num_columns = 0;
    for (auto& v : vars) {
        if (v.bounded) is_bound_row[v.bound_row] = true;
        v.pos = num_columns++;
        if (!v.bounded) v.neg = num_columns++;
    }

    // General rows over the shifted / split columns.
    std::vector<std::size_t> general;
    std::vector<SparseRow> rows;
    std::vector<Rational> rhs;
    for (std::size_t k = 0; k < cons.size(); ++k) {
        if (is_bound_row[k]) continue;
        SparseRow row;
        Rational b = cons[k].rhs;
        for (const Term& t : cons[k].coeffs) {
            const VariableMap& v = vars[static_cast<std::size_t>(t.var)];
            row.emplace_back(v.pos, t.coeff);
            if (v.bounded) {
                b -= t.coeff * v.lower;
            } else {
                row.emplace_back(v.neg, -t.coeff);
            }
        }
        general.push_back(k);
        rows.push_back(std::move(row));
        rhs.push_back(std::move(b));
    }
    const std::size_t m = rows.size();
    const std::size_t n = static_cast<std::size_t>(num_columns);

    // Presolve: a column with no negative entry on the remaining rows can
    // satisfy every row it touches by itself, so those rows are discharged.
    std::vector<std::vector<std::pair<std::size_t, const Rational*>>> columns(n);
    for (std::size_t i = 0; i < m; ++i) {
        for (const Entry& e : rows[i]) columns[static_cast<std::size_t>(e.first)].emplace_back(i, &e.second);
    }
    std::vector<bool> row_active(m, true);
    std::vector<bool> col_active(n, true);
    std::vector<std::size_t> negatives(n, 0);
    std::vector<std::size_t> queue;
    for (std::size_t c = 0; c < n; ++c) {
        for (const auto& [i, a] : columns[c]) {
            if (*a < 0) ++negatives[c];
        }
        if (negatives[c] == 0) queue.push_back(c);
    }
    struct Discharge {
        std::size_t column;
        std::vector<std::size_t> rows;
    };
    std::vector<Discharge> discharged;
    Solution result;
    while (!queue.empty()) {
        std::size_t c = queue.back();
        queue.pop_back();
        if (!col_active[c]) continue;
        col_active[c] = false;
        ++result.stats.presolved_columns;
        Discharge d{c, {}};
        for (const auto& [i, a] : columns[c]) {
            if (row_active[i] && *a > 0) d.rows.push_back(i);
        }
        for (std::size_t i : d.rows) {
            row_active[i] = false;
            ++result.stats.presolved_rows;
            for (const Entry& e : rows[i]) {
                std::size_t other = static_cast<std::size_t>(e.first);
                if (e.second < 0 && col_active[other] && --negatives[other] == 0) queue.push_back(other);
            }
        }
        if (!d.rows.empty()) discharged.push_back(std::move(d));
    }

    // Reduced system for the simplex.
    std::vector<int> col_new(n, -1);
    int reduced_n = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (col_active[c]) col_new[c] = reduced_n++;
    }
    std::vector<std::size_t> reduced_rows;
    std::vector<SparseRow> red;
    std::vector<Rational> red_rhs;
    for (std::size_t i = 0; i < m; ++i) {
        if (!row_active[i]) continue;
        SparseRow row;
        for (const Entry& e : rows[i]) {
            int nc = col_new[static_cast<std::size_t>(e.first)];
            if (nc >= 0) row.emplace_back(nc, e.second);
        }
        reduced_rows.push_back(i);
        red.push_back(std::move(row));
        red_rhs.push_back(rhs[i]);
    }
    result.stats.rows = red.size();
    result.stats.columns = static_cast<std::size_t>(reduced_n);

    // Let a floating-point run suggest the answer, then re-derive it exactly.
    std::optional<std::vector<Rational>> guided_point;
    std::optional<std::vector<Rational>> guided_lambda;
    if (options.float_guided && !red.empty() && reduced_n > 0) {
        std::vector<detail::FloatRow> rows_d;
        rows_d.reserve(red.size());
        for (const SparseRow& row : red) {
            detail::FloatRow r;
            r.reserve(row.size());
            for (const Entry& e : row) r.emplace_back(e.first, e.second.convert_to<double>());
            rows_d.push_back(std::move(r));
        }
        std::vector<double> rhs_d;
        rhs_d.reserve(red_rhs.size());
        for (const Rational& b : red_rhs) rhs_d.push_back(b.convert_to<double>());
        const detail::FloatGuide guide = detail::float_guide(reduced_n, rows_d, rhs_d);
        result.stats.float_iterations = guide.iterations;
        if (guide.completed && guide.feasible) {
            if (!guide.basic_column.empty()) {
                guided_point = solve_on_basis(reduced_n, red, red_rhs, guide.basic_column, guide.basic_row);
            }
            if (!guided_point) guided_point = solve_on_support(reduced_n, red, red_rhs, guide.x, result.stats.pivots);
        } else if (guide.completed && !guide.ray.empty()) {
            guided_lambda = round_multipliers(reduced_n, red, red_rhs, guide.ray);
        }
        result.stats.guided = guided_point.has_value() || guided_lambda.has_value();
    }

    std::optional<PhaseOne> simplex;
    bool ok = guided_point.has_value();
    if (!guided_point && !guided_lambda) {
        simplex.emplace(reduced_n, red, red_rhs);
        ok = simplex->run();
        result.stats.pivots += simplex->pivots();
    }

    if (ok) {
        std::vector<Rational> x(n, Rational(0));
        std::vector<Rational> xr = guided_point ? std::move(*guided_point) : simplex->structural_values();
        for (std::size_t c = 0; c < n; ++c) {
            if (col_new[c] >= 0) x[c] = std::move(xr[static_cast<std::size_t>(col_new[c])]);
        }
        // Undo the presolve, latest discharge first.
        for (auto it = discharged.rbegin(); it != discharged.rend(); ++it) {
            for (std::size_t i : it->rows) {
                Rational activity = 0;
                const Rational* own = nullptr;
                for (const Entry& e : rows[i]) {
                    if (static_cast<std::size_t>(e.first) == it->column) {
                        own = &e.second;
                    } else {
                        activity += e.second * x[static_cast<std::size_t>(e.first)];
                    }
                }
                Rational need = (rhs[i] - activity) / *own;
                if (need > x[it->column]) x[it->column] = std::move(need);
            }
        }
        std::vector<Rational> y(nv);
        for (std::size_t j = 0; j < nv; ++j) {
            const VariableMap& v = vars[j];
            y[j] = v.bounded ? v.lower + x[static_cast<std::size_t>(v.pos)]
                             : x[static_cast<std::size_t>(v.pos)] - x[static_cast<std::size_t>(v.neg)];
        }
        if (!satisfies(lp, y)) throw std::logic_error("simplex returned an infeasible point");
        result.point = std::move(y);
    } else {
        std::vector<Rational> lambda(cons.size(), Rational(0));
        std::vector<Rational> red_lambda = guided_lambda ? std::move(*guided_lambda) : simplex->row_multipliers();
        for (std::size_t r = 0; r < reduced_rows.size(); ++r) {
            lambda[general[reduced_rows[r]]] = std::move(red_lambda[r]);
        }
        // Bound rows absorb whatever the general rows leave on their variable.
        std::vector<Rational> column_sum(nv, Rational(0));
        for (std::size_t k = 0; k < cons.size(); ++k) {
            if (is_bound_row[k] || lambda[k] == 0) continue;
            for (const Term& t : cons[k].coeffs) column_sum[static_cast<std::size_t>(t.var)] += lambda[k] * t.coeff;
        }
        for (std::size_t j = 0; j < nv; ++j) {
            const VariableMap& v = vars[j];
            if (!v.bounded || column_sum[j] == 0) continue;
            lambda[v.bound_row] = -column_sum[j] / cons[v.bound_row].coeffs[0].coeff;
        }
        if (!is_farkas_certificate(lp, lambda)) throw std::logic_error("simplex returned an invalid certificate");
        result.certificate = std::move(lambda);
    }
    return result;
}

std::optional<std::vector<Rational>> feasible(const LinearProgram& lp) { return solve(lp).point; }

std::optional<std::vector<Rational>> farkas_certificate(const LinearProgram& lp) {
    return solve(lp).certificate;
}

bool satisfies(const LinearProgram& lp, std::span<const Rational> point) {
    if (point.size() != static_cast<std::size_t>(lp.num_vars())) return false;
    for (const Constraint& c : lp.constraints()) {
        Rational activity = 0;
        for (const Term& t : c.coeffs) activity += t.coeff * point[static_cast<std::size_t>(t.var)];
        if (activity < c.rhs) return false;
    }
    return true;
}

bool is_farkas_certificate(const LinearProgram& lp, std::span<const Rational> multipliers) {
    const auto& cons = lp.constraints();
    if (multipliers.size() != cons.size()) return false;
    std::vector<Rational> combo(static_cast<std::size_t>(lp.num_vars()), Rational(0));
    Rational rhs = 0;
    for (std::size_t k = 0; k < cons.size(); ++k) {
        const Rational& l = multipliers[k];
        if (l < 0) return false;
        if (l == 0) continue;
        for (const Term& t : cons[k].coeffs) combo[static_cast<std::size_t>(t.var)] += l * t.coeff;
        rhs += l * cons[k].rhs;
    }
    return rhs > 0 && std::all_of(combo.begin(), combo.end(), [](const Rational& q) { return q == 0; });
}

}  // namespace circres::lp
