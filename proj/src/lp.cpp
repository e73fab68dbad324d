#include "mediatorless/lp.hpp"

#include <stdexcept>

namespace mediatorless {

namespace {

// Tableau rows: one per constraint (equality form, b >= 0) with the basis
// value in the last column. Bland's rule on raw column indices.
struct Tableau {
    std::vector<std::vector<Rat>> rows;  // m x (n_total + 1)
    std::vector<int> basis;              // basic variable per row
    std::size_t cols = 0;

    // Pivots so `col` enters the basis at `row`.
    void pivot(std::size_t row, std::size_t col) {
        Rat inv = Rat(1) / rows[row][col];
        for (Rat& v : rows[row]) v *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == row || rows[r][col] == 0) continue;
            Rat f = rows[r][col];
            for (std::size_t c = 0; c <= cols; ++c) rows[r][c] -= f * rows[row][c];
        }
        basis[row] = static_cast<int>(col);
    }

    // Maximizes the reduced objective z (a row of length cols+1 holding
    // coefficients and current value). Returns false on unboundedness.
    bool run(std::vector<Rat>& z, std::size_t usable_cols) {
        while (true) {
            std::size_t enter = usable_cols;
            for (std::size_t c = 0; c < usable_cols; ++c) {
                if (z[c] > 0) {  // Bland: first improving column
                    enter = c;
                    break;
                }
            }
            if (enter == usable_cols) return true;
            std::size_t leave = rows.size();
            Rat best;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (rows[r][enter] <= 0) continue;
                Rat ratio = rows[r][cols] / rows[r][enter];
                if (leave == rows.size() || ratio < best ||
                    (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter);
            // update objective row
            Rat f = z[enter];
            for (std::size_t c = 0; c <= cols; ++c) z[c] -= f * rows[leave][c];
        }
    }
};

}  // namespace

LpResult solve_lp(const std::vector<Rat>& objective, const std::vector<LpConstraint>& rows_in) {
    std::size_t n = objective.size();
    std::size_t m = rows_in.size();
    for (const auto& r : rows_in)
        if (r.a.size() != n) throw std::invalid_argument("constraint width mismatch");

    // Count extra columns: one slack/surplus per inequality, one artificial
    // per >= or == row (and per <= row with b < 0 after normalization).
    std::vector<LpConstraint> rows = rows_in;
    for (auto& r : rows) {
        if (r.b < 0) {
            for (Rat& v : r.a) v = -v;
            r.b = -r.b;
            r.rel = r.rel == Relation::le ? Relation::ge : (r.rel == Relation::ge ? Relation::le : Relation::eq);
        }
    }
    std::size_t n_slack = 0, n_art = 0;
    for (const auto& r : rows) {
        if (r.rel != Relation::eq) ++n_slack;
        if (r.rel != Relation::le) ++n_art;
    }
    std::size_t total = n + n_slack + n_art;

    Tableau t;
    t.cols = total;
    t.rows.assign(m, std::vector<Rat>(total + 1, Rat(0)));
    t.basis.assign(m, -1);
    std::size_t slack_at = n, art_at = n + n_slack;
    std::vector<std::size_t> art_cols;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) t.rows[r][c] = rows[r].a[c];
        t.rows[r][total] = rows[r].b;
        if (rows[r].rel == Relation::le) {
            t.rows[r][slack_at] = Rat(1);
            t.basis[r] = static_cast<int>(slack_at++);
        } else if (rows[r].rel == Relation::ge) {
            t.rows[r][slack_at++] = Rat(-1);
            t.rows[r][art_at] = Rat(1);
            t.basis[r] = static_cast<int>(art_at);
            art_cols.push_back(art_at++);
        } else {
            t.rows[r][art_at] = Rat(1);
            t.basis[r] = static_cast<int>(art_at);
            art_cols.push_back(art_at++);
        }
    }

    LpResult res;
    if (n_art > 0) {
        // Phase 1: maximize -sum(artificials).
        std::vector<Rat> z(total + 1, Rat(0));
        for (std::size_t c : art_cols) z[c] = Rat(-1);
        for (std::size_t r = 0; r < m; ++r) {
            // express objective in terms of nonbasic vars
            if (z[t.basis[r]] != 0) {
                Rat f = z[t.basis[r]];
                for (std::size_t c = 0; c <= total; ++c) z[c] -= f * t.rows[r][c];
            }
        }
        if (!t.run(z, total)) throw std::logic_error("phase-1 unbounded");
        if (-z[total] != 0) {
            res.status = LpStatus::infeasible;
            return res;
        }
        // Drive any artificial still in the basis out (degenerate at 0).
        for (std::size_t r = 0; r < m; ++r) {
            if (static_cast<std::size_t>(t.basis[r]) < n + n_slack) continue;
            std::size_t enter = total;
            for (std::size_t c = 0; c < n + n_slack; ++c)
                if (t.rows[r][c] != 0) {
                    enter = c;
                    break;
                }
            if (enter < total) t.pivot(r, enter);
            // else the row is all-zero over real variables; harmless
        }
    }

    // Phase 2 over real + slack columns only.
    std::vector<Rat> z(total + 1, Rat(0));
    for (std::size_t c = 0; c < n; ++c) z[c] = objective[c];
    for (std::size_t r = 0; r < m; ++r) {
        if (static_cast<std::size_t>(t.basis[r]) <= total && z[t.basis[r]] != 0) {
            Rat f = z[t.basis[r]];
            for (std::size_t c = 0; c <= total; ++c) z[c] -= f * t.rows[r][c];
        }
    }
    if (!t.run(z, n + n_slack)) {
        res.status = LpStatus::unbounded;
        return res;
    }
    res.status = LpStatus::optimal;
    res.objective = -z[total];
    res.x.assign(n, Rat(0));
    for (std::size_t r = 0; r < m; ++r)
        if (static_cast<std::size_t>(t.basis[r]) < n) res.x[t.basis[r]] = t.rows[r][total];
    return res;
}

}  // namespace mediatorless
