#include "repalg/linalg.hpp"

#include "repalg/errors.hpp"

namespace repalg {

Mat mat_identity(int n) {
    Mat m(n, Vec(n, Rational(0)));
    for (int i = 0; i < n; ++i) m[i][i] = Rational(1);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.empty() || b.empty()) return {};
    const int n = static_cast<int>(a.size());
    const int k = static_cast<int>(b.size());
    const int m = static_cast<int>(b[0].size());
    if (static_cast<int>(a[0].size()) != k)
        throw input_error("matrix product shape mismatch");
    Mat r(n, Vec(m, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (int j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

Vec mat_apply(const Mat& a, const Vec& x) {
    const int n = static_cast<int>(a.size());
    Vec r(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        if (a[i].size() != x.size()) throw input_error("matrix apply shape mismatch");
        for (size_t j = 0; j < x.size(); ++j)
            if (!x[j].is_zero()) r[i] += a[i][j] * x[j];
    }
    return r;
}

Mat mat_transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat r(a[0].size(), Vec(a.size(), Rational(0)));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
    return r;
}

bool mat_equal(const Mat& a, const Mat& b) { return a == b; }

bool mat_is_zero(const Mat& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

Mat mat_sub(const Mat& a, const Mat& b) {
    if (a.size() != b.size()) throw input_error("matrix difference shape mismatch");
    Mat r = a;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size())
            throw input_error("matrix difference shape mismatch");
        for (size_t j = 0; j < a[i].size(); ++j) r[i][j] = a[i][j] - b[i][j];
    }
    return r;
}

namespace {

// Row-reduces [a | rhs] in place; rhs may be empty. Returns pivot columns.
std::vector<int> row_reduce(Mat& a, Mat* rhs) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    std::vector<int> pivot_cols;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[p], a[r]);
        if (rhs) std::swap((*rhs)[p], (*rhs)[r]);
        const Rational inv = Rational(1) / a[r][c];
        for (auto& x : a[r]) x *= inv;
        if (rhs)
            for (auto& x : (*rhs)[r]) x *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Rational f = a[i][c];
            for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            if (rhs)
                for (size_t j = 0; j < (*rhs)[i].size(); ++j)
                    (*rhs)[i][j] -= f * (*rhs)[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

}  // namespace

std::optional<Mat> mat_inverse(const Mat& a) {
    const int n = static_cast<int>(a.size());
    Mat work = a;
    Mat rhs = mat_identity(n);
    const auto pivots = row_reduce(work, &rhs);
    if (static_cast<int>(pivots.size()) != n) return std::nullopt;
    return rhs;
}

std::optional<Vec> solve_linear(const Mat& a, const Vec& b) {
    const int rows = static_cast<int>(a.size());
    if (rows != static_cast<int>(b.size()))
        throw input_error("solve_linear shape mismatch");
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    Mat work = a;
    Mat rhs(rows, Vec(1));
    for (int i = 0; i < rows; ++i) rhs[i][0] = b[i];
    const auto pivots = row_reduce(work, &rhs);
    // Inconsistent iff a zero row of `work` has a nonzero right-hand side.
    for (int i = static_cast<int>(pivots.size()); i < rows; ++i)
        if (!rhs[i][0].is_zero()) return std::nullopt;
    Vec x(cols, Rational(0));
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = rhs[k][0];
    return x;
}

std::optional<Vec> kernel_vector(const Mat& a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    Mat work = a;
    const auto pivots = row_reduce(work, nullptr);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    int free_col = -1;
    for (int c = 0; c < cols; ++c)
        if (!is_pivot[c]) { free_col = c; break; }
    if (free_col < 0) return std::nullopt;
    Vec x(cols, Rational(0));
    x[free_col] = Rational(1);
    for (size_t k = 0; k < pivots.size(); ++k)
        x[pivots[k]] = -work[k][free_col];
    return x;
}

std::vector<Vec> kernel_basis(const Mat& a, int cols) {
    Mat work = a;
    const auto pivots = row_reduce(work, nullptr);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        Vec x(cols, Rational(0));
        x[c] = Rational(1);
        for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -work[k][c];
        basis.push_back(std::move(x));
    }
    return basis;
}

void RowSpace::reduce(SparseRow& row) const {
    while (!row.empty()) {
        const int lead = row.begin()->first;
        auto it = pivots_.find(lead);
        if (it == pivots_.end()) return;
        const Rational f = row.begin()->second;
        for (const auto& [col, val] : it->second) {
            auto jt = row.find(col);
            if (jt == row.end()) {
                row.emplace(col, -f * val);
            } else {
                jt->second -= f * val;
                if (jt->second.is_zero()) row.erase(jt);
            }
        }
    }
}

bool RowSpace::insert(SparseRow row) {
    reduce(row);
    if (row.empty()) return false;
    const Rational inv = Rational(1) / row.begin()->second;
    for (auto& [col, val] : row) val *= inv;
    const int lead = row.begin()->first;
    pivots_.emplace(lead, std::move(row));
    return true;
}

bool RowSpace::contains(SparseRow row) const {
    reduce(row);
    return row.empty();
}

}  // namespace repalg
