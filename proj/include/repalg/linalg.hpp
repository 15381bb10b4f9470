#pragma once

#include <map>
#include <optional>
#include <vector>

#include "repalg/rational.hpp"

namespace repalg {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

Mat mat_identity(int n);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_apply(const Mat& a, const Vec& x);
Mat mat_transpose(const Mat& a);
bool mat_equal(const Mat& a, const Mat& b);
bool mat_is_zero(const Mat& a);
Mat mat_sub(const Mat& a, const Mat& b);

// Inverse by Gauss-Jordan; nullopt when singular.
std::optional<Mat> mat_inverse(const Mat& a);

// Some solution of A x = b, or nullopt when inconsistent. A need not be
// square or full rank.
std::optional<Vec> solve_linear(const Mat& a, const Vec& b);

// A nonzero kernel vector of a singular square matrix (used as a degeneracy
// witness); nullopt when the matrix is invertible.
std::optional<Vec> kernel_vector(const Mat& a);

// Basis of the nullspace of a (possibly rectangular) matrix.
std::vector<Vec> kernel_basis(const Mat& a, int cols);

// Incremental echelon row space over sparse rows keyed by column index.
// Membership queries reduce against the stored pivots.
class RowSpace {
public:
    using SparseRow = std::map<int, Rational>;

    // Returns true when the row enlarged the span.
    bool insert(SparseRow row);
    bool contains(SparseRow row) const;
    int rank() const { return static_cast<int>(pivots_.size()); }

private:
    void reduce(SparseRow& row) const;
    std::map<int, SparseRow> pivots_;  // leading column -> normalized row
};

}  // namespace repalg
