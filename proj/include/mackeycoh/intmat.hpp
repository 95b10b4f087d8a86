#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "mackeycoh/error.hpp"

namespace mackeycoh {

using Int = boost::multiprecision::cpp_int;

// Dense integer matrix, row-major.  Zero-row and zero-column shapes are
// legal and compose like the corresponding maps between free modules.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static Mat identity(int n);
    static Mat zero(int rows, int cols) { return Mat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Int& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    Mat operator*(const Mat& rhs) const;
    Mat operator+(const Mat& rhs) const;
    Mat operator-(const Mat& rhs) const;
    Mat scaled(const Int& k) const;
    Mat transposed() const;
    bool operator==(const Mat& rhs) const = default;
    bool is_zero() const;

    std::vector<Int> apply(const std::vector<Int>& x) const;
    std::vector<Int> col(int j) const;

    // stack side by side / on top of each other
    static Mat hcat(const Mat& a, const Mat& b);
    static Mat vcat(const Mat& a, const Mat& b);
    // top-left a, bottom-right b, zeros elsewhere
    static Mat diag_block(const Mat& a, const Mat& b);
    Mat rows_slice(int from, int to) const;  // [from, to)
    Mat cols_slice(int from, int to) const;

    std::string to_string() const;  // [[1,0],[0,3]]

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

// U*A*V == D with U, V unimodular; D diagonal with d1 | d2 | ... | dr,
// all nonnegative, nonzero entries first.  rank = r.
struct SnfDecomposition {
    Mat U, Uinv, V, Vinv, D;
    int rank = 0;
};

SnfDecomposition snf(const Mat& a);

// Columns generate the lattice {x : A x = 0}.
Mat kernel_basis(const Mat& a);

// One integer solution of A x = b, if any.
std::optional<std::vector<Int>> solve_linear(const Mat& a, const std::vector<Int>& b);

}  // namespace mackeycoh
