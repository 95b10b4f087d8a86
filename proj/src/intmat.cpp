#include "mackeycoh/intmat.hpp"

#include <sstream>

namespace mackeycoh {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_) throw Error("Mat: shape mismatch in product");
    Mat out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& v = (*this)(i, k);
            if (v == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += v * rhs(k, j);
        }
    return out;
}

Mat Mat::operator+(const Mat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error("Mat: shape mismatch in sum");
    Mat out(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + rhs.a_[i];
    return out;
}

Mat Mat::operator-(const Mat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error("Mat: shape mismatch in difference");
    Mat out(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
    return out;
}

Mat Mat::scaled(const Int& k) const {
    Mat out(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * k;
    return out;
}

Mat Mat::transposed() const {
    Mat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

bool Mat::is_zero() const {
    for (const Int& v : a_)
        if (v != 0) return false;
    return true;
}

std::vector<Int> Mat::apply(const std::vector<Int>& x) const {
    if (int(x.size()) != cols_) throw Error("Mat: shape mismatch in apply");
    std::vector<Int> out(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * x[j];
    return out;
}

std::vector<Int> Mat::col(int j) const {
    std::vector<Int> out(rows_);
    for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

Mat Mat::hcat(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_) throw Error("Mat: hcat row mismatch");
    Mat out(a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
        for (int j = 0; j < b.cols_; ++j) out(i, a.cols_ + j) = b(i, j);
    }
    return out;
}

Mat Mat::vcat(const Mat& a, const Mat& b) {
    if (a.cols_ != b.cols_) throw Error("Mat: vcat column mismatch");
    Mat out(a.rows_ + b.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) out(a.rows_ + i, j) = b(i, j);
    return out;
}

Mat Mat::diag_block(const Mat& a, const Mat& b) {
    Mat out(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) out(a.rows_ + i, a.cols_ + j) = b(i, j);
    return out;
}

Mat Mat::rows_slice(int from, int to) const {
    Mat out(to - from, cols_);
    for (int i = from; i < to; ++i)
        for (int j = 0; j < cols_; ++j) out(i - from, j) = (*this)(i, j);
    return out;
}

Mat Mat::cols_slice(int from, int to) const {
    Mat out(rows_, to - from);
    for (int i = 0; i < rows_; ++i)
        for (int j = from; j < to; ++j) out(i, j - from) = (*this)(i, j);
    return out;
}

std::string Mat::to_string() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < rows_; ++i) {
        if (i) os << ',';
        os << '[';
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ',';
            os << (*this)(i, j);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

namespace {

struct SnfWork {
    Mat d, u, uinv, v, vinv;

    // left-multiply by elementary ops, mirrored inversely on uinv
    void row_swap(int i, int j) {
        for (int k = 0; k < d.cols(); ++k) std::swap(d(i, k), d(j, k));
        for (int k = 0; k < u.cols(); ++k) std::swap(u(i, k), u(j, k));
        for (int k = 0; k < uinv.rows(); ++k) std::swap(uinv(k, i), uinv(k, j));
    }
    void row_add(int dst, int src, const Int& f) {  // row dst += f * row src
        for (int k = 0; k < d.cols(); ++k) d(dst, k) += f * d(src, k);
        for (int k = 0; k < u.cols(); ++k) u(dst, k) += f * u(src, k);
        for (int k = 0; k < uinv.rows(); ++k) uinv(k, src) -= f * uinv(k, dst);
    }
    void row_negate(int i) {
        for (int k = 0; k < d.cols(); ++k) d(i, k) = -d(i, k);
        for (int k = 0; k < u.cols(); ++k) u(i, k) = -u(i, k);
        for (int k = 0; k < uinv.rows(); ++k) uinv(k, i) = -uinv(k, i);
    }
    void col_swap(int i, int j) {
        for (int k = 0; k < d.rows(); ++k) std::swap(d(k, i), d(k, j));
        for (int k = 0; k < v.rows(); ++k) std::swap(v(k, i), v(k, j));
        for (int k = 0; k < vinv.cols(); ++k) std::swap(vinv(i, k), vinv(j, k));
    }
    void col_add(int dst, int src, const Int& f) {  // col dst += f * col src
        for (int k = 0; k < d.rows(); ++k) d(k, dst) += f * d(k, src);
        for (int k = 0; k < v.rows(); ++k) v(k, dst) += f * v(k, src);
        for (int k = 0; k < vinv.cols(); ++k) vinv(src, k) -= f * vinv(dst, k);
    }
};

Int floordiv(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

SnfDecomposition snf(const Mat& a) {
    const int m = a.rows(), n = a.cols();
    SnfWork w{a, Mat::identity(m), Mat::identity(m), Mat::identity(n), Mat::identity(n)};

    int t = 0;
    const int bound = std::min(m, n);
    while (t < bound) {
        // pivot: nonzero entry of minimal absolute value in the trailing block
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (w.d(i, j) == 0) continue;
                Int mag = abs(w.d(i, j));
                if (pi < 0 || mag < best) {
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        if (pi != t) w.row_swap(t, pi);
        if (pj != t) w.col_swap(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (w.d(i, t) == 0) continue;
                Int q = floordiv(w.d(i, t), w.d(t, t));
                w.row_add(i, t, -q);
                if (w.d(i, t) != 0) {  // remainder became the smaller pivot
                    w.row_swap(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < n; ++j) {
                if (w.d(t, j) == 0) continue;
                Int q = floordiv(w.d(t, j), w.d(t, t));
                w.col_add(j, t, -q);
                if (w.d(t, j) != 0) {
                    w.col_swap(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot must divide the trailing block
            for (int i = t + 1; i < m && clean; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (w.d(i, j) % w.d(t, t) != 0) {
                        w.row_add(t, i, 1);
                        clean = false;
                        break;
                    }
        }
        if (w.d(t, t) < 0) w.row_negate(t);
        ++t;
    }

    SnfDecomposition out;
    out.D = w.d;
    out.U = w.u;
    out.Uinv = w.uinv;
    out.V = w.v;
    out.Vinv = w.vinv;
    out.rank = t;
    return out;
}

Mat kernel_basis(const Mat& a) {
    SnfDecomposition s = snf(a);
    // A (V e_j) = Uinv D e_j = 0 exactly for j >= rank
    return s.V.cols_slice(s.rank, a.cols());
}

std::optional<std::vector<Int>> solve_linear(const Mat& a, const std::vector<Int>& b) {
    if (int(b.size()) != a.rows()) throw Error("solve_linear: shape mismatch");
    SnfDecomposition s = snf(a);
    std::vector<Int> c = s.U.apply(b);
    std::vector<Int> y(a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        if (i < s.rank) {
            if (c[i] % s.D(i, i) != 0) return std::nullopt;
            if (i < a.cols()) y[i] = c[i] / s.D(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(y);
}

}  // namespace mackeycoh
