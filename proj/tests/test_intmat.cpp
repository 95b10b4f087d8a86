#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mackeycoh/intmat.hpp"

using mackeycoh::Int;
using mackeycoh::Mat;
using mackeycoh::SnfDecomposition;

namespace {

Mat random_matrix(std::mt19937_64& rng, int max_dim, int max_abs) {
    std::uniform_int_distribution<int> dim(0, max_dim);
    std::uniform_int_distribution<int> entry(-max_abs, max_abs);
    Mat m(dim(rng), dim(rng));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
    return m;
}

void check_snf_contract(const Mat& a) {
    const SnfDecomposition s = mackeycoh::snf(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(s.U * s.Uinv == Mat::identity(a.rows()));
    CHECK(s.Uinv * s.U == Mat::identity(a.rows()));
    CHECK(s.V * s.Vinv == Mat::identity(a.cols()));
    CHECK(s.Vinv * s.V == Mat::identity(a.cols()));
    for (int i = 0; i < s.D.rows(); ++i)
        for (int j = 0; j < s.D.cols(); ++j)
            if (i != j) CHECK(s.D(i, j) == 0);
    const int k = std::min(a.rows(), a.cols());
    for (int i = 0; i < k; ++i) {
        CHECK(s.D(i, i) >= 0);
        if (i < s.rank) CHECK(s.D(i, i) > 0);
        if (i >= s.rank) CHECK(s.D(i, i) == 0);
        if (i + 1 < s.rank) CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
    }
}

}  // namespace

TEST_CASE("matrix basics") {
    Mat a(2, 3);
    a(0, 0) = 1;
    a(1, 2) = -4;
    CHECK(a.to_string() == "[[1,0,0],[0,0,-4]]");
    CHECK(a.transposed().to_string() == "[[1,0],[0,0],[0,-4]]");
    CHECK((a + a).scaled(2) == a.scaled(4));
    CHECK(Mat::identity(3) * a.transposed() == a.transposed());

    const Mat h = Mat::hcat(Mat::identity(2), Mat::zero(2, 1));
    CHECK(h.cols() == 3);
    CHECK(h(0, 0) == 1);
    CHECK(h(0, 2) == 0);
    const Mat v = Mat::vcat(Mat::identity(2), Mat::zero(1, 2));
    CHECK(v.rows() == 3);
    const Mat d = Mat::diag_block(Mat::identity(1).scaled(5), Mat::identity(2));
    CHECK(d.rows() == 3);
    CHECK(d(0, 0) == 5);
    CHECK(d(1, 1) == 1);
    CHECK(d(0, 1) == 0);

    CHECK(a.rows_slice(0, 1).rows() == 1);
    CHECK(a.cols_slice(1, 3).cols() == 2);
    CHECK(a.cols_slice(1, 3)(1, 1) == -4);

    const std::vector<Int> x{1, 0, 2};
    const std::vector<Int> ax = a.apply(x);
    CHECK(ax[0] == 1);
    CHECK(ax[1] == -8);
}

TEST_CASE("snf on fixed matrices") {
    Mat a(2, 2);
    a(0, 0) = 2;
    a(0, 1) = 4;
    a(1, 0) = 6;
    a(1, 1) = 8;
    const SnfDecomposition s = mackeycoh::snf(a);
    check_snf_contract(a);
    CHECK(s.rank == 2);
    CHECK(s.D(0, 0) == 2);
    CHECK(s.D(1, 1) == 4);

    check_snf_contract(Mat::identity(4));
    CHECK(mackeycoh::snf(Mat::identity(4)).rank == 4);
    CHECK(mackeycoh::snf(Mat::zero(3, 2)).rank == 0);
    check_snf_contract(Mat::zero(3, 2));
    check_snf_contract(Mat(0, 5));
    check_snf_contract(Mat(5, 0));
    check_snf_contract(Mat(0, 0));

    // Divisibility must be enforced, not incidental: diag(4, 6) -> diag(2, 12).
    Mat b = Mat::zero(2, 2);
    b(0, 0) = 4;
    b(1, 1) = 6;
    const SnfDecomposition t = mackeycoh::snf(b);
    check_snf_contract(b);
    CHECK(t.D(0, 0) == 2);
    CHECK(t.D(1, 1) == 12);
}

TEST_CASE("snf randomized contract") {
    std::mt19937_64 rng(20260816u);
    for (int it = 0; it < 200; ++it) check_snf_contract(random_matrix(rng, 5, 9));
    // Larger entries to exercise the arbitrary-precision path.
    for (int it = 0; it < 20; ++it) {
        Mat m = random_matrix(rng, 4, 9);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m(i, j) *= Int("1000000007");
        check_snf_contract(m);
    }
}

TEST_CASE("kernel basis spans the solution lattice") {
    std::mt19937_64 rng(7u);
    for (int it = 0; it < 100; ++it) {
        const Mat a = random_matrix(rng, 5, 6);
        const Mat k = mackeycoh::kernel_basis(a);
        CHECK(k.rows() == a.cols());
        CHECK((a * k).is_zero());
        CHECK(k.cols() == a.cols() - mackeycoh::snf(a).rank);
        // Every kernel column must itself be reachable: solve returns it.
        for (int j = 0; j < k.cols(); ++j) {
            std::vector<Int> zero(static_cast<size_t>(a.rows()), 0);
            CHECK(mackeycoh::solve_linear(a, zero).has_value());
        }
    }
}

TEST_CASE("solve_linear finds integer solutions exactly when they exist") {
    std::mt19937_64 rng(11u);
    int solved = 0;
    for (int it = 0; it < 150; ++it) {
        const Mat a = random_matrix(rng, 5, 5);
        std::uniform_int_distribution<int> entry(-4, 4);
        std::vector<Int> x(static_cast<size_t>(a.cols()));
        for (auto& v : x) v = entry(rng);
        const std::vector<Int> b = a.apply(x);
        const auto y = mackeycoh::solve_linear(a, b);
        REQUIRE(y.has_value());
        CHECK(a.apply(*y) == b);
        ++solved;
    }
    CHECK(solved == 150);

    Mat two(1, 1);
    two(0, 0) = 2;
    CHECK_FALSE(mackeycoh::solve_linear(two, {Int(1)}).has_value());
    CHECK(mackeycoh::solve_linear(two, {Int(-6)}).has_value());

    // Inconsistent overdetermined system.
    Mat col(2, 1);
    col(0, 0) = 1;
    col(1, 0) = 1;
    CHECK_FALSE(mackeycoh::solve_linear(col, {Int(0), Int(1)}).has_value());
}
