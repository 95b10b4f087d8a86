#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mackeycoh/abgroup.hpp"
#include "oracle_helpers.hpp"

using mackeycoh::cokernel;
using mackeycoh::compose;
using mackeycoh::direct_sum;
using mackeycoh::direct_sum_data;
using mackeycoh::direct_sum_hom;
using mackeycoh::element_order_multiset;
using mackeycoh::enumerate_elements;
using mackeycoh::ext_z_dual;
using mackeycoh::ext_z_dual_of;
using mackeycoh::FgAbGroup;
using mackeycoh::from_presentation;
using mackeycoh::GroupHom;
using mackeycoh::hom_add;
using mackeycoh::hom_z_dual_of;
using mackeycoh::Int;
using mackeycoh::inverse_of;
using mackeycoh::kernel;
using mackeycoh::Mat;
using mackeycoh::solve_in_group;

namespace {

Mat mat2(std::initializer_list<std::initializer_list<long long>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    Mat m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (long long v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

const std::vector<FgAbGroup> kSmallGroups = {
    FgAbGroup::zero(),
    FgAbGroup::cyclic(2),
    FgAbGroup::cyclic(3),
    FgAbGroup::cyclic(4),
    FgAbGroup::cyclic(8),
    FgAbGroup(0, {2, 2}),
    FgAbGroup(0, {2, 4}),
    FgAbGroup(0, {3, 3}),
    FgAbGroup(0, {2, 2, 2}),
    FgAbGroup(0, {4, 4}),
};

}  // namespace

TEST_CASE("normal form validation") {
    CHECK_THROWS_AS(FgAbGroup(-1, {}), mackeycoh::InvalidDiagram);
    CHECK_THROWS_AS(FgAbGroup(0, {1}), mackeycoh::InvalidDiagram);
    CHECK_THROWS_AS(FgAbGroup(0, {3, 2}), mackeycoh::InvalidDiagram);
    CHECK_THROWS_AS(FgAbGroup(0, {2, 3}), mackeycoh::InvalidDiagram);
    CHECK(FgAbGroup(1, {2, 4, 4}).ngens() == 4);
    CHECK(FgAbGroup::cyclic(1).is_zero());
    CHECK(FgAbGroup::cyclic(6).to_string() == "Z/6");
    CHECK(FgAbGroup(2, {3}).to_string() == "Z^2 + Z/3");
    CHECK(FgAbGroup(2, {3}).torsion_order() == 3);
    CHECK(FgAbGroup(0, {2, 4}).torsion_order() == 8);
}

TEST_CASE("hom validation") {
    const FgAbGroup z = FgAbGroup::free(1);
    const FgAbGroup z2 = FgAbGroup::cyclic(2);
    const FgAbGroup z4 = FgAbGroup::cyclic(4);

    // Torsion cannot map to free.
    CHECK_THROWS_AS(GroupHom(z2, z, mat2({{1}})), mackeycoh::InvalidHom);
    // Z/2 -> Z/4 must land in the 2-torsion.
    CHECK_THROWS_AS(GroupHom(z2, z4, mat2({{1}})), mackeycoh::InvalidHom);
    CHECK_NOTHROW(GroupHom(z2, z4, mat2({{2}})));
    // Entries are reduced mod the target order.
    CHECK(GroupHom(z4, z4, mat2({{5}})).mat()(0, 0) == 1);
    CHECK(GroupHom(z4, z4, mat2({{-1}})).mat()(0, 0) == 3);
    // Shape mismatch.
    CHECK_THROWS_AS(GroupHom(z, z, Mat(2, 1)), mackeycoh::InvalidHom);

    const GroupHom f = GroupHom::scalar(z4, 2);
    CHECK(f.apply({Int(3)}) == std::vector<Int>{Int(2)});
    CHECK(compose(f, f).mat()(0, 0) == 0);
    CHECK(hom_add(f, f) == GroupHom::zero(z4, z4));
}

TEST_CASE("from_presentation normal forms") {
    // Z^2 / <(2,0),(0,3)>  =  Z/6 after invariant-factor merge.
    const auto p1 = from_presentation(2, mat2({{2, 0}, {0, 3}}));
    CHECK(p1.group == FgAbGroup::cyclic(6));

    // Z^2 / <(1,1)> = Z.
    const auto p2 = from_presentation(2, mat2({{1}, {1}}));
    CHECK(p2.group == FgAbGroup::free(1));

    // Z^3 / <(2,0,0),(0,2,0)> = Z + Z/2 + Z/2.
    const auto p3 = from_presentation(3, mat2({{2, 0}, {0, 2}, {0, 0}}));
    CHECK(p3.group == FgAbGroup(1, {2, 2}));

    // No relations: free.
    CHECK(from_presentation(3, Mat(3, 0)).group == FgAbGroup::free(3));
    // Everything dies.
    CHECK(from_presentation(2, mat2({{1, 0}, {0, 1}})).group.is_zero());
}

TEST_CASE("from_presentation proj/lift contract") {
    std::mt19937_64 rng(101u);
    std::uniform_int_distribution<int> dim(0, 4);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int it = 0; it < 120; ++it) {
        const int n = dim(rng);
        Mat rel(n, dim(rng));
        for (int i = 0; i < rel.rows(); ++i)
            for (int j = 0; j < rel.cols(); ++j) rel(i, j) = entry(rng);
        const auto pres = from_presentation(n, rel);
        // lift is a genuine section of proj.
        CHECK(mackeycoh::reduce_matrix(pres.group, pres.proj * pres.lift) ==
              Mat::identity(pres.group.ngens()));
        // Relations map to zero in the quotient.
        CHECK(mackeycoh::reduce_matrix(pres.group, pres.proj * rel).is_zero());
        // proj is a well-defined hom out of Z^n.
        CHECK_NOTHROW(GroupHom(FgAbGroup::free(n), pres.group, pres.proj));
    }
}

TEST_CASE("kernel and cokernel on fixed maps") {
    const FgAbGroup z = FgAbGroup::free(1);

    const GroupHom times2(z, z, mat2({{2}}));
    CHECK(kernel(times2).group.is_zero());
    CHECK(cokernel(times2).group == FgAbGroup::cyclic(2));

    // Z/4 -> Z/8 by 1 |-> 2 is injective with cokernel Z/2.
    const GroupHom incl(FgAbGroup::cyclic(4), FgAbGroup::cyclic(8),
                        mat2({{2}}));
    CHECK(kernel(incl).group.is_zero());
    CHECK(cokernel(incl).group == FgAbGroup::cyclic(2));

    // Z -> Z/4 by 1 |-> 1: kernel 4Z = Z, cokernel 0.
    const GroupHom red(z, FgAbGroup::cyclic(4), mat2({{1}}));
    CHECK(kernel(red).group == FgAbGroup::free(1));
    CHECK(cokernel(red).group.is_zero());
    // The kernel includes into Z as multiplication by +-4.
    const Mat k = kernel(red).incl.mat();
    CHECK((k(0, 0) == 4 || k(0, 0) == -4));

    // Projection Z^2 -> Z has kernel Z.
    const GroupHom proj(FgAbGroup::free(2), z, mat2({{1, 0}}));
    CHECK(kernel(proj).group == FgAbGroup::free(1));
    CHECK(cokernel(proj).group.is_zero());

    // Zero map: kernel is everything, cokernel is everything.
    const FgAbGroup g(1, {4});
    const GroupHom zero = GroupHom::zero(g, g);
    CHECK(kernel(zero).group == g);
    CHECK(cokernel(zero).group == g);
}

TEST_CASE("kernel inclusion really lands in the kernel") {
    std::mt19937_64 rng(202u);
    std::uniform_int_distribution<size_t> pick(0, kSmallGroups.size() - 1);
    for (int it = 0; it < 150; ++it) {
        const FgAbGroup& a = kSmallGroups[pick(rng)];
        const FgAbGroup& b = kSmallGroups[pick(rng)];
        const GroupHom f = oracle::random_hom(a, b, rng);
        const auto ker = kernel(f);
        // f restricted to the kernel is zero.
        CHECK(compose(f, ker.incl).is_zero());
        // Orders match the brute-force kernel.
        CHECK(element_order_multiset(ker.group, Int(4096)) ==
              oracle::brute_kernel_orders(f));
    }
}

TEST_CASE("cokernel orders match brute force") {
    std::mt19937_64 rng(303u);
    std::uniform_int_distribution<size_t> pick(0, kSmallGroups.size() - 1);
    for (int it = 0; it < 120; ++it) {
        const FgAbGroup& a = kSmallGroups[pick(rng)];
        const FgAbGroup& b = kSmallGroups[pick(rng)];
        const GroupHom f = oracle::random_hom(a, b, rng);
        const auto coker = cokernel(f);
        CHECK(compose(coker.proj, f).is_zero());
        CHECK(element_order_multiset(coker.group, Int(4096)) ==
              oracle::brute_coker_orders(f));
    }
}

TEST_CASE("exactness of kernel-cokernel pairs") {
    // For f: A -> B, |A| = |ker f| * |im f| and |im f| = |B| / |coker f|.
    std::mt19937_64 rng(404u);
    std::uniform_int_distribution<size_t> pick(0, kSmallGroups.size() - 1);
    for (int it = 0; it < 100; ++it) {
        const FgAbGroup& a = kSmallGroups[pick(rng)];
        const FgAbGroup& b = kSmallGroups[pick(rng)];
        const GroupHom f = oracle::random_hom(a, b, rng);
        const Int lhs = a.torsion_order() * cokernel(f).group.torsion_order();
        const Int rhs = b.torsion_order() * kernel(f).group.torsion_order();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("solve_in_group") {
    const FgAbGroup z6 = FgAbGroup::cyclic(6);
    const auto s = solve_in_group(mat2({{2}}), z6, {Int(4)});
    REQUIRE(s.has_value());
    CHECK(oracle::pmod((*s)[0] * 2, 6) == 4);
    CHECK_FALSE(solve_in_group(mat2({{2}}), z6, {Int(3)}).has_value());

    // Two columns in Z + Z/4.
    const FgAbGroup g(1, {4});
    const auto t = solve_in_group(mat2({{2, 0}, {1, 2}}), g, {Int(4), Int(0)});
    REQUIRE(t.has_value());
}

TEST_CASE("duality on objects") {
    CHECK(mackeycoh::hom_z_dual(FgAbGroup(2, {4, 8})) == FgAbGroup::free(2));
    CHECK(ext_z_dual(FgAbGroup(2, {4, 8})) == FgAbGroup(0, {4, 8}));
    CHECK(ext_z_dual(FgAbGroup::free(3)).is_zero());
}

TEST_CASE("hom_z dual of maps") {
    const GroupHom f(FgAbGroup(2, {2}), FgAbGroup(1, {3}),
                     mat2({{3, -1, 0}, {1, 2, 0}}));
    const GroupHom d = hom_z_dual_of(f);
    CHECK(d.src() == FgAbGroup::free(1));
    CHECK(d.tgt() == FgAbGroup::free(2));
    CHECK(d.mat() == mat2({{3}, {-1}}));

    // Contravariant functoriality.
    const GroupHom g(FgAbGroup::free(1), f.src(), mat2({{2}, {5}, {0}}));
    const GroupHom fg = compose(f, g);
    CHECK(hom_z_dual_of(fg) == compose(hom_z_dual_of(g), hom_z_dual_of(f)));
}

// Character-group oracle: identify Ext(A, Z) with Hom(A, Q/Z). A character
// is stored as its value vector on the torsion generators, scaled into Z/L
// for L the exponent. ext_z_dual_of must agree with plain composition.
namespace {

Int group_exponent(const FgAbGroup& g) {
    return g.torsion().empty() ? Int(1) : g.torsion().back();
}

// Coordinates (w.r.t. the fixed identification) -> value vector in Z/L.
std::vector<Int> coords_to_values(const FgAbGroup& g, const std::vector<Int>& c,
                                  const Int& L) {
    std::vector<Int> v(c.size());
    for (size_t i = 0; i < c.size(); ++i)
        v[i] = oracle::pmod(c[i] * (L / g.torsion()[i]), L);
    return v;
}

}  // namespace

TEST_CASE("ext_z dual of maps agrees with the character-group oracle") {
    std::mt19937_64 rng(505u);
    std::uniform_int_distribution<size_t> pick(0, kSmallGroups.size() - 1);
    for (int it = 0; it < 200; ++it) {
        const FgAbGroup& a = kSmallGroups[pick(rng)];
        const FgAbGroup& b = kSmallGroups[pick(rng)];
        const GroupHom f = oracle::random_hom(a, b, rng);
        const GroupHom d = ext_z_dual_of(f);
        CHECK(d.src() == ext_z_dual(b));
        CHECK(d.tgt() == ext_z_dual(a));

        // L is a common exponent for both sides.
        const Int L = group_exponent(a) * group_exponent(b);
        if (L == 1) continue;
        // For every character chi of B (coordinates c), the pullback chi . f
        // must have value vector  (value of chi on f(a_i))_i.
        for (const auto& c : enumerate_elements(ext_z_dual(b), Int(4096))) {
            const std::vector<Int> vals_b = coords_to_values(b, c, L);
            const std::vector<Int> pulled = coords_to_values(a, d.apply(c), L);
            for (int i = 0; i < static_cast<int>(a.torsion().size()); ++i) {
                Int direct = 0;
                for (int j = 0; j < static_cast<int>(b.torsion().size()); ++j)
                    direct += f.mat()(b.rank() + j, a.rank() + i) * vals_b[j];
                CHECK(oracle::pmod(direct, L) == pulled[static_cast<size_t>(i)]);
            }
        }
    }
}

TEST_CASE("ext_z dual is an involution on finite groups") {
    std::mt19937_64 rng(606u);
    std::uniform_int_distribution<size_t> pick(0, kSmallGroups.size() - 1);
    for (int it = 0; it < 100; ++it) {
        const FgAbGroup& a = kSmallGroups[pick(rng)];
        const FgAbGroup& b = kSmallGroups[pick(rng)];
        const GroupHom f = oracle::random_hom(a, b, rng);
        CHECK(ext_z_dual_of(ext_z_dual_of(f)) == f);
    }
}

TEST_CASE("enumerate and orders") {
    const FgAbGroup g(0, {2, 4});
    CHECK(enumerate_elements(g, Int(100)).size() == 8);
    const auto orders = element_order_multiset(g, Int(100));
    CHECK(orders == std::vector<Int>{1, 2, 2, 2, 4, 4, 4, 4});
    CHECK_THROWS_AS(enumerate_elements(FgAbGroup::free(1), Int(100)),
                    mackeycoh::OrderTooLarge);
    CHECK_THROWS_AS(enumerate_elements(FgAbGroup::cyclic(101), Int(100)),
                    mackeycoh::OrderTooLarge);
}

TEST_CASE("inverse_of") {
    const FgAbGroup g(0, {3, 9});
    const GroupHom f(g, g, mat2({{1, 1}, {0, 1}}));
    const GroupHom inv = inverse_of(f);
    CHECK(compose(inv, f) == GroupHom::identity(g));
    CHECK(compose(f, inv) == GroupHom::identity(g));
    CHECK(inv.mat() == mat2({{1, 2}, {0, 1}}));

    CHECK(inverse_of(GroupHom::scalar(FgAbGroup::cyclic(5), 2)) ==
          GroupHom::scalar(FgAbGroup::cyclic(5), 3));

    CHECK_THROWS_AS(inverse_of(GroupHom::scalar(FgAbGroup::cyclic(4), 2)),
                    mackeycoh::InvalidHom);
    CHECK_THROWS_AS(inverse_of(GroupHom::zero(g, g)), mackeycoh::InvalidHom);
    // Same underlying type required.
    CHECK_THROWS_AS(
        inverse_of(GroupHom(FgAbGroup::free(1), FgAbGroup::cyclic(2),
                            mat2({{1}}))),
        mackeycoh::InvalidHom);
}

TEST_CASE("direct sums") {
    CHECK(direct_sum(FgAbGroup::cyclic(2), FgAbGroup::cyclic(3)) ==
          FgAbGroup::cyclic(6));
    CHECK(direct_sum(FgAbGroup::cyclic(4), FgAbGroup::cyclic(2)) ==
          FgAbGroup(0, {2, 4}));
    CHECK(direct_sum(FgAbGroup(1, {2}), FgAbGroup(2, {4})) ==
          FgAbGroup(3, {2, 4}));

    std::mt19937_64 rng(707u);
    std::uniform_int_distribution<size_t> pick(0, kSmallGroups.size() - 1);
    for (int it = 0; it < 60; ++it) {
        const FgAbGroup& a = kSmallGroups[pick(rng)];
        const FgAbGroup& b = kSmallGroups[pick(rng)];
        const auto ds = direct_sum_data(a, b);
        CHECK(compose(ds.proj_a, ds.incl_a) == GroupHom::identity(a));
        CHECK(compose(ds.proj_b, ds.incl_b) == GroupHom::identity(b));
        CHECK(compose(ds.proj_a, ds.incl_b).is_zero());
        CHECK(compose(ds.proj_b, ds.incl_a).is_zero());
        CHECK(hom_add(compose(ds.incl_a, ds.proj_a),
                      compose(ds.incl_b, ds.proj_b)) ==
              GroupHom::identity(ds.group));
    }
}

TEST_CASE("direct sum of homs") {
    const GroupHom f = GroupHom::scalar(FgAbGroup::cyclic(4), 2);
    const GroupHom g(FgAbGroup::free(1), FgAbGroup::free(1), mat2({{3}}));
    const GroupHom s = direct_sum_hom(f, g);
    CHECK(s.src() == FgAbGroup(1, {4}));
    CHECK(s.tgt() == FgAbGroup(1, {4}));

    const auto ds = direct_sum_data(f.src(), g.src());
    const auto dt = direct_sum_data(f.tgt(), g.tgt());
    CHECK(compose(dt.proj_a, compose(s, ds.incl_a)) == f);
    CHECK(compose(dt.proj_b, compose(s, ds.incl_b)) == g);
    CHECK(compose(dt.proj_a, compose(s, ds.incl_b)).is_zero());
}
