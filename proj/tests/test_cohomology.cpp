#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "mackeycoh/cohomology.hpp"
#include "mackeycoh/error.hpp"
#include "mackeycoh/families.hpp"

using namespace mackeycoh;

namespace {

Grading grading(int n, long long c, std::vector<long long> a) {
    return Grading(n, c, std::move(a));
}

// Grading over n with prescribed fixed dims (d_0, ..., d_n); every d_k - d_{k+1}
// must be even.
Grading from_dims(int n, const std::vector<long long>& d) {
    std::vector<long long> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const long long diff = d[static_cast<std::size_t>(i)] - d[static_cast<std::size_t>(i) + 1];
        REQUIRE(diff % 2 == 0);
        a[static_cast<std::size_t>(i)] = diff / 2;
    }
    return Grading(n, d[static_cast<std::size_t>(n)], std::move(a));
}

const MackeyFunctor& known(const CohomResult& r) {
    REQUIRE(r.known());
    return *r.functor;
}

bool iso(const MackeyFunctor& a, const MackeyFunctor& b) {
    return iso_test(a, b).verdict == IsoVerdict::Iso;
}

bool rule_fired(const CohomResult& r, const std::string& prefix) {
    for (const auto& e : r.trace)
        if (e.rule.rfind(prefix, 0) == 0) return true;
    return false;
}

// Levels Z, Z, Z+Z/p with res = (p, [p 0]) and tr = (1, [1;0]).
MackeyFunctor per0_diagram(long long p) {
    const FgAbGroup z = FgAbGroup::free(1);
    const FgAbGroup zzp(1, {p});
    Mat r2(1, 2), t2(2, 1);
    r2(0, 0) = p;
    t2(0, 0) = 1;
    return MackeyFunctor(p, 2, {z, z, zzp},
                         {GroupHom::scalar(z, p), GroupHom(zzp, z, r2)},
                         {GroupHom::identity(z), GroupHom(z, zzp, t2)});
}

// Levels Z, Z, Z+Z/p, Z+Z/p with res = (p, [p 0], [[1,0],[1,0]]) and
// tr = (1, [1;0], [[p,0],[-1,1]]).
MackeyFunctor comp_cp3_diagram(long long p) {
    const FgAbGroup z = FgAbGroup::free(1);
    const FgAbGroup zzp(1, {p});
    Mat r2(1, 2), t2(2, 1), r3(2, 2), t3(2, 2);
    r2(0, 0) = p;
    t2(0, 0) = 1;
    r3(0, 0) = 1;
    r3(1, 0) = 1;
    t3(0, 0) = p;
    t3(1, 0) = -1;
    t3(1, 1) = 1;
    return MackeyFunctor(
        p, 3, {z, z, zzp, zzp},
        {GroupHom::scalar(z, p), GroupHom(zzp, z, r2), GroupHom(zzp, zzp, r3)},
        {GroupHom::identity(z), GroupHom(z, zzp, t2), GroupHom(zzp, zzp, t3)});
}

}  // namespace

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(compute_cohomology(4, 1, grading(1, 0, {1})), IndexError);
    CHECK_THROWS_AS(compute_cohomology(1, 1, grading(1, 0, {1})), IndexError);
    CHECK_THROWS_AS(compute_cohomology(3, 2, grading(1, 0, {1})), IndexError);
    CHECK_THROWS_AS(sphere_lambda_cohom(3, 2, 3, grading(2, 0, {1, 0})),
                    IndexError);
    CHECK_THROWS_AS(check_les_orders(3, 2, 2, grading(2, 0, {1, 0})),
                    IndexError);
}

TEST_CASE("degree zero and trivial group") {
    for (int n = 0; n <= 4; ++n) {
        const Grading zero(n, 0, std::vector<long long>(static_cast<std::size_t>(n), 0));
        CHECK(iso(known(compute_cohomology(3, n, zero)), z_s(3, n, {})));
    }
    CHECK(known(compute_cohomology(5, 0, grading(0, 3, {}))).is_zero());
    CHECK(known(compute_cohomology(5, 0, grading(0, -2, {}))).is_zero());
}

TEST_CASE("frozen values: lambda_0 in low exponents") {
    // n=1, alpha = lambda_0.
    CHECK(iso(known(compute_cohomology(3, 1, grading(1, 0, {1}))),
              b_ts(3, 1, {1}, {})));
    // n=2, alpha = lambda_0.
    CHECK(iso(known(compute_cohomology(3, 2, grading(2, 0, {1, 0}))),
              b_ts(3, 2, {1, 2}, {})));
}

TEST_CASE("frozen values: 2L1-2L0 diagrams") {
    for (long long p : {2LL, 3LL, 5LL}) {
        const CohomResult r2 = compute_cohomology(p, 2, grading(2, 0, {-2, 2, }));
        CHECK(iso(known(r2), per0_diagram(p)));
        CHECK(iso(known(r2), direct_sum(b_ts(p, 2, {2}, {}), z_s(p, 2, {1, 2}))));

        const CohomResult r3 = compute_cohomology(p, 3, grading(3, 0, {-2, 2, 0}));
        CHECK(rule_fired(r3, "T3-kernel"));
        CHECK(iso(known(r3), comp_cp3_diagram(p)));
    }
}

TEST_CASE("n=1 engine agrees with the closed formula everywhere") {
    for (long long p : {2LL, 3LL, 5LL})
        for (long long a0 = -4; a0 <= 4; ++a0)
            for (long long c = -8; c <= 8; ++c) {
                const Grading g(1, c, {a0});
                CHECK(iso(known(compute_cohomology(p, 1, g)), cp1_formula(p, g)));
            }
}

TEST_CASE("n=2 engine agrees with the master table everywhere") {
    for (long long p : {2LL, 3LL})
        for (long long a0 = -3; a0 <= 3; ++a0)
            for (long long a1 = -3; a1 <= 3; ++a1)
                for (long long c = -6; c <= 6; ++c) {
                    const Grading g(2, c, {a0, a1});
                    CHECK(iso(known(compute_cohomology(p, 2, g)), cp2_table(p, g)));
                }
}

TEST_CASE("large-fixed-point table agrees with the n=2 master table") {
    const long long p = 3;
    int band_hits = 0;
    for (long long a0 = -3; a0 <= 3; ++a0)
        for (long long a1 = -3; a1 <= 3; ++a1)
            for (long long c = -6; c <= 6; ++c) {
                const Grading g(2, c, {a0, a1});
                if (g.is_zero()) continue;
                const MackeyFunctor sub =
                    known(compute_cohomology(p, 1, g.quotient()));
                if (auto m = highfix_table(p, g, sub)) {
                    CHECK(iso(*m, cp2_table(p, g)));
                    ++band_hits;
                }
            }
    CHECK(band_hits > 100);
}

TEST_CASE("n=3 spot values across the rule book") {
    const long long p = 3;
    // Sign reduction: dims (0,0,2,2) is an inflated Z^*-type value.
    CHECK(iso(known(compute_cohomology(p, 3, from_dims(3, {0, 0, 2, 2}))),
              z_s(p, 3, {2, 3})));
    // negfree-type band row: dims (0,-4,2,2).
    {
        const CohomResult r = compute_cohomology(p, 3, from_dims(3, {0, -4, 2, 2}));
        CHECK(rule_fired(r, "Table1:"));
        CHECK(iso(known(r), z_s(p, 3, {})));
    }
    // Degree 0 with small negative dims is Z-shaped, not a cohzero(b) zero.
    CHECK(iso(known(compute_cohomology(p, 3, from_dims(3, {0, -4, 0, 0}))),
              z_s(p, 3, {})));
    // zerpos-type band row: dims (0,6,2,2).
    CHECK(iso(known(compute_cohomology(p, 3, from_dims(3, {0, 6, 2, 2}))),
              z_s(p, 3, {1, 2, 3})));
    // posevtor-type band row: dims (2,-4,2,2).
    CHECK(iso(known(compute_cohomology(p, 3, from_dims(3, {2, -4, 2, 2}))),
              b_ts(p, 3, {1, 2, 3}, {})));
    // posoddtor-type band row: dims (-1,7,1,1).
    CHECK(iso(known(compute_cohomology(p, 3, from_dims(3, {-1, 7, 1, 1}))),
              b_ts(p, 3, {1, 2, 3}, {})));
    // negtor-type band row with a nonzero pullback: dims (1,-3,3,1).
    CHECK(iso(known(compute_cohomology(p, 3, from_dims(3, {1, -3, 3, 1}))),
              b_ts(p, 3, {2}, {})));
    // comp_1 middle case: dims (0,-2,2,2).
    {
        const CohomResult r = compute_cohomology(p, 3, from_dims(3, {0, -2, 2, 2}));
        CHECK(rule_fired(r, "comp_1"));
        CHECK(iso(known(r), z_s(p, 3, {3})));
    }
    // comp_2 middle case: dims (2,-2,2,2).
    {
        const CohomResult r = compute_cohomology(p, 3, from_dims(3, {2, -2, 2, 2}));
        CHECK(rule_fired(r, "comp_2"));
        CHECK(iso(known(r), b_ts(p, 3, {1, 2, 3}, {3})));
    }
    // Anderson flip resolves the dual of the comp_2 case: dims (-1,5,1,1).
    {
        const CohomResult r = compute_cohomology(p, 3, from_dims(3, {-1, 5, 1, 1}));
        CHECK(rule_fired(r, "AndersonFlip"));
        CHECK(iso(known(r), b_ts(p, 3, {1, 2}, {})));
    }
    // Zero regions.
    CHECK(known(compute_cohomology(p, 3, from_dims(3, {1, 1, -1, 1}))).is_zero());
    CHECK(known(compute_cohomology(p, 3, from_dims(3, {3, -1, 1, 1}))).is_zero());
}

TEST_CASE("flip reaches the dual of the T(3) window") {
    // dims (1,-1,3,3) is 3-L0 minus the T3-kernel window, so the flip (and
    // only the flip) resolves it.
    const Grading g = from_dims(3, {1, -1, 3, 3});
    CHECK(!compute_cohomology(3, 3, g, false).known());
    const CohomResult rf = compute_cohomology(3, 3, g, true);
    CHECK(rule_fired(rf, "AndersonFlip"));
    CHECK(iso(known(rf), ext_l(comp_cp3_diagram(3))));
}

TEST_CASE("unknown outcome names the blocked grading") {
    const Grading g = from_dims(3, {1, -1, 3, 1});
    const CohomResult r = compute_cohomology(3, 3, g, false);
    CHECK(!r.known());
    CHECK(r.reason.find("no rule covers") != std::string::npos);
    // The dual dims (0,4,0,2) miss the T3 window, so the flip is blocked too.
    const CohomResult rf = compute_cohomology(3, 3, g, true);
    CHECK(!rf.known());
    CHECK(rf.reason.find("blocked recursion") != std::string::npos);
}

TEST_CASE("unknown stays unknown but flip rescues when possible") {
    // dims (-1,5,1,1) is unknown without the flip, known with it.
    const Grading g = from_dims(3, {-1, 5, 1, 1});
    CHECK(!compute_cohomology(3, 3, g, false).known());
    CHECK(compute_cohomology(3, 3, g, true).known());
}

TEST_CASE("p=2 results carry the caveat entry") {
    const CohomResult r2 = compute_cohomology(2, 1, grading(1, 0, {1}));
    REQUIRE(!r2.trace.empty());
    CHECK(r2.trace.front().rule == "p2-caveat");
    const CohomResult r3 = compute_cohomology(3, 1, grading(1, 0, {1}));
    for (const auto& e : r3.trace) CHECK(e.rule != "p2-caveat");
}

TEST_CASE("engine version is a stable hex tag") {
    const std::string v = engine_version();
    CHECK(!v.empty());
    CHECK(v == engine_version());
    for (char c : v) CHECK(std::string("0123456789abcdef").find(c) != std::string::npos);
}

TEST_CASE("sphere of lambda_0: the three windows") {
    const long long p = 3;
    // |alpha| = 0: middle is the constant functor.
    {
        const SphereCohomData s = sphere_lambda_cohom(p, 2, 0, grading(2, 0, {2, -2}));
        CHECK(s.left.is_zero());
        CHECK(iso(s.right, z_s(p, 2, {})));
        CHECK(s.middle_rank == std::vector<int>{1, 1, 1});
    }
    // |alpha| = 1: middle is the dual constant functor.
    {
        const SphereCohomData s = sphere_lambda_cohom(p, 2, 0, grading(2, 1, {2, -2}));
        CHECK(iso(s.left, z_s(p, 2, {1, 2})));
        CHECK(s.right.is_zero());
        CHECK(s.middle_rank == std::vector<int>{1, 1, 1});
        CHECK(s.middle_torsion == std::vector<Int>{1, 1, 1});
    }
    // Elsewhere (|alpha| not 0 or 1): zero.
    for (long long c : {-6LL, -5LL, -2LL, 1LL, 4LL}) {
        const SphereCohomData s = sphere_lambda_cohom(p, 2, 0, grading(2, c, {1, 1}));
        CHECK(s.middle_is_zero());
    }
}

TEST_CASE("sphere of lambda_1 realizes the Theta identities") {
    const long long p = 3;
    // Restricted dims (2,0): the right piece is Theta_1(B) = B.
    {
        const Grading g = from_dims(3, {2, 0, 0, 0});
        const SphereCohomData s = sphere_lambda_cohom(p, 3, 1, g);
        CHECK(s.left.is_zero());
        CHECK(iso(s.right, b_ts(p, 3, {1}, {})));
    }
    // Restricted dims (1,-1): the left piece is Theta*_1(Z) = Z_{{2,..,n}}.
    {
        const Grading g = from_dims(3, {1, -1, -1, -1});
        const SphereCohomData s = sphere_lambda_cohom(p, 3, 1, g);
        CHECK(iso(s.left, z_s(p, 3, {2, 3})));
        CHECK(s.right.is_zero());
    }
    // An unknown restricted computation surfaces as UnknownDependencyError.
    CHECK_THROWS_AS(sphere_lambda_cohom(3, 3, 3, from_dims(3, {1, -1, 3, 1})),
                    UnknownDependencyError);
}

TEST_CASE("anderson checker passes on n<=2 samples") {
    for (long long p : {2LL, 3LL})
        for (long long a0 = -2; a0 <= 2; ++a0)
            for (long long c = -4; c <= 4; ++c)
                CHECK(check_anderson(p, 1, grading(1, c, {a0})).passed);
    for (long long a0 = -2; a0 <= 2; ++a0)
        for (long long a1 = -2; a1 <= 2; ++a1)
            for (long long c = -3; c <= 3; ++c)
                CHECK(check_anderson(3, 2, grading(2, c, {a0, a1})).passed);
}

TEST_CASE("anderson checker needs flip-free duals") {
    // At 2L1-2L0 over C_{p^3} the Ext-side grading falls outside every rule.
    CHECK_THROWS_AS(check_anderson(3, 3, grading(3, 0, {-2, 2, 0})),
                    UnknownDependencyError);
}

TEST_CASE("exactness bookkeeping along a_lambda towers") {
    CHECK(check_les_orders(3, 1, 0, grading(1, 0, {1}), 4).passed);
    CHECK(check_les_orders(3, 2, 0, grading(2, 0, {-2, 2}), 4).passed);
    CHECK(check_les_orders(3, 2, 1, grading(2, 0, {-2, 2}), 3).passed);
    CHECK(check_les_orders(2, 2, 1, grading(2, 1, {1, -1}), 3).passed);
    CHECK(check_les_orders(3, 3, 2, grading(3, 0, {-2, 2, 0}), 4).passed);
    CHECK_THROWS_AS(check_les_orders(3, 3, 0, from_dims(3, {1, -1, 3, 1}), 2),
                    UnknownDependencyError);
}

TEST_CASE("a_lambda0 periodicity away from the three middle degrees") {
    const long long p = 3;
    for (long long a0 = -2; a0 <= 2; ++a0)
        for (long long a1 = -2; a1 <= 2; ++a1)
            for (long long c = -4; c <= 4; ++c) {
                const Grading g(2, c, {a0, a1});
                const long long deg = g.total_dim();
                if (deg == -2 || deg == -1 || deg == 0) continue;
                CHECK(iso(known(compute_cohomology(p, 2, g)),
                          known(compute_cohomology(p, 2, g.plus_lambda(0)))));
            }
}

TEST_CASE("structural invariants on a mixed sample") {
    const long long p = 3;
    int seen = 0;
    for (long long a0 = -2; a0 <= 2; ++a0)
        for (long long a1 = -2; a1 <= 2; ++a1)
            for (long long a2 = -1; a2 <= 1; ++a2)
                for (long long c = -3; c <= 3; ++c) {
                    const Grading g(3, c, {a0, a1, a2});
                    const CohomResult r = compute_cohomology(p, 3, g);
                    if (!r.known()) continue;
                    ++seen;
                    const MackeyFunctor& m = *r.functor;
                    if (g.fixed_dim(0) == 0) {
                        CHECK(m.level(0) == FgAbGroup::free(1));
                    } else {
                        CHECK(m.level(0).is_zero());
                        for (int k = 0; k <= 3; ++k) CHECK(m.level(k).is_finite());
                    }
                }
    CHECK(seen > 300);
}
