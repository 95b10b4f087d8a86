#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mackeycoh/families.hpp"
#include "mackeycoh/grading.hpp"
#include "mackeycoh/mackey.hpp"

namespace mackeycoh {

// One step of a derivation. `rule` is the dispatch label, `paper_ref` the
// rule-book statement it instantiates, `subquery` the grading of the
// recursive call when the rule reduces to a smaller group.
struct TraceEntry {
    std::string rule;
    std::string paper_ref;
    std::string subquery;

    bool operator==(const TraceEntry&) const = default;
};

struct CohomResult {
    std::optional<MackeyFunctor> functor;  // empty means Unknown
    std::vector<TraceEntry> trace;
    std::string reason;  // set when Unknown

    bool known() const { return functor.has_value(); }
};

// H^alpha for C_{p^n}; Unknown is a value (possible only for n >= 3
// middle-band gradings). allow_flip gates the terminal duality rule and is
// inherited by every recursive call. Results are memoized per
// (p, n, grading, allow_flip).
CohomResult compute_cohomology(long long p, int n, const Grading& g,
                               bool allow_flip = true);

// Hash of the rule table; stored results are only comparable within one
// version.
std::string engine_version();

// Individual rule formulas, exposed so tests can cross-check overlapping
// rules against the dispatched result. Each optionally reports the fired
// row label through `row`.
MackeyFunctor cp1_formula(long long p, const Grading& g,
                          std::string* row = nullptr);
MackeyFunctor cp2_table(long long p, const Grading& g,
                        std::string* row = nullptr);
// Large C_p-fixed-dimension table; `sub` is the C_{p^(n-1)} value at
// g.quotient(). nullopt when |alpha^{C_p}| lies in the open middle band.
std::optional<MackeyFunctor> highfix_table(long long p, const Grading& g,
                                           const MackeyFunctor& sub,
                                           std::string* row = nullptr);
std::optional<MackeyFunctor> comp1_formula(long long p, const Grading& g,
                                           std::string* row = nullptr);
std::optional<MackeyFunctor> comp2_formula(long long p, const Grading& g,
                                           std::string* row = nullptr);
bool cohzero_b(const Grading& g);
bool cohzero_c(const Grading& g);
// The non-split kernel diagram over C_{p^3} in the window |alpha| = 0,
// |alpha^{C_p}| = 4, higher fixed dims <= 0: ker(T(3) -> B_{1,empty}).
MackeyFunctor cp3_kernel(long long p);

// The two outer pieces of the extension computing H^alpha(S(lambda_m)+),
// plus the levelwise rank/torsion-order data they force on the middle.
struct SphereCohomData {
    MackeyFunctor left;   // Theta*_m of the subgroup value in degree alpha-1
    MackeyFunctor right;  // Theta_m  of the subgroup value in degree alpha
    std::vector<int> middle_rank;
    std::vector<Int> middle_torsion;

    bool middle_is_zero() const { return left.is_zero() && right.is_zero(); }
};

SphereCohomData sphere_lambda_cohom(long long p, int n, int m,
                                    const Grading& g);

struct CheckReport {
    bool passed = false;
    std::vector<std::string> lines;
};

// |alpha| != 0: exact isomorphism H^alpha = Ext_L(H^(3-L0-alpha)).
// |alpha| == 0: levelwise rank/torsion bookkeeping of the three-term
// sequence Ext_L(H^(3-L0-alpha)) -> H^alpha -> Hom_L(H^(2-L0-alpha)).
// Throws DualityViolation on mismatch, UnknownDependencyError when a needed
// computation is Unknown or an isomorphism search is inconclusive. All
// computations run with the duality rule disabled.
CheckReport check_anderson(long long p, int n, const Grading& g);

// Levelwise exactness bookkeeping of the a_{lambda_m} long exact sequence
// over the window alpha + t, t in [-window, window]: forced isomorphisms
// where the sphere terms vanish, alternating rank sums and order products
// over zero-delimited stretches, and order divisibility at each node.
// Throws ExactnessViolation / UnknownDependencyError.
CheckReport check_les_orders(long long p, int n, int m, const Grading& g,
                             int window = 4);

}  // namespace mackeycoh
