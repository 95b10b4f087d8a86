#pragma once

#include <string>
#include <vector>

#include "mackeycoh/abgroup.hpp"
#include "mackeycoh/grading.hpp"

namespace mackeycoh {

// A monomial prod a_i^{e_i} u_i^{f_i} over the generators attached to L_i:
// the Euler class a_i in degree L_i and the orientation class u_i in degree
// L_i - 2. Exponents satisfy e_i + f_i = (multiplicity of L_i in the
// grading) and sum f_i = -c/2.
struct ConeMonomial {
    std::vector<int> e, f;  // indexed by i = 0..n-1

    bool operator==(const ConeMonomial&) const = default;
};

std::string render_monomial(const ConeMonomial& m);

// All monomials in the given grading. Throws IndexError when the grading
// lies outside the cone (negative multiplicities, positive or odd constant
// part). An empty list just means the group is zero.
std::vector<ConeMonomial> cone_monomials(const Grading& g);

// The group presented by those monomials under the relations
//   p^(n-i) m = 0            when e_i >= 1,
//   m = p^(j-i) m'           when f_i >= 1, e_j >= 1, i < j, where m' moves
//                            one factor u_i a_j to a_i u_j.
// coords expresses each monomial in the normal form of `group`.
struct ConeGroup {
    FgAbGroup group;
    std::vector<ConeMonomial> monomials;
    Mat coords;  // group.ngens() x monomials.size()
};

ConeGroup cone_group(long long p, const Grading& g);

}  // namespace mackeycoh
