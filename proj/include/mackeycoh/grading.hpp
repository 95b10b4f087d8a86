#pragma once
#include <string>
#include <string_view>
#include <vector>

#include "mackeycoh/error.hpp"

namespace mackeycoh {

// An element c + sum a_i * L_i of the grading group, where L_i is the
// two-dimensional rotation of order p^(n-i).  fixed_dim(m) is the dimension
// of the fixed points under the subgroup of order p^m.
struct Grading {
    int n = 0;
    long long c = 0;
    std::vector<long long> a;  // size n

    Grading() = default;
    Grading(int n_, long long c_, std::vector<long long> a_);

    long long fixed_dim(int m) const;        // c + 2 * sum_{i >= m} a_i
    long long total_dim() const { return fixed_dim(0); }
    bool is_zero() const;
    bool even() const { return c % 2 == 0; }

    Grading anderson_dual() const;      // 3 - L0 - alpha
    Grading anderson_hom_dual() const;  // 2 - L0 - alpha
    Grading quotient() const;           // fixed points of the order-p subgroup
    Grading restricted(int m) const;    // to the subgroup of order p^m
    Grading plus_c(long long k) const;
    Grading plus_lambda(int i, long long k = 1) const;

    std::string render() const;
    bool operator==(const Grading&) const = default;
};

struct ParsedGrading {
    Grading grading;
    std::vector<std::string> notes;  // e.g. "L(3) -> L0"
};

// Grammar: expr := ['-'] term (('+'|'-') term)* ;
//          term := INT | [INT '*']? 'L' (INT | '(' INT ')')
// L k names the generator directly; L(m) with 1 <= m < p^n is reduced to
// L_{v_p(m)} at parse time, recorded in notes.
ParsedGrading parse_grading(std::string_view text, long long p, int n);

}  // namespace mackeycoh
