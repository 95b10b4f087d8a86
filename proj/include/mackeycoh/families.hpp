#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mackeycoh/mackey.hpp"

namespace mackeycoh {

// Subsets of {1, ..., n} index the standard families.
using Subset = std::set<int>;

Subset full_set(int n);
Subset complement(const Subset& s, int n);
std::string subset_to_string(const Subset& s);

// Z_S: every level Z; res(k) is p when k is in S and 1 otherwise, tr(k) the
// other way around. Z_{} is the constant diagram, Z_{1..n} its dual.
MackeyFunctor z_s(long long p, int n, const Subset& s);

// B_{T,S} for S a subset of T: level k is Z/p^a with a the number of
// elements of T\S that are <= k; res(k) is reduction (times p when k in S),
// tr(k) is multiplication by p (by 1 when k in S).
MackeyFunctor b_ts(long long p, int n, const Subset& t, const Subset& s);

// Equivalent B parameters produce equal diagrams: only D = T\S and the part
// of S above min(D) matter. canonical_b returns the representative with
// T = D together with that tail; empty D collapses to the zero diagram,
// reported as S = T = {}.
struct BParams {
    Subset t, s;
};

BParams canonical_b(int n, const Subset& t, const Subset& s);

// The natural surjection Z_T -> Z_S for S a subset of T (level k is
// multiplication by p^{#(T\S up to k)}), whose cokernel is B_{T,S}.
MackeyHom f_ts(long long p, int n, const Subset& t, const Subset& s);

// The non-split tower T(n), n >= 2: level 0 is Z, higher levels Z + Z/p.
MackeyFunctor t_n(long long p, int n);

// The defining sequence 0 -> B_{(1..n),(2..n)} -> T(n) -> Z_{1} -> 0.
ShortExactSeq t_n_sequence(long long p, int n);

// A sum of named atoms, used both to build diagrams and to print
// recognition results.
struct CatalogAtom {
    enum class Kind { ZS, B, TN } kind;
    Subset t, s;  // ZS uses s; B uses t and s; TN uses neither
    int tn = 0;   // TN tower height

    bool operator==(const CatalogAtom&) const = default;
    bool operator<(const CatalogAtom& o) const;
};

struct CatalogExpr {
    std::vector<CatalogAtom> atoms;  // empty = zero diagram

    bool operator==(const CatalogExpr&) const = default;
};

std::string render_atom(const CatalogAtom& a, int n);
std::string render_expr(const CatalogExpr& e, int n);
MackeyFunctor build_atom(long long p, int n, const CatalogAtom& a);
MackeyFunctor build_expr(long long p, int n, const CatalogExpr& e);

// Recognition: search for a sum of Z_S and B_{T,S} atoms isomorphic to m.
// Candidates that match every levelwise invariant are tried with iso_test;
// each attempt is reported. T(n) atoms are deliberately not part of the
// search space, so a genuinely new diagram recognizes as std::nullopt with
// every candidate refuted.
struct RecognitionAttempt {
    CatalogExpr candidate;
    IsoResult outcome;
};

struct Recognition {
    std::optional<CatalogExpr> expr;
    std::optional<MackeyHom> witness;
    std::vector<RecognitionAttempt> attempts;
};

Recognition recognize(const MackeyFunctor& m);

}  // namespace mackeycoh
