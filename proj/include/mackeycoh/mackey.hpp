#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mackeycoh/abgroup.hpp"

namespace mackeycoh {

// Mackey functor for the cyclic group of order p^n, presented as a leveled
// diagram. Level 0 is the bottom (trivial subgroup), level n the top.
//   res(k) : level k   -> level k-1      (restriction)
//   tr(k)  : level k-1 -> level k        (transfer)
// Both composites tr(k).res(k) and res(k).tr(k) are multiplication by p.
class MackeyFunctor {
public:
    MackeyFunctor() : p_(2), n_(0), levels_{FgAbGroup::zero()} {}
    MackeyFunctor(long long p, int n, std::vector<FgAbGroup> levels,
                  std::vector<GroupHom> res, std::vector<GroupHom> tr);

    static MackeyFunctor zero_functor(long long p, int n);

    long long p() const { return p_; }
    int n() const { return n_; }
    const FgAbGroup& level(int k) const;
    const GroupHom& res(int k) const;  // 1 <= k <= n
    const GroupHom& tr(int k) const;   // 1 <= k <= n
    bool is_zero() const;

    // Composite res from level j down to level k (identity when j == k).
    GroupHom res_composite(int j, int k) const;
    // Composite tr from level k up to level j.
    GroupHom tr_composite(int k, int j) const;

    bool operator==(const MackeyFunctor&) const = default;
    std::string to_string() const;

private:
    long long p_;
    int n_;
    std::vector<FgAbGroup> levels_;  // size n+1
    std::vector<GroupHom> res_;      // res_[k-1] : level k -> level k-1
    std::vector<GroupHom> tr_;       // tr_[k-1]  : level k-1 -> level k
};

// Diagnostic version of the constructor checks: returns one line per
// violated condition instead of throwing. Empty means valid.
std::vector<std::string> validate_mackey(long long p, int n,
                                         const std::vector<FgAbGroup>& levels,
                                         const std::vector<GroupHom>& res,
                                         const std::vector<GroupHom>& tr);

// Levelwise homomorphism commuting with res and tr.
class MackeyHom {
public:
    MackeyHom() = default;
    MackeyHom(MackeyFunctor src, MackeyFunctor tgt, std::vector<GroupHom> maps);

    static MackeyHom zero(const MackeyFunctor& src, const MackeyFunctor& tgt);
    static MackeyHom identity(const MackeyFunctor& m);

    const MackeyFunctor& src() const { return src_; }
    const MackeyFunctor& tgt() const { return tgt_; }
    const GroupHom& level(int k) const;
    bool is_zero() const;

    bool operator==(const MackeyHom&) const = default;

private:
    MackeyFunctor src_;
    MackeyFunctor tgt_;
    std::vector<GroupHom> maps_;  // size n+1
};

MackeyHom compose(const MackeyHom& f, const MackeyHom& g);
MackeyHom hom_add(const MackeyHom& f, const MackeyHom& g);

MackeyFunctor direct_sum(const MackeyFunctor& a, const MackeyFunctor& b);

struct MackeySumData {
    MackeyFunctor sum;
    MackeyHom incl_a, incl_b;
    MackeyHom proj_a, proj_b;
};

MackeySumData direct_sum_data(const MackeyFunctor& a, const MackeyFunctor& b);

// Level-degreewise duals. Both reverse the legs: the dual of res is tr and
// vice versa. hom_l keeps the free parts, ext_l the torsion parts.
MackeyFunctor hom_l(const MackeyFunctor& m);
MackeyFunctor ext_l(const MackeyFunctor& m);

// Inflation along the quotient by the subgroup of order p^m: levels at or
// above m copy the input, the bottom m levels repeat the input's bottom
// with res = id and tr = p.
MackeyFunctor inflate(const MackeyFunctor& m, int shift);

// Extend a level-m diagram to level n by repeating the top:
//   extend_const: res = id, tr = p above level m,
//   extend_dual:  res = p, tr = id above level m.
MackeyFunctor extend_const(const MackeyFunctor& m, int n);
MackeyFunctor extend_dual(const MackeyFunctor& m, int n);

// Forget the levels above m.
MackeyFunctor restrict_to(const MackeyFunctor& m, int new_n);

// The abelian group of Mackey homs src -> tgt, with a hom generating each
// normal-form generator. gens[i] has the order of generator i.
struct MackeyHomGroup {
    FgAbGroup group;
    std::vector<MackeyHom> gens;
};

MackeyHomGroup mackey_hom_group(const MackeyFunctor& src,
                                const MackeyFunctor& tgt);

// Kernel and cokernel of a Mackey hom, with the levelwise structure maps
// induced by factoring through the inclusions/projections. Throws
// InducedMapFailure if the factoring fails (it cannot for genuine homs).
struct MackeyKernel {
    MackeyFunctor functor;
    MackeyHom incl;
};

struct MackeyCokernel {
    MackeyFunctor functor;
    MackeyHom proj;
};

MackeyKernel kernel_mackey(const MackeyHom& f);
MackeyCokernel cokernel_mackey(const MackeyHom& f);

// A two-map sequence sub -> mid -> quot, exact in the middle, injective on
// the left, surjective on the right. Checked on construction.
struct ShortExactSeq {
    MackeyHom incl;
    MackeyHom proj;

    ShortExactSeq(MackeyHom incl_, MackeyHom proj_);
};

// Splitting test: an explicit section of ses.proj if one exists. Exact —
// reduces to integer feasibility over the hom group of the quotient.
std::optional<MackeyHom> splitting_section(const ShortExactSeq& ses);
inline bool is_split(const ShortExactSeq& ses) {
    return splitting_section(ses).has_value();
}

// Exact isomorphism testing.
enum class IsoVerdict { Iso, NotIso, Unknown };

struct IsoResult {
    IsoVerdict verdict = IsoVerdict::Unknown;
    // For NotIso: the separating invariant. For Unknown: why the search
    // stopped.
    std::string reason;
    // For Iso: a witnessing isomorphism.
    std::optional<MackeyHom> witness;
};

IsoResult iso_test(const MackeyFunctor& a, const MackeyFunctor& b,
                   long long search_cap = 200000);

}  // namespace mackeycoh
