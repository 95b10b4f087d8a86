#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mackeycoh/error.hpp"
#include "mackeycoh/intmat.hpp"

namespace mackeycoh {

// Finitely generated abelian group in invariant-factor normal form:
//   Z^rank  (+)  Z/d1 (+) ... (+) Z/dk   with  2 <= d1 | d2 | ... | dk.
// Generator order everywhere: the `rank` free generators first, then the
// torsion generators in the order of `torsion`.
class FgAbGroup {
public:
    FgAbGroup() : rank_(0) {}
    FgAbGroup(int rank, std::vector<Int> torsion);

    static FgAbGroup zero() { return FgAbGroup(); }
    static FgAbGroup free(int rank) { return FgAbGroup(rank, {}); }
    static FgAbGroup cyclic(const Int& d);

    int rank() const { return rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    int ngens() const { return rank_ + static_cast<int>(torsion_.size()); }
    // 0 for a free generator, the invariant factor otherwise.
    Int gen_order(int i) const;
    bool is_zero() const { return rank_ == 0 && torsion_.empty(); }
    bool is_finite() const { return rank_ == 0; }
    // Order of the torsion subgroup (the full order when finite).
    Int torsion_order() const;

    // Relation matrix: ngens x ntorsion, column j = d_j * (torsion gen j).
    Mat relations() const;

    bool operator==(const FgAbGroup&) const = default;
    std::string to_string() const;

private:
    int rank_;
    std::vector<Int> torsion_;
};

// Homomorphism between groups in normal form. mat has tgt.ngens() rows and
// src.ngens() cols; entries in rows belonging to target torsion generators
// are kept reduced to [0, d). Construction checks well-definedness: a source
// generator of finite order d must map to an element killed by d.
class GroupHom {
public:
    GroupHom() = default;
    GroupHom(FgAbGroup src, FgAbGroup tgt, Mat mat);

    static GroupHom zero(const FgAbGroup& src, const FgAbGroup& tgt);
    static GroupHom identity(const FgAbGroup& g);
    // Multiplication by s as an endomorphism.
    static GroupHom scalar(const FgAbGroup& g, const Int& s);

    const FgAbGroup& src() const { return src_; }
    const FgAbGroup& tgt() const { return tgt_; }
    const Mat& mat() const { return mat_; }

    bool is_zero() const { return mat_.is_zero(); }
    // Coordinates of the image of a source element.
    std::vector<Int> apply(const std::vector<Int>& x) const;

    GroupHom scaled(const Int& s) const;
    bool operator==(const GroupHom&) const = default;
    std::string to_string() const;

private:
    FgAbGroup src_;
    FgAbGroup tgt_;
    Mat mat_;
};

// g then f (usual composition order).
GroupHom compose(const GroupHom& f, const GroupHom& g);
GroupHom hom_add(const GroupHom& f, const GroupHom& g);

// Reduce a coordinate vector of `g` so torsion coordinates lie in [0, d).
std::vector<Int> reduce_coords(const FgAbGroup& g, std::vector<Int> x);
// Reduce every column of a coordinate matrix into `tgt` normal form.
Mat reduce_matrix(const FgAbGroup& tgt, Mat m);

// Quotient of Z^ngens by the columns of `relations`, in normal form.
//   group: the quotient in normal form,
//   proj:  (group.ngens x ngens) coordinates of each ambient basis vector,
//   lift:  (ngens x group.ngens) preimages of the normal-form generators;
// proj * lift == identity on the quotient (after reduction).
struct Presentation {
    FgAbGroup group;
    Mat proj;
    Mat lift;
};

Presentation from_presentation(int ngens, const Mat& relations);

// Kernel of f as a group in normal form together with its inclusion into
// f.src(): ker.mat() columns span {x : f(x) = 0 in tgt}.
struct Subgroup {
    FgAbGroup group;
    GroupHom incl;  // group -> ambient
};

Subgroup kernel(const GroupHom& f);

// Cokernel of f with the projection from f.tgt().
struct Quotient {
    FgAbGroup group;
    GroupHom proj;  // ambient -> group
};

Quotient cokernel(const GroupHom& f);

// Solve  sum_i cols[:,i] * x_i == target  inside `ambient` (mod its torsion),
// returning one solution vector x if it exists.
std::optional<std::vector<Int>> solve_in_group(const Mat& cols,
                                               const FgAbGroup& ambient,
                                               const std::vector<Int>& target);

// Hom(-, Z) on objects and maps: kills torsion, keeps the free part.
FgAbGroup hom_z_dual(const FgAbGroup& g);
GroupHom hom_z_dual_of(const GroupHom& f);

// Ext(-, Z) on objects and maps: kills the free part; a finite group is
// (non-canonically) its own dual, and we fix the identification that sends
// the normal-form torsion generator of order d to the character x -> x/d.
FgAbGroup ext_z_dual(const FgAbGroup& g);
GroupHom ext_z_dual_of(const GroupHom& f);

// All elements as coordinate vectors; throws OrderTooLarge beyond `bound`.
std::vector<std::vector<Int>> enumerate_elements(const FgAbGroup& g,
                                                 const Int& bound);

// Multiset of element orders, sorted ascending (finite groups only).
std::vector<Int> element_order_multiset(const FgAbGroup& g, const Int& bound);

// Inverse of an isomorphism; throws InvalidHom if f is not an isomorphism.
GroupHom inverse_of(const GroupHom& f);

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);

// Direct sum in normal form together with the four canonical maps. The
// normal form of a sum reorders generators, so the maps are not mere block
// inclusions; they satisfy proj_a * incl_a = id, proj_b * incl_b = id,
// proj_a * incl_b = 0 and incl_a * proj_a + incl_b * proj_b = id.
struct DirectSumData {
    FgAbGroup group;
    GroupHom incl_a, incl_b;  // a -> group, b -> group
    GroupHom proj_a, proj_b;  // group -> a, group -> b
};

DirectSumData direct_sum_data(const FgAbGroup& a, const FgAbGroup& b);

// f (+) g between the normal forms of the direct sums of their endpoints.
GroupHom direct_sum_hom(const GroupHom& f, const GroupHom& g);

}  // namespace mackeycoh
