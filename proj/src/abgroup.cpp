#include "mackeycoh/abgroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mackeycoh {

namespace {

Int positive_mod(const Int& x, const Int& d) {
    Int r = x % d;
    if (r < 0) r += d;
    return r;
}

Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

}  // namespace

FgAbGroup::FgAbGroup(int rank, std::vector<Int> torsion)
    : rank_(rank), torsion_(std::move(torsion)) {
    if (rank_ < 0) throw InvalidDiagram("negative rank");
    for (size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < 2)
            throw InvalidDiagram("invariant factor below 2: " +
                                 torsion_[i].str());
        if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
            throw InvalidDiagram("invariant factors not a divisibility chain");
    }
}

FgAbGroup FgAbGroup::cyclic(const Int& d) {
    if (d < 1) throw InvalidDiagram("cyclic order must be positive");
    if (d == 1) return FgAbGroup();
    return FgAbGroup(0, {d});
}

Int FgAbGroup::gen_order(int i) const {
    if (i < 0 || i >= ngens()) throw IndexError("generator index out of range");
    if (i < rank_) return 0;
    return torsion_[static_cast<size_t>(i - rank_)];
}

Int FgAbGroup::torsion_order() const {
    Int o = 1;
    for (const Int& d : torsion_) o *= d;
    return o;
}

Mat FgAbGroup::relations() const {
    const int t = static_cast<int>(torsion_.size());
    Mat r(ngens(), t);
    for (int j = 0; j < t; ++j) r(rank_ + j, j) = torsion_[static_cast<size_t>(j)];
    return r;
}

std::string FgAbGroup::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    if (rank_ == 1) {
        out << "Z";
        first = false;
    } else if (rank_ > 1) {
        out << "Z^" << rank_;
        first = false;
    }
    for (const Int& d : torsion_) {
        if (!first) out << " + ";
        out << "Z/" << d.str();
        first = false;
    }
    return out.str();
}

std::vector<Int> reduce_coords(const FgAbGroup& g, std::vector<Int> x) {
    if (static_cast<int>(x.size()) != g.ngens())
        throw IndexError("coordinate vector has wrong length");
    for (int i = g.rank(); i < g.ngens(); ++i)
        x[static_cast<size_t>(i)] =
            positive_mod(x[static_cast<size_t>(i)], g.gen_order(i));
    return x;
}

Mat reduce_matrix(const FgAbGroup& tgt, Mat m) {
    if (m.rows() != tgt.ngens())
        throw IndexError("matrix rows do not match target generators");
    for (int i = tgt.rank(); i < tgt.ngens(); ++i) {
        const Int d = tgt.gen_order(i);
        for (int j = 0; j < m.cols(); ++j) m(i, j) = positive_mod(m(i, j), d);
    }
    return m;
}

GroupHom::GroupHom(FgAbGroup src, FgAbGroup tgt, Mat mat)
    : src_(std::move(src)), tgt_(std::move(tgt)) {
    if (mat.rows() != tgt_.ngens() || mat.cols() != src_.ngens())
        throw InvalidHom("hom matrix shape " + std::to_string(mat.rows()) +
                         "x" + std::to_string(mat.cols()) + " does not match " +
                         std::to_string(tgt_.ngens()) + "x" +
                         std::to_string(src_.ngens()));
    mat_ = reduce_matrix(tgt_, std::move(mat));
    // A source generator of order d must land in the d-torsion of the target.
    for (int j = 0; j < src_.ngens(); ++j) {
        const Int d = src_.gen_order(j);
        if (d == 0) continue;
        for (int i = 0; i < tgt_.ngens(); ++i) {
            const Int e = tgt_.gen_order(i);
            if (e == 0) {
                if (mat_(i, j) != 0)
                    throw InvalidHom("torsion generator mapped to infinite "
                                     "order element");
            } else if ((d * mat_(i, j)) % e != 0) {
                throw InvalidHom("image of order-" + d.str() +
                                 " generator not killed by its order");
            }
        }
    }
}

GroupHom GroupHom::zero(const FgAbGroup& src, const FgAbGroup& tgt) {
    return GroupHom(src, tgt, Mat::zero(tgt.ngens(), src.ngens()));
}

GroupHom GroupHom::identity(const FgAbGroup& g) {
    return GroupHom(g, g, Mat::identity(g.ngens()));
}

GroupHom GroupHom::scalar(const FgAbGroup& g, const Int& s) {
    return GroupHom(g, g, Mat::identity(g.ngens()).scaled(s));
}

std::vector<Int> GroupHom::apply(const std::vector<Int>& x) const {
    return reduce_coords(tgt_, mat_.apply(x));
}

GroupHom GroupHom::scaled(const Int& s) const {
    return GroupHom(src_, tgt_, mat_.scaled(s));
}

std::string GroupHom::to_string() const {
    return src_.to_string() + " -> " + tgt_.to_string() + " : " +
           mat_.to_string();
}

GroupHom compose(const GroupHom& f, const GroupHom& g) {
    if (g.tgt() != f.src())
        throw InvalidHom("composition mismatch: " + g.tgt().to_string() +
                         " vs " + f.src().to_string());
    return GroupHom(g.src(), f.tgt(), f.mat() * g.mat());
}

GroupHom hom_add(const GroupHom& f, const GroupHom& g) {
    if (f.src() != g.src() || f.tgt() != g.tgt())
        throw InvalidHom("sum of homs with different endpoints");
    return GroupHom(f.src(), f.tgt(), f.mat() + g.mat());
}

Presentation from_presentation(int ngens, const Mat& relations) {
    if (relations.rows() != ngens)
        throw IndexError("relation matrix must have one row per generator");
    const SnfDecomposition s = snf(relations);
    // In coordinates y = U x the relation lattice is spanned by d_i * e_i,
    // i < s.rank. Generators with d_i == 1 vanish; the rest survive, free
    // generators first to match normal form. The surviving d_i (all >= 2)
    // inherit the divisibility chain from the SNF.
    std::vector<int> keep;          // ambient y-indices of surviving gens
    std::vector<Int> torsion;
    for (int i = s.rank; i < ngens; ++i) keep.push_back(i);
    const int free_rank = static_cast<int>(keep.size());
    for (int i = 0; i < s.rank; ++i) {
        if (s.D(i, i) >= 2) {
            keep.push_back(i);
            torsion.push_back(s.D(i, i));
        }
    }
    FgAbGroup group(free_rank, torsion);

    Mat proj(group.ngens(), ngens);
    Mat lift(ngens, group.ngens());
    for (int r = 0; r < group.ngens(); ++r) {
        const int src_row = keep[static_cast<size_t>(r)];
        for (int c = 0; c < ngens; ++c) {
            proj(r, c) = s.U(src_row, c);
            lift(c, r) = s.Uinv(c, src_row);
        }
    }
    return Presentation{group, reduce_matrix(group, std::move(proj)),
                        std::move(lift)};
}

Subgroup kernel(const GroupHom& f) {
    const int na = f.src().ngens();
    // x in Z^na maps to zero in tgt iff f.mat x lies in the relation lattice.
    const Mat solutions = kernel_basis(Mat::hcat(f.mat(), f.tgt().relations()));
    const Mat lattice = solutions.rows_slice(0, na);  // generators of the
                                                      // kernel sublattice
    // Relations among those generators: combinations landing in im(R_src).
    const int m = lattice.cols();
    const Mat rel_solutions =
        kernel_basis(Mat::hcat(lattice, f.src().relations()));
    const Presentation pres =
        from_presentation(m, rel_solutions.rows_slice(0, m));
    GroupHom incl(pres.group, f.src(),
                  reduce_matrix(f.src(), lattice * pres.lift));
    return Subgroup{pres.group, std::move(incl)};
}

Quotient cokernel(const GroupHom& f) {
    const Presentation pres = from_presentation(
        f.tgt().ngens(), Mat::hcat(f.mat(), f.tgt().relations()));
    GroupHom proj(f.tgt(), pres.group, pres.proj);
    return Quotient{pres.group, std::move(proj)};
}

std::optional<std::vector<Int>> solve_in_group(const Mat& cols,
                                               const FgAbGroup& ambient,
                                               const std::vector<Int>& target) {
    if (cols.rows() != ambient.ngens())
        throw IndexError("column matrix does not live in the ambient group");
    const auto sol = solve_linear(Mat::hcat(cols, ambient.relations()), target);
    if (!sol) return std::nullopt;
    return std::vector<Int>(sol->begin(), sol->begin() + cols.cols());
}

FgAbGroup hom_z_dual(const FgAbGroup& g) { return FgAbGroup::free(g.rank()); }

GroupHom hom_z_dual_of(const GroupHom& f) {
    // Hom(-, Z) sees only the free parts; the dual matrix is the transpose
    // of the free-by-free block.
    Mat m(f.src().rank(), f.tgt().rank());
    for (int i = 0; i < f.src().rank(); ++i)
        for (int j = 0; j < f.tgt().rank(); ++j) m(i, j) = f.mat()(j, i);
    return GroupHom(hom_z_dual(f.tgt()), hom_z_dual(f.src()), std::move(m));
}

FgAbGroup ext_z_dual(const FgAbGroup& g) { return FgAbGroup(0, g.torsion()); }

GroupHom ext_z_dual_of(const GroupHom& f) {
    // Identify Ext(T, Z) with Hom(T, Q/Z), sending the order-d generator to
    // x -> x/d. Pulling the order-e character of the target back along f and
    // rewriting it in that basis scales matrix entries by d/e.
    const FgAbGroup& a = f.src();
    const FgAbGroup& b = f.tgt();
    const int ta = static_cast<int>(a.torsion().size());
    const int tb = static_cast<int>(b.torsion().size());
    Mat m(ta, tb);
    for (int i = 0; i < ta; ++i) {
        const Int d = a.torsion()[static_cast<size_t>(i)];
        for (int j = 0; j < tb; ++j) {
            const Int e = b.torsion()[static_cast<size_t>(j)];
            const Int num = f.mat()(b.rank() + j, a.rank() + i) * d;
            if (num % e != 0)
                throw InvalidHom("torsion block not compatible with orders");
            m(i, j) = positive_mod(num / e, d);
        }
    }
    return GroupHom(ext_z_dual(b), ext_z_dual(a), std::move(m));
}

std::vector<std::vector<Int>> enumerate_elements(const FgAbGroup& g,
                                                 const Int& bound) {
    if (g.rank() > 0) throw OrderTooLarge("cannot enumerate an infinite group");
    Int total = 1;
    for (const Int& d : g.torsion()) {
        total *= d;
        if (total > bound)
            throw OrderTooLarge("group order exceeds enumeration bound " +
                                bound.str());
    }
    std::vector<std::vector<Int>> out;
    const size_t t = g.torsion().size();
    std::vector<Int> cur(t, 0);
    while (true) {
        out.push_back(cur);
        size_t i = 0;
        while (i < t) {
            cur[i] += 1;
            if (cur[i] < g.torsion()[i]) break;
            cur[i] = 0;
            ++i;
        }
        if (i == t) break;
    }
    return out;
}

std::vector<Int> element_order_multiset(const FgAbGroup& g, const Int& bound) {
    std::vector<Int> orders;
    for (const auto& x : enumerate_elements(g, bound)) {
        Int o = 1;
        for (size_t i = 0; i < x.size(); ++i) {
            const Int d = g.torsion()[i];
            o = lcm_int(o, d / gcd(d, x[i]));
        }
        orders.push_back(o);
    }
    std::sort(orders.begin(), orders.end());
    return orders;
}

GroupHom inverse_of(const GroupHom& f) {
    if (f.src().rank() != f.tgt().rank() ||
        f.src().torsion() != f.tgt().torsion())
        throw InvalidHom("inverse_of: source and target not of the same type");
    const FgAbGroup& tgt = f.tgt();
    Mat inv(f.src().ngens(), tgt.ngens());
    for (int j = 0; j < tgt.ngens(); ++j) {
        std::vector<Int> e(static_cast<size_t>(tgt.ngens()), 0);
        e[static_cast<size_t>(j)] = 1;
        const auto x = solve_in_group(f.mat(), tgt, e);
        if (!x) throw InvalidHom("inverse_of: map is not surjective");
        for (int i = 0; i < f.src().ngens(); ++i)
            inv(i, j) = (*x)[static_cast<size_t>(i)];
    }
    GroupHom g(tgt, f.src(), std::move(inv));
    if (compose(g, f) != GroupHom::identity(f.src()) ||
        compose(f, g) != GroupHom::identity(tgt))
        throw InvalidHom("inverse_of: map is not injective");
    return g;
}

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
    return direct_sum_data(a, b).group;
}

DirectSumData direct_sum_data(const FgAbGroup& a, const FgAbGroup& b) {
    const int na = a.ngens();
    const int nb = b.ngens();
    const Presentation pres = from_presentation(
        na + nb, Mat::diag_block(a.relations(), b.relations()));
    GroupHom incl_a(a, pres.group,
                    reduce_matrix(pres.group, pres.proj.cols_slice(0, na)));
    GroupHom incl_b(b, pres.group,
                    reduce_matrix(pres.group, pres.proj.cols_slice(na, na + nb)));
    GroupHom proj_a(pres.group, a,
                    reduce_matrix(a, pres.lift.rows_slice(0, na)));
    GroupHom proj_b(pres.group, b,
                    reduce_matrix(b, pres.lift.rows_slice(na, na + nb)));
    return DirectSumData{pres.group, std::move(incl_a), std::move(incl_b),
                         std::move(proj_a), std::move(proj_b)};
}

GroupHom direct_sum_hom(const GroupHom& f, const GroupHom& g) {
    const DirectSumData ds = direct_sum_data(f.src(), g.src());
    const DirectSumData dt = direct_sum_data(f.tgt(), g.tgt());
    return hom_add(compose(dt.incl_a, compose(f, ds.proj_a)),
                   compose(dt.incl_b, compose(g, ds.proj_b)));
}

}  // namespace mackeycoh
