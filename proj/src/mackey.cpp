#include "mackeycoh/mackey.hpp"

#include <algorithm>
#include <sstream>

namespace mackeycoh {

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) {
        if (!out.empty()) out += "; ";
        out += l;
    }
    return out;
}

}  // namespace

std::vector<std::string> validate_mackey(long long p, int n,
                                         const std::vector<FgAbGroup>& levels,
                                         const std::vector<GroupHom>& res,
                                         const std::vector<GroupHom>& tr) {
    std::vector<std::string> bad;
    if (p < 2) bad.push_back("p must be at least 2");
    if (n < 0) bad.push_back("n must be nonnegative");
    if (static_cast<int>(levels.size()) != n + 1)
        bad.push_back("expected " + std::to_string(n + 1) + " levels");
    if (static_cast<int>(res.size()) != n)
        bad.push_back("expected " + std::to_string(n) + " restriction maps");
    if (static_cast<int>(tr.size()) != n)
        bad.push_back("expected " + std::to_string(n) + " transfer maps");
    if (!bad.empty()) return bad;

    for (int k = 1; k <= n; ++k) {
        const GroupHom& r = res[static_cast<size_t>(k - 1)];
        const GroupHom& t = tr[static_cast<size_t>(k - 1)];
        if (r.src() != levels[static_cast<size_t>(k)] ||
            r.tgt() != levels[static_cast<size_t>(k - 1)]) {
            bad.push_back("res(" + std::to_string(k) +
                          ") does not go from level " + std::to_string(k) +
                          " to level " + std::to_string(k - 1));
            continue;
        }
        if (t.src() != levels[static_cast<size_t>(k - 1)] ||
            t.tgt() != levels[static_cast<size_t>(k)]) {
            bad.push_back("tr(" + std::to_string(k) +
                          ") does not go from level " + std::to_string(k - 1) +
                          " to level " + std::to_string(k));
            continue;
        }
        if (compose(t, r) !=
            GroupHom::scalar(levels[static_cast<size_t>(k)], p))
            bad.push_back("tr(" + std::to_string(k) + ").res(" +
                          std::to_string(k) + ") is not multiplication by p");
        if (compose(r, t) !=
            GroupHom::scalar(levels[static_cast<size_t>(k - 1)], p))
            bad.push_back("res(" + std::to_string(k) + ").tr(" +
                          std::to_string(k) + ") is not multiplication by p");
    }
    return bad;
}

MackeyFunctor::MackeyFunctor(long long p, int n, std::vector<FgAbGroup> levels,
                             std::vector<GroupHom> res,
                             std::vector<GroupHom> tr)
    : p_(p),
      n_(n),
      levels_(std::move(levels)),
      res_(std::move(res)),
      tr_(std::move(tr)) {
    const auto bad = validate_mackey(p_, n_, levels_, res_, tr_);
    if (!bad.empty()) throw InvalidDiagram(join_lines(bad));
}

MackeyFunctor MackeyFunctor::zero_functor(long long p, int n) {
    std::vector<FgAbGroup> levels(static_cast<size_t>(n + 1));
    std::vector<GroupHom> res(static_cast<size_t>(n),
                              GroupHom::zero(FgAbGroup::zero(),
                                             FgAbGroup::zero()));
    return MackeyFunctor(p, n, std::move(levels), res, res);
}

const FgAbGroup& MackeyFunctor::level(int k) const {
    if (k < 0 || k > n_) throw IndexError("level index out of range");
    return levels_[static_cast<size_t>(k)];
}

const GroupHom& MackeyFunctor::res(int k) const {
    if (k < 1 || k > n_) throw IndexError("res index out of range");
    return res_[static_cast<size_t>(k - 1)];
}

const GroupHom& MackeyFunctor::tr(int k) const {
    if (k < 1 || k > n_) throw IndexError("tr index out of range");
    return tr_[static_cast<size_t>(k - 1)];
}

bool MackeyFunctor::is_zero() const {
    return std::all_of(levels_.begin(), levels_.end(),
                       [](const FgAbGroup& g) { return g.is_zero(); });
}

GroupHom MackeyFunctor::res_composite(int j, int k) const {
    if (k > j) throw IndexError("res_composite needs k <= j");
    GroupHom out = GroupHom::identity(level(j));
    for (int i = j; i > k; --i) out = compose(res(i), out);
    return out;
}

GroupHom MackeyFunctor::tr_composite(int k, int j) const {
    if (k > j) throw IndexError("tr_composite needs k <= j");
    GroupHom out = GroupHom::identity(level(k));
    for (int i = k + 1; i <= j; ++i) out = compose(tr(i), out);
    return out;
}

std::string MackeyFunctor::to_string() const {
    std::ostringstream os;
    os << "p=" << p_ << " n=" << n_ << " [";
    for (int k = 0; k <= n_; ++k) {
        if (k) os << ", ";
        os << level(k).to_string();
    }
    os << "]";
    return os.str();
}

MackeyHom::MackeyHom(MackeyFunctor src, MackeyFunctor tgt,
                     std::vector<GroupHom> maps)
    : src_(std::move(src)), tgt_(std::move(tgt)), maps_(std::move(maps)) {
    if (src_.p() != tgt_.p() || src_.n() != tgt_.n())
        throw InvalidHom("Mackey hom between different group parameters");
    if (static_cast<int>(maps_.size()) != src_.n() + 1)
        throw InvalidHom("Mackey hom needs one map per level");
    for (int k = 0; k <= src_.n(); ++k) {
        const GroupHom& f = maps_[static_cast<size_t>(k)];
        if (f.src() != src_.level(k) || f.tgt() != tgt_.level(k))
            throw InvalidHom("level map " + std::to_string(k) +
                             " has wrong endpoints");
    }
    for (int k = 1; k <= src_.n(); ++k) {
        if (compose(tgt_.res(k), maps_[static_cast<size_t>(k)]) !=
            compose(maps_[static_cast<size_t>(k - 1)], src_.res(k)))
            throw InvalidHom("level maps do not commute with res(" +
                             std::to_string(k) + ")");
        if (compose(tgt_.tr(k), maps_[static_cast<size_t>(k - 1)]) !=
            compose(maps_[static_cast<size_t>(k)], src_.tr(k)))
            throw InvalidHom("level maps do not commute with tr(" +
                             std::to_string(k) + ")");
    }
}

MackeyHom MackeyHom::zero(const MackeyFunctor& src, const MackeyFunctor& tgt) {
    std::vector<GroupHom> maps;
    for (int k = 0; k <= src.n(); ++k)
        maps.push_back(GroupHom::zero(src.level(k), tgt.level(k)));
    return MackeyHom(src, tgt, std::move(maps));
}

MackeyHom MackeyHom::identity(const MackeyFunctor& m) {
    std::vector<GroupHom> maps;
    for (int k = 0; k <= m.n(); ++k)
        maps.push_back(GroupHom::identity(m.level(k)));
    return MackeyHom(m, m, std::move(maps));
}

const GroupHom& MackeyHom::level(int k) const {
    if (k < 0 || k >= static_cast<int>(maps_.size()))
        throw IndexError("level index out of range");
    return maps_[static_cast<size_t>(k)];
}

bool MackeyHom::is_zero() const {
    return std::all_of(maps_.begin(), maps_.end(),
                       [](const GroupHom& f) { return f.is_zero(); });
}

MackeyHom compose(const MackeyHom& f, const MackeyHom& g) {
    std::vector<GroupHom> maps;
    for (int k = 0; k <= g.src().n(); ++k)
        maps.push_back(compose(f.level(k), g.level(k)));
    return MackeyHom(g.src(), f.tgt(), std::move(maps));
}

MackeyHom hom_add(const MackeyHom& f, const MackeyHom& g) {
    std::vector<GroupHom> maps;
    for (int k = 0; k <= f.src().n(); ++k)
        maps.push_back(hom_add(f.level(k), g.level(k)));
    return MackeyHom(f.src(), f.tgt(), std::move(maps));
}

MackeyFunctor direct_sum(const MackeyFunctor& a, const MackeyFunctor& b) {
    return direct_sum_data(a, b).sum;
}

MackeySumData direct_sum_data(const MackeyFunctor& a, const MackeyFunctor& b) {
    if (a.p() != b.p() || a.n() != b.n())
        throw InvalidDiagram("direct sum of different group parameters");
    const int n = a.n();
    std::vector<FgAbGroup> levels;
    std::vector<DirectSumData> level_data;
    for (int k = 0; k <= n; ++k) {
        level_data.push_back(direct_sum_data(a.level(k), b.level(k)));
        levels.push_back(level_data.back().group);
    }
    std::vector<GroupHom> res, tr;
    for (int k = 1; k <= n; ++k) {
        const DirectSumData& up = level_data[static_cast<size_t>(k)];
        const DirectSumData& dn = level_data[static_cast<size_t>(k - 1)];
        res.push_back(hom_add(compose(dn.incl_a, compose(a.res(k), up.proj_a)),
                              compose(dn.incl_b, compose(b.res(k), up.proj_b))));
        tr.push_back(hom_add(compose(up.incl_a, compose(a.tr(k), dn.proj_a)),
                             compose(up.incl_b, compose(b.tr(k), dn.proj_b))));
    }
    MackeyFunctor sum(a.p(), n, levels, std::move(res), std::move(tr));

    std::vector<GroupHom> ia, ib, pa, pb;
    for (int k = 0; k <= n; ++k) {
        ia.push_back(level_data[static_cast<size_t>(k)].incl_a);
        ib.push_back(level_data[static_cast<size_t>(k)].incl_b);
        pa.push_back(level_data[static_cast<size_t>(k)].proj_a);
        pb.push_back(level_data[static_cast<size_t>(k)].proj_b);
    }
    return MackeySumData{sum, MackeyHom(a, sum, std::move(ia)),
                         MackeyHom(b, sum, std::move(ib)),
                         MackeyHom(sum, a, std::move(pa)),
                         MackeyHom(sum, b, std::move(pb))};
}

MackeyFunctor hom_l(const MackeyFunctor& m) {
    std::vector<FgAbGroup> levels;
    for (int k = 0; k <= m.n(); ++k) levels.push_back(hom_z_dual(m.level(k)));
    std::vector<GroupHom> res, tr;
    for (int k = 1; k <= m.n(); ++k) {
        res.push_back(hom_z_dual_of(m.tr(k)));
        tr.push_back(hom_z_dual_of(m.res(k)));
    }
    return MackeyFunctor(m.p(), m.n(), std::move(levels), std::move(res),
                         std::move(tr));
}

MackeyFunctor ext_l(const MackeyFunctor& m) {
    std::vector<FgAbGroup> levels;
    for (int k = 0; k <= m.n(); ++k) levels.push_back(ext_z_dual(m.level(k)));
    std::vector<GroupHom> res, tr;
    for (int k = 1; k <= m.n(); ++k) {
        res.push_back(ext_z_dual_of(m.tr(k)));
        tr.push_back(ext_z_dual_of(m.res(k)));
    }
    return MackeyFunctor(m.p(), m.n(), std::move(levels), std::move(res),
                         std::move(tr));
}

MackeyFunctor inflate(const MackeyFunctor& m, int shift) {
    if (shift < 0) throw IndexError("inflate needs a nonnegative shift");
    const int n = m.n() + shift;
    std::vector<FgAbGroup> levels;
    std::vector<GroupHom> res, tr;
    for (int k = 0; k <= n; ++k)
        levels.push_back(k < shift ? m.level(0) : m.level(k - shift));
    for (int k = 1; k <= n; ++k) {
        if (k <= shift) {
            res.push_back(GroupHom::identity(m.level(0)));
            tr.push_back(GroupHom::scalar(m.level(0), m.p()));
        } else {
            res.push_back(m.res(k - shift));
            tr.push_back(m.tr(k - shift));
        }
    }
    return MackeyFunctor(m.p(), n, std::move(levels), std::move(res),
                         std::move(tr));
}

namespace {

MackeyFunctor extend_impl(const MackeyFunctor& m, int n, bool dual) {
    if (n < m.n()) throw IndexError("extension target below current level");
    std::vector<FgAbGroup> levels;
    std::vector<GroupHom> res, tr;
    const FgAbGroup& top = m.level(m.n());
    for (int k = 0; k <= n; ++k)
        levels.push_back(k <= m.n() ? m.level(k) : top);
    for (int k = 1; k <= n; ++k) {
        if (k <= m.n()) {
            res.push_back(m.res(k));
            tr.push_back(m.tr(k));
        } else if (dual) {
            res.push_back(GroupHom::scalar(top, m.p()));
            tr.push_back(GroupHom::identity(top));
        } else {
            res.push_back(GroupHom::identity(top));
            tr.push_back(GroupHom::scalar(top, m.p()));
        }
    }
    return MackeyFunctor(m.p(), n, std::move(levels), std::move(res),
                         std::move(tr));
}

}  // namespace

MackeyFunctor extend_const(const MackeyFunctor& m, int n) {
    return extend_impl(m, n, false);
}

MackeyFunctor extend_dual(const MackeyFunctor& m, int n) {
    return extend_impl(m, n, true);
}

MackeyFunctor restrict_to(const MackeyFunctor& m, int new_n) {
    if (new_n < 0 || new_n > m.n())
        throw IndexError("restriction level out of range");
    std::vector<FgAbGroup> levels;
    std::vector<GroupHom> res, tr;
    for (int k = 0; k <= new_n; ++k) levels.push_back(m.level(k));
    for (int k = 1; k <= new_n; ++k) {
        res.push_back(m.res(k));
        tr.push_back(m.tr(k));
    }
    return MackeyFunctor(m.p(), new_n, std::move(levels), std::move(res),
                         std::move(tr));
}

namespace {

// Unknown layout for the hom-group solver: the entries of every level map,
// level by level, row-major.
struct HomUnknowns {
    std::vector<int> offset;  // per level
    int total = 0;

    HomUnknowns(const MackeyFunctor& src, const MackeyFunctor& tgt) {
        for (int k = 0; k <= src.n(); ++k) {
            offset.push_back(total);
            total += tgt.level(k).ngens() * src.level(k).ngens();
        }
    }

    int index(const MackeyFunctor& src, const MackeyFunctor& tgt, int k, int i,
              int j) const {
        return offset[static_cast<size_t>(k)] + i * src.level(k).ngens() + j;
    }
};

// One congruence  sum coeff * x  ==  0  (mod modulus); modulus 0 means an
// exact integer equation.
struct Congruence {
    std::vector<std::pair<int, Int>> terms;
    Int modulus;
};

std::vector<Congruence> hom_equations(const MackeyFunctor& src,
                                      const MackeyFunctor& tgt,
                                      const HomUnknowns& u) {
    std::vector<Congruence> eqs;
    // Well-definedness of each level map.
    for (int k = 0; k <= src.n(); ++k) {
        for (int j = 0; j < src.level(k).ngens(); ++j) {
            const Int d = src.level(k).gen_order(j);
            if (d == 0) continue;
            for (int i = 0; i < tgt.level(k).ngens(); ++i) {
                Congruence c;
                c.terms.emplace_back(u.index(src, tgt, k, i, j), d);
                c.modulus = tgt.level(k).gen_order(i);
                eqs.push_back(std::move(c));
            }
        }
    }
    // Commuting with res: tgt.res(k) f_k == f_{k-1} src.res(k).
    for (int k = 1; k <= src.n(); ++k) {
        const Mat& tres = tgt.res(k).mat();
        const Mat& sres = src.res(k).mat();
        for (int r = 0; r < tgt.level(k - 1).ngens(); ++r) {
            for (int j = 0; j < src.level(k).ngens(); ++j) {
                Congruence c;
                for (int i = 0; i < tgt.level(k).ngens(); ++i)
                    if (tres(r, i) != 0)
                        c.terms.emplace_back(u.index(src, tgt, k, i, j),
                                             tres(r, i));
                for (int s = 0; s < src.level(k - 1).ngens(); ++s)
                    if (sres(s, j) != 0)
                        c.terms.emplace_back(u.index(src, tgt, k - 1, r, s),
                                             -sres(s, j));
                c.modulus = tgt.level(k - 1).gen_order(r);
                eqs.push_back(std::move(c));
            }
        }
    }
    // Commuting with tr: f_k src.tr(k) == tgt.tr(k) f_{k-1}.
    for (int k = 1; k <= src.n(); ++k) {
        const Mat& str = src.tr(k).mat();
        const Mat& ttr = tgt.tr(k).mat();
        for (int r = 0; r < tgt.level(k).ngens(); ++r) {
            for (int j = 0; j < src.level(k - 1).ngens(); ++j) {
                Congruence c;
                for (int s = 0; s < src.level(k).ngens(); ++s)
                    if (str(s, j) != 0)
                        c.terms.emplace_back(u.index(src, tgt, k, r, s),
                                             str(s, j));
                for (int i = 0; i < tgt.level(k - 1).ngens(); ++i)
                    if (ttr(r, i) != 0)
                        c.terms.emplace_back(u.index(src, tgt, k - 1, i, j),
                                             -ttr(r, i));
                c.modulus = tgt.level(k).gen_order(r);
                eqs.push_back(std::move(c));
            }
        }
    }
    return eqs;
}

// Constraint matrix with one auxiliary unknown per congruence with nonzero
// modulus. Integer solutions of A z = 0 restricted to the first n_unknowns
// coordinates are exactly the valid entry assignments.
Mat congruence_matrix(const std::vector<Congruence>& eqs, int n_unknowns) {
    int n_aux = 0;
    for (const auto& c : eqs)
        if (c.modulus != 0) ++n_aux;
    Mat a(static_cast<int>(eqs.size()), n_unknowns + n_aux);
    int aux = 0;
    for (int r = 0; r < static_cast<int>(eqs.size()); ++r) {
        const Congruence& c = eqs[static_cast<size_t>(r)];
        for (const auto& [idx, coeff] : c.terms) a(r, idx) += coeff;
        if (c.modulus != 0) a(r, n_unknowns + aux++) = c.modulus;
    }
    return a;
}

// The lattice spanned by single-entry changes that do not change the hom:
// order e in the torsion row of the target.
Mat torsion_ambiguity(const MackeyFunctor& src, const MackeyFunctor& tgt,
                      const HomUnknowns& u) {
    std::vector<std::pair<int, Int>> cols;
    for (int k = 0; k <= src.n(); ++k)
        for (int i = 0; i < tgt.level(k).ngens(); ++i) {
            const Int e = tgt.level(k).gen_order(i);
            if (e == 0) continue;
            for (int j = 0; j < src.level(k).ngens(); ++j)
                cols.emplace_back(u.index(src, tgt, k, i, j), e);
        }
    Mat m(u.total, static_cast<int>(cols.size()));
    for (int c = 0; c < static_cast<int>(cols.size()); ++c)
        m(cols[static_cast<size_t>(c)].first, c) =
            cols[static_cast<size_t>(c)].second;
    return m;
}

MackeyHom hom_from_entries(const MackeyFunctor& src, const MackeyFunctor& tgt,
                           const HomUnknowns& u, const std::vector<Int>& v) {
    std::vector<GroupHom> maps;
    for (int k = 0; k <= src.n(); ++k) {
        Mat m(tgt.level(k).ngens(), src.level(k).ngens());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                m(i, j) = v[static_cast<size_t>(u.index(src, tgt, k, i, j))];
        maps.emplace_back(src.level(k), tgt.level(k), std::move(m));
    }
    return MackeyHom(src, tgt, std::move(maps));
}

}  // namespace

MackeyHomGroup mackey_hom_group(const MackeyFunctor& src,
                                const MackeyFunctor& tgt) {
    if (src.p() != tgt.p() || src.n() != tgt.n())
        throw InvalidHom("hom group between different group parameters");
    const HomUnknowns u(src, tgt);
    const auto eqs = hom_equations(src, tgt, u);
    const Mat a = congruence_matrix(eqs, u.total);
    // All integer entry assignments satisfying the constraints.
    const Mat lattice = kernel_basis(a).rows_slice(0, u.total);
    // Two assignments give the same hom iff they differ by the torsion
    // ambiguity lattice.
    const Mat ambiguity = torsion_ambiguity(src, tgt, u);
    const int g = lattice.cols();
    const Mat rel =
        kernel_basis(Mat::hcat(lattice, ambiguity)).rows_slice(0, g);
    const Presentation pres = from_presentation(g, rel);

    std::vector<MackeyHom> gens;
    for (int t = 0; t < pres.group.ngens(); ++t) {
        std::vector<Int> coeff(static_cast<size_t>(g));
        for (int i = 0; i < g; ++i) coeff[static_cast<size_t>(i)] =
            pres.lift(i, t);
        gens.push_back(hom_from_entries(src, tgt, u, lattice.apply(coeff)));
    }
    return MackeyHomGroup{pres.group, std::move(gens)};
}

MackeyKernel kernel_mackey(const MackeyHom& f) {
    const MackeyFunctor& m = f.src();
    const int n = m.n();
    std::vector<Subgroup> subs;
    for (int k = 0; k <= n; ++k) subs.push_back(kernel(f.level(k)));

    auto induced = [&](const GroupHom& structure, int from, int to) {
        const Subgroup& a = subs[static_cast<size_t>(from)];
        const Subgroup& b = subs[static_cast<size_t>(to)];
        Mat mt(b.group.ngens(), a.group.ngens());
        for (int j = 0; j < a.group.ngens(); ++j) {
            std::vector<Int> e(static_cast<size_t>(a.group.ngens()), 0);
            e[static_cast<size_t>(j)] = 1;
            const std::vector<Int> img = structure.apply(a.incl.apply(e));
            const auto z = solve_in_group(b.incl.mat(), structure.tgt(), img);
            if (!z)
                throw InducedMapFailure(
                    "kernel structure map does not factor through the kernel");
            for (int i = 0; i < b.group.ngens(); ++i)
                mt(i, j) = (*z)[static_cast<size_t>(i)];
        }
        return GroupHom(a.group, b.group, std::move(mt));
    };

    std::vector<FgAbGroup> levels;
    for (const auto& s : subs) levels.push_back(s.group);
    std::vector<GroupHom> res, tr, incl;
    for (int k = 1; k <= n; ++k) {
        res.push_back(induced(m.res(k), k, k - 1));
        tr.push_back(induced(m.tr(k), k - 1, k));
    }
    MackeyFunctor ker(m.p(), n, std::move(levels), std::move(res),
                      std::move(tr));
    for (int k = 0; k <= n; ++k) incl.push_back(subs[static_cast<size_t>(k)].incl);
    return MackeyKernel{ker, MackeyHom(ker, m, std::move(incl))};
}

MackeyCokernel cokernel_mackey(const MackeyHom& f) {
    const MackeyFunctor& m = f.tgt();
    const int n = m.n();
    std::vector<Quotient> quots;
    for (int k = 0; k <= n; ++k) quots.push_back(cokernel(f.level(k)));

    auto induced = [&](const GroupHom& structure, int from, int to) {
        const Quotient& a = quots[static_cast<size_t>(from)];
        const Quotient& b = quots[static_cast<size_t>(to)];
        Mat mt(b.group.ngens(), a.group.ngens());
        for (int j = 0; j < a.group.ngens(); ++j) {
            std::vector<Int> e(static_cast<size_t>(a.group.ngens()), 0);
            e[static_cast<size_t>(j)] = 1;
            const auto x = solve_in_group(a.proj.mat(), a.group, e);
            if (!x)
                throw InducedMapFailure(
                    "cokernel generator has no preimage");
            const std::vector<Int> img = b.proj.apply(structure.apply(*x));
            for (int i = 0; i < b.group.ngens(); ++i)
                mt(i, j) = img[static_cast<size_t>(i)];
        }
        return GroupHom(a.group, b.group, std::move(mt));
    };

    std::vector<FgAbGroup> levels;
    for (const auto& q : quots) levels.push_back(q.group);
    std::vector<GroupHom> res, tr, proj;
    for (int k = 1; k <= n; ++k) {
        res.push_back(induced(m.res(k), k, k - 1));
        tr.push_back(induced(m.tr(k), k - 1, k));
    }
    MackeyFunctor coker(m.p(), n, std::move(levels), std::move(res),
                        std::move(tr));
    for (int k = 0; k <= n; ++k) proj.push_back(quots[static_cast<size_t>(k)].proj);
    return MackeyCokernel{coker, MackeyHom(m, coker, std::move(proj))};
}

ShortExactSeq::ShortExactSeq(MackeyHom incl_, MackeyHom proj_)
    : incl(std::move(incl_)), proj(std::move(proj_)) {
    if (incl.tgt() != proj.src())
        throw InvalidDiagram("sequence maps do not chain");
    if (!compose(proj, incl).is_zero())
        throw InvalidDiagram("sequence does not compose to zero");
    const int n = incl.src().n();
    for (int k = 0; k <= n; ++k) {
        const GroupHom& i = incl.level(k);
        const GroupHom& q = proj.level(k);
        if (!kernel(i).group.is_zero())
            throw InvalidDiagram("left map not injective at level " +
                                 std::to_string(k));
        if (!cokernel(q).group.is_zero())
            throw InvalidDiagram("right map not surjective at level " +
                                 std::to_string(k));
        // Exactness: factor incl through ker(q), then demand surjectivity.
        const Subgroup kq = kernel(q);
        Mat through(kq.group.ngens(), i.src().ngens());
        for (int j = 0; j < i.src().ngens(); ++j) {
            std::vector<Int> e(static_cast<size_t>(i.src().ngens()), 0);
            e[static_cast<size_t>(j)] = 1;
            const auto z = solve_in_group(kq.incl.mat(), i.tgt(), i.apply(e));
            if (!z)
                throw InvalidDiagram("image escapes the kernel at level " +
                                     std::to_string(k));
            for (int r = 0; r < kq.group.ngens(); ++r)
                through(r, j) = (*z)[static_cast<size_t>(r)];
        }
        if (!cokernel(GroupHom(i.src(), kq.group, std::move(through)))
                 .group.is_zero())
            throw InvalidDiagram("sequence not exact at level " +
                                 std::to_string(k));
    }
}

std::optional<MackeyHom> splitting_section(const ShortExactSeq& ses) {
    const MackeyFunctor& c = ses.proj.tgt();
    const MackeyHomGroup homs = mackey_hom_group(c, ses.proj.src());
    const int ngens = static_cast<int>(homs.gens.size());

    // One congruence per entry of every level map of (proj . s) - id.
    std::vector<Congruence> eqs;
    std::vector<Int> rhs;
    for (int k = 0; k <= c.n(); ++k) {
        std::vector<Mat> images;
        for (const auto& h : homs.gens)
            images.push_back(ses.proj.level(k).mat() * h.level(k).mat());
        const int rows = c.level(k).ngens();
        for (int r = 0; r < rows; ++r) {
            for (int s = 0; s < rows; ++s) {
                Congruence cg;
                for (int t = 0; t < ngens; ++t)
                    cg.terms.emplace_back(t, images[static_cast<size_t>(t)](r, s));
                cg.modulus = c.level(k).gen_order(r);
                eqs.push_back(std::move(cg));
                rhs.push_back(r == s ? Int(1) : Int(0));
            }
        }
    }
    const Mat a = congruence_matrix(eqs, ngens);
    const auto sol = solve_linear(a, rhs);
    if (!sol) return std::nullopt;

    MackeyHom section = MackeyHom::zero(c, ses.proj.src());
    for (int t = 0; t < ngens; ++t) {
        const Int& coeff = (*sol)[static_cast<size_t>(t)];
        if (coeff == 0) continue;
        std::vector<GroupHom> maps;
        for (int k = 0; k <= c.n(); ++k)
            maps.push_back(homs.gens[static_cast<size_t>(t)].level(k).scaled(coeff));
        section = hom_add(section,
                          MackeyHom(c, ses.proj.src(), std::move(maps)));
    }
    if (compose(ses.proj, section) != MackeyHom::identity(c))
        throw Error("splitting solver produced a non-section");
    return section;
}

namespace {

std::string invariant_label(const char* kind, int from, int to) {
    std::ostringstream os;
    os << kind << " " << from << "->" << to;
    return os.str();
}

bool same_kernel_cokernel(const GroupHom& f, const GroupHom& g) {
    return kernel(f).group == kernel(g).group &&
           cokernel(f).group == cokernel(g).group;
}

}  // namespace

IsoResult iso_test(const MackeyFunctor& a, const MackeyFunctor& b,
                   long long search_cap) {
    if (a.p() != b.p() || a.n() != b.n())
        return {IsoVerdict::NotIso, "different group parameters", {}};
    const int n = a.n();
    for (int k = 0; k <= n; ++k)
        if (a.level(k) != b.level(k))
            return {IsoVerdict::NotIso,
                    "level " + std::to_string(k) + " groups differ", {}};

    // Kernel/cokernel invariants of all res and tr composites. These are
    // isomorphism invariants and cheap; they separate diagrams whose level
    // groups agree, including all single structure maps.
    for (int j = 1; j <= n; ++j) {
        for (int k = 0; k < j; ++k) {
            if (!same_kernel_cokernel(a.res_composite(j, k),
                                      b.res_composite(j, k)))
                return {IsoVerdict::NotIso, invariant_label("res", j, k), {}};
            if (!same_kernel_cokernel(a.tr_composite(k, j),
                                      b.tr_composite(k, j)))
                return {IsoVerdict::NotIso, invariant_label("tr", k, j), {}};
        }
    }

    if (a.is_zero()) return {IsoVerdict::Iso, "", MackeyHom::zero(a, b)};
    if (n == 0)  // equal level groups and nothing else to match
        return {IsoVerdict::Iso, "",
                MackeyHom(a, b, {GroupHom::identity(a.level(0))})};

    const MackeyHomGroup homs = mackey_hom_group(a, b);
    if (homs.group.is_zero())
        return {IsoVerdict::NotIso, "hom group is zero", {}};

    // Search coefficient space: full torsion ranges, growing shells for the
    // free coefficients. For a finite hom group the search is exhaustive,
    // so failure is a proof.
    const int rank = homs.group.rank();
    const int tcount = static_cast<int>(homs.group.torsion().size());

    auto is_level_iso = [&](const std::vector<Int>& coeff) -> bool {
        for (int k = 0; k <= n; ++k) {
            Mat m(b.level(k).ngens(), a.level(k).ngens());
            for (int t = 0; t < homs.group.ngens(); ++t) {
                if (coeff[static_cast<size_t>(t)] == 0) continue;
                m = m + homs.gens[static_cast<size_t>(t)].level(k).mat().scaled(
                            coeff[static_cast<size_t>(t)]);
            }
            const GroupHom f(a.level(k), b.level(k), std::move(m));
            if (!kernel(f).group.is_zero() || !cokernel(f).group.is_zero())
                return false;
        }
        return true;
    };

    auto build_witness = [&](const std::vector<Int>& coeff) {
        MackeyHom w = MackeyHom::zero(a, b);
        for (int t = 0; t < homs.group.ngens(); ++t) {
            if (coeff[static_cast<size_t>(t)] == 0) continue;
            std::vector<GroupHom> maps;
            for (int k = 0; k <= n; ++k)
                maps.push_back(homs.gens[static_cast<size_t>(t)].level(k).scaled(
                    coeff[static_cast<size_t>(t)]));
            w = hom_add(w, MackeyHom(a, b, std::move(maps)));
        }
        return w;
    };

    long long tried = 0;
    bool capped = false;

    // Iterate torsion coefficients for a fixed free part.
    auto scan_torsion = [&](std::vector<Int>& coeff) -> bool {
        std::vector<Int> tc(static_cast<size_t>(tcount), 0);
        while (true) {
            bool all_zero = true;
            for (int i = 0; i < homs.group.ngens(); ++i) {
                if (i >= rank)
                    coeff[static_cast<size_t>(i)] = tc[static_cast<size_t>(i - rank)];
                if (coeff[static_cast<size_t>(i)] != 0) all_zero = false;
            }
            if (!all_zero) {
                if (++tried > search_cap) {
                    capped = true;
                    return false;
                }
                if (is_level_iso(coeff)) return true;
            }
            int i = 0;
            while (i < tcount) {
                tc[static_cast<size_t>(i)] += 1;
                if (tc[static_cast<size_t>(i)] <
                    homs.group.torsion()[static_cast<size_t>(i)])
                    break;
                tc[static_cast<size_t>(i)] = 0;
                ++i;
            }
            if (i == tcount) return false;
        }
    };

    std::vector<Int> coeff(static_cast<size_t>(homs.group.ngens()), 0);
    if (rank == 0) {
        if (scan_torsion(coeff))
            return {IsoVerdict::Iso, "", build_witness(coeff)};
        if (capped) return {IsoVerdict::Unknown, "search cap reached", {}};
        return {IsoVerdict::NotIso, "exhausted finite hom group", {}};
    }

    // Free part: shells of growing sup-norm. Bound chosen so that the usual
    // unit-coefficient isomorphisms are met immediately.
    Int max_shell = Int(a.p());
    for (int i = 1; i < n; ++i) max_shell *= a.p();
    for (Int shell = 0; shell <= max_shell && !capped; ++shell) {
        // All free vectors with sup-norm == shell.
        std::vector<Int> fc(static_cast<size_t>(rank), -shell);
        while (true) {
            bool on_shell = shell == 0;
            for (const Int& v : fc)
                if (v == shell || v == -shell) on_shell = true;
            if (on_shell) {
                for (int i = 0; i < rank; ++i)
                    coeff[static_cast<size_t>(i)] = fc[static_cast<size_t>(i)];
                if (scan_torsion(coeff))
                    return {IsoVerdict::Iso, "", build_witness(coeff)};
                if (capped) break;
            }
            int i = 0;
            while (i < rank) {
                fc[static_cast<size_t>(i)] += 1;
                if (fc[static_cast<size_t>(i)] <= shell) break;
                fc[static_cast<size_t>(i)] = -shell;
                ++i;
            }
            if (i == rank) break;
        }
    }
    return {IsoVerdict::Unknown,
            capped ? "search cap reached" : "free coefficient bound reached",
            {}};
}

}  // namespace mackeycoh
