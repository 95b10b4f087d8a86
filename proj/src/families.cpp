#include "mackeycoh/families.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mackeycoh {

namespace {

void check_subset_range(const Subset& s, int n, const char* what) {
    for (int x : s)
        if (x < 1 || x > n)
            throw SubsetViolation(std::string(what) +
                                  " contains an element outside 1..n");
}

bool contains(const Subset& s, int x) { return s.count(x) != 0; }

Int int_pow(long long p, int e) {
    Int out = 1;
    for (int i = 0; i < e; ++i) out *= p;
    return out;
}

// Multiplication map between cyclic p-groups (either may be trivial).
GroupHom cyclic_map(const FgAbGroup& src, const FgAbGroup& tgt, const Int& c) {
    Mat m(tgt.ngens(), src.ngens());
    if (m.rows() == 1 && m.cols() == 1) m(0, 0) = c;
    return GroupHom(src, tgt, std::move(m));
}

// Number of elements of d in 1..k.
int alpha(const Subset& d, int k) {
    int count = 0;
    for (int x : d)
        if (x <= k) ++count;
    return count;
}

}  // namespace

Subset full_set(int n) {
    Subset s;
    for (int i = 1; i <= n; ++i) s.insert(i);
    return s;
}

Subset complement(const Subset& s, int n) {
    Subset out;
    for (int i = 1; i <= n; ++i)
        if (!contains(s, i)) out.insert(i);
    return out;
}

std::string subset_to_string(const Subset& s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int x : s) {
        if (!first) os << ',';
        os << x;
        first = false;
    }
    os << '}';
    return os.str();
}

MackeyFunctor z_s(long long p, int n, const Subset& s) {
    check_subset_range(s, n, "Z_S index set");
    const FgAbGroup z = FgAbGroup::free(1);
    std::vector<FgAbGroup> levels(static_cast<size_t>(n + 1), z);
    std::vector<GroupHom> res, tr;
    for (int k = 1; k <= n; ++k) {
        const bool in = contains(s, k);
        res.push_back(GroupHom::scalar(z, in ? p : 1));
        tr.push_back(GroupHom::scalar(z, in ? 1 : p));
    }
    return MackeyFunctor(p, n, std::move(levels), std::move(res),
                         std::move(tr));
}

MackeyFunctor b_ts(long long p, int n, const Subset& t, const Subset& s) {
    check_subset_range(t, n, "B upper set");
    check_subset_range(s, n, "B lower set");
    if (!std::includes(t.begin(), t.end(), s.begin(), s.end()))
        throw SubsetViolation("B_{T,S} needs S contained in T");
    Subset d;
    std::set_difference(t.begin(), t.end(), s.begin(), s.end(),
                        std::inserter(d, d.begin()));
    std::vector<FgAbGroup> levels;
    for (int k = 0; k <= n; ++k)
        levels.push_back(FgAbGroup::cyclic(int_pow(p, alpha(d, k))));
    std::vector<GroupHom> res, tr;
    for (int k = 1; k <= n; ++k) {
        const bool in = contains(s, k);
        res.push_back(cyclic_map(levels[static_cast<size_t>(k)],
                                 levels[static_cast<size_t>(k - 1)],
                                 in ? p : 1));
        tr.push_back(cyclic_map(levels[static_cast<size_t>(k - 1)],
                                levels[static_cast<size_t>(k)], in ? 1 : p));
    }
    return MackeyFunctor(p, n, std::move(levels), std::move(res),
                         std::move(tr));
}

BParams canonical_b(int n, const Subset& t, const Subset& s) {
    check_subset_range(t, n, "B upper set");
    check_subset_range(s, n, "B lower set");
    if (!std::includes(t.begin(), t.end(), s.begin(), s.end()))
        throw SubsetViolation("B_{T,S} needs S contained in T");
    Subset d;
    std::set_difference(t.begin(), t.end(), s.begin(), s.end(),
                        std::inserter(d, d.begin()));
    if (d.empty()) return BParams{{}, {}};
    const int m = *d.begin();
    Subset tail;
    for (int x : s)
        if (x > m) tail.insert(x);
    Subset tcanon = d;
    tcanon.insert(tail.begin(), tail.end());
    return BParams{tcanon, tail};
}

MackeyHom f_ts(long long p, int n, const Subset& t, const Subset& s) {
    check_subset_range(t, n, "Z_T index set");
    check_subset_range(s, n, "Z_S index set");
    if (!std::includes(t.begin(), t.end(), s.begin(), s.end()))
        throw SubsetViolation("f_{T,S} needs S contained in T");
    Subset d;
    std::set_difference(t.begin(), t.end(), s.begin(), s.end(),
                        std::inserter(d, d.begin()));
    const MackeyFunctor src = z_s(p, n, t);
    const MackeyFunctor tgt = z_s(p, n, s);
    std::vector<GroupHom> maps;
    for (int k = 0; k <= n; ++k)
        maps.push_back(GroupHom::scalar(FgAbGroup::free(1),
                                        int_pow(p, alpha(d, k))));
    return MackeyHom(src, tgt, std::move(maps));
}

MackeyFunctor t_n(long long p, int n) {
    if (n < 2) throw InvalidDiagram("the tower T(n) needs n >= 2");
    const FgAbGroup z = FgAbGroup::free(1);
    const FgAbGroup zzp = FgAbGroup(1, {Int(p)});
    std::vector<FgAbGroup> levels{z};
    for (int k = 1; k <= n; ++k) levels.push_back(zzp);

    std::vector<GroupHom> res, tr;
    {
        Mat r1(1, 2);
        r1(0, 0) = p;
        Mat t1(2, 1);
        t1(0, 0) = 1;
        t1(1, 0) = -1;
        res.emplace_back(zzp, z, std::move(r1));
        tr.emplace_back(z, zzp, std::move(t1));
    }
    for (int k = 2; k <= n; ++k) {
        Mat rk = Mat::zero(2, 2);
        rk(0, 0) = 1;
        Mat tk = Mat::zero(2, 2);
        tk(0, 0) = p;
        tk(1, 1) = 1;
        res.emplace_back(zzp, zzp, std::move(rk));
        tr.emplace_back(zzp, zzp, std::move(tk));
    }
    return MackeyFunctor(p, n, std::move(levels), std::move(res),
                         std::move(tr));
}

ShortExactSeq t_n_sequence(long long p, int n) {
    const MackeyFunctor tower = t_n(p, n);
    Subset one{1};
    Subset rest;
    for (int i = 2; i <= n; ++i) rest.insert(i);
    const MackeyFunctor sub = b_ts(p, n, full_set(n), rest);
    const MackeyFunctor quot = z_s(p, n, one);

    std::vector<GroupHom> incl, proj;
    for (int k = 0; k <= n; ++k) {
        Mat im(tower.level(k).ngens(), sub.level(k).ngens());
        if (k >= 1) im(1, 0) = 1;  // Z/p into the torsion coordinate
        incl.emplace_back(sub.level(k), tower.level(k), std::move(im));
        Mat qm(1, tower.level(k).ngens());
        qm(0, 0) = 1;  // project onto the free coordinate
        proj.emplace_back(tower.level(k), quot.level(k), std::move(qm));
    }
    return ShortExactSeq(MackeyHom(sub, tower, std::move(incl)),
                         MackeyHom(tower, quot, std::move(proj)));
}

bool CatalogAtom::operator<(const CatalogAtom& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (tn != o.tn) return tn < o.tn;
    if (t != o.t) return t < o.t;
    return s < o.s;
}

std::string render_atom(const CatalogAtom& a, int n) {
    switch (a.kind) {
        case CatalogAtom::Kind::ZS:
            if (a.s.empty()) return "Z";
            if (a.s == full_set(n)) return "Z*";
            return "Z[" + subset_to_string(a.s) + "]";
        case CatalogAtom::Kind::B:
            return "B[" + subset_to_string(a.t) + "|" + subset_to_string(a.s) +
                   "]";
        case CatalogAtom::Kind::TN:
            return "T(" + std::to_string(a.tn) + ")";
    }
    throw Error("unreachable catalog kind");
}

std::string render_expr(const CatalogExpr& e, int n) {
    if (e.atoms.empty()) return "0";
    std::string out;
    for (const auto& a : e.atoms) {
        if (!out.empty()) out += " + ";
        out += render_atom(a, n);
    }
    return out;
}

MackeyFunctor build_atom(long long p, int n, const CatalogAtom& a) {
    switch (a.kind) {
        case CatalogAtom::Kind::ZS:
            return z_s(p, n, a.s);
        case CatalogAtom::Kind::B:
            return b_ts(p, n, a.t, a.s);
        case CatalogAtom::Kind::TN:
            if (a.tn != n)
                throw InvalidDiagram("tower height must match the level count");
            return t_n(p, n);
    }
    throw Error("unreachable catalog kind");
}

MackeyFunctor build_expr(long long p, int n, const CatalogExpr& e) {
    MackeyFunctor out = MackeyFunctor::zero_functor(p, n);
    for (const auto& a : e.atoms) out = direct_sum(out, build_atom(p, n, a));
    return out;
}

namespace {

// All canonical nonzero B parameters for level count n.
std::vector<BParams> all_canonical_b(int n) {
    std::vector<BParams> out;
    for (unsigned dm = 1; dm < (1u << n); ++dm) {
        Subset d;
        for (int i = 1; i <= n; ++i)
            if (dm & (1u << (i - 1))) d.insert(i);
        const int m = *d.begin();
        std::vector<int> avail;
        for (int i = m + 1; i <= n; ++i)
            if (!contains(d, i)) avail.push_back(i);
        for (unsigned tm = 0; tm < (1u << avail.size()); ++tm) {
            Subset tail;
            for (size_t i = 0; i < avail.size(); ++i)
                if (tm & (1u << i)) tail.insert(avail[i]);
            Subset t = d;
            t.insert(tail.begin(), tail.end());
            out.push_back(BParams{t, tail});
        }
    }
    return out;
}

using TorsionProfile = std::vector<std::multiset<Int>>;

TorsionProfile profile_of(const MackeyFunctor& m) {
    TorsionProfile prof(static_cast<size_t>(m.n() + 1));
    for (int k = 0; k <= m.n(); ++k)
        for (const Int& d : m.level(k).torsion())
            prof[static_cast<size_t>(k)].insert(d);
    return prof;
}

bool profile_contains(const TorsionProfile& big, const TorsionProfile& part) {
    for (size_t k = 0; k < big.size(); ++k)
        for (const Int& d : part[k])
            if (part[k].count(d) > big[k].count(d)) return false;
    return true;
}

void profile_subtract(TorsionProfile& big, const TorsionProfile& part) {
    for (size_t k = 0; k < big.size(); ++k)
        for (const Int& d : part[k]) big[k].erase(big[k].find(d));
}

void profile_add(TorsionProfile& big, const TorsionProfile& part) {
    for (size_t k = 0; k < big.size(); ++k)
        for (const Int& d : part[k]) big[k].insert(d);
}

bool profile_empty(const TorsionProfile& p) {
    return std::all_of(p.begin(), p.end(),
                       [](const std::multiset<Int>& s) { return s.empty(); });
}

}  // namespace

Recognition recognize(const MackeyFunctor& m) {
    Recognition out;
    const int n = m.n();
    const long long p = m.p();

    const int rank0 = m.level(0).rank();
    for (int k = 1; k <= n; ++k)
        if (m.level(k).rank() != rank0) return out;  // outside the catalog

    // Catalog atoms and their torsion profiles.
    std::vector<CatalogAtom> batoms;
    std::vector<TorsionProfile> bprofiles;
    std::vector<MackeyFunctor> bdiagrams;
    for (const BParams& bp : all_canonical_b(n)) {
        CatalogAtom a{CatalogAtom::Kind::B, bp.t, bp.s, 0};
        bdiagrams.push_back(build_atom(p, n, a));
        bprofiles.push_back(profile_of(bdiagrams.back()));
        batoms.push_back(std::move(a));
    }
    std::vector<Subset> subsets;
    for (unsigned sm = 0; sm < (1u << n); ++sm) {
        Subset s;
        for (int i = 1; i <= n; ++i)
            if (sm & (1u << (i - 1))) s.insert(i);
        subsets.push_back(std::move(s));
    }

    const TorsionProfile target = profile_of(m);

    // Choose a multiset of B atoms covering the torsion profile exactly
    // (non-decreasing indices avoid duplicates), then any multiset of Z_S
    // atoms of size rank0.
    std::vector<CatalogExpr> candidates;
    std::vector<int> chosen;
    TorsionProfile remaining = target;

    auto emit_with_free_part = [&](const std::vector<int>& bchoice) {
        std::vector<std::vector<int>> zmultisets;
        std::vector<int> zchoice;
        auto rec_z = [&](auto&& self, int start, int left) -> void {
            if (left == 0) {
                zmultisets.push_back(zchoice);
                return;
            }
            for (int i = start; i < static_cast<int>(subsets.size()); ++i) {
                zchoice.push_back(i);
                self(self, i, left - 1);
                zchoice.pop_back();
            }
        };
        rec_z(rec_z, 0, rank0);
        for (const auto& zs : zmultisets) {
            CatalogExpr e;
            for (int i : zs)
                e.atoms.push_back(CatalogAtom{CatalogAtom::Kind::ZS, {},
                                              subsets[static_cast<size_t>(i)],
                                              0});
            for (int i : bchoice)
                e.atoms.push_back(batoms[static_cast<size_t>(i)]);
            candidates.push_back(std::move(e));
        }
    };

    auto rec_b = [&](auto&& self, int start) -> void {
        if (profile_empty(remaining)) {
            emit_with_free_part(chosen);
            return;
        }
        for (int i = start; i < static_cast<int>(batoms.size()); ++i) {
            if (!profile_contains(remaining, bprofiles[static_cast<size_t>(i)]))
                continue;
            profile_subtract(remaining, bprofiles[static_cast<size_t>(i)]);
            chosen.push_back(i);
            self(self, i);
            chosen.pop_back();
            profile_add(remaining, bprofiles[static_cast<size_t>(i)]);
        }
    };
    rec_b(rec_b, 0);

    for (const CatalogExpr& cand : candidates) {
        const MackeyFunctor built = build_expr(p, n, cand);
        IsoResult r = iso_test(m, built);
        const bool hit = r.verdict == IsoVerdict::Iso;
        std::optional<MackeyHom> witness = std::move(r.witness);
        out.attempts.push_back(RecognitionAttempt{cand, std::move(r)});
        if (hit) {
            out.expr = cand;
            out.witness = std::move(witness);
            return out;
        }
    }
    return out;
}

}  // namespace mackeycoh
