#include "mackeycoh/cone.hpp"

#include <map>

#include "mackeycoh/error.hpp"

namespace mackeycoh {

namespace {

Int int_pow(long long p, int e) {
    Int out = 1;
    for (int i = 0; i < e; ++i) out *= p;
    return out;
}

}  // namespace

std::string render_monomial(const ConeMonomial& m) {
    std::string out;
    auto emit = [&](const char* name, int i, int k) {
        if (k == 0) return;
        if (!out.empty()) out += ' ';
        out += name;
        out += std::to_string(i);
        if (k > 1) {
            out += '^';
            out += std::to_string(k);
        }
    };
    for (std::size_t i = 0; i < m.e.size(); ++i) emit("a", static_cast<int>(i), m.e[i]);
    for (std::size_t i = 0; i < m.f.size(); ++i) emit("u", static_cast<int>(i), m.f[i]);
    return out.empty() ? "1" : out;
}

std::vector<ConeMonomial> cone_monomials(const Grading& g) {
    for (long long ai : g.a)
        if (ai < 0) throw IndexError("cone: negative multiplicity " + std::to_string(ai));
    if (g.c > 0) throw IndexError("cone: positive constant part " + std::to_string(g.c));
    if (g.c % 2 != 0) throw IndexError("cone: odd constant part " + std::to_string(g.c));

    const int n = g.n;
    const long long need = -g.c / 2;  // total u-exponent
    std::vector<ConeMonomial> out;
    ConeMonomial cur;
    cur.e.assign(n, 0);
    cur.f.assign(n, 0);
    auto rec = [&](auto&& self, int i, long long left) -> void {
        if (i == n) {
            if (left == 0) out.push_back(cur);
            return;
        }
        const long long ai = g.a[static_cast<std::size_t>(i)];
        for (long long fi = 0; fi <= std::min(ai, left); ++fi) {
            cur.f[static_cast<std::size_t>(i)] = static_cast<int>(fi);
            cur.e[static_cast<std::size_t>(i)] = static_cast<int>(ai - fi);
            self(self, i + 1, left - fi);
        }
        cur.f[static_cast<std::size_t>(i)] = 0;
        cur.e[static_cast<std::size_t>(i)] = static_cast<int>(ai);
    };
    rec(rec, 0, need);
    return out;
}

ConeGroup cone_group(long long p, const Grading& g) {
    const auto mons = cone_monomials(g);
    const int n = g.n;
    const std::size_t ngens = mons.size();

    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t t = 0; t < ngens; ++t) {
        std::vector<int> key = mons[t].e;
        key.insert(key.end(), mons[t].f.begin(), mons[t].f.end());
        index.emplace(std::move(key), t);
    }

    std::vector<std::vector<Int>> rels;  // each entry is one relation column
    for (std::size_t t = 0; t < ngens; ++t) {
        const auto& m = mons[t];
        for (int i = 0; i < n; ++i) {
            if (m.e[static_cast<std::size_t>(i)] == 0) continue;
            // p^(n-i) a_i = 0
            std::vector<Int> r(ngens, Int(0));
            r[t] = int_pow(p, n - i);
            rels.push_back(std::move(r));
        }
        for (int i = 0; i < n; ++i) {
            if (m.f[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = i + 1; j < n; ++j) {
                if (m.e[static_cast<std::size_t>(j)] == 0) continue;
                // u_i a_j = p^(j-i) a_i u_j applied to one factor of m
                ConeMonomial other = m;
                other.f[static_cast<std::size_t>(i)] -= 1;
                other.e[static_cast<std::size_t>(j)] -= 1;
                other.e[static_cast<std::size_t>(i)] += 1;
                other.f[static_cast<std::size_t>(j)] += 1;
                std::vector<int> key = other.e;
                key.insert(key.end(), other.f.begin(), other.f.end());
                const std::size_t s = index.at(key);
                std::vector<Int> r(ngens, Int(0));
                r[t] += 1;
                r[s] -= int_pow(p, j - i);
                rels.push_back(std::move(r));
            }
        }
    }

    Mat relmat(static_cast<int>(ngens), static_cast<int>(rels.size()));
    for (std::size_t c = 0; c < rels.size(); ++c)
        for (std::size_t r = 0; r < ngens; ++r)
            relmat(static_cast<int>(r), static_cast<int>(c)) = rels[c][r];
    auto pres = from_presentation(static_cast<int>(ngens), relmat);
    return ConeGroup{pres.group, mons, pres.proj};
}

}  // namespace mackeycoh
