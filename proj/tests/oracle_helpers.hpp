#pragma once

// Brute-force oracles used to pin down the linear-algebra layer before
// anything depends on it. Everything here enumerates; keep orders small.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "mackeycoh/abgroup.hpp"

namespace oracle {

using mackeycoh::FgAbGroup;
using mackeycoh::GroupHom;
using mackeycoh::Int;
using mackeycoh::Mat;

inline Int pmod(const Int& x, const Int& d) {
    Int r = x % d;
    if (r < 0) r += d;
    return r;
}

// A random hom A -> B for finite A, B: each source generator of order d is
// sent to a uniformly random element of the d-torsion of B.
inline GroupHom random_hom(const FgAbGroup& a, const FgAbGroup& b,
                           std::mt19937_64& rng) {
    Mat m(b.ngens(), a.ngens());
    for (int j = 0; j < a.ngens(); ++j) {
        const Int d = a.gen_order(j);
        for (int i = 0; i < b.ngens(); ++i) {
            const Int e = b.gen_order(i);
            if (e == 0) {
                m(i, j) = 0;  // torsion cannot hit a free generator
                continue;
            }
            // d-torsion of Z/e is generated by e/gcd(e, d).
            const Int step = d == 0 ? Int(1) : e / gcd(e, d);
            const Int count = e / step;
            std::uniform_int_distribution<long long> pick(
                0, count.convert_to<long long>() - 1);
            m(i, j) = pick(rng) * step;
        }
    }
    return GroupHom(a, b, std::move(m));
}

// Element order straight from coordinates.
inline Int element_order(const FgAbGroup& g, const std::vector<Int>& x) {
    Int o = 1;
    for (size_t i = 0; i < x.size(); ++i) {
        const Int d = g.torsion()[i];
        const Int q = d / gcd(d, x[i]);
        o = o / gcd(o, q) * q;
    }
    return o;
}

// Order multiset of {x in A : f(x) = 0} by enumeration (A finite).
inline std::vector<Int> brute_kernel_orders(const GroupHom& f) {
    std::vector<Int> out;
    for (const auto& x : mackeycoh::enumerate_elements(f.src(), Int(1 << 20))) {
        std::vector<Int> y = f.apply(x);
        if (std::all_of(y.begin(), y.end(),
                        [](const Int& v) { return v == 0; }))
            out.push_back(element_order(f.src(), x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Order multiset of tgt/im(f) by enumeration (both finite). The order of a
// coset [y] is the least k >= 1 with k*y in im(f).
inline std::vector<Int> brute_coker_orders(const GroupHom& f) {
    std::set<std::vector<Int>> image;
    for (const auto& x : mackeycoh::enumerate_elements(f.src(), Int(1 << 20)))
        image.insert(f.apply(x));
    std::vector<Int> out;
    for (const auto& y : mackeycoh::enumerate_elements(f.tgt(), Int(1 << 20))) {
        Int k = 1;
        while (true) {
            std::vector<Int> ky(y.size());
            for (size_t i = 0; i < y.size(); ++i)
                ky[i] = pmod(k * y[i], f.tgt().gen_order(
                                           f.tgt().rank() + static_cast<int>(i)));
            if (image.count(ky)) break;
            ++k;
        }
        out.push_back(k);
    }
    std::sort(out.begin(), out.end());
    // Each coset was counted |im| times; keep one copy per coset.
    std::vector<Int> dedup;
    const size_t im_size = image.size();
    for (size_t i = 0; i < out.size(); ++i)
        if (i % im_size == 0) dedup.push_back(out[i]);
    return dedup;
}

}  // namespace oracle
