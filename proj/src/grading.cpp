#include "mackeycoh/grading.hpp"

#include <cctype>
#include <sstream>

namespace mackeycoh {

Grading::Grading(int n_, long long c_, std::vector<long long> a_) : n(n_), c(c_), a(std::move(a_)) {
    if (n < 0 || int(a.size()) != n) throw IndexError("Grading: coefficient count must equal n");
}

long long Grading::fixed_dim(int m) const {
    if (m < 0 || m > n) throw IndexError("Grading: fixed_dim level out of range");
    long long d = c;
    for (int i = m; i < n; ++i) d += 2 * a[i];
    return d;
}

bool Grading::is_zero() const {
    if (c != 0) return false;
    for (long long v : a)
        if (v != 0) return false;
    return true;
}

Grading Grading::anderson_dual() const {
    if (n < 1) throw IndexError("Grading: anderson_dual needs n >= 1");
    Grading d(*this);
    d.c = 3 - c;
    d.a[0] = -1 - a[0];
    for (int i = 1; i < n; ++i) d.a[i] = -a[i];
    return d;
}

Grading Grading::anderson_hom_dual() const {
    Grading d = anderson_dual();
    d.c -= 1;
    return d;
}

Grading Grading::quotient() const {
    if (n < 1) throw IndexError("Grading: quotient needs n >= 1");
    return Grading(n - 1, c, std::vector<long long>(a.begin() + 1, a.end()));
}

Grading Grading::restricted(int m) const {
    if (m < 0 || m > n) throw IndexError("Grading: restriction level out of range");
    return Grading(m, fixed_dim(m), std::vector<long long>(a.begin(), a.begin() + m));
}

Grading Grading::plus_c(long long k) const {
    Grading d(*this);
    d.c += k;
    return d;
}

Grading Grading::plus_lambda(int i, long long k) const {
    if (i < 0 || i >= n) throw IndexError("Grading: lambda index out of range");
    Grading d(*this);
    d.a[i] += k;
    return d;
}

std::string Grading::render() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](long long coeff, int idx) {
        if (coeff == 0) return;
        if (first) {
            if (coeff < 0) os << '-';
            first = false;
        } else {
            os << (coeff < 0 ? " - " : " + ");
        }
        long long mag = coeff < 0 ? -coeff : coeff;
        if (idx < 0) {
            os << mag;
        } else {
            if (mag != 1) os << mag << '*';
            os << 'L' << idx;
        }
    };
    emit(c, -1);
    for (int i = 0; i < n; ++i) emit(a[i], i);
    if (first) return "0";
    return os.str();
}

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    char take() {
        skip_ws();
        if (i >= s.size()) throw ParseError("grading: unexpected end of input");
        return s[i++];
    }
};

long long parse_int(Cursor& c) {
    c.skip_ws();
    size_t start = c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
    if (c.i == start) throw ParseError("grading: expected integer at position " + std::to_string(start));
    long long v = 0;
    for (size_t k = start; k < c.i; ++k) {
        v = v * 10 + (c.s[k] - '0');
        if (v > 1'000'000'000) throw ParseError("grading: integer literal too large");
    }
    return v;
}

}  // namespace

ParsedGrading parse_grading(std::string_view text, long long p, int n) {
    if (p < 2) throw ParseError("grading: p must be a prime >= 2");
    Cursor cur{text};
    ParsedGrading out;
    out.grading = Grading(n, 0, std::vector<long long>(n, 0));

    long long pn = 1;
    for (int i = 0; i < n; ++i) {
        pn *= p;
        if (pn > 10'000'000) throw ParseError("grading: p^n out of supported range");
    }

    if (cur.done()) throw ParseError("grading: empty expression");

    bool first = true;
    while (!cur.done()) {
        long long sign = 1;
        char ch = cur.peek();
        if (ch == '+' || ch == '-') {
            cur.take();
            sign = ch == '-' ? -1 : 1;
        } else if (!first) {
            throw ParseError("grading: expected '+' or '-' at position " + std::to_string(cur.i));
        }
        first = false;

        cur.skip_ws();
        long long coeff = 1;
        bool saw_int = false;
        if (cur.peek() != 'L') {
            coeff = parse_int(cur);
            saw_int = true;
        }
        if (cur.peek() == '*') {
            cur.take();
            if (cur.peek() != 'L') throw ParseError("grading: expected 'L' after '*'");
        } else if (saw_int && cur.peek() != 'L') {
            out.grading.c += sign * coeff;
            continue;
        }
        // lambda term
        cur.take();  // 'L'
        cur.skip_ws();
        if (cur.peek() == '(') {
            cur.take();
            long long m = parse_int(cur);
            if (cur.take() != ')') throw ParseError("grading: expected ')'");
            if (m < 1 || m >= pn) throw IndexError("grading: L(m) needs 1 <= m < p^n");
            int k = 0;
            long long pk = 1;
            for (long long r = m; r % p == 0; r /= p) {
                ++k;
                pk *= p;
            }
            if (m != pk) {
                std::ostringstream note;
                note << 'L' << '(' << m << ") -> L" << k;
                out.notes.push_back(note.str());
            }
            out.grading.a[k] += sign * coeff;
        } else {
            long long idx = parse_int(cur);
            if (idx < 0 || idx >= n) throw IndexError("grading: lambda index out of range");
            out.grading.a[size_t(idx)] += sign * coeff;
        }
    }
    return out;
}

}  // namespace mackeycoh
