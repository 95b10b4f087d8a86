#include "mackeycoh/render.hpp"

#include <sstream>

namespace mackeycoh {

std::string render_ascii(const MackeyFunctor& m) {
    std::ostringstream os;
    for (int k = 0; k <= m.n(); ++k) {
        if (k > 0)
            os << "  res(" << k << ") = " << m.res(k).mat().to_string()
               << "   tr(" << k << ") = " << m.tr(k).mat().to_string() << "\n";
        os << "level " << k << ": " << m.level(k).to_string() << "\n";
    }
    return os.str();
}

std::string group_to_latex(const FgAbGroup& g) {
    if (g.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    if (g.rank() == 1) {
        os << "\\mathbb{Z}";
        first = false;
    } else if (g.rank() > 1) {
        os << "\\mathbb{Z}^{" << g.rank() << "}";
        first = false;
    }
    for (const Int& d : g.torsion()) {
        if (!first) os << " \\oplus ";
        os << "\\mathbb{Z}/" << d.str();
        first = false;
    }
    return os.str();
}

namespace {

// Matrices appear as arrow labels; 1x1 ones lose the brackets.
std::string mat_label(const Mat& m) {
    if (m.rows() == 1 && m.cols() == 1) return m(0, 0).str();
    std::string s = m.to_string();
    std::string out;
    for (char c : s) {
        // xymatrix labels: escape nothing, but swap the row separators for
        // \; so the label stays on one line.
        if (c == ',') {
            out += ",\\,";
        } else {
            out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_latex(const MackeyFunctor& m) {
    std::ostringstream os;
    os << "\\xymatrix{\n";
    for (int k = m.n(); k >= 0; --k) {
        os << group_to_latex(m.level(k));
        if (k > 0)
            os << " \\ar@<-.5ex>[d]_{" << mat_label(m.res(k).mat()) << "}";
        if (k < m.n())
            os << " \\ar@<-.5ex>[u]_{" << mat_label(m.tr(k + 1).mat()) << "}";
        if (k > 0) os << " \\\\";
        os << "\n";
    }
    os << "}\n";
    return os.str();
}

std::string display_name(const Recognition& r, int n) {
    if (r.expr) return render_expr(*r.expr, n);
    return "non-split extension";
}

std::string display_name(const MackeyFunctor& m) {
    return display_name(recognize(m), m.n());
}

}  // namespace mackeycoh
