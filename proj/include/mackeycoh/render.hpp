#pragma once

#include <string>

#include "mackeycoh/families.hpp"
#include "mackeycoh/mackey.hpp"

namespace mackeycoh {

// Plain-text vertical diagram, levels bottom to top, one level per line,
// the res/tr matrix pair between consecutive levels:
//   level 0: Z
//     res(1) = [[3]]   tr(1) = [[1]]
//   level 1: Z
std::string render_ascii(const MackeyFunctor& m);

// xymatrix-style single column, top level first, res arrows downward and
// tr arrows upward, labelled with their matrices.
std::string render_latex(const MackeyFunctor& m);

std::string group_to_latex(const FgAbGroup& g);

// Catalog name when recognize finds one; "non-split extension" for a
// genuine diagram outside the Z_S/B_{T,S} span.
std::string display_name(const MackeyFunctor& m);
std::string display_name(const Recognition& r, int n);

}  // namespace mackeycoh
